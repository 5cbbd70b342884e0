#include "blimwb/io/presentation.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace blimwb::io {

using words::Word;

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

/// Recursive-descent parser over one line (comments already stripped).
class LineParser {
  public:
    LineParser(const std::string &text, int line, size_t column_offset, const std::map<std::string, int> *gens)
        : s_(text), line_(line), offset_(column_offset), gens_(gens)
    {
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw InputError(fmt::format("{}:{}: {}", line_, offset_ + pos_ + 1, msg));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool at_end()
    {
        skip();
        return pos_ >= s_.size();
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(fmt::format("expected '{}'", c));
    }

    std::string identifier()
    {
        skip();
        if (pos_ >= s_.size() || !ident_start(s_[pos_]))
            fail("expected a generator name");
        const size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_]))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    std::vector<std::string> identifier_list()
    {
        std::vector<std::string> out;
        if (at_end())
            return out;
        out.push_back(identifier());
        while (accept(','))
            out.push_back(identifier());
        if (!at_end())
            fail("unexpected character");
        return out;
    }

    std::vector<Word> expression_list()
    {
        std::vector<Word> out;
        if (at_end())
            return out;
        out.push_back(expression());
        while (accept(','))
            out.push_back(expression());
        if (!at_end())
            fail("unexpected character");
        return out;
    }

    Word expression()
    {
        Word w = product();
        while (accept('='))
            w = w * product().inverse();
        return w;
    }

  private:
    Word product()
    {
        Word w = term();
        while (accept('*'))
            w = w * term();
        return w;
    }

    int64_t exponent()
    {
        skip();
        const size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        int64_t e = 0;
        const char *b = s_.data() + start + (s_[start] == '+' ? 1 : 0);
        const auto [ptr, ec] = std::from_chars(b, s_.data() + pos_, e);
        if (ec != std::errc() || ptr != s_.data() + pos_) {
            pos_ = start;
            fail("expected an integer exponent");
        }
        if (e == 0) {
            pos_ = start;
            fail("zero exponent");
        }
        return e;
    }

    Word term()
    {
        skip();
        Word base;
        if (accept('[')) {
            const Word a = expression();
            expect(',');
            const Word b = expression();
            expect(']');
            base = words::commutator(a, b);
        } else if (accept('(')) {
            base = expression();
            expect(')');
        } else if (pos_ < s_.size() && s_[pos_] == '1') {
            ++pos_;
        } else {
            const size_t start = pos_;
            const std::string id = identifier();
            auto it = gens_->find(id);
            if (it == gens_->end()) {
                pos_ = start;
                fail(fmt::format("unknown generator '{}'", id));
            }
            base = Word::generator(it->second);
        }
        if (accept('^'))
            base = base.pow(exponent());
        return base;
    }

    const std::string &s_;
    size_t pos_ = 0;
    int line_;
    size_t offset_;
    const std::map<std::string, int> *gens_;
};

} // namespace

words::FreePresentation parse_presentation(const std::string &text, const std::string &name)
{
    words::FreePresentation p;
    p.name = name;
    std::map<std::string, int> gens;
    bool have_gens = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string body = raw.substr(0, raw.find('#'));
        size_t k = body.find_first_not_of(" \t\r");
        if (k == std::string::npos)
            continue;
        const size_t colon = body.find(':', k);
        std::string key = colon == std::string::npos ? "" : body.substr(k, colon - k);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
            key.pop_back();
        if (key != "gens" && key != "rels")
            throw InputError(fmt::format("{}:{}: expected 'gens:' or 'rels:'", line, k + 1));
        const std::string rest = body.substr(colon + 1);
        LineParser parser(rest, line, colon + 1, &gens);
        if (key == "gens") {
            if (have_gens)
                throw InputError(fmt::format("{}:{}: generators declared twice", line, k + 1));
            have_gens = true;
            for (const auto &id : parser.identifier_list()) {
                if (!gens.emplace(id, static_cast<int>(gens.size())).second)
                    throw InputError(fmt::format("{}: duplicate generator '{}'", line, id));
                p.generator_names.push_back(id);
            }
        } else {
            if (!have_gens)
                throw InputError(fmt::format("{}:{}: relators before 'gens:'", line, k + 1));
            for (auto &w : parser.expression_list())
                p.relators.push_back(std::move(w));
        }
    }
    if (!have_gens)
        throw InputError("missing 'gens:' line");
    p.validate();
    return p;
}

words::Word parse_word(const std::string &text, const std::vector<std::string> &names)
{
    std::map<std::string, int> gens;
    for (size_t i = 0; i < names.size(); ++i)
        gens.emplace(names[i], static_cast<int>(i));
    LineParser parser(text, 1, 0, &gens);
    Word w = parser.expression();
    if (!parser.at_end())
        parser.fail("unexpected character");
    return w;
}

std::string format_presentation(const words::FreePresentation &p)
{
    std::string out = "gens: ";
    for (size_t i = 0; i < p.generator_names.size(); ++i)
        out += (i ? ", " : "") + p.generator_names[i];
    out += "\nrels: ";
    for (size_t i = 0; i < p.relators.size(); ++i)
        out += (i ? ", " : "") + words::format_word(p.relators[i], p.generator_names);
    out += "\n";
    return out;
}

words::FreePresentation load_presentation(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(fmt::format("cannot read {}", path));
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_presentation(buf.str(), std::filesystem::path(path).stem().string());
    } catch (const InputError &e) {
        throw InputError(fmt::format("{}:{}", path, e.what()));
    }
}

} // namespace blimwb::io
