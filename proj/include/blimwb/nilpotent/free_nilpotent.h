#pragma once

#include "blimwb/nilpotent/pc_presentation.h"
#include "blimwb/words.h"

namespace blimwb::nilpotent {

/// Hall basic commutator: a free generator (weight 1) or [left, right] for
/// earlier basic commutators left > right.
struct BasicCommutator {
    int generator = -1;
    int left = -1;
    int right = -1;
};

/// Free nilpotent group F/γ_{c+1}(F) on k generators with the basic
/// commutators of weight <= c as pc generators, in order of weight.
struct FreeNilpotent {
    int rank = 0;
    int nilpotency_class = 0;
    PcGroup group;
    std::vector<BasicCommutator> basis;

    /// Free-group word of pc generator p (a nested commutator).
    words::Word word(int p) const;
    /// Word lift of a normal form.
    words::Word lift(const PcElement &x) const;
    /// Image of a word in the free generators.
    PcElement evaluate(const words::Word &w) const;
};

/// Number of weight-w basic commutators on k generators.
int64_t witt_number(int k, int w);

/// Structure constants come from the Magnus embedding into the truncated
/// free associative ring: each conjugate is expanded there and peeled weight
/// by weight against the Lie leading terms of the basic commutators.
FreeNilpotent free_nilpotent(int k, int c);

} // namespace blimwb::nilpotent
