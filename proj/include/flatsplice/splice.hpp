#pragma once

// The flat splicing operation.
//
// A rule <alpha | gamma - delta | beta> applies to an ordered pair (u, v):
// u must contain a gap with alpha immediately to its left and beta
// immediately to its right, and v must be a nonempty word of the form
// gamma.z.delta. The whole of v is inserted into u at the gap. gamma and
// delta are single symbols or empty; alpha and beta are arbitrary words.

#include <cstdint>
#include <vector>

#include "flatsplice/symbol.hpp"

namespace flatsplice {

struct FlatSplicingRule {
    Word alpha;  // left outer context in u
    Word gamma;  // required prefix of v, |gamma| <= 1
    Word delta;  // required suffix of v, |delta| <= 1
    Word beta;   // right outer context in u

    // Throws std::invalid_argument if a handle constraint is violated.
    void validate() const;

    bool operator==(const FlatSplicingRule& o) const {
        return alpha == o.alpha && gamma == o.gamma && delta == o.delta && beta == o.beta;
    }
};

// Gap positions of u (0..|u|) where alpha ends at the gap and beta starts at
// it, in ascending order. Site i denotes insertion between u[i-1] and u[i].
std::vector<std::size_t> match_sites(const Word& u, const FlatSplicingRule& r);

// Whether v is usable as the inserted word: nonempty, long enough that the
// gamma and delta handles do not overlap, gamma a prefix and delta a suffix.
bool partner_matches(const Word& v, const FlatSplicingRule& r);

// Insert v into u at the given gap. Throws std::invalid_argument when the
// site does not match the rule contexts or v fails partner_matches.
Word apply_rule(const Word& u, const Word& v, const FlatSplicingRule& r, std::size_t site);

// All results of splicing (u, v) with r: one word per matching site (the
// set collapses coinciding results). Empty when v is not a valid partner or
// no site matches.
WordSet splice(const Word& u, const Word& v, const FlatSplicingRule& r);

}  // namespace flatsplice
