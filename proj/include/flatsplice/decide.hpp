#pragma once

// Bounded verification: subset checks between regular sets and szilard
// languages, and differential comparison of a grammar against a compiled
// system. All answers are relative to explicit bounds and carry the
// evidence (counterexamples, truncation statistics) needed to interpret
// them.

#include <cstdint>
#include <string>
#include <vector>

#include "flatsplice/compile.hpp"
#include "flatsplice/derivation.hpp"
#include "flatsplice/grammar.hpp"
#include "flatsplice/regset.hpp"

namespace flatsplice {

enum class VerdictStatus { Pass, Fail, Inconclusive };

std::string to_string(VerdictStatus s);

struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::vector<Word> counterexamples;  // at most 10, canonical order
    EnumerationStats stats;
    std::string detail;

    bool passed() const { return status == VerdictStatus::Pass; }
};

// Is every word of `r` with length <= bound a szilard word of the system?
// A missing word whose search saw no truncation is a definite
// counterexample; misses explainable by truncation make the verdict
// inconclusive instead.
Verdict check_reg_subset_sz(const RegularSet& r, const LabeledFlatSplicingSystem& lsys,
                            std::size_t bound, const SearchLimits& limits);

// Is every szilard word reachable within limits.max_steps a member of `r`?
// Enumerated words are genuine, so any word outside `r` fails definitely.
Verdict check_sz_subset_reg(const LabeledFlatSplicingSystem& lsys, const RegularSet& r,
                            const SearchLimits& limits);

struct DiffReport {
    WordSet grammar_words;
    WordSet system_words;  // projected through the homomorphism when present
    WordSet missing;       // grammar words the system never produced
    WordSet extra;         // system words outside the grammar slice
    bool grammar_exact = true;
    EnumerationStats stats;
    std::size_t word_bound = 0;
    std::size_t step_bound = 0;

    bool equal() const { return missing.empty() && extra.empty(); }
    std::string to_text() const;
};

// Compares the grammar's language slice (words of length <= word_bound)
// with the projected label language of the compiled system (derivations of
// at most step_bound steps, projected words filtered to the same length
// bound). step_bound 0 picks a default proportional to word_bound and the
// longest insertable axiom.
DiffReport differential_compare(const Grammar& g, const CompilationOutput& comp,
                                std::size_t word_bound, std::size_t step_bound,
                                const SearchLimits& limits);

}  // namespace flatsplice
