#pragma once

// Labeled flat splicing systems and their derivation machinery.
//
// A derivation starts from an initial word and repeatedly splices the
// current word (as the site-bearing operand) with an initial word (as the
// inserted partner). It is terminal when no rule applies to the final word
// and at least one step was taken. Each rule carries a label; reading the
// labels along a terminal derivation yields a label word. In szilard mode
// labels are distinct symbols and every rule has one; in control mode
// several rules may share a label and a rule may be unlabeled (its steps
// contribute nothing to the label word).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatsplice/system.hpp"

namespace flatsplice {

// Unlabeled steps (control mode only) carry no symbol.
using Label = std::optional<Symbol>;

enum class LabelingMode { Szilard, Control };

struct LabeledFlatSplicingSystem {
    std::string name;
    FlatSplicingSystem sys;
    LabelingMode mode = LabelingMode::Szilard;
    std::vector<Label> labels;  // parallel to sys.rules

    // Base validation plus label discipline: labels parallel to rules;
    // szilard labels total and pairwise distinct; label symbols disjoint
    // from the alphabet. Throws std::invalid_argument.
    void validate() const;

    std::optional<std::size_t> rule_with_label(Symbol s) const;

    bool operator==(const LabeledFlatSplicingSystem& o) const {
        return name == o.name && sys == o.sys && mode == o.mode && labels == o.labels;
    }
};

struct SearchLimits {
    std::size_t max_steps = 0;
    std::size_t partner_len_bound = 8;
    Applicability applicability = Applicability::PartnerAware;
};

struct DerivationStep {
    std::size_t rule_index = 0;
    std::size_t site = 0;
    Word partner;
    Word before;
    Word after;
};

struct Derivation {
    Word start;
    std::vector<DerivationStep> steps;

    const Word& final_word() const { return steps.empty() ? start : steps.back().after; }
    // Labels of the steps in order, unlabeled steps skipped.
    Word label_word(const LabeledFlatSplicingSystem& lsys) const;
};

// Checks a derivation step by step against the system: chaining, site
// membership, partner membership in the initial set, splice results, and
// terminality of the final word. Returns an explanation on failure.
std::optional<std::string> verify_terminal_derivation(const LabeledFlatSplicingSystem& lsys,
                                                      const Derivation& d,
                                                      Applicability mode = Applicability::PartnerAware);

// All single-step continuations of `current`, in canonical order: by rule
// index, then site, then partner. Partners come from the initial set,
// witnesses bounded by limits.partner_len_bound for regular initial sets.
std::vector<DerivationStep> step_options(const LabeledFlatSplicingSystem& lsys, const Word& current,
                                         const SearchLimits& limits);

struct EnumerationStats {
    // Derivation prefixes abandoned because the step budget ran out
    // (exact path count, saturating).
    std::uint64_t budget_truncated = 0;
    // Prefixes stuck on a rule whose partners all exceed the witness
    // bound (or, in context-only mode, do not exist). Never terminal.
    std::uint64_t partner_starved = 0;
    // A regular initial set had start words beyond the witness bound.
    bool starts_truncated = false;

    EnumerationStats& operator+=(const EnumerationStats& o);
    bool clean() const { return budget_truncated == 0 && partner_starved == 0 && !starts_truncated; }
};

struct DerivationSet {
    std::vector<Derivation> derivations;
    EnumerationStats stats;
};

// Every terminal derivation of at most limits.max_steps steps, in
// depth-first canonical order. Exponential in general: meant for small
// budgets.
DerivationSet enumerate_terminal_derivations(const LabeledFlatSplicingSystem& lsys,
                                             const SearchLimits& limits);

struct LabelSlice {
    WordSet words;
    EnumerationStats stats;
};

// Label words of terminal derivations with at most max_steps steps.
// szilard_upto requires szilard mode; control_upto accepts either mode
// (erasing unlabeled steps, which is the identity for szilard systems).
LabelSlice szilard_upto(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits);
LabelSlice control_upto(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits);

// Szilard membership: find a terminal derivation whose label word is
// exactly `label_word`. Szilard mode only (labels determine the rules).
std::optional<Derivation> is_derivation_member(const LabeledFlatSplicingSystem& lsys,
                                               const Word& label_word, const SearchLimits& limits);

// Walks the derivation search once and hands every (label word, final
// word) pair of a terminal derivation to `sink`. Used to fold projections
// (e.g. homomorphic images) without materializing derivations.
void visit_terminal_label_words(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits,
                                const std::function<void(const Word&)>& sink,
                                EnumerationStats& stats);

}  // namespace flatsplice
