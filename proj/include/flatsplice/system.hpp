#pragma once

// Flat splicing systems: an alphabet, an initial set of nonempty axiom
// words (finite, or a regular set given by a pattern), and a finite rule
// sequence. Rule order is significant: derivation machinery reports rules
// by index, and labels attach positionally.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatsplice/regset.hpp"
#include "flatsplice/splice.hpp"
#include "flatsplice/symbol.hpp"

namespace flatsplice {

class InitialSet {
public:
    static InitialSet finite(WordSet words);
    static InitialSet regular(RegularSet set);

    bool is_regular() const { return regular_.has_value(); }
    const WordSet& finite_words() const;
    const RegularSet& regular_set() const;

    bool contains(const Word& w) const;

    // Members of length <= max_len. Exhaustive for finite sets too (their
    // members beyond the bound are simply filtered out).
    WordSet members_upto(std::size_t max_len) const;

    // Every member, finite sets only.
    const WordSet& all_members() const { return finite_words(); }

    // Is there any member beyond the length bound? (Regular sets only can
    // say yes; used for start-word truncation reporting.)
    bool has_member_longer_than(std::size_t len) const;

    // Exact: does some member match the rule's partner handles? Decided by
    // automaton intersection for regular sets, by scanning for finite ones.
    bool has_partner(const FlatSplicingRule& r, const SymbolSet& alphabet) const;

    // Witness partners in canonical order. Finite sets are scanned
    // exhaustively (no bound); regular sets are enumerated up to
    // partner_len_bound, so a nonempty exact answer can still come back
    // empty here — callers treat that as starvation, not terminality.
    std::vector<Word> partners(const FlatSplicingRule& r, const SymbolSet& alphabet,
                               std::size_t partner_len_bound) const;

    SymbolSet symbols() const;  // symbols occurring in members

    bool operator==(const InitialSet& o) const;

private:
    InitialSet() = default;
    WordSet finite_;
    std::optional<RegularSet> regular_;
};

struct FlatSplicingSystem {
    SymbolSet alphabet;
    InitialSet initial = InitialSet::finite({});
    std::vector<FlatSplicingRule> rules;

    // Throws std::invalid_argument: handle length bounds, all rule/axiom
    // symbols housed in the alphabet, axioms nonempty.
    void validate() const;

    bool operator==(const FlatSplicingSystem& o) const {
        return alphabet == o.alphabet && initial == o.initial && rules == o.rules;
    }
};

struct SystemType {
    std::size_t m = 0;  // max over rules of max(|alpha|, |beta|)
    std::size_t n = 0;  // max over rules of |gamma| + |delta|
    bool operator==(const SystemType& o) const { return m == o.m && n == o.n; }
    std::string str() const;
};

SystemType system_type(const FlatSplicingSystem& sys);

// Applicability of the rule set to a word. The default reading requires an
// existing partner in the initial set (decided exactly); the context-only
// reading asks just for a matching site.
enum class Applicability { PartnerAware, ContextOnly };

bool applicable(const FlatSplicingSystem& sys, const Word& u,
                Applicability mode = Applicability::PartnerAware);

// Iterated-splicing closure slice: the least language containing every
// initial word of length <= max_len and closed under splicing any two of
// its members (either order), keeping results of length <= max_len.
WordSet closure_language_upto(const FlatSplicingSystem& sys, std::size_t max_len);

}  // namespace flatsplice
