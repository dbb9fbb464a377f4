#pragma once

// Rewriting grammars, normal-form checks, a bounded language oracle, and
// conversion to Chomsky normal form. Productions may have multi-symbol
// left-hand sides (kuroda form uses pair rewrites); the oracle handles the
// general case.

#include <cstdint>
#include <string>
#include <vector>

#include "flatsplice/symbol.hpp"

namespace flatsplice {

struct Production {
    Word lhs;  // nonempty, contains at least one nonterminal
    Word rhs;  // possibly empty
    bool operator==(const Production& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct Grammar {
    std::string name;
    SymbolSet nonterminals;
    SymbolSet terminals;
    Symbol start;
    std::vector<Production> productions;

    // Throws std::invalid_argument: disjoint nonterminal/terminal sets,
    // start is a nonterminal, production symbols housed, every left side
    // nonempty with at least one nonterminal.
    void validate() const;

    bool is_nonterminal(Symbol s) const { return nonterminals.count(s) > 0; }
    bool is_terminal(Symbol s) const { return terminals.count(s) > 0; }
    // True when every production rewrites a single nonterminal.
    bool is_context_free() const;
};

enum class NormalForm { RightLinear, Cnf, Gnf, Kuroda };

std::string to_string(NormalForm f);

struct FormViolation {
    std::size_t production_index;  // SIZE_MAX for grammar-level violations
    std::string reason;
};

// Empty result means the grammar is in the stated form.
//   right-linear: A -> a B | a
//   cnf:          A -> B C | a
//   gnf:          A -> a B1..Bk (k >= 0)
//   kuroda:       A -> B C | A B -> C D | A -> a | A -> eps
std::vector<FormViolation> validate_form(const Grammar& g, NormalForm f);

struct LanguageSlice {
    WordSet words;   // terminal words of length <= the requested bound
    bool exact;      // false iff the sentential-form cap pruned the search
    std::uint64_t forms_explored = 0;
};

// Bounded language oracle: breadth-first search over sentential forms.
// For context-free grammars, forms whose minimum terminal yield exceeds
// max_len are pruned exactly; any form longer than sentential_bound is
// dropped and clears `exact`, as does giving up after max_forms distinct
// forms (nullable-heavy grammars can pack unboundedly many forms under
// any length cap). Every returned word is derivable.
LanguageSlice grammar_language_upto(const Grammar& g, std::size_t max_len,
                                    std::size_t sentential_bound,
                                    std::uint64_t max_forms = 2000000);

// Chomsky normal form conversion for context-free grammars, preserving
// L(g) minus the empty word. Fresh symbols derive deterministically from
// the symbols they replace. Throws std::invalid_argument when some
// production has a non-single left side.
Grammar to_cnf(const Grammar& g);

}  // namespace flatsplice
