#pragma once

// Compilers from grammars in normal forms to labeled flat splicing
// systems whose szilard language (under a letter homomorphism) or control
// language matches the grammar's language.
//
// Rules come from schemas whose context positions range over symbol
// classes; each schema expands into one rule per admissible assignment,
// in canonical order, with labels suffixed .1, .2, ... Provenance records
// tie every emitted rule and axiom back to its schema and the production
// it simulates.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatsplice/derivation.hpp"
#include "flatsplice/grammar.hpp"

namespace flatsplice {

struct Homomorphism {
    // Label symbol -> image word (possibly empty) over the target alphabet.
    std::map<Symbol, Word> images;

    // Throws std::out_of_range on an unmapped symbol.
    Word apply(const Word& labels) const;
    WordSet apply(const WordSet& words) const;
};

struct GeneratedItemInfo {
    std::string group;   // schema family, e.g. "binary-sim" or "r^5"
    std::string source;  // grammar production it simulates, or "" for scaffolding
    std::string note;    // quirks worth surfacing, empty when unremarkable
};

struct CompilationOutput {
    LabeledFlatSplicingSystem lsys;
    // Absent for control-language targets, whose labels are already
    // terminal letters.
    std::optional<Homomorphism> hom;
    std::vector<GeneratedItemInfo> rule_info;                 // parallel to lsys.sys.rules
    std::vector<std::pair<Word, GeneratedItemInfo>> axiom_info;
    std::vector<std::string> notes;  // construction-level remarks

    // Image of a label word in the grammar's terminal alphabet: hom applied
    // when present, identity otherwise.
    Word project(const Word& label_word) const;
};

// Right-linear grammar -> system whose szilard language maps onto L(g)
// under the letter homomorphism.
CompilationOutput compile_reg_sz(const Grammar& g);
// Right-linear grammar -> control-language system, labels are terminals.
CompilationOutput compile_reg_cl(const Grammar& g);
// Chomsky-normal-form grammar -> szilard system with homomorphism.
CompilationOutput compile_cnf_sz(const Grammar& g);
// Greibach-normal-form grammar -> control-language system.
CompilationOutput compile_gnf_cl(const Grammar& g);
// Kuroda-normal-form grammar -> szilard system with homomorphism.
CompilationOutput compile_kuroda_sz(const Grammar& g);
// Kuroda-normal-form grammar -> control-language system.
CompilationOutput compile_kuroda_cl(const Grammar& g);

}  // namespace flatsplice
