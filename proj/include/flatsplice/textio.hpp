#pragma once

// Line-oriented text formats for systems, grammars, and homomorphisms.
// '#' starts a comment; blank lines are ignored; 'eps' denotes the empty
// word wherever a word is expected. Parse errors carry origin:line.
//
// System files:
//   system NAME
//   mode szilard            # or control; optional, default szilard
//   alphabet a b c          # repeatable, cumulative
//   axiom X S Y             # repeatable; or instead:
//   axioms-pattern (a)+ b   # regular initial set
//   rule LAB : X A | g - d | Y    # LAB 'eps' = unlabeled (control only)
//
// Grammar files:
//   grammar NAME
//   nonterminals S A        # repeatable, cumulative
//   terminals a b
//   start S
//   prod S -> a S           # 'prod A B -> C D', 'prod A -> eps'
//
// Homomorphism files: one 'LABEL -> image tokens' line per label
// ('-> eps' for the empty image).

#include <iosfwd>
#include <string>

#include "flatsplice/compile.hpp"
#include "flatsplice/derivation.hpp"
#include "flatsplice/grammar.hpp"

namespace flatsplice {

LabeledFlatSplicingSystem parse_system(std::istream& in, const std::string& origin = "<input>");
LabeledFlatSplicingSystem parse_system_file(const std::string& path);
std::string print_system(const LabeledFlatSplicingSystem& lsys);

Grammar parse_grammar(std::istream& in, const std::string& origin = "<input>");
Grammar parse_grammar_file(const std::string& path);
std::string print_grammar(const Grammar& g);

Homomorphism parse_hom(std::istream& in, const std::string& origin = "<input>");
Homomorphism parse_hom_file(const std::string& path);
std::string print_hom(const Homomorphism& h);

}  // namespace flatsplice
