#pragma once

// Regular sets over token symbols.
//
// Patterns are whitespace-tolerant token expressions: adjacency is
// concatenation, `|` is alternation, postfix `*`/`+`/`?` repeat the previous
// atom, parentheses group, `eps` is the empty word. The metacharacters
// ( ) | * + ? cannot appear inside token names. Examples:
//   `X A1 A1 A1* Y | Aq`      `a* c`      `( a b )* a`
//
// Construction compiles the pattern to a DFA (subset construction over the
// symbols named in the pattern), so membership, bounded enumeration and
// intersection emptiness are all decidable and deterministic.

#include <memory>
#include <string>
#include <string_view>

#include "flatsplice/symbol.hpp"

namespace flatsplice {

class RegularSet {
public:
    RegularSet();  // empty language

    // Throws std::invalid_argument with a position message on a bad pattern.
    static RegularSet from_pattern(std::string_view pattern);

    // { v : gamma prefix of v, delta suffix of v, |v| >= max(1, |gamma|+|delta|) }
    // with the middle ranging over alphabet^*. This is exactly the partner
    // language of a rule with those handles.
    static RegularSet partner_language(const Word& gamma, const Word& delta,
                                       const SymbolSet& alphabet);

    bool contains(const Word& w) const;
    bool accepts_epsilon() const;
    bool empty() const;  // empty language?

    // All members of length <= max_len, canonically ordered.
    WordSet enumerate_upto(std::size_t max_len) const;

    // Does the intersection with `other` contain any word?
    bool intersects(const RegularSet& other) const;

    // Does the language contain a word strictly longer than len?
    bool has_word_longer_than(std::size_t len) const;

    // Symbols that can actually occur in members.
    SymbolSet alphabet() const;

    // Source pattern text when built from one (empty for synthesized sets);
    // kept verbatim so printed systems round-trip.
    const std::string& pattern() const { return pattern_; }

    struct Dfa;

private:
    std::shared_ptr<const Dfa> dfa_;
    std::string pattern_;
};

}  // namespace flatsplice
