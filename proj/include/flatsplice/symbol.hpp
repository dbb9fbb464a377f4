#pragma once

// Interned token symbols and token-atomic words.
//
// A Symbol is one indivisible token (e.g. `a`, `A1`, `[r3]`, `Ya_2`); words
// never split tokens. Interning makes symbol comparison O(1); the canonical
// order used throughout the library compares *names*, not intern ids, so it
// is stable across runs regardless of interning order.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flatsplice {

class Symbol {
public:
    Symbol() : id_(0) {}  // default = the reserved empty-name symbol
    static Symbol intern(std::string_view name);

    const std::string& name() const;
    std::uint32_t id() const { return id_; }

    bool operator==(const Symbol& o) const { return id_ == o.id_; }
    bool operator!=(const Symbol& o) const { return id_ != o.id_; }
    // Lexicographic by name: canonical, interning-order independent.
    bool operator<(const Symbol& o) const;

private:
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_;
};

// A word is a (possibly empty) sequence of symbols.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> syms) : syms_(std::move(syms)) {}
    Word(std::initializer_list<Symbol> syms) : syms_(syms) {}

    // Parses whitespace-separated tokens; the token `eps` denotes the empty
    // word and may only appear alone.
    static Word parse(std::string_view text);

    std::size_t size() const { return syms_.size(); }
    bool empty() const { return syms_.empty(); }
    const Symbol& operator[](std::size_t i) const { return syms_[i]; }
    const std::vector<Symbol>& symbols() const { return syms_; }
    auto begin() const { return syms_.begin(); }
    auto end() const { return syms_.end(); }

    void push_back(Symbol s) { syms_.push_back(s); }
    void append(const Word& w) { syms_.insert(syms_.end(), w.begin(), w.end()); }

    Word subword(std::size_t pos, std::size_t len) const;
    // Does this word end, at gap position `gap`, with `w`? (w is a suffix of
    // the prefix of length `gap`.)
    bool has_suffix_at(std::size_t gap, const Word& w) const;
    // Does `w` occur starting at position `pos`?
    bool has_prefix_at(std::size_t pos, const Word& w) const;
    bool starts_with(const Word& w) const { return has_prefix_at(0, w); }
    bool ends_with(const Word& w) const { return has_suffix_at(size(), w); }

    // Space-joined token text; `eps` for the empty word.
    std::string str() const;

    bool operator==(const Word& o) const { return syms_ == o.syms_; }
    bool operator!=(const Word& o) const { return syms_ != o.syms_; }
    // Canonical order: by length, then lexicographic by symbol name.
    bool operator<(const Word& o) const;

private:
    std::vector<Symbol> syms_;
};

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a over intern ids
        for (const Symbol& s : w) {
            h ^= s.id();
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Canonically ordered word set (shortlex by name); the library's standard
// representation for enumerated languages.
using WordSet = std::set<Word>;

// Symbol sets ordered by name.
using SymbolSet = std::set<Symbol>;

std::string to_string(const WordSet& ws);  // one word per line

}  // namespace flatsplice
