#include "flatsplice/system.hpp"

#include <deque>
#include <stdexcept>

namespace flatsplice {

InitialSet InitialSet::finite(WordSet words) {
    InitialSet s;
    s.finite_ = std::move(words);
    return s;
}

InitialSet InitialSet::regular(RegularSet set) {
    InitialSet s;
    s.regular_ = std::move(set);
    return s;
}

const WordSet& InitialSet::finite_words() const {
    if (is_regular()) throw std::logic_error("initial set is regular, not finite");
    return finite_;
}

const RegularSet& InitialSet::regular_set() const {
    if (!is_regular()) throw std::logic_error("initial set is finite, not regular");
    return *regular_;
}

bool InitialSet::contains(const Word& w) const {
    return is_regular() ? regular_->contains(w) : finite_.count(w) > 0;
}

WordSet InitialSet::members_upto(std::size_t max_len) const {
    if (is_regular()) return regular_->enumerate_upto(max_len);
    WordSet out;
    for (const Word& w : finite_)
        if (w.size() <= max_len) out.insert(w);
    return out;
}

bool InitialSet::has_member_longer_than(std::size_t len) const {
    if (is_regular()) return regular_->has_word_longer_than(len);
    for (const Word& w : finite_)
        if (w.size() > len) return true;
    return false;
}

bool InitialSet::has_partner(const FlatSplicingRule& r, const SymbolSet& alphabet) const {
    if (!is_regular()) {
        for (const Word& w : finite_)
            if (partner_matches(w, r)) return true;
        return false;
    }
    RegularSet shape = RegularSet::partner_language(r.gamma, r.delta, alphabet);
    return regular_->intersects(shape);
}

std::vector<Word> InitialSet::partners(const FlatSplicingRule& r, const SymbolSet& alphabet,
                                       std::size_t partner_len_bound) const {
    (void)alphabet;
    WordSet pool = is_regular() ? regular_->enumerate_upto(partner_len_bound) : finite_;
    std::vector<Word> out;
    for (const Word& w : pool)
        if (partner_matches(w, r)) out.push_back(w);
    return out;
}

SymbolSet InitialSet::symbols() const {
    if (is_regular()) return regular_->alphabet();
    SymbolSet out;
    for (const Word& w : finite_)
        for (const Symbol& s : w.symbols()) out.insert(s);
    return out;
}

bool InitialSet::operator==(const InitialSet& o) const {
    if (is_regular() != o.is_regular()) return false;
    if (is_regular()) return regular_->pattern() == o.regular_->pattern();
    return finite_ == o.finite_;
}

namespace {

void require_housed(const Word& w, const SymbolSet& alphabet, const std::string& what) {
    for (const Symbol& s : w.symbols())
        if (!alphabet.count(s))
            throw std::invalid_argument(what + " uses symbol '" + std::string(s.name()) +
                                        "' not in the alphabet");
}

}  // namespace

void FlatSplicingSystem::validate() const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const FlatSplicingRule& r = rules[i];
        r.validate();
        const std::string where = "rule " + std::to_string(i + 1);
        require_housed(r.alpha, alphabet, where + " left context");
        require_housed(r.gamma, alphabet, where + " prefix handle");
        require_housed(r.delta, alphabet, where + " suffix handle");
        require_housed(r.beta, alphabet, where + " right context");
    }
    if (initial.is_regular()) {
        if (initial.regular_set().accepts_epsilon())
            throw std::invalid_argument("initial set contains the empty word");
        for (const Symbol& s : initial.regular_set().alphabet())
            if (!alphabet.count(s))
                throw std::invalid_argument("initial set uses symbol '" + std::string(s.name()) +
                                            "' not in the alphabet");
    } else {
        for (const Word& w : initial.finite_words()) {
            if (w.empty()) throw std::invalid_argument("initial set contains the empty word");
            require_housed(w, alphabet, "axiom '" + w.str() + "'");
        }
    }
}

SystemType system_type(const FlatSplicingSystem& sys) {
    SystemType t;
    for (const FlatSplicingRule& r : sys.rules) {
        t.m = std::max(t.m, std::max(r.alpha.size(), r.beta.size()));
        t.n = std::max(t.n, r.gamma.size() + r.delta.size());
    }
    return t;
}

std::string SystemType::str() const {
    return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

bool applicable(const FlatSplicingSystem& sys, const Word& u, Applicability mode) {
    for (const FlatSplicingRule& r : sys.rules) {
        if (match_sites(u, r).empty()) continue;
        if (mode == Applicability::ContextOnly) return true;
        if (sys.initial.has_partner(r, sys.alphabet)) return true;
    }
    return false;
}

WordSet closure_language_upto(const FlatSplicingSystem& sys, std::size_t max_len) {
    WordSet lang = sys.initial.members_upto(max_len);
    std::deque<Word> work(lang.begin(), lang.end());
    auto add = [&](const Word& w) {
        if (w.size() <= max_len && lang.insert(w).second) work.push_back(w);
    };
    while (!work.empty()) {
        Word u = work.front();
        work.pop_front();
        // Pair u with every word currently known, in both operand roles.
        // Later arrivals pick up their pairings with u when they are popped.
        std::vector<Word> snapshot(lang.begin(), lang.end());
        for (const FlatSplicingRule& r : sys.rules) {
            for (const Word& v : snapshot) {
                for (const Word& w : splice(u, v, r)) add(w);
                for (const Word& w : splice(v, u, r)) add(w);
            }
        }
    }
    return lang;
}

}  // namespace flatsplice
