#include "flatsplice/regset.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace flatsplice {

namespace {

// ---- pattern lexing/parsing into an epsilon-NFA (Thompson style) ----

struct Token {
    enum Kind { Sym, Eps, LParen, RParen, Bar, Star, Plus, Quest, End } kind;
    Symbol sym;
    std::size_t pos;
};

std::vector<Token> lex_pattern(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
        Token t{Token::Sym, Symbol(), i};
        switch (c) {
            case '(': t.kind = Token::LParen; ++i; break;
            case ')': t.kind = Token::RParen; ++i; break;
            case '|': t.kind = Token::Bar; ++i; break;
            case '*': t.kind = Token::Star; ++i; break;
            case '+': t.kind = Token::Plus; ++i; break;
            case '?': t.kind = Token::Quest; ++i; break;
            default: {
                std::size_t j = i;
                while (j < text.size() && std::string_view(" \t\n\r()|*+?").find(text[j]) ==
                                              std::string_view::npos)
                    ++j;
                std::string_view name = text.substr(i, j - i);
                if (name == "eps") t.kind = Token::Eps;
                else t.sym = Symbol::intern(name);
                i = j;
            }
        }
        out.push_back(t);
    }
    out.push_back({Token::End, Symbol(), text.size()});
    return out;
}

struct Nfa {
    struct State {
        std::vector<std::pair<Symbol, int>> edges;
        std::vector<int> eps;
    };
    std::vector<State> states;
    int new_state() {
        states.emplace_back();
        return static_cast<int>(states.size()) - 1;
    }
};

struct Frag { int in, out; };

class PatternParser {
public:
    PatternParser(std::vector<Token> toks, Nfa& nfa) : toks_(std::move(toks)), nfa_(nfa) {}

    Frag parse() {
        Frag f = alt();
        expect(Token::End);
        return f;
    }

private:
    const Token& cur() const { return toks_[idx_]; }
    void advance() { ++idx_; }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("pattern error at offset " + std::to_string(cur().pos) +
                                    ": " + what);
    }
    void expect(Token::Kind k) {
        if (cur().kind != k) fail("unexpected token");
        if (k != Token::End) advance();
    }

    Frag alt() {
        Frag f = cat();
        while (cur().kind == Token::Bar) {
            advance();
            Frag g = cat();
            int in = nfa_.new_state(), out = nfa_.new_state();
            nfa_.states[in].eps = {f.in, g.in};
            nfa_.states[f.out].eps.push_back(out);
            nfa_.states[g.out].eps.push_back(out);
            f = {in, out};
        }
        return f;
    }

    Frag cat() {
        Frag f = rep();
        while (cur().kind == Token::Sym || cur().kind == Token::Eps ||
               cur().kind == Token::LParen) {
            Frag g = rep();
            nfa_.states[f.out].eps.push_back(g.in);
            f = {f.in, g.out};
        }
        return f;
    }

    Frag rep() {
        Frag f = atom();
        while (cur().kind == Token::Star || cur().kind == Token::Plus ||
               cur().kind == Token::Quest) {
            int in = nfa_.new_state(), out = nfa_.new_state();
            nfa_.states[in].eps.push_back(f.in);
            nfa_.states[f.out].eps.push_back(out);
            if (cur().kind != Token::Plus) nfa_.states[in].eps.push_back(out);
            if (cur().kind != Token::Quest) nfa_.states[f.out].eps.push_back(f.in);
            advance();
            f = {in, out};
        }
        return f;
    }

    Frag atom() {
        switch (cur().kind) {
            case Token::Sym: {
                int in = nfa_.new_state(), out = nfa_.new_state();
                nfa_.states[in].edges.emplace_back(cur().sym, out);
                advance();
                return {in, out};
            }
            case Token::Eps: {
                int in = nfa_.new_state(), out = nfa_.new_state();
                nfa_.states[in].eps.push_back(out);
                advance();
                return {in, out};
            }
            case Token::LParen: {
                advance();
                Frag f = alt();
                expect(Token::RParen);
                return f;
            }
            default: fail("expected symbol, `eps` or `(`");
        }
    }

    std::vector<Token> toks_;
    std::size_t idx_ = 0;
    Nfa& nfa_;
};

void eps_closure(const Nfa& nfa, std::vector<int>& set) {
    std::vector<char> in_set(nfa.states.size(), 0);
    for (int s : set) in_set[s] = 1;
    std::queue<int> work;
    for (int s : set) work.push(s);
    while (!work.empty()) {
        int s = work.front();
        work.pop();
        for (int t : nfa.states[s].eps)
            if (!in_set[t]) {
                in_set[t] = 1;
                set.push_back(t);
                work.push(t);
            }
    }
    std::sort(set.begin(), set.end());
}

}  // namespace

// Deterministic automaton; states are numbered in subset-construction
// discovery order, which is itself canonical because the alphabet is sorted
// by symbol name.
struct RegularSet::Dfa {
    std::vector<Symbol> alphabet;        // sorted by name
    std::vector<std::vector<int>> next;  // [state][alphabet idx] -> state or -1
    std::vector<char> accept;
    std::vector<char> coaccessible;      // can reach an accepting state
    int start = 0;

    static std::shared_ptr<const Dfa> determinize(const Nfa& nfa, int in, int out) {
        auto dfa = std::make_shared<Dfa>();
        SymbolSet alpha_set;
        for (const auto& st : nfa.states)
            for (const auto& [sym, _] : st.edges) alpha_set.insert(sym);
        dfa->alphabet.assign(alpha_set.begin(), alpha_set.end());

        std::map<std::vector<int>, int> ids;
        std::vector<std::vector<int>> subsets;
        std::vector<int> start_set = {in};
        eps_closure(nfa, start_set);
        ids.emplace(start_set, 0);
        subsets.push_back(start_set);
        for (std::size_t si = 0; si < subsets.size(); ++si) {
            std::vector<int> row(dfa->alphabet.size(), -1);
            const std::vector<int> current = subsets[si];
            dfa->accept.push_back(
                std::binary_search(current.begin(), current.end(), out) ? 1 : 0);
            for (std::size_t ai = 0; ai < dfa->alphabet.size(); ++ai) {
                std::vector<int> tgt;
                for (int s : current)
                    for (const auto& [sym, t] : nfa.states[s].edges)
                        if (sym == dfa->alphabet[ai]) tgt.push_back(t);
                if (tgt.empty()) continue;
                eps_closure(nfa, tgt);
                tgt.erase(std::unique(tgt.begin(), tgt.end()), tgt.end());
                auto [it, inserted] = ids.emplace(tgt, static_cast<int>(subsets.size()));
                if (inserted) subsets.push_back(tgt);
                row[ai] = it->second;
            }
            dfa->next.push_back(std::move(row));
        }
        dfa->compute_coaccessible();
        return dfa;
    }

    void compute_coaccessible() {
        // reverse reachability from accepting states
        std::size_t n = next.size();
        coaccessible.assign(n, 0);
        std::vector<std::vector<int>> rev(n);
        for (std::size_t s = 0; s < n; ++s)
            for (int t : next[s])
                if (t >= 0) rev[t].push_back(static_cast<int>(s));
        std::queue<int> work;
        for (std::size_t s = 0; s < n; ++s)
            if (accept[s]) {
                coaccessible[s] = 1;
                work.push(static_cast<int>(s));
            }
        while (!work.empty()) {
            int s = work.front();
            work.pop();
            for (int p : rev[s])
                if (!coaccessible[p]) {
                    coaccessible[p] = 1;
                    work.push(p);
                }
        }
    }
};

RegularSet::RegularSet() {
    Nfa nfa;
    int in = nfa.new_state(), out = nfa.new_state();  // no path: empty language
    dfa_ = Dfa::determinize(nfa, in, out);
}

RegularSet RegularSet::from_pattern(std::string_view pattern) {
    Nfa nfa;
    PatternParser parser(lex_pattern(pattern), nfa);
    Frag f = parser.parse();
    RegularSet out;
    out.dfa_ = Dfa::determinize(nfa, f.in, f.out);
    out.pattern_ = std::string(pattern);
    return out;
}

RegularSet RegularSet::partner_language(const Word& gamma, const Word& delta,
                                        const SymbolSet& alphabet) {
    Nfa nfa;
    int in = nfa.new_state();
    int cur = in;
    for (const Symbol& s : gamma) {
        int nxt = nfa.new_state();
        nfa.states[cur].edges.emplace_back(s, nxt);
        cur = nxt;
    }
    // middle: alphabet^*, or alphabet^+ when both handles are empty (a
    // partner must be nonempty)
    int mid = nfa.new_state();
    if (gamma.empty() && delta.empty()) {
        for (const Symbol& s : alphabet) nfa.states[cur].edges.emplace_back(s, mid);
    } else {
        nfa.states[cur].eps.push_back(mid);
    }
    for (const Symbol& s : alphabet) nfa.states[mid].edges.emplace_back(s, mid);
    cur = mid;
    for (const Symbol& s : delta) {
        int nxt = nfa.new_state();
        nfa.states[cur].edges.emplace_back(s, nxt);
        cur = nxt;
    }
    RegularSet out;
    out.dfa_ = Dfa::determinize(nfa, in, cur);
    return out;
}

bool RegularSet::contains(const Word& w) const {
    const Dfa& d = *dfa_;
    int s = d.start;
    for (const Symbol& sym : w) {
        auto it = std::lower_bound(d.alphabet.begin(), d.alphabet.end(), sym);
        if (it == d.alphabet.end() || !(*it == sym)) return false;
        s = d.next[s][it - d.alphabet.begin()];
        if (s < 0) return false;
    }
    return d.accept[s];
}

bool RegularSet::accepts_epsilon() const { return dfa_->accept[dfa_->start]; }

bool RegularSet::empty() const { return !dfa_->coaccessible[dfa_->start]; }

WordSet RegularSet::enumerate_upto(std::size_t max_len) const {
    const Dfa& d = *dfa_;
    WordSet out;
    std::vector<Symbol> prefix;
    // depth-first in alphabet (name) order; co-accessibility prunes dead walks
    auto walk = [&](auto&& self, int s) -> void {
        if (!d.coaccessible[s]) return;
        if (d.accept[s]) out.insert(Word(prefix));
        if (prefix.size() == max_len) return;
        for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
            int t = d.next[s][ai];
            if (t < 0) continue;
            prefix.push_back(d.alphabet[ai]);
            self(self, t);
            prefix.pop_back();
        }
    };
    walk(walk, d.start);
    return out;
}

bool RegularSet::intersects(const RegularSet& other) const {
    const Dfa& a = *dfa_;
    const Dfa& b = *other.dfa_;
    // BFS over the product; only symbols in both alphabets can advance both.
    std::map<std::pair<int, int>, char> seen;
    std::queue<std::pair<int, int>> work;
    work.emplace(a.start, b.start);
    seen[{a.start, b.start}] = 1;
    while (!work.empty()) {
        auto [sa, sb] = work.front();
        work.pop();
        if (a.accept[sa] && b.accept[sb]) return true;
        for (std::size_t ai = 0; ai < a.alphabet.size(); ++ai) {
            int ta = a.next[sa][ai];
            if (ta < 0) continue;
            auto it = std::lower_bound(b.alphabet.begin(), b.alphabet.end(), a.alphabet[ai]);
            if (it == b.alphabet.end() || !(*it == a.alphabet[ai])) continue;
            int tb = b.next[sb][it - b.alphabet.begin()];
            if (tb < 0) continue;
            if (seen.emplace(std::make_pair(ta, tb), 1).second) work.emplace(ta, tb);
        }
    }
    return false;
}

bool RegularSet::has_word_longer_than(std::size_t len) const {
    const Dfa& d = *dfa_;
    // If any word longer than len exists, one exists with length in
    // (len, len + |states|]: longer witnesses shed simple cycles one at a
    // time (each at most |states| long) until the length lands in range.
    std::size_t horizon = len + d.next.size();
    std::vector<char> reach(d.next.size(), 0);
    reach[d.start] = 1;
    for (std::size_t step = 1; step <= horizon; ++step) {
        std::vector<char> nxt(d.next.size(), 0);
        for (std::size_t s = 0; s < d.next.size(); ++s) {
            if (!reach[s]) continue;
            for (int t : d.next[s])
                if (t >= 0) nxt[t] = 1;
        }
        reach = std::move(nxt);
        if (step > len)
            for (std::size_t s = 0; s < d.next.size(); ++s)
                if (reach[s] && d.accept[s]) return true;
    }
    return false;
}

SymbolSet RegularSet::alphabet() const {
    // Only symbols on a live path (reachable and co-accessible) count.
    const Dfa& d = *dfa_;
    SymbolSet out;
    std::vector<char> reach(d.next.size(), 0);
    std::queue<int> work;
    reach[d.start] = 1;
    work.push(d.start);
    while (!work.empty()) {
        int s = work.front();
        work.pop();
        for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
            int t = d.next[s][ai];
            if (t < 0) continue;
            if (d.coaccessible[t]) out.insert(d.alphabet[ai]);
            if (!reach[t]) {
                reach[t] = 1;
                work.push(t);
            }
        }
    }
    return out;
}

}  // namespace flatsplice
