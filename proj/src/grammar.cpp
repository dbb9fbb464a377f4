#include "flatsplice/grammar.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace flatsplice {

void Grammar::validate() const {
    for (const Symbol& s : nonterminals)
        if (terminals.count(s))
            throw std::invalid_argument("symbol '" + std::string(s.name()) +
                                        "' is both a nonterminal and a terminal");
    if (!nonterminals.count(start))
        throw std::invalid_argument("start symbol '" + std::string(start.name()) +
                                    "' is not a nonterminal");
    auto housed = [&](const Word& w, const std::string& what) {
        for (const Symbol& s : w.symbols())
            if (!nonterminals.count(s) && !terminals.count(s))
                throw std::invalid_argument(what + " uses undeclared symbol '" +
                                            std::string(s.name()) + "'");
    };
    for (std::size_t i = 0; i < productions.size(); ++i) {
        const Production& p = productions[i];
        const std::string where = "production " + std::to_string(i + 1);
        if (p.lhs.empty()) throw std::invalid_argument(where + " has an empty left side");
        housed(p.lhs, where + " left side");
        housed(p.rhs, where + " right side");
        bool has_nt = false;
        for (const Symbol& s : p.lhs.symbols())
            if (nonterminals.count(s)) has_nt = true;
        if (!has_nt)
            throw std::invalid_argument(where + " rewrites no nonterminal");
    }
}

bool Grammar::is_context_free() const {
    for (const Production& p : productions)
        if (p.lhs.size() != 1 || !nonterminals.count(p.lhs[0])) return false;
    return true;
}

std::string to_string(NormalForm f) {
    switch (f) {
        case NormalForm::RightLinear: return "right-linear";
        case NormalForm::Cnf: return "cnf";
        case NormalForm::Gnf: return "gnf";
        case NormalForm::Kuroda: return "kuroda";
    }
    return "?";
}

std::vector<FormViolation> validate_form(const Grammar& g, NormalForm f) {
    g.validate();
    std::vector<FormViolation> out;
    auto nt = [&](Symbol s) { return g.is_nonterminal(s); };
    auto t = [&](Symbol s) { return g.is_terminal(s); };

    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        const Production& p = g.productions[i];
        const Word& l = p.lhs;
        const Word& r = p.rhs;
        std::string why;
        switch (f) {
            case NormalForm::RightLinear: {
                if (l.size() != 1 || !nt(l[0]))
                    why = "left side must be a single nonterminal";
                else if (r.size() == 1 && t(r[0]))
                    ;  // A -> a
                else if (r.size() == 2 && t(r[0]) && nt(r[1]))
                    ;  // A -> a B
                else
                    why = "right side must be a terminal or a terminal followed by a nonterminal";
                break;
            }
            case NormalForm::Cnf: {
                if (l.size() != 1 || !nt(l[0]))
                    why = "left side must be a single nonterminal";
                else if (r.size() == 1 && t(r[0]))
                    ;  // A -> a
                else if (r.size() == 2 && nt(r[0]) && nt(r[1]))
                    ;  // A -> B C
                else
                    why = "right side must be two nonterminals or one terminal";
                break;
            }
            case NormalForm::Gnf: {
                bool ok = l.size() == 1 && nt(l[0]) && r.size() >= 1 && t(r[0]);
                for (std::size_t j = 1; ok && j < r.size(); ++j)
                    if (!nt(r[j])) ok = false;
                if (!ok)
                    why = "right side must be a terminal followed by nonterminals";
                break;
            }
            case NormalForm::Kuroda: {
                bool single = l.size() == 1 && nt(l[0]);
                bool pair = l.size() == 2 && nt(l[0]) && nt(l[1]);
                if (single &&
                    (r.empty() || (r.size() == 1 && t(r[0])) ||
                     (r.size() == 2 && nt(r[0]) && nt(r[1]))))
                    ;  // A -> eps | a | B C
                else if (pair && r.size() == 2 && nt(r[0]) && nt(r[1]))
                    ;  // A B -> C D
                else
                    why = "must be A->BC, AB->CD, A->a, or A->eps over declared symbols";
                break;
            }
        }
        if (!why.empty()) out.push_back({i, why});
    }
    return out;
}

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add64(std::uint64_t a, std::uint64_t b) {
    return (a == kInf || b == kInf || a > kInf - b) ? kInf : a + b;
}

// Minimum terminal-yield per symbol; kInf for symbols that derive no
// terminal word. Context-free grammars only.
std::map<Symbol, std::uint64_t> min_yields(const Grammar& g) {
    std::map<Symbol, std::uint64_t> y;
    for (const Symbol& s : g.terminals) y[s] = 1;
    for (const Symbol& s : g.nonterminals) y[s] = kInf;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            std::uint64_t total = 0;
            for (const Symbol& s : p.rhs.symbols()) total = sat_add64(total, y.at(s));
            std::uint64_t& cur = y.at(p.lhs[0]);
            if (total < cur) {
                cur = total;
                changed = true;
            }
        }
    }
    return y;
}

std::vector<std::size_t> lhs_occurrences(const Word& form, const Word& lhs) {
    std::vector<std::size_t> out;
    if (lhs.size() > form.size()) return out;
    for (std::size_t i = 0; i + lhs.size() <= form.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < lhs.size(); ++j)
            if (!(form[i + j] == lhs[j])) hit = false;
        if (hit) out.push_back(i);
    }
    return out;
}

Word replace_at(const Word& form, std::size_t pos, std::size_t len, const Word& repl) {
    std::vector<Symbol> syms;
    syms.reserve(form.size() - len + repl.size());
    for (std::size_t i = 0; i < pos; ++i) syms.push_back(form[i]);
    for (const Symbol& s : repl.symbols()) syms.push_back(s);
    for (std::size_t i = pos + len; i < form.size(); ++i) syms.push_back(form[i]);
    return Word(std::move(syms));
}

}  // namespace

LanguageSlice grammar_language_upto(const Grammar& g, std::size_t max_len,
                                    std::size_t sentential_bound, std::uint64_t max_forms) {
    g.validate();
    LanguageSlice out;
    out.exact = true;

    const bool cf = g.is_context_free();
    std::map<Symbol, std::uint64_t> yield;
    if (cf) yield = min_yields(g);
    auto form_yield = [&](const Word& w) {
        std::uint64_t total = 0;
        for (const Symbol& s : w.symbols()) total = sat_add64(total, yield.at(s));
        return total;
    };

    std::unordered_set<Word, WordHash> visited;
    std::deque<Word> frontier;
    Word axiom{g.start};
    if (cf && form_yield(axiom) > max_len) return out;
    visited.insert(axiom);
    frontier.push_back(axiom);

    while (!frontier.empty()) {
        if (out.forms_explored >= max_forms) {
            out.exact = false;
            break;
        }
        Word form = frontier.front();
        frontier.pop_front();
        ++out.forms_explored;

        bool all_terminal = true;
        for (const Symbol& s : form.symbols())
            if (!g.is_terminal(s)) all_terminal = false;
        if (all_terminal) {
            if (form.size() <= max_len) out.words.insert(form);
            continue;
        }

        for (const Production& p : g.productions) {
            for (std::size_t pos : lhs_occurrences(form, p.lhs)) {
                Word next = replace_at(form, pos, p.lhs.size(), p.rhs);
                if (cf && form_yield(next) > max_len) continue;  // exact prune
                if (next.size() > sentential_bound) {
                    out.exact = false;
                    continue;
                }
                if (visited.insert(next).second) frontier.push_back(next);
            }
        }
    }
    return out;
}

namespace {

class FreshNames {
public:
    explicit FreshNames(const Grammar& g) {
        for (const Symbol& s : g.nonterminals) used_.insert(std::string(s.name()));
        for (const Symbol& s : g.terminals) used_.insert(std::string(s.name()));
    }
    Symbol fresh(std::string base) {
        while (used_.count(base)) base += "q";
        used_.insert(base);
        return Symbol::intern(base);
    }

private:
    std::set<std::string> used_;
};

}  // namespace

Grammar to_cnf(const Grammar& g) {
    g.validate();
    if (!g.is_context_free())
        throw std::invalid_argument("cnf conversion needs single-nonterminal left sides");

    Grammar out;
    out.name = g.name.empty() ? "cnf" : g.name + "-cnf";
    out.terminals = g.terminals;
    out.nonterminals = g.nonterminals;
    out.start = g.start;
    out.productions = g.productions;
    FreshNames names(g);

    // Fresh start symbol when the old one occurs on a right side.
    bool start_in_rhs = false;
    for (const Production& p : out.productions)
        for (const Symbol& s : p.rhs.symbols())
            if (s == out.start) start_in_rhs = true;
    if (start_in_rhs) {
        Symbol s0 = names.fresh(std::string(out.start.name()) + "0");
        out.nonterminals.insert(s0);
        out.productions.insert(out.productions.begin(), Production{Word{s0}, Word{out.start}});
        out.start = s0;
    }

    // Terminals inside long right sides get wrapper nonterminals.
    std::map<Symbol, Symbol> wrap;
    auto wrapper = [&](Symbol a) {
        auto it = wrap.find(a);
        if (it != wrap.end()) return it->second;
        Symbol w = names.fresh("T_" + std::string(a.name()));
        wrap.emplace(a, w);
        out.nonterminals.insert(w);
        return w;
    };
    {
        std::vector<Production> next;
        for (const Production& p : out.productions) {
            if (p.rhs.size() < 2) {
                next.push_back(p);
                continue;
            }
            std::vector<Symbol> syms;
            for (const Symbol& s : p.rhs.symbols())
                syms.push_back(out.terminals.count(s) ? wrapper(s) : s);
            next.push_back({p.lhs, Word(std::move(syms))});
        }
        for (const auto& [a, w] : wrap) next.push_back({Word{w}, Word{a}});
        out.productions = std::move(next);
    }

    // Long right sides become binary chains.
    {
        std::vector<Production> next;
        std::size_t counter = 0;
        for (const Production& p : out.productions) {
            if (p.rhs.size() <= 2) {
                next.push_back(p);
                continue;
            }
            std::vector<Symbol> rest(p.rhs.symbols());
            Word head = p.lhs;
            while (rest.size() > 2) {
                Symbol link = names.fresh("R" + std::to_string(++counter));
                out.nonterminals.insert(link);
                next.push_back({head, Word{rest[0], link}});
                head = Word{link};
                rest.erase(rest.begin());
            }
            next.push_back({head, Word{rest[0], rest[1]}});
        }
        out.productions = std::move(next);
    }

    // Drop empty-word productions, compensating at every nullable position.
    {
        std::set<Symbol> nullable;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Production& p : out.productions) {
                if (nullable.count(p.lhs[0])) continue;
                bool all = true;
                for (const Symbol& s : p.rhs.symbols())
                    if (!nullable.count(s)) all = false;
                if (all) {
                    nullable.insert(p.lhs[0]);
                    changed = true;
                }
            }
        }
        std::vector<Production> next;
        auto push_unique = [&](Production q) {
            if (std::find(next.begin(), next.end(), q) == next.end()) next.push_back(std::move(q));
        };
        for (const Production& p : out.productions) {
            std::vector<std::size_t> opt;
            for (std::size_t i = 0; i < p.rhs.size(); ++i)
                if (nullable.count(p.rhs[i])) opt.push_back(i);
            for (std::uint32_t mask = 0; mask < (1u << opt.size()); ++mask) {
                std::vector<Symbol> syms;
                for (std::size_t i = 0; i < p.rhs.size(); ++i) {
                    auto it = std::find(opt.begin(), opt.end(), i);
                    bool drop = it != opt.end() && (mask >> (it - opt.begin())) & 1u;
                    if (!drop) syms.push_back(p.rhs[i]);
                }
                if (syms.empty()) continue;
                push_unique({p.lhs, Word(std::move(syms))});
            }
        }
        out.productions = std::move(next);
    }

    // Expand unit productions through their closure.
    {
        auto is_unit = [&](const Production& p) {
            return p.rhs.size() == 1 && out.nonterminals.count(p.rhs[0]) > 0;
        };
        std::map<Symbol, std::set<Symbol>> closure;
        for (const Symbol& a : out.nonterminals) {
            std::set<Symbol>& seen = closure[a];
            std::deque<Symbol> work{a};
            seen.insert(a);
            while (!work.empty()) {
                Symbol b = work.front();
                work.pop_front();
                for (const Production& p : out.productions)
                    if (p.lhs[0] == b && is_unit(p) && seen.insert(p.rhs[0]).second)
                        work.push_back(p.rhs[0]);
            }
        }
        std::vector<Production> next;
        auto push_unique = [&](Production q) {
            if (std::find(next.begin(), next.end(), q) == next.end()) next.push_back(std::move(q));
        };
        for (const Symbol& a : out.nonterminals)
            for (const Symbol& b : closure.at(a))
                for (const Production& p : out.productions)
                    if (p.lhs[0] == b && !is_unit(p)) push_unique({Word{a}, p.rhs});
        out.productions = std::move(next);
    }

    // Keep only generating, reachable productions.
    {
        std::set<Symbol> generating(out.terminals.begin(), out.terminals.end());
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Production& p : out.productions) {
                if (generating.count(p.lhs[0])) continue;
                bool all = true;
                for (const Symbol& s : p.rhs.symbols())
                    if (!generating.count(s)) all = false;
                if (all) {
                    generating.insert(p.lhs[0]);
                    changed = true;
                }
            }
        }
        std::vector<Production> kept;
        for (const Production& p : out.productions) {
            bool ok = generating.count(p.lhs[0]) > 0;
            for (const Symbol& s : p.rhs.symbols())
                if (!generating.count(s)) ok = false;
            if (ok) kept.push_back(p);
        }
        std::set<Symbol> reach{out.start};
        changed = true;
        while (changed) {
            changed = false;
            for (const Production& p : kept)
                if (reach.count(p.lhs[0]))
                    for (const Symbol& s : p.rhs.symbols())
                        if (reach.insert(s).second) changed = true;
        }
        out.productions.clear();
        for (const Production& p : kept)
            if (reach.count(p.lhs[0])) out.productions.push_back(p);
        SymbolSet nts;
        nts.insert(out.start);
        for (const Production& p : out.productions) {
            nts.insert(p.lhs[0]);
            for (const Symbol& s : p.rhs.symbols())
                if (out.nonterminals.count(s)) nts.insert(s);
        }
        out.nonterminals = nts;
    }

    out.validate();
    return out;
}

}  // namespace flatsplice
