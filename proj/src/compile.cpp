#include "flatsplice/compile.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace flatsplice {

Word Homomorphism::apply(const Word& labels) const {
    Word out;
    for (const Symbol& s : labels.symbols()) {
        auto it = images.find(s);
        if (it == images.end())
            throw std::out_of_range("no image for label '" + std::string(s.name()) + "'");
        out.append(it->second);
    }
    return out;
}

WordSet Homomorphism::apply(const WordSet& words) const {
    WordSet out;
    for (const Word& w : words) out.insert(apply(w));
    return out;
}

Word CompilationOutput::project(const Word& label_word) const {
    return hom ? hom->apply(label_word) : label_word;
}

namespace {

std::string production_text(const Production& p) {
    return p.lhs.str() + " -> " + p.rhs.str();
}

void require_form(const Grammar& g, NormalForm f) {
    std::vector<FormViolation> v = validate_form(g, f);
    if (v.empty()) return;
    std::string where = v[0].production_index == static_cast<std::size_t>(-1)
                            ? "grammar"
                            : "production " + std::to_string(v[0].production_index + 1);
    throw std::invalid_argument("not in " + to_string(f) + " form: " + where + ": " + v[0].reason);
}

std::vector<Production> dedupe(const std::vector<Production>& prods, bool& dropped) {
    std::vector<Production> out;
    for (const Production& p : prods) {
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(p);
        else
            dropped = true;
    }
    return out;
}

SymbolSet uni(std::initializer_list<const SymbolSet*> parts) {
    SymbolSet out;
    for (const SymbolSet* p : parts) out.insert(p->begin(), p->end());
    return out;
}

std::vector<Symbol> dom(const SymbolSet& s) { return {s.begin(), s.end()}; }

// One position of a context template: a fixed symbol or a variable slot.
struct Pos {
    bool is_var = false;
    Symbol sym;
    std::size_t var = 0;
};
Pos fix(Symbol s) { return {false, s, 0}; }
Pos var(std::size_t v) { return {true, Symbol{}, v}; }

struct Schema {
    std::string base;  // label stem; instances get .1, .2, ... when variables exist
    GeneratedItemInfo info;
    std::vector<Pos> alpha, beta;
    Word gamma, delta;
    std::vector<std::vector<Symbol>> domains;
    std::function<bool(const std::vector<Symbol>&)> keep;  // optional admissibility filter
};

class Builder {
public:
    Builder(const Grammar& g, std::string sysname, LabelingMode mode) {
        out_.lsys.name = std::move(sysname);
        out_.lsys.mode = mode;
        for (const Symbol& s : g.nonterminals) used_.insert(std::string(s.name()));
        for (const Symbol& s : g.terminals) used_.insert(std::string(s.name()));
    }

    Symbol mint(std::string base) {
        while (used_.count(base)) base += "q";
        used_.insert(base);
        return Symbol::intern(base);
    }

    Symbol mint_housed(const std::string& base) {
        Symbol s = mint(base);
        house(s);
        return s;
    }

    void house(Symbol s) { out_.lsys.sys.alphabet.insert(s); }

    void axiom(const Word& w, const std::string& group, const std::string& source) {
        auto it = axiom_at_.find(w);
        if (it != axiom_at_.end()) {
            GeneratedItemInfo& info = out_.axiom_info[it->second].second;
            if (!source.empty() && info.source.find(source) == std::string::npos)
                info.source += "; " + source;
            return;
        }
        axiom_at_.emplace(w, out_.axiom_info.size());
        out_.axiom_info.push_back({w, GeneratedItemInfo{group, source, ""}});
        axioms_.insert(w);
    }

    // Expands a schema: szilard targets mint one label per instance (with a
    // homomorphic image); control targets reuse `shared` on every instance.
    void expand_szilard(const Schema& s, const Word& image) {
        expand(s, [&](std::size_t ordinal, bool has_vars) {
            std::string name = has_vars ? s.base + "." + std::to_string(ordinal) : s.base;
            Symbol lab = mint(name);
            images_[lab] = image;
            return Label(lab);
        });
    }

    void expand_control(const Schema& s, Label shared) {
        expand(s, [&](std::size_t, bool) { return shared; });
    }

    void note(std::string text) { out_.notes.push_back(std::move(text)); }

    CompilationOutput take(bool with_hom) {
        out_.lsys.sys.initial = InitialSet::finite(std::move(axioms_));
        if (with_hom) out_.hom = Homomorphism{std::move(images_)};
        out_.lsys.validate();
        return std::move(out_);
    }

private:
    void expand(const Schema& s, const std::function<Label(std::size_t, bool)>& make_label) {
        const bool has_vars = !s.domains.empty();
        std::vector<std::size_t> idx(s.domains.size(), 0);
        for (const auto& d : s.domains)
            if (d.empty()) return;  // an empty class silences the schema

        std::size_t ordinal = 0;
        while (true) {
            std::vector<Symbol> asg(s.domains.size());
            for (std::size_t v = 0; v < idx.size(); ++v) asg[v] = s.domains[v][idx[v]];
            if (!s.keep || s.keep(asg)) {
                ++ordinal;
                FlatSplicingRule r{subst(s.alpha, asg), s.gamma, s.delta, subst(s.beta, asg)};
                out_.lsys.sys.rules.push_back(std::move(r));
                out_.lsys.labels.push_back(make_label(ordinal, has_vars));
                out_.rule_info.push_back(s.info);
            }
            if (!has_vars) break;
            std::size_t v = idx.size();
            while (v > 0 && ++idx[v - 1] == s.domains[v - 1].size()) idx[--v] = 0;
            if (v == 0) break;
        }
    }

    static Word subst(const std::vector<Pos>& tpl, const std::vector<Symbol>& asg) {
        std::vector<Symbol> syms;
        syms.reserve(tpl.size());
        for (const Pos& p : tpl) syms.push_back(p.is_var ? asg[p.var] : p.sym);
        return Word(std::move(syms));
    }

    CompilationOutput out_;
    std::set<std::string> used_;
    WordSet axioms_;
    std::map<Word, std::size_t> axiom_at_;
    std::map<Symbol, Word> images_;
};

// The two-window exclusion shared by the widest production-simulation
// contexts: no marker directly left of another marker, and no two adjacent
// markers at the window's end.
std::function<bool(const std::vector<Symbol>&)> window_filter(const SymbolSet& d1,
                                                              const SymbolSet& d12) {
    return [d1, d12](const std::vector<Symbol>& a) {
        bool bad1 = d1.count(a[1]) && d12.count(a[2]);
        bool bad2 = d12.count(a[2]) && d12.count(a[3]);
        return !bad1 && !bad2;
    };
}

// ---------------------------------------------------------------------------
// right-linear -> szilard / control

CompilationOutput compile_reg_common(const Grammar& g, bool control) {
    require_form(g, NormalForm::RightLinear);
    Builder b(g, g.name + (control ? "-cl" : "-sz"),
              control ? LabelingMode::Control : LabelingMode::Szilard);
    bool dropped = false;
    std::vector<Production> prods = dedupe(g.productions, dropped);
    if (dropped) b.note("duplicate productions were merged");

    Symbol X = b.mint_housed("X");
    Symbol Y = b.mint_housed("Y");

    // Nonterminals become D1..Dn, the start symbol first, the rest by name.
    std::map<Symbol, Symbol> D;
    std::map<Symbol, std::size_t> dnum;
    std::vector<Symbol> order{g.start};
    for (const Symbol& s : g.nonterminals)
        if (!(s == g.start)) order.push_back(s);
    for (std::size_t i = 0; i < order.size(); ++i) {
        D[order[i]] = b.mint_housed("D" + std::to_string(i + 1));
        dnum[order[i]] = i + 1;
    }

    SymbolSet letters;
    for (const Production& p : prods) letters.insert(p.rhs[0]);
    std::map<Symbol, Symbol> Ya;
    for (const Symbol& a : letters) Ya[a] = b.mint_housed("Y" + std::string(a.name()));

    b.axiom(Word{X, D.at(g.start), Y}, "start", "");
    for (const Production& p : prods) {
        Symbol a = p.rhs[0];
        if (p.rhs.size() == 2)
            b.axiom(Word{Ya.at(a), D.at(p.rhs[1])}, "production", production_text(p));
        else
            b.axiom(Word{Ya.at(a)}, "production", production_text(p));
    }

    for (const Production& p : prods) {
        Symbol A = p.lhs[0];
        Symbol a = p.rhs[0];
        Schema s;
        s.info.source = production_text(p);
        s.alpha = {fix(D.at(A))};
        s.beta = {fix(Y)};
        if (p.rhs.size() == 2) {
            Symbol B = p.rhs[1];
            s.info.group = "recursive-step";
            s.gamma = Word{Ya.at(a)};
            s.delta = Word{D.at(B)};
            s.base = std::string(a.name()) + "_" + std::string(D.at(B).name()) + "^" +
                     std::to_string(dnum.at(A));
        } else {
            s.info.group = "terminal-step";
            s.delta = Word{Ya.at(a)};
            s.base = std::string(a.name()) + "^" + std::to_string(dnum.at(A));
        }
        if (control)
            b.expand_control(s, Label(a));
        else
            b.expand_szilard(s, Word{a});
    }
    return b.take(!control);
}

// ---------------------------------------------------------------------------
// chomsky normal form -> szilard

CompilationOutput compile_cnf_impl(const Grammar& g) {
    require_form(g, NormalForm::Cnf);
    Builder b(g, g.name + "-sz", LabelingMode::Szilard);
    bool dropped = false;
    std::vector<Production> prods = dedupe(g.productions, dropped);
    if (dropped) b.note("duplicate productions were merged");

    Symbol X = b.mint_housed("X");
    Symbol Y = b.mint_housed("Y");
    Symbol E = b.mint_housed("E");
    for (const Symbol& s : g.nonterminals) b.house(s);

    std::vector<Symbol> M(prods.size());
    SymbolSet d1m, d2m;
    for (std::size_t i = 0; i < prods.size(); ++i) {
        M[i] = b.mint_housed("[r" + std::to_string(i + 1) + "]");
        (prods[i].rhs.size() == 2 ? d1m : d2m).insert(M[i]);
    }
    Symbol rk1 = b.mint_housed("[rk1]");
    Symbol rm = b.mint_housed("[rm]");

    const SymbolSet& N = g.nonterminals;
    SymbolSet Eset{E}, Yset{Y};

    b.axiom(Word{X, g.start, E, Y}, "start", "");
    for (std::size_t i = 0; i < prods.size(); ++i) {
        const Production& p = prods[i];
        if (p.rhs.size() == 2)
            b.axiom(Word{M[i], p.rhs[0], p.rhs[1]}, "production", production_text(p));
        else
            b.axiom(Word{M[i]}, "production", production_text(p));
    }
    b.axiom(Word{rk1}, "marker", "");
    b.axiom(Word{rm}, "marker", "");

    SymbolSet ne = uni({&N, &Eset});
    SymbolSet neyd1 = uni({&N, &Eset, &Yset, &d1m});
    SymbolSet nd12 = uni({&N, &d1m, &d2m});

    for (std::size_t i = 0; i < prods.size(); ++i) {
        const Production& p = prods[i];
        Schema s;
        s.info.source = production_text(p);
        if (p.rhs.size() == 2) {
            s.base = "[r" + std::to_string(i + 1) + "]^1";
            s.info.group = "binary-sim";
            s.alpha = {fix(p.lhs[0])};
            s.gamma = Word{M[i]};
            s.delta = Word{p.rhs[1]};
            s.beta = {var(0), var(1)};
            s.domains = {dom(ne), dom(neyd1)};
            s.keep = [&N, E, Y, &d1m](const std::vector<Symbol>& a) {
                if (N.count(a[0]) && a[1] == Y) return false;
                if (a[0] == E && N.count(a[1])) return false;
                if (a[0] == E && d1m.count(a[1])) return false;
                return true;
            };
            b.expand_szilard(s, Word{});
        } else {
            s.base = "[r" + std::to_string(i + 1) + "]^" + std::string(p.rhs[0].name());
            s.info.group = "terminal-sim";
            s.alpha = {fix(rm), fix(p.lhs[0])};
            s.delta = Word{M[i]};
            s.beta = {var(0)};
            s.domains = {dom(ne)};
            b.expand_szilard(s, Word{p.rhs[0]});
        }
    }
    {
        Schema s;
        s.base = "[rk1]q";
        s.info.group = "seed-marker";
        s.alpha = {fix(X)};
        s.delta = Word{rm};
        s.beta = {var(0)};
        s.domains = {dom(N)};
        b.expand_szilard(s, Word{});
    }
    {
        Schema s;
        s.base = "[rk2]q";
        s.info.group = "hop-marker";
        s.info.note = "wide hop window can pass unprocessed symbols; see KNOWN_DISCREPANCIES.md";
        s.alpha = {fix(rm), var(0)};
        s.delta = Word{rm};
        s.beta = {var(1)};
        s.domains = {dom(nd12), dom(nd12)};
        b.expand_szilard(s, Word{});
    }
    return b.take(true);
}

// ---------------------------------------------------------------------------
// greibach normal form -> control

CompilationOutput compile_gnf_impl(const Grammar& g) {
    require_form(g, NormalForm::Gnf);
    Builder b(g, g.name + "-cl", LabelingMode::Control);
    bool dropped = false;
    std::vector<Production> prods = dedupe(g.productions, dropped);
    if (dropped) b.note("duplicate productions were merged");

    Symbol X = b.mint_housed("X");
    Symbol Y = b.mint_housed("Y");
    for (const Symbol& s : g.nonterminals) b.house(s);

    // Head terminals are renamed apart per production (a, a, b becomes
    // a_1, a_2, b_1); each renamed head gets its guide symbol Y<head>.
    std::map<std::string, std::size_t> letter_count;
    std::vector<Symbol> guide(prods.size());
    for (std::size_t i = 0; i < prods.size(); ++i) {
        std::string base(prods[i].rhs[0].name());
        std::size_t c = ++letter_count[base];
        guide[i] = b.mint_housed("Y" + base + "_" + std::to_string(c));
    }
    SymbolSet guides(guide.begin(), guide.end());
    SymbolSet Yset{Y};
    SymbolSet ny = uni({&g.nonterminals, &Yset});

    b.axiom(Word{X, g.start, Y}, "start", "");
    for (std::size_t i = 0; i < prods.size(); ++i) {
        const Production& p = prods[i];
        Word ax{guide[i]};
        for (std::size_t j = 1; j < p.rhs.size(); ++j) ax.push_back(p.rhs[j]);
        b.axiom(ax, "production", production_text(p));
    }

    for (std::size_t i = 0; i < prods.size(); ++i) {
        const Production& p = prods[i];
        Symbol A = p.lhs[0];
        Label lab{p.rhs[0]};
        Word gamma, delta;
        if (p.rhs.size() >= 2) {
            gamma = Word{guide[i]};
            delta = Word{p.rhs[p.rhs.size() - 1]};
        } else {
            delta = Word{guide[i]};
        }
        Schema head;
        head.base = std::string(p.rhs[0].name());
        head.info = {"head-step", production_text(p), ""};
        head.alpha = {fix(X), fix(A)};
        head.gamma = gamma;
        head.delta = delta;
        head.beta = {fix(Y)};
        b.expand_control(head, lab);

        Schema chain;
        chain.base = head.base;
        chain.info = {"chain-step", production_text(p), ""};
        chain.alpha = {var(0), fix(A)};
        chain.gamma = gamma;
        chain.delta = delta;
        chain.beta = {var(1)};
        chain.domains = {dom(guides), dom(ny)};
        b.expand_control(chain, lab);
    }
    return b.take(false);
}

// ---------------------------------------------------------------------------
// kuroda normal form -> szilard / control

CompilationOutput compile_kuroda_common(const Grammar& g, bool control) {
    require_form(g, NormalForm::Kuroda);
    Builder b(g, g.name + (control ? "-cl" : "-sz"),
              control ? LabelingMode::Control : LabelingMode::Szilard);
    bool dropped = false;
    std::vector<Production> prods = dedupe(g.productions, dropped);
    if (dropped) b.note("duplicate productions were merged");

    Symbol X = b.mint_housed("X");
    Symbol Y = b.mint_housed("Y");
    for (const Symbol& s : g.nonterminals) b.house(s);

    enum Kind { Binary, Pair, Term, Erase };
    auto kind_of = [&](const Production& p) {
        if (p.lhs.size() == 2) return Pair;
        if (p.rhs.size() == 2) return Binary;
        if (p.rhs.size() == 1) return Term;
        return Erase;
    };

    std::vector<Symbol> M(prods.size());
    std::vector<Symbol> K(prods.size());  // valid for Term/Erase only
    SymbolSet d1m, d2m, d3m, d4m;
    for (std::size_t i = 0; i < prods.size(); ++i) {
        M[i] = b.mint_housed("[r" + std::to_string(i + 1) + "]");
        switch (kind_of(prods[i])) {
            case Binary: d1m.insert(M[i]); break;
            case Pair: d2m.insert(M[i]); break;
            case Term:
                d3m.insert(M[i]);
                K[i] = b.mint_housed("k" + std::string(prods[i].rhs[0].name()) + "_i" +
                                     std::to_string(i + 1));
                break;
            case Erase:
                d4m.insert(M[i]);
                K[i] = b.mint_housed("klam_i" + std::to_string(i + 1));
                break;
        }
    }
    Symbol rm = b.mint_housed("[rm]");

    const SymbolSet& N = g.nonterminals;
    SymbolSet Yset{Y};
    SymbolSet nd1 = uni({&N, &d1m});
    SymbolSet nd12 = uni({&N, &d1m, &d2m});
    SymbolSet nyd1 = uni({&N, &Yset, &d1m});
    SymbolSet nyd12 = uni({&N, &Yset, &d1m, &d2m});
    SymbolSet nd134 = uni({&N, &d1m, &d3m, &d4m});
    SymbolSet d12m = uni({&d1m, &d2m});

    b.axiom(Word{X, g.start, Y}, "start", "");
    for (std::size_t i = 0; i < prods.size(); ++i) {
        const Production& p = prods[i];
        switch (kind_of(p)) {
            case Binary:
                b.axiom(Word{M[i], p.rhs[0], p.rhs[1]}, "production", production_text(p));
                break;
            case Pair:
                b.axiom(Word{M[i], p.rhs[0], p.rhs[1]}, "production", production_text(p));
                b.axiom(Word{M[i]}, "marker", production_text(p));
                break;
            case Term:
            case Erase:
                b.axiom(Word{K[i]}, "production", production_text(p));
                break;
        }
    }
    b.axiom(Word{rm}, "marker", "");

    // Emission helper: szilard mints labels and records the image; control
    // shares the given letter label (or none).
    auto emit = [&](const Schema& s, const std::optional<Symbol>& letter) {
        if (control)
            b.expand_control(s, letter ? Label(*letter) : Label());
        else
            b.expand_szilard(s, letter ? Word{*letter} : Word{});
    };

    for (std::size_t i = 0; i < prods.size(); ++i) {
        const Production& p = prods[i];
        const std::string ri = "r" + std::to_string(i + 1);
        const std::string src = production_text(p);
        switch (kind_of(p)) {
            case Binary: {
                Symbol A = p.lhs[0], C = p.rhs[1];
                auto mk = [&](int j) {
                    Schema s;
                    s.base = ri + "^" + std::to_string(j);
                    s.info = {"r^" + std::to_string(j), src, ""};
                    s.alpha = {fix(A)};
                    s.gamma = Word{M[i]};
                    s.delta = Word{C};
                    return s;
                };
                Schema s1 = mk(1);
                s1.beta = {fix(Y)};
                emit(s1, std::nullopt);
                Schema s2 = mk(2);
                s2.beta = {var(0), fix(Y)};
                s2.domains = {dom(N)};
                emit(s2, std::nullopt);
                Schema s3 = mk(3);
                s3.beta = {var(0), var(1), fix(Y)};
                s3.domains = {dom(N), dom(N)};
                emit(s3, std::nullopt);
                Schema s4 = mk(4);
                s4.beta = {var(0), var(1), var(2), fix(Y)};
                s4.domains = {dom(N), dom(N), dom(N)};
                emit(s4, std::nullopt);
                Schema s5 = mk(5);
                s5.info.note = "window form without an end sentinel";
                s5.beta = {var(0), var(1), var(2), var(3)};
                s5.domains = {dom(N), dom(nd1), dom(nd12), dom(nd12)};
                s5.keep = window_filter(d1m, d12m);
                emit(s5, std::nullopt);
                Schema s6 = mk(6);
                s6.beta = {var(0), var(1), var(2), var(3), var(1)};
                s6.domains = {dom(N), dom(d2m), dom(N), dom(d1m)};
                emit(s6, std::nullopt);
                break;
            }
            case Pair: {
                Symbol A = p.lhs[0], B = p.lhs[1], D = p.rhs[1];
                auto mk = [&](int j) {
                    Schema s;
                    s.base = ri + "^" + std::to_string(j);
                    s.info = {"r^" + std::to_string(j), src, ""};
                    return s;
                };
                Schema s7 = mk(7);
                s7.alpha = {fix(A), fix(B)};
                s7.gamma = Word{M[i]};
                s7.delta = Word{D};
                s7.beta = {var(0), var(1)};
                s7.domains = {dom(N), dom(N)};
                emit(s7, std::nullopt);
                Schema s8 = mk(8);
                s8.alpha = {fix(A), fix(B)};
                s8.gamma = Word{M[i]};
                s8.delta = Word{D};
                s8.beta = {fix(Y)};
                emit(s8, std::nullopt);
                Schema s9 = mk(9);
                s9.alpha = {fix(A), fix(B)};
                s9.gamma = Word{M[i]};
                s9.delta = Word{D};
                s9.beta = {var(0), fix(Y)};
                s9.domains = {dom(N)};
                emit(s9, std::nullopt);
                Schema s10 = mk(10);
                s10.alpha = {fix(A)};
                s10.delta = Word{M[i]};
                s10.beta = {var(0), var(1)};
                s10.domains = {dom(N), dom(d1m)};
                emit(s10, std::nullopt);
                Schema s11 = mk(11);
                s11.alpha = {fix(M[i]), var(0), var(1)};
                s11.delta = Word{M[i]};
                s11.beta = {var(2), var(3)};
                s11.domains = {dom(N), dom(d1m), dom(N), dom(nd1)};
                emit(s11, std::nullopt);
                Schema s12 = mk(12);
                s12.alpha = {var(0), fix(M[i]), fix(B)};
                s12.gamma = Word{M[i]};
                s12.delta = Word{D};
                s12.beta = {var(1), var(2)};
                s12.domains = {dom(d1m), dom(N), dom(nyd1)};
                emit(s12, std::nullopt);
                Schema s13 = mk(13);
                s13.alpha = {fix(A), fix(B)};
                s13.gamma = Word{M[i]};
                s13.delta = Word{D};
                s13.beta = {var(0), var(1), var(2), var(3), var(1)};
                s13.domains = {dom(N), dom(d2m), dom(N), dom(d1m)};
                emit(s13, std::nullopt);
                break;
            }
            case Term:
            case Erase: {
                const bool erase = kind_of(p) == Erase;
                Symbol A = p.lhs[0];
                std::optional<Symbol> letter;
                if (!erase) letter = p.rhs[0];
                // Terminal simulation labels carry the letter; erasure
                // labels reuse the r-numbering further along.
                auto base_of = [&](int j) {
                    if (erase) return ri + "^" + std::to_string(j + 13);
                    return std::string(p.rhs[0].name()) + "_" + std::to_string(i + 1) + "^" +
                           std::to_string(j);
                };
                auto mk = [&](int j) {
                    Schema s;
                    s.base = base_of(j);
                    s.info = {erase ? "r^" + std::to_string(j + 13) : "a^" + std::to_string(j), src,
                              ""};
                    s.delta = Word{K[i]};
                    return s;
                };
                Schema t1 = mk(1);
                t1.alpha = {fix(X), fix(A)};
                t1.beta = {fix(Y)};
                emit(t1, letter);
                Schema t2 = mk(2);
                t2.alpha = {fix(rm), fix(A)};
                t2.beta = {fix(Y)};
                emit(t2, letter);
                Schema t3 = mk(3);
                t3.alpha = {fix(rm), fix(A)};
                t3.beta = {var(0), fix(Y)};
                t3.domains = {dom(N)};
                emit(t3, letter);
                Schema t4 = mk(4);
                t4.alpha = {fix(rm), fix(A)};
                t4.beta = {var(0), var(1), fix(Y)};
                t4.domains = {dom(N), dom(N)};
                emit(t4, letter);
                Schema t5 = mk(5);
                t5.alpha = {fix(rm), fix(A)};
                t5.beta = {var(0), var(1), var(2), fix(Y)};
                t5.domains = {dom(N), dom(N), dom(N)};
                emit(t5, letter);
                Schema t6 = mk(6);
                t6.info.note = "window form without an end sentinel";
                t6.alpha = {fix(rm), fix(A)};
                t6.beta = {var(0), var(1), var(2), var(3)};
                t6.domains = {dom(N), dom(nd1), dom(nd12), dom(nd12)};
                t6.keep = window_filter(d1m, d12m);
                emit(t6, letter);
                Schema t7 = mk(7);
                t7.alpha = {fix(rm), fix(A)};
                t7.beta = {var(0), var(1), var(2), var(3), var(1)};
                t7.domains = {dom(N), dom(d2m), dom(N), dom(d1m)};
                emit(t7, letter);
                Schema refresh;
                refresh.base = (erase ? "rm+2^" : "rm+1^") + std::to_string(i + 1);
                refresh.info = {erase ? "rm+2^i" : "rm+1^i", src, ""};
                refresh.alpha = {fix(rm), fix(A), fix(K[i])};
                refresh.delta = Word{rm};
                refresh.beta = {var(0), var(1)};
                refresh.domains = {dom(N), dom(nyd12)};
                emit(refresh, std::nullopt);
                break;
            }
        }
    }

    // Marker refresh family, independent of any particular production.
    {
        Schema s;
        s.base = "rm";
        s.info = {"rm", "", ""};
        s.alpha = {fix(X), var(0), var(1)};
        s.delta = Word{rm};
        s.beta = {var(2)};
        s.domains = {dom(N), dom(d1m), dom(N)};
        emit(s, std::nullopt);
    }
    {
        Schema s;
        s.base = "rm+1";
        s.info = {"rm+1", "", ""};
        s.alpha = {fix(rm), var(0), var(1), var(2)};
        s.delta = Word{rm};
        s.beta = {var(3)};
        s.domains = {dom(N), dom(N), dom(d2m), dom(N)};
        emit(s, std::nullopt);
    }
    {
        Schema s;
        s.base = "rm+2";
        s.info = {"rm+2", "", ""};
        s.alpha = {fix(rm), var(0), var(1)};
        s.delta = Word{rm};
        s.beta = {var(2), var(3), var(1)};
        s.domains = {dom(N), dom(d2m), dom(N), dom(d1m)};
        emit(s, std::nullopt);
    }
    {
        Schema s;
        s.base = "rm+3";
        s.info = {"rm+3", "", ""};
        s.alpha = {fix(rm), var(0), var(1)};
        s.delta = Word{rm};
        s.beta = {var(2), var(3)};
        s.domains = {dom(N), dom(d1m), dom(N), dom(nd12)};
        emit(s, std::nullopt);
    }
    {
        Schema s;
        s.base = "rm+4";
        s.info = {"rm+4", "", ""};
        s.alpha = {fix(rm), var(0), var(1), var(2)};
        s.delta = Word{rm};
        s.beta = {var(3), var(2)};
        s.domains = {dom(N), dom(d1m), dom(d2m), dom(N)};
        emit(s, std::nullopt);
    }
    {
        Schema s;
        s.base = "rm+5";
        s.info = {"rm+5", "", ""};
        s.alpha = {fix(rm), var(0), var(1), var(2)};
        s.delta = Word{rm};
        s.beta = {var(3), var(4), var(2)};
        s.domains = {dom(N), dom(d1m), dom(d2m), dom(N), dom(d1m)};
        emit(s, std::nullopt);
    }
    {
        Schema s;
        s.base = "rm+6";
        s.info = {"rm+6", "", ""};
        s.alpha = {fix(rm), var(0), var(1)};
        s.delta = Word{rm};
        s.beta = {var(2), var(3)};
        s.domains = {dom(N), dom(d2m), dom(N), dom(nd134)};
        emit(s, std::nullopt);
    }
    return b.take(!control);
}

}  // namespace

CompilationOutput compile_reg_sz(const Grammar& g) { return compile_reg_common(g, false); }
CompilationOutput compile_reg_cl(const Grammar& g) { return compile_reg_common(g, true); }
CompilationOutput compile_cnf_sz(const Grammar& g) { return compile_cnf_impl(g); }
CompilationOutput compile_gnf_cl(const Grammar& g) { return compile_gnf_impl(g); }
CompilationOutput compile_kuroda_sz(const Grammar& g) { return compile_kuroda_common(g, false); }
CompilationOutput compile_kuroda_cl(const Grammar& g) { return compile_kuroda_common(g, true); }

}  // namespace flatsplice
