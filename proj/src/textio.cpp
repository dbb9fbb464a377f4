#include "flatsplice/textio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace flatsplice {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string strip_comment(const std::string& line) {
    std::size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Word from a token span; a single 'eps' is the empty word.
Word word_from(const std::vector<std::string>& toks, std::size_t lo, std::size_t hi,
               const std::string& origin, std::size_t line) {
    if (hi - lo == 1 && toks[lo] == "eps") return Word{};
    std::vector<Symbol> syms;
    for (std::size_t i = lo; i < hi; ++i) {
        if (toks[i] == "eps") fail(origin, line, "'eps' cannot mix with other symbols");
        syms.push_back(Symbol::intern(toks[i]));
    }
    return Word(std::move(syms));
}

// Reads lines, strips comments, and hands (line number, tokens, raw text)
// to the visitor; blank lines are skipped.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string raw;
    std::size_t num = 0;
    while (std::getline(in, raw)) {
        ++num;
        std::string body = strip_comment(raw);
        std::vector<std::string> toks = tokens_of(body);
        if (toks.empty()) continue;
        fn(num, toks, body);
    }
}

}  // namespace

LabeledFlatSplicingSystem parse_system(std::istream& in, const std::string& origin) {
    LabeledFlatSplicingSystem lsys;
    WordSet axioms;
    std::optional<RegularSet> pattern;
    bool saw_name = false, saw_mode = false;

    for_each_line(in, [&](std::size_t num, const std::vector<std::string>& toks,
                          const std::string& body) {
        const std::string& kw = toks[0];
        if (kw == "system") {
            if (saw_name) fail(origin, num, "duplicate 'system' line");
            if (toks.size() != 2) fail(origin, num, "expected: system NAME");
            lsys.name = toks[1];
            saw_name = true;
        } else if (kw == "mode") {
            if (saw_mode) fail(origin, num, "duplicate 'mode' line");
            if (toks.size() != 2 || (toks[1] != "szilard" && toks[1] != "control"))
                fail(origin, num, "expected: mode szilard|control");
            lsys.mode = toks[1] == "szilard" ? LabelingMode::Szilard : LabelingMode::Control;
            saw_mode = true;
        } else if (kw == "alphabet") {
            if (toks.size() < 2) fail(origin, num, "expected: alphabet SYM...");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "eps") fail(origin, num, "'eps' is reserved");
                lsys.sys.alphabet.insert(Symbol::intern(toks[i]));
            }
        } else if (kw == "axiom") {
            if (pattern) fail(origin, num, "'axiom' cannot mix with 'axioms-pattern'");
            if (toks.size() < 2) fail(origin, num, "expected: axiom SYM...");
            axioms.insert(word_from(toks, 1, toks.size(), origin, num));
        } else if (kw == "axioms-pattern") {
            if (!axioms.empty()) fail(origin, num, "'axioms-pattern' cannot mix with 'axiom'");
            if (pattern) fail(origin, num, "duplicate 'axioms-pattern' line");
            std::string pat = trim(body.substr(body.find(kw) + kw.size()));
            if (pat.empty()) fail(origin, num, "expected: axioms-pattern PATTERN");
            try {
                pattern = RegularSet::from_pattern(pat);
            } catch (const std::invalid_argument& e) {
                fail(origin, num, e.what());
            }
        } else if (kw == "rule") {
            // rule LABEL : ALPHA | GAMMA - DELTA | BETA
            if (toks.size() < 3 || toks[2] != ":")
                fail(origin, num, "expected: rule LABEL : ALPHA | GAMMA - DELTA | BETA");
            std::size_t bar1 = 0, bar2 = 0, dash = 0;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                if (toks[i] == "|") {
                    if (!bar1)
                        bar1 = i;
                    else if (!bar2)
                        bar2 = i;
                    else
                        fail(origin, num, "too many '|' separators");
                } else if (toks[i] == "-" && bar1 && !bar2) {
                    if (dash) fail(origin, num, "too many '-' separators");
                    dash = i;
                }
            }
            if (!bar1 || !bar2 || !dash)
                fail(origin, num, "expected: rule LABEL : ALPHA | GAMMA - DELTA | BETA");
            if (bar1 == 3 || dash == bar1 + 1 || bar2 == dash + 1 || bar2 + 1 == toks.size())
                fail(origin, num, "each rule field needs symbols or 'eps'");
            FlatSplicingRule r;
            r.alpha = word_from(toks, 3, bar1, origin, num);
            r.gamma = word_from(toks, bar1 + 1, dash, origin, num);
            r.delta = word_from(toks, dash + 1, bar2, origin, num);
            r.beta = word_from(toks, bar2 + 1, toks.size(), origin, num);
            lsys.sys.rules.push_back(std::move(r));
            lsys.labels.push_back(toks[1] == "eps" ? Label{} : Label{Symbol::intern(toks[1])});
        } else {
            fail(origin, num, "unknown directive '" + kw + "'");
        }
    });

    if (!saw_name) throw std::runtime_error(origin + ": missing 'system NAME' line");
    if (pattern)
        lsys.sys.initial = InitialSet::regular(std::move(*pattern));
    else
        lsys.sys.initial = InitialSet::finite(std::move(axioms));
    try {
        lsys.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    return lsys;
}

std::string print_system(const LabeledFlatSplicingSystem& lsys) {
    std::ostringstream os;
    os << "system " << (lsys.name.empty() ? "unnamed" : lsys.name) << "\n";
    os << "mode " << (lsys.mode == LabelingMode::Szilard ? "szilard" : "control") << "\n";
    if (!lsys.sys.alphabet.empty()) {
        os << "alphabet";
        for (const Symbol& s : lsys.sys.alphabet) os << " " << s.name();
        os << "\n";
    }
    if (lsys.sys.initial.is_regular()) {
        os << "axioms-pattern " << lsys.sys.initial.regular_set().pattern() << "\n";
    } else {
        for (const Word& w : lsys.sys.initial.finite_words()) os << "axiom " << w.str() << "\n";
    }
    for (std::size_t i = 0; i < lsys.sys.rules.size(); ++i) {
        const FlatSplicingRule& r = lsys.sys.rules[i];
        const Label& lab = i < lsys.labels.size() ? lsys.labels[i] : Label{};
        os << "rule " << (lab ? std::string(lab->name()) : "eps") << " : " << r.alpha.str() << " | "
           << r.gamma.str() << " - " << r.delta.str() << " | " << r.beta.str() << "\n";
    }
    return os.str();
}

Grammar parse_grammar(std::istream& in, const std::string& origin) {
    Grammar g;
    bool saw_name = false, saw_start = false;

    for_each_line(in, [&](std::size_t num, const std::vector<std::string>& toks,
                          const std::string&) {
        const std::string& kw = toks[0];
        if (kw == "grammar") {
            if (saw_name) fail(origin, num, "duplicate 'grammar' line");
            if (toks.size() != 2) fail(origin, num, "expected: grammar NAME");
            g.name = toks[1];
            saw_name = true;
        } else if (kw == "nonterminals" || kw == "terminals") {
            if (toks.size() < 2) fail(origin, num, "expected: " + kw + " SYM...");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "eps") fail(origin, num, "'eps' is reserved");
                (kw[0] == 'n' ? g.nonterminals : g.terminals).insert(Symbol::intern(toks[i]));
            }
        } else if (kw == "start") {
            if (saw_start) fail(origin, num, "duplicate 'start' line");
            if (toks.size() != 2) fail(origin, num, "expected: start SYM");
            g.start = Symbol::intern(toks[1]);
            saw_start = true;
        } else if (kw == "prod") {
            std::size_t arrow = 0;
            for (std::size_t i = 1; i < toks.size(); ++i)
                if (toks[i] == "->") arrow = i;
            if (arrow == 0 || arrow == 1 || arrow + 1 == toks.size())
                fail(origin, num, "expected: prod LHS... -> RHS...|eps");
            Production p;
            p.lhs = word_from(toks, 1, arrow, origin, num);
            p.rhs = word_from(toks, arrow + 1, toks.size(), origin, num);
            g.productions.push_back(std::move(p));
        } else {
            fail(origin, num, "unknown directive '" + kw + "'");
        }
    });

    if (!saw_name) throw std::runtime_error(origin + ": missing 'grammar NAME' line");
    if (!saw_start) throw std::runtime_error(origin + ": missing 'start' line");
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    return g;
}

std::string print_grammar(const Grammar& g) {
    std::ostringstream os;
    os << "grammar " << (g.name.empty() ? "unnamed" : g.name) << "\n";
    if (!g.nonterminals.empty()) {
        os << "nonterminals";
        for (const Symbol& s : g.nonterminals) os << " " << s.name();
        os << "\n";
    }
    if (!g.terminals.empty()) {
        os << "terminals";
        for (const Symbol& s : g.terminals) os << " " << s.name();
        os << "\n";
    }
    os << "start " << g.start.name() << "\n";
    for (const Production& p : g.productions)
        os << "prod " << p.lhs.str() << " -> " << p.rhs.str() << "\n";
    return os.str();
}

Homomorphism parse_hom(std::istream& in, const std::string& origin) {
    Homomorphism h;
    for_each_line(in, [&](std::size_t num, const std::vector<std::string>& toks,
                          const std::string&) {
        if (toks.size() < 3 || toks[1] != "->")
            fail(origin, num, "expected: LABEL -> SYM...|eps");
        if (toks[0] == "eps") fail(origin, num, "'eps' is not a label");
        Symbol lab = Symbol::intern(toks[0]);
        if (h.images.count(lab)) fail(origin, num, "duplicate image for '" + toks[0] + "'");
        h.images[lab] = word_from(toks, 2, toks.size(), origin, num);
    });
    return h;
}

std::string print_hom(const Homomorphism& h) {
    std::ostringstream os;
    for (const auto& [lab, image] : h.images) os << lab.name() << " -> " << image.str() << "\n";
    return os.str();
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

}  // namespace

LabeledFlatSplicingSystem parse_system_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_system(in, path);
}

Grammar parse_grammar_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_grammar(in, path);
}

Homomorphism parse_hom_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_hom(in, path);
}

}  // namespace flatsplice
