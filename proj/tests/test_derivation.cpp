#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "flatsplice/derivation.hpp"

using namespace flatsplice;

namespace {

Word W(const char* text) { return Word::parse(text); }

FlatSplicingRule R(const char* a, const char* g, const char* d, const char* b) {
    return FlatSplicingRule{W(a), W(g), W(d), W(b)};
}

SymbolSet sigma(const char* text) {
    SymbolSet s;
    for (Symbol sym : W(text)) s.insert(sym);
    return s;
}

Label L(const char* name) { return Symbol::intern(name); }

// a^n c: pump an A1 block, then cap it.  Labels a (pump) and c (cap).
LabeledFlatSplicingSystem anc_system() {
    LabeledFlatSplicingSystem lsys;
    lsys.name = "anc";
    lsys.sys.alphabet = sigma("X A1 Ap Y");
    lsys.sys.initial = InitialSet::finite({W("X A1 Y"), W("A1"), W("Ap")});
    lsys.sys.rules = {R("A1", "eps", "A1", "Y"), R("A1", "eps", "Ap", "Y")};
    lsys.labels = {L("a"), L("c")};
    return lsys;
}

// exactly one terminal shape: S Xa Y S Xa Y, reached in two step orders
LabeledFlatSplicingSystem aa_system() {
    LabeledFlatSplicingSystem lsys;
    lsys.name = "aa";
    lsys.sys.alphabet = sigma("S Xa Y");
    lsys.sys.initial = InitialSet::finite({W("S Y S Y"), W("Xa")});
    lsys.sys.rules = {R("S", "eps", "Xa", "Y")};
    lsys.labels = {L("a")};
    return lsys;
}

// unbounded doubling: every word has exactly one continuation, none terminal
LabeledFlatSplicingSystem doubling_system() {
    LabeledFlatSplicingSystem lsys;
    lsys.name = "doubling";
    lsys.sys.alphabet = sigma("a b");
    lsys.sys.initial = InitialSet::finite({W("a b")});
    lsys.sys.rules = {R("a", "a", "b", "b")};
    lsys.labels = {L("x")};
    return lsys;
}

SearchLimits steps(std::size_t n) {
    SearchLimits lim;
    lim.max_steps = n;
    return lim;
}

WordSet label_words_of(const LabeledFlatSplicingSystem& lsys, const DerivationSet& ds) {
    WordSet out;
    for (const Derivation& d : ds.derivations) out.insert(d.label_word(lsys));
    return out;
}

}  // namespace

TEST_CASE("label discipline") {
    LabeledFlatSplicingSystem lsys = anc_system();
    CHECK_NOTHROW(lsys.validate());

    SUBCASE("szilard labels must be distinct") {
        lsys.labels = {L("a"), L("a")};
        CHECK_THROWS_AS(lsys.validate(), std::invalid_argument);
    }
    SUBCASE("szilard labels must be total") {
        lsys.labels = {L("a"), std::nullopt};
        CHECK_THROWS_AS(lsys.validate(), std::invalid_argument);
    }
    SUBCASE("labels sit outside the alphabet") {
        lsys.labels = {L("a"), L("A1")};
        CHECK_THROWS_AS(lsys.validate(), std::invalid_argument);
    }
    SUBCASE("labels are parallel to rules") {
        lsys.labels = {L("a")};
        CHECK_THROWS_AS(lsys.validate(), std::invalid_argument);
    }
    SUBCASE("control mode allows sharing and gaps") {
        lsys.mode = LabelingMode::Control;
        lsys.labels = {L("a"), L("a")};
        CHECK_NOTHROW(lsys.validate());
        lsys.labels = {std::nullopt, L("a")};
        CHECK_NOTHROW(lsys.validate());
        // but label symbols still stay out of the alphabet
        lsys.labels = {std::nullopt, L("Y")};
        CHECK_THROWS_AS(lsys.validate(), std::invalid_argument);
    }
}

TEST_CASE("rule_with_label") {
    LabeledFlatSplicingSystem lsys = anc_system();
    CHECK(lsys.rule_with_label(Symbol::intern("a")) == 0);
    CHECK(lsys.rule_with_label(Symbol::intern("c")) == 1);
    CHECK_FALSE(lsys.rule_with_label(Symbol::intern("q")).has_value());
}

TEST_CASE("label_word reads step labels in order, skipping unlabeled steps") {
    LabeledFlatSplicingSystem lsys = anc_system();
    Derivation d;
    d.start = W("X A1 Y");
    DerivationStep s1{0, 2, W("A1"), W("X A1 Y"), W("X A1 A1 Y")};
    DerivationStep s2{1, 3, W("Ap"), W("X A1 A1 Y"), W("X A1 A1 Ap Y")};
    d.steps = {s1, s2};
    CHECK(d.label_word(lsys) == W("a c"));
    CHECK(d.final_word() == W("X A1 A1 Ap Y"));

    lsys.mode = LabelingMode::Control;
    lsys.labels = {std::nullopt, L("c")};
    CHECK(d.label_word(lsys) == W("c"));
    lsys.labels = {std::nullopt, std::nullopt};
    CHECK(d.label_word(lsys) == Word{});

    Derivation bare;
    bare.start = W("A1");
    CHECK(bare.final_word() == W("A1"));
    CHECK(bare.label_word(lsys) == Word{});
}

TEST_CASE("step_options enumerates rule, site, partner in canonical order") {
    LabeledFlatSplicingSystem lsys;
    lsys.sys.alphabet = sigma("a b g h");
    lsys.sys.initial = InitialSet::finite({W("g"), W("b"), W("h g"), W("a b a")});
    lsys.sys.rules = {R("eps", "eps", "eps", "a"), R("a", "eps", "eps", "eps")};
    lsys.labels = {L("l0"), L("l1")};
    lsys.validate();

    Word u = W("a b a");
    std::vector<DerivationStep> opts = step_options(lsys, u, steps(1));
    // rule 0 matches before each a (sites 0, 2); rule 1 after each a (1, 3);
    // every nonempty initial word is a partner, in canonical word order
    std::vector<Word> partners{W("b"), W("g"), W("h g"), W("a b a")};
    REQUIRE(opts.size() == 16);
    std::size_t k = 0;
    for (std::size_t ri : {0, 1}) {
        for (std::size_t site : (ri == 0 ? std::vector<std::size_t>{0, 2}
                                         : std::vector<std::size_t>{1, 3})) {
            for (const Word& v : partners) {
                CAPTURE(k);
                CHECK(opts[k].rule_index == ri);
                CHECK(opts[k].site == site);
                CHECK(opts[k].partner == v);
                CHECK(opts[k].before == u);
                CHECK(opts[k].after == apply_rule(u, v, lsys.sys.rules[ri], site));
                ++k;
            }
        }
    }
}

TEST_CASE("step_options caps regular-set partner witnesses at the bound") {
    LabeledFlatSplicingSystem lsys;
    lsys.sys.alphabet = sigma("a b g");
    lsys.sys.initial = InitialSet::regular(RegularSet::from_pattern("a b | g a*"));
    lsys.sys.rules = {R("a", "g", "eps", "b")};
    lsys.labels = {L("l")};
    lsys.validate();

    SearchLimits lim = steps(1);
    lim.partner_len_bound = 3;
    std::vector<DerivationStep> opts = step_options(lsys, W("a b"), lim);
    REQUIRE(opts.size() == 3);  // g, g a, g a a
    CHECK(opts[0].partner == W("g"));
    CHECK(opts[2].partner == W("g a a"));
    CHECK(opts[2].after == W("a g a a b"));
}

TEST_CASE("terminal enumeration finds both orders of the two-site fill") {
    LabeledFlatSplicingSystem lsys = aa_system();
    DerivationSet ds = enumerate_terminal_derivations(lsys, steps(4));
    REQUIRE(ds.derivations.size() == 2);
    CHECK(ds.stats.clean());
    for (const Derivation& d : ds.derivations) {
        CHECK(d.start == W("S Y S Y"));
        CHECK(d.final_word() == W("S Xa Y S Xa Y"));
        CHECK(d.label_word(lsys) == W("a a"));
        CHECK_FALSE(verify_terminal_derivation(lsys, d).has_value());
    }
    // depth-first canonical order: leftmost site first
    CHECK(ds.derivations[0].steps[0].site == 1);
    CHECK(ds.derivations[1].steps[0].site == 3);

    // the single-word start Xa admits no step, so it yields no derivation
    // (terminality requires at least one step)
    LabelSlice sz = szilard_upto(lsys, steps(4));
    CHECK(sz.words == WordSet{W("a a")});
    CHECK(sz.stats.clean());
}

TEST_CASE("verify_terminal_derivation rejects broken derivations") {
    LabeledFlatSplicingSystem lsys = aa_system();
    Derivation good = enumerate_terminal_derivations(lsys, steps(4)).derivations[0];
    REQUIRE_FALSE(verify_terminal_derivation(lsys, good).has_value());

    SUBCASE("start must come from the initial set") {
        Derivation d = good;
        d.start = W("S Y");
        d.steps.clear();
        d.steps.push_back(DerivationStep{0, 1, W("Xa"), W("S Y"), W("S Xa Y")});
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("partner must come from the initial set") {
        Derivation d = good;
        d.steps[0].partner = W("Xa Xa");  // fits the handles, not the set
        // keep the splice arithmetic consistent so only membership fails
        d.steps[0].after = apply_rule(d.steps[0].before, d.steps[0].partner,
                                      lsys.sys.rules[0], d.steps[0].site);
        d.steps[1].before = d.steps[0].after;
        d.steps[1].after = apply_rule(d.steps[1].before, d.steps[1].partner,
                                      lsys.sys.rules[0], d.steps[1].site + 1);
        d.steps[1].site += 1;
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("steps must chain") {
        Derivation d = good;
        d.steps[1].before = d.start;
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("the recorded result must match the splice") {
        Derivation d = good;
        d.steps[1].after = W("S Xa Xa Y S Y");
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("the site must carry the rule contexts") {
        Derivation d = good;
        d.steps[0].site = 0;
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("the final word must be terminal") {
        Derivation d = good;
        d.steps.pop_back();
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("at least one step") {
        Derivation d;
        d.start = W("Xa");
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
    SUBCASE("rule index in range") {
        Derivation d = good;
        d.steps[0].rule_index = 7;
        CHECK(verify_terminal_derivation(lsys, d).has_value());
    }
}

TEST_CASE("pump-and-cap label words up to six steps") {
    LabeledFlatSplicingSystem lsys = anc_system();
    LabelSlice sz = szilard_upto(lsys, steps(6));
    CHECK(sz.words == WordSet{W("c"), W("a c"), W("a a c"), W("a a a c"),
                              W("a a a a c"), W("a a a a a c")});
    // pumping admits longer derivations than the budget: truncation reported
    CHECK(sz.stats.budget_truncated > 0);
    CHECK(sz.stats.partner_starved == 0);
    CHECK_FALSE(sz.stats.starts_truncated);

    // the slice grows with the budget and earlier words persist
    LabelSlice more = szilard_upto(lsys, steps(7));
    CHECK(more.words.size() == 7);
    CHECK(std::includes(more.words.begin(), more.words.end(), sz.words.begin(),
                        sz.words.end()));
}

TEST_CASE("an unboundedly pumping system truncates exactly once per forced path") {
    LabeledFlatSplicingSystem lsys = doubling_system();
    // one start, one site, one partner: a single forced path, never terminal
    LabelSlice sz = szilard_upto(lsys, steps(3));
    CHECK(sz.words.empty());
    CHECK(sz.stats.budget_truncated == 1);
    DerivationSet ds = enumerate_terminal_derivations(lsys, steps(3));
    CHECK(ds.derivations.empty());
    CHECK(ds.stats.budget_truncated == 1);
}

TEST_CASE("partner starvation is reported and never mistaken for terminality") {
    LabeledFlatSplicingSystem lsys;
    lsys.sys.alphabet = sigma("a b c g");
    // the only partner for the rule has 10 symbols
    lsys.sys.initial = InitialSet::regular(
        RegularSet::from_pattern("a b | g c c c c c c c c b"));
    lsys.sys.rules = {R("a", "g", "b", "b")};
    lsys.labels = {L("l")};
    lsys.validate();

    SearchLimits lim = steps(3);  // default witness bound 8 < 10
    LabelSlice sz = szilard_upto(lsys, lim);
    CHECK(sz.words.empty());
    CHECK(sz.stats.partner_starved > 0);
    CHECK(sz.stats.starts_truncated);  // the long member also exceeds the start bound

    // raising the witness bound resolves the starvation: the step fires and
    // its result is genuinely terminal
    lim.partner_len_bound = 12;
    LabelSlice wide = szilard_upto(lsys, lim);
    CHECK(wide.words == WordSet{W("l")});
    CHECK(wide.stats.partner_starved == 0);
    CHECK_FALSE(wide.stats.starts_truncated);
}

TEST_CASE("context-only applicability ignores partners when judging terminality") {
    LabeledFlatSplicingSystem lsys;
    lsys.sys.alphabet = sigma("a b g");
    lsys.sys.initial = InitialSet::finite({W("a b")});   // no g-partner at all
    lsys.sys.rules = {R("a", "eps", "eps", "b"), R("b", "g", "eps", "eps")};
    lsys.labels = {L("p"), L("q")};
    lsys.validate();

    // partner-aware: rule q has no partner, so words ending the p-chain are
    // judged by rule p alone; splicing a b into a b keeps an a|b gap, so
    // nothing terminates within budget
    SearchLimits aware = steps(3);
    CHECK(szilard_upto(lsys, aware).words.empty());

    // context-only: nothing changes here because rule p always fires first,
    // so paths still die by budget
    SearchLimits ctx = steps(3);
    ctx.applicability = Applicability::ContextOnly;
    CHECK(szilard_upto(lsys, ctx).words.empty());

    // a system whose only follow-up rule has a site but no partner shows the
    // split: partner-aware calls the word terminal, context-only starves
    LabeledFlatSplicingSystem one;
    one.sys.alphabet = sigma("X Y z g");
    one.sys.initial = InitialSet::finite({W("X Y"), W("z")});
    one.sys.rules = {R("X", "z", "eps", "Y"), R("z", "g", "eps", "eps")};
    one.labels = {L("s"), L("t")};
    one.validate();
    Derivation d;
    d.start = W("X Y");
    d.steps = {DerivationStep{0, 1, W("z"), W("X Y"), W("X z Y")}};
    // partner-aware: rule t has no partner, X z Y is terminal
    CHECK_FALSE(verify_terminal_derivation(one, d, Applicability::PartnerAware).has_value());
    // context-only: the t-site after z makes the final word non-terminal
    CHECK(verify_terminal_derivation(one, d, Applicability::ContextOnly).has_value());

    // enumeration agrees: aware yields {s}, context-only starves on the t-site
    LabelSlice aware_slice = szilard_upto(one, steps(3));
    CHECK(aware_slice.words == WordSet{W("s")});
    CHECK(aware_slice.stats.partner_starved == 0);
    SearchLimits octx = steps(3);
    octx.applicability = Applicability::ContextOnly;
    LabelSlice ctx_slice = szilard_upto(one, octx);
    CHECK(ctx_slice.words.empty());
    CHECK(ctx_slice.stats.partner_starved > 0);
}

TEST_CASE("control words erase unlabeled steps and merge shared labels") {
    // pump A1 before Y with rule 0, cap the pump site with rule 1
    LabeledFlatSplicingSystem lsys;
    lsys.mode = LabelingMode::Control;
    lsys.sys.alphabet = sigma("X A1 Ap Y");
    lsys.sys.initial = InitialSet::finite({W("X A1 Y"), W("A1"), W("Ap")});
    lsys.sys.rules = {R("A1", "eps", "A1", "Y"), R("A1", "eps", "Ap", "Y")};

    SUBCASE("an unlabeled cap leaves no trace, including the empty word") {
        lsys.labels = {L("m"), std::nullopt};
        lsys.validate();
        LabelSlice ctl = control_upto(lsys, steps(4));
        CHECK(ctl.words == WordSet{Word{}, W("m"), W("m m"), W("m m m")});
    }
    SUBCASE("rules sharing a label are indistinguishable in the word") {
        lsys.labels = {L("m"), L("m")};
        lsys.validate();
        LabelSlice ctl = control_upto(lsys, steps(4));
        // n pumps + 1 cap read as m^(n+1)
        CHECK(ctl.words == WordSet{W("m"), W("m m"), W("m m m"), W("m m m m")});
    }
    SUBCASE("szilard readings are refused for control systems") {
        lsys.labels = {L("m"), std::nullopt};
        lsys.validate();
        CHECK_THROWS_AS(szilard_upto(lsys, steps(3)), std::invalid_argument);
        CHECK_THROWS_AS(is_derivation_member(lsys, W("m"), steps(3)),
                        std::invalid_argument);
    }
    SUBCASE("control_upto on a szilard system equals szilard_upto") {
        LabeledFlatSplicingSystem sz = anc_system();
        CHECK(control_upto(sz, steps(5)).words == szilard_upto(sz, steps(5)).words);
    }
}

TEST_CASE("slices agree with the plain derivation enumeration") {
    for (const LabeledFlatSplicingSystem& lsys :
         {anc_system(), aa_system(), doubling_system()}) {
        CAPTURE(lsys.name);
        DerivationSet ds = enumerate_terminal_derivations(lsys, steps(5));
        LabelSlice sz = szilard_upto(lsys, steps(5));
        CHECK(sz.words == label_words_of(lsys, ds));
        CHECK(sz.stats.budget_truncated == ds.stats.budget_truncated);
        CHECK(sz.stats.partner_starved == ds.stats.partner_starved);
        CHECK(sz.stats.starts_truncated == ds.stats.starts_truncated);
    }
}

TEST_CASE("visit_terminal_label_words streams the same label words") {
    LabeledFlatSplicingSystem lsys = anc_system();
    WordSet seen;
    EnumerationStats stats;
    visit_terminal_label_words(lsys, steps(6), [&](const Word& w) { seen.insert(w); },
                               stats);
    LabelSlice sz = szilard_upto(lsys, steps(6));
    CHECK(seen == sz.words);
    CHECK(stats.budget_truncated == sz.stats.budget_truncated);
}

TEST_CASE("membership search recovers a verifying derivation") {
    LabeledFlatSplicingSystem lsys = anc_system();
    SearchLimits lim = steps(6);

    std::optional<Derivation> d = is_derivation_member(lsys, W("a a c"), lim);
    REQUIRE(d.has_value());
    CHECK(d->label_word(lsys) == W("a a c"));
    CHECK_FALSE(verify_terminal_derivation(lsys, *d).has_value());
    CHECK(d->final_word() == W("X A1 A1 A1 Ap Y"));

    CHECK(is_derivation_member(lsys, W("c"), lim).has_value());
    // not a terminal label word: the pump must be capped
    CHECK_FALSE(is_derivation_member(lsys, W("a a"), lim).has_value());
    // wrong order: the cap kills the pump site
    CHECK_FALSE(is_derivation_member(lsys, W("c a"), lim).has_value());
    // labels pin the step count, so the budget stretches to the label length
    CHECK(is_derivation_member(lsys, W("a a a a a a c"), lim).has_value());
    // the empty label word is never a szilard member
    CHECK_FALSE(is_derivation_member(lsys, Word{}, lim).has_value());
}

TEST_CASE("stats accumulate with saturation") {
    EnumerationStats a;
    a.budget_truncated = 3;
    EnumerationStats b;
    b.budget_truncated = ~0ull;
    b.partner_starved = 2;
    b.starts_truncated = true;
    a += b;
    CHECK(a.budget_truncated == ~0ull);
    CHECK(a.partner_starved == 2);
    CHECK(a.starts_truncated);
    CHECK_FALSE(a.clean());
    CHECK(EnumerationStats{}.clean());
}
