#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "prop_suites.hpp"

using namespace flatsplice;
using propsuite::Rng;
using propsuite::SuiteResult;

namespace {

void expect_clean(const SuiteResult& r, std::uint64_t min_cases) {
    CAPTURE(r.first_failure);
    CHECK(r.cases >= min_cases);
    CHECK(r.failures == 0);
}

SearchLimits steps(std::size_t n) {
    SearchLimits lim;
    lim.max_steps = n;
    return lim;
}

}  // namespace

TEST_CASE("a legal application lengthens the host by exactly the partner") {
    expect_clean(propsuite::prop_apply_length_additivity(0x11, 1200), 1000);
}

TEST_CASE("splice agrees with a brute-force scan over every gap") {
    expect_clean(propsuite::prop_splice_matches_gap_scan(0x22, 1500), 1000);
}

TEST_CASE("membership and enumeration answer alike") {
    expect_clean(propsuite::prop_membership_enumeration_coherent(0x33, 1200), 1000);
}

TEST_CASE("pattern membership agrees with the reference matcher") {
    expect_clean(propsuite::prop_pattern_membership_agrees(0x44, 20000), 1000);
}

TEST_CASE("binary-form conversion preserves bounded languages") {
    expect_clean(propsuite::prop_cnf_conversion_preserves_slices(0x55, 1100), 1000);
}

TEST_CASE("identical inputs give byte-identical output") {
    expect_clean(propsuite::prop_deterministic_output(0x66, 1200), 1000);
}

TEST_CASE("adding a rule never shrinks the system type") {
    Rng rng(0x77);
    std::vector<Symbol> pool = propsuite::pool_of("P Q T");
    for (int round = 0; round < 1000; ++round) {
        LabeledFlatSplicingSystem lsys = propsuite::rand_system(rng);
        SystemType before = system_type(lsys.sys);
        lsys.sys.rules.push_back(FlatSplicingRule{
            propsuite::rand_word(rng, pool, 2), propsuite::rand_word(rng, pool, 1),
            propsuite::rand_word(rng, pool, 1), propsuite::rand_word(rng, pool, 2)});
        SystemType after = system_type(lsys.sys);
        REQUIRE(after.m >= before.m);
        REQUIRE(after.n >= before.n);
    }
}

TEST_CASE("closure slices are closed under splicing their members") {
    Rng rng(0x88);
    int checked = 0;
    while (checked < 120) {
        LabeledFlatSplicingSystem lsys = propsuite::rand_system(rng);
        WordSet members = closure_language_upto(lsys.sys, 5);
        if (members.size() > 60) continue;
        ++checked;
        for (const Word& u : members)
            for (const Word& v : members)
                for (const FlatSplicingRule& rule : lsys.sys.rules)
                    for (const Word& w : splice(u, v, rule)) {
                        if (w.size() <= 5 && !members.count(w)) {
                            CAPTURE(u.str());
                            CAPTURE(v.str());
                            CAPTURE(w.str());
                            REQUIRE(members.count(w));
                        }
                    }
    }
}

TEST_CASE("enumerated derivations replay and end terminal") {
    Rng rng(0x99);
    int derivations_seen = 0;
    for (int round = 0; round < 250; ++round) {
        LabeledFlatSplicingSystem lsys = propsuite::rand_system(rng);
        DerivationSet ds = enumerate_terminal_derivations(lsys, steps(3));
        for (const Derivation& d : ds.derivations) {
            ++derivations_seen;
            std::optional<std::string> err = verify_terminal_derivation(lsys, d);
            if (err) {
                CAPTURE(*err);
                REQUIRE_FALSE(err.has_value());
            }
            const Word* prev = &d.start;
            for (const DerivationStep& s : d.steps) {
                REQUIRE(s.after.size() == s.before.size() + s.partner.size());
                REQUIRE(s.after.size() > prev->size());
                prev = &s.after;
            }
        }
    }
    CHECK(derivations_seen > 150);
}
