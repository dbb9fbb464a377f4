#include "flatsplice/derivation.hpp"

#include <limits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace flatsplice {

void LabeledFlatSplicingSystem::validate() const {
    sys.validate();
    if (labels.size() != sys.rules.size())
        throw std::invalid_argument("expected one label per rule, got " +
                                    std::to_string(labels.size()) + " labels for " +
                                    std::to_string(sys.rules.size()) + " rules");
    std::set<Symbol> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!labels[i]) {
            if (mode == LabelingMode::Szilard)
                throw std::invalid_argument("rule " + std::to_string(i + 1) +
                                            " is unlabeled; szilard mode labels every rule");
            continue;
        }
        Symbol s = *labels[i];
        if (sys.alphabet.count(s))
            throw std::invalid_argument("label '" + std::string(s.name()) +
                                        "' collides with an alphabet symbol");
        if (mode == LabelingMode::Szilard && !seen.insert(s).second)
            throw std::invalid_argument("label '" + std::string(s.name()) +
                                        "' is attached to two rules; szilard labels are distinct");
    }
}

std::optional<std::size_t> LabeledFlatSplicingSystem::rule_with_label(Symbol s) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] && *labels[i] == s) return i;
    return std::nullopt;
}

Word Derivation::label_word(const LabeledFlatSplicingSystem& lsys) const {
    Word out;
    for (const DerivationStep& st : steps) {
        if (st.rule_index >= lsys.labels.size())
            throw std::out_of_range("derivation step names rule " + std::to_string(st.rule_index + 1) +
                                    " but the system has " + std::to_string(lsys.labels.size()));
        if (lsys.labels[st.rule_index]) out.push_back(*lsys.labels[st.rule_index]);
    }
    return out;
}

std::optional<std::string> verify_terminal_derivation(const LabeledFlatSplicingSystem& lsys,
                                                      const Derivation& d, Applicability mode) {
    if (!lsys.sys.initial.contains(d.start))
        return "start word '" + d.start.str() + "' is not an initial word";
    if (d.steps.empty()) return std::string("a terminal derivation takes at least one step");
    const Word* cur = &d.start;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DerivationStep& st = d.steps[i];
        const std::string where = "step " + std::to_string(i + 1);
        if (st.rule_index >= lsys.sys.rules.size()) return where + ": rule index out of range";
        if (!(st.before == *cur)) return where + ": does not continue the previous word";
        if (!lsys.sys.initial.contains(st.partner))
            return where + ": partner '" + st.partner.str() + "' is not an initial word";
        const FlatSplicingRule& r = lsys.sys.rules[st.rule_index];
        Word expect;
        try {
            expect = apply_rule(st.before, st.partner, r, st.site);
        } catch (const std::invalid_argument& e) {
            return where + ": " + e.what();
        }
        if (!(expect == st.after)) return where + ": recorded result does not match the splice";
        cur = &st.after;
    }
    if (applicable(lsys.sys, *cur, mode))
        return "final word '" + cur->str() + "' still admits a step";
    return std::nullopt;
}

EnumerationStats& EnumerationStats::operator+=(const EnumerationStats& o) {
    auto sat = [](std::uint64_t a, std::uint64_t b) {
        return (a > std::numeric_limits<std::uint64_t>::max() - b)
                   ? std::numeric_limits<std::uint64_t>::max()
                   : a + b;
    };
    budget_truncated = sat(budget_truncated, o.budget_truncated);
    partner_starved = sat(partner_starved, o.partner_starved);
    starts_truncated = starts_truncated || o.starts_truncated;
    return *this;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a > std::numeric_limits<std::uint64_t>::max() - b)
               ? std::numeric_limits<std::uint64_t>::max()
               : a + b;
}

// Per-rule facts that do not depend on the current word: whether a partner
// exists in the initial set at all (exact), and the witness partners within
// the length bound.
struct Engine {
    const LabeledFlatSplicingSystem& lsys;
    SearchLimits limits;
    std::vector<char> partner_exists;
    std::vector<std::vector<Word>> partners;

    Engine(const LabeledFlatSplicingSystem& l, const SearchLimits& lim) : lsys(l), limits(lim) {
        const FlatSplicingSystem& sys = lsys.sys;
        partner_exists.reserve(sys.rules.size());
        partners.reserve(sys.rules.size());
        for (const FlatSplicingRule& r : sys.rules) {
            partner_exists.push_back(sys.initial.has_partner(r, sys.alphabet) ? 1 : 0);
            partners.push_back(sys.initial.partners(r, sys.alphabet, limits.partner_len_bound));
        }
    }

    // Mirrors flatsplice::applicable but reuses the cached partner facts.
    bool word_applicable(const Word& u) const {
        for (std::size_t ri = 0; ri < lsys.sys.rules.size(); ++ri) {
            if (limits.applicability == Applicability::PartnerAware && !partner_exists[ri]) continue;
            if (!match_sites(u, lsys.sys.rules[ri]).empty()) return true;
        }
        return false;
    }

    std::vector<DerivationStep> options(const Word& u) const {
        std::vector<DerivationStep> out;
        for (std::size_t ri = 0; ri < lsys.sys.rules.size(); ++ri) {
            if (partners[ri].empty()) continue;
            const FlatSplicingRule& r = lsys.sys.rules[ri];
            for (std::size_t site : match_sites(u, r)) {
                for (const Word& v : partners[ri]) {
                    DerivationStep st;
                    st.rule_index = ri;
                    st.site = site;
                    st.partner = v;
                    st.before = u;
                    st.after = apply_rule(u, v, r, site);
                    out.push_back(std::move(st));
                }
            }
        }
        return out;
    }

    std::vector<Word> start_words(EnumerationStats& stats) const {
        const InitialSet& init = lsys.sys.initial;
        WordSet pool;
        if (init.is_regular()) {
            pool = init.members_upto(limits.partner_len_bound);
            if (init.has_member_longer_than(limits.partner_len_bound)) stats.starts_truncated = true;
        } else {
            pool = init.all_members();
        }
        return {pool.begin(), pool.end()};
    }
};

constexpr std::size_t kMemoCap = 4u << 20;

struct MemoKey {
    Word word;
    std::size_t budget;
    bool operator==(const MemoKey& o) const { return budget == o.budget && word == o.word; }
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        return WordHash{}(k.word) * 1000003u ^ k.budget;
    }
};

struct SolveValue {
    std::shared_ptr<const WordSet> completions;  // label suffixes; empty word iff terminal here
    std::uint64_t budget_truncated = 0;
    std::uint64_t partner_starved = 0;
};

// Label suffixes of terminal continuations from `u` within `budget` steps.
// The empty suffix is included exactly when u itself is terminal.
class Collector {
public:
    Collector(const Engine& eng) : eng_(eng) {}

    const SolveValue& solve(const Word& u, std::size_t budget) {
        MemoKey key{u, budget};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        if (memo_.size() >= kMemoCap)
            throw std::runtime_error("derivation search exceeded the memo capacity");

        SolveValue val;
        auto result = std::make_shared<WordSet>();
        if (!eng_.word_applicable(u)) {
            result->insert(Word{});
        } else if (budget == 0) {
            val.budget_truncated = 1;
        } else {
            std::vector<DerivationStep> opts = eng_.options(u);
            if (opts.empty()) {
                // Applicable but no witness partner within the bound (or,
                // context-only, no partner at all): a stuck branch.
                val.partner_starved = 1;
            }
            for (const DerivationStep& st : opts) {
                const SolveValue& child = solve(st.after, budget - 1);
                val.budget_truncated = sat_add(val.budget_truncated, child.budget_truncated);
                val.partner_starved = sat_add(val.partner_starved, child.partner_starved);
                const Label& lab = eng_.lsys.labels[st.rule_index];
                for (const Word& suffix : *child.completions) {
                    if (lab) {
                        Word w{*lab};
                        w.append(suffix);
                        result->insert(std::move(w));
                    } else {
                        result->insert(suffix);
                    }
                }
            }
        }
        val.completions = std::move(result);
        return memo_.emplace(std::move(key), std::move(val)).first->second;
    }

private:
    const Engine& eng_;
    std::unordered_map<MemoKey, SolveValue, MemoKeyHash> memo_;
};

LabelSlice collect_label_words(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits) {
    lsys.validate();
    Engine eng(lsys, limits);
    Collector coll(eng);
    LabelSlice out;
    for (const Word& start : eng.start_words(out.stats)) {
        if (!eng.word_applicable(start)) continue;  // zero-step: not a derivation
        if (limits.max_steps == 0) {
            out.stats.budget_truncated = sat_add(out.stats.budget_truncated, 1);
            continue;
        }
        std::vector<DerivationStep> opts = eng.options(start);
        if (opts.empty()) {
            out.stats.partner_starved = sat_add(out.stats.partner_starved, 1);
            continue;
        }
        for (const DerivationStep& st : opts) {
            const SolveValue& v = coll.solve(st.after, limits.max_steps - 1);
            out.stats.budget_truncated = sat_add(out.stats.budget_truncated, v.budget_truncated);
            out.stats.partner_starved = sat_add(out.stats.partner_starved, v.partner_starved);
            const Label& lab = lsys.labels[st.rule_index];
            for (const Word& suffix : *v.completions) {
                if (lab) {
                    Word w{*lab};
                    w.append(suffix);
                    out.words.insert(std::move(w));
                } else {
                    out.words.insert(suffix);
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<DerivationStep> step_options(const LabeledFlatSplicingSystem& lsys, const Word& current,
                                         const SearchLimits& limits) {
    Engine eng(lsys, limits);
    return eng.options(current);
}

DerivationSet enumerate_terminal_derivations(const LabeledFlatSplicingSystem& lsys,
                                             const SearchLimits& limits) {
    lsys.validate();
    Engine eng(lsys, limits);
    DerivationSet out;

    std::vector<DerivationStep> trail;
    std::function<void(const Word&, const Word&, std::size_t)> dfs =
        [&](const Word& start, const Word& u, std::size_t budget) {
            if (!eng.word_applicable(u)) {
                if (!trail.empty()) out.derivations.push_back(Derivation{start, trail});
                return;
            }
            if (budget == 0) {
                out.stats.budget_truncated = sat_add(out.stats.budget_truncated, 1);
                return;
            }
            std::vector<DerivationStep> opts = eng.options(u);
            if (opts.empty()) {
                out.stats.partner_starved = sat_add(out.stats.partner_starved, 1);
                return;
            }
            for (DerivationStep& st : opts) {
                trail.push_back(st);
                dfs(start, st.after, budget - 1);
                trail.pop_back();
            }
        };

    for (const Word& start : eng.start_words(out.stats)) {
        trail.clear();
        dfs(start, start, limits.max_steps);
    }
    return out;
}

LabelSlice szilard_upto(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits) {
    if (lsys.mode != LabelingMode::Szilard)
        throw std::invalid_argument("szilard words are defined for szilard-labeled systems");
    return collect_label_words(lsys, limits);
}

LabelSlice control_upto(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits) {
    return collect_label_words(lsys, limits);
}

std::optional<Derivation> is_derivation_member(const LabeledFlatSplicingSystem& lsys,
                                               const Word& label_word, const SearchLimits& limits) {
    if (lsys.mode != LabelingMode::Szilard)
        throw std::invalid_argument("membership search is defined for szilard-labeled systems");
    lsys.validate();
    if (label_word.empty()) return std::nullopt;

    SearchLimits lim = limits;
    lim.max_steps = std::max(lim.max_steps, label_word.size());
    Engine eng(lsys, lim);

    // Labels pin the rule at every step, so the search branches only over
    // sites and partners.
    std::vector<std::size_t> rule_seq;
    rule_seq.reserve(label_word.size());
    for (const Symbol& s : label_word.symbols()) {
        std::optional<std::size_t> ri = lsys.rule_with_label(s);
        if (!ri) return std::nullopt;
        rule_seq.push_back(*ri);
    }

    std::vector<DerivationStep> trail;
    std::function<bool(const Word&, std::size_t)> dfs = [&](const Word& u, std::size_t pos) {
        if (pos == rule_seq.size()) return !eng.word_applicable(u);
        const FlatSplicingRule& r = lsys.sys.rules[rule_seq[pos]];
        for (std::size_t site : match_sites(u, r)) {
            for (const Word& v : eng.partners[rule_seq[pos]]) {
                DerivationStep st;
                st.rule_index = rule_seq[pos];
                st.site = site;
                st.partner = v;
                st.before = u;
                st.after = apply_rule(u, v, r, site);
                trail.push_back(st);
                if (dfs(st.after, pos + 1)) return true;
                trail.pop_back();
            }
        }
        return false;
    };

    EnumerationStats ignored;
    for (const Word& start : eng.start_words(ignored)) {
        trail.clear();
        if (dfs(start, 0)) return Derivation{start, trail};
    }
    return std::nullopt;
}

void visit_terminal_label_words(const LabeledFlatSplicingSystem& lsys, const SearchLimits& limits,
                                const std::function<void(const Word&)>& sink,
                                EnumerationStats& stats) {
    LabelSlice slice = collect_label_words(lsys, limits);
    stats += slice.stats;
    for (const Word& w : slice.words) sink(w);
}

}  // namespace flatsplice
