#include "flatsplice/decide.hpp"

#include <sstream>

namespace flatsplice {

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Pass: return "PASS";
        case VerdictStatus::Fail: return "FAIL";
        case VerdictStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Verdict check_reg_subset_sz(const RegularSet& r, const LabeledFlatSplicingSystem& lsys,
                            std::size_t bound, const SearchLimits& limits) {
    Verdict v;
    WordSet todo = r.enumerate_upto(bound);
    for (const Word& w : todo) {
        if (v.counterexamples.size() >= 10) break;
        if (!is_derivation_member(lsys, w, limits)) v.counterexamples.push_back(w);
    }
    if (v.counterexamples.empty()) {
        v.status = VerdictStatus::Pass;
        v.detail = "all " + std::to_string(todo.size()) + " words of length <= " +
                   std::to_string(bound) + " are derivation label words";
        if (r.has_word_longer_than(bound)) v.detail += " (longer words unchecked)";
        return v;
    }
    // A failed membership search is definite when the partner pool was
    // exhaustive; with a regular initial set reaching beyond the witness
    // bound the word might still be derivable through longer partners.
    bool pool_complete = !lsys.sys.initial.is_regular() ||
                         !lsys.sys.initial.has_member_longer_than(limits.partner_len_bound);
    if (pool_complete) {
        v.status = VerdictStatus::Fail;
        v.detail = std::to_string(v.counterexamples.size()) + " word(s) are not label words";
    } else {
        v.status = VerdictStatus::Inconclusive;
        v.stats.starts_truncated = true;
        v.detail = "words missing, but initial words beyond the partner bound were not tried";
    }
    return v;
}

Verdict check_sz_subset_reg(const LabeledFlatSplicingSystem& lsys, const RegularSet& r,
                            const SearchLimits& limits) {
    Verdict v;
    LabelSlice slice = szilard_upto(lsys, limits);
    v.stats = slice.stats;
    for (const Word& w : slice.words) {
        if (v.counterexamples.size() >= 10) break;
        if (!r.contains(w)) v.counterexamples.push_back(w);
    }
    if (!v.counterexamples.empty()) {
        v.status = VerdictStatus::Fail;  // enumerated words are genuine
        v.detail = std::to_string(v.counterexamples.size()) + " label word(s) fall outside the set";
    } else {
        v.status = VerdictStatus::Pass;
        v.detail = "all " + std::to_string(slice.words.size()) + " label words within " +
                   std::to_string(limits.max_steps) + " steps are in the set";
        if (!slice.stats.clean()) v.detail += " (search truncated; longer derivations unchecked)";
    }
    return v;
}

DiffReport differential_compare(const Grammar& g, const CompilationOutput& comp,
                                std::size_t word_bound, std::size_t step_bound,
                                const SearchLimits& limits) {
    DiffReport rep;
    rep.word_bound = word_bound;

    if (step_bound == 0) {
        std::size_t insert_cost = limits.partner_len_bound;
        if (!comp.lsys.sys.initial.is_regular()) {
            insert_cost = 0;
            for (const Word& w : comp.lsys.sys.initial.all_members())
                insert_cost = std::max(insert_cost, w.size());
        }
        step_bound = (word_bound + 1) * (insert_cost + 4);
    }
    rep.step_bound = step_bound;

    LanguageSlice gs = grammar_language_upto(g, word_bound, 4 * word_bound + 8);
    rep.grammar_words = gs.words;
    rep.grammar_exact = gs.exact;

    SearchLimits lim = limits;
    lim.max_steps = step_bound;
    LabelSlice ls = control_upto(comp.lsys, lim);
    rep.stats = ls.stats;
    for (const Word& w : ls.words) {
        Word image = comp.project(w);
        if (image.size() <= word_bound) rep.system_words.insert(image);
    }

    for (const Word& w : rep.grammar_words)
        if (!rep.system_words.count(w)) rep.missing.insert(w);
    for (const Word& w : rep.system_words)
        if (!rep.grammar_words.count(w)) rep.extra.insert(w);
    return rep;
}

std::string DiffReport::to_text() const {
    std::ostringstream os;
    os << "grammar words (length <= " << word_bound << "): " << grammar_words.size() << "\n";
    os << "system words (length <= " << word_bound << ", <= " << step_bound
       << " steps): " << system_words.size() << "\n";
    os << "missing (" << missing.size() << "):\n";
    for (const Word& w : missing) os << "  " << w.str() << "\n";
    os << "extra (" << extra.size() << "):\n";
    for (const Word& w : extra) os << "  " << w.str() << "\n";
    if (!grammar_exact) os << "note: grammar slice hit the sentential-form cap\n";
    if (stats.budget_truncated)
        os << "note: " << stats.budget_truncated << " derivation path(s) hit the step budget\n";
    if (stats.partner_starved)
        os << "note: " << stats.partner_starved << " path(s) starved for partner witnesses\n";
    if (stats.starts_truncated) os << "note: start words beyond the partner bound were skipped\n";
    os << "verdict: " << (equal() ? "EQUAL" : "DIFFER") << "\n";
    return os.str();
}

}  // namespace flatsplice
