#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "flatsplice/decide.hpp"
#include "flatsplice/textio.hpp"

using namespace flatsplice;

namespace {

struct CommonOpts {
    std::size_t partner_bound = 8;
    std::string applicability = "partner-aware";

    void attach(CLI::App* cmd) {
        cmd->add_option("--partner-bound", partner_bound,
                        "Length bound for partner/start witnesses from regular initial sets");
        cmd->add_option("--applicability", applicability, "Rule applicability reading")
            ->check(CLI::IsMember({"partner-aware", "context-only"}));
    }

    SearchLimits limits(std::size_t max_steps = 0) const {
        SearchLimits lim;
        lim.max_steps = max_steps;
        lim.partner_len_bound = partner_bound;
        lim.applicability = applicability == "context-only" ? Applicability::ContextOnly
                                                            : Applicability::PartnerAware;
        return lim;
    }
};

void print_stats(const EnumerationStats& st) {
    std::cerr << "stats: budget_truncated=" << st.budget_truncated
              << " partner_starved=" << st.partner_starved
              << " starts_truncated=" << (st.starts_truncated ? "yes" : "no") << "\n";
}

void print_derivation(const LabeledFlatSplicingSystem& lsys, const Derivation& d) {
    std::cout << "start: " << d.start.str() << "\n";
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DerivationStep& st = d.steps[i];
        const Label& lab = lsys.labels[st.rule_index];
        std::cout << "step " << i + 1 << ": rule " << st.rule_index + 1 << " ["
                  << (lab ? std::string(lab->name()) : "eps") << "] site " << st.site
                  << " partner " << st.partner.str() << " -> " << st.after.str() << "\n";
    }
    std::cout << "final: " << d.final_word().str() << "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string provenance_text(const CompilationOutput& comp, const std::string& target) {
    std::ostringstream os;
    os << "# provenance for " << comp.lsys.name << " (target " << target << ")\n";
    for (const auto& [w, info] : comp.axiom_info) {
        os << "axiom " << w.str() << " | group=" << info.group << " | source=" << info.source;
        if (!info.note.empty()) os << " | note=" << info.note;
        os << "\n";
    }
    for (std::size_t i = 0; i < comp.rule_info.size(); ++i) {
        const GeneratedItemInfo& info = comp.rule_info[i];
        const Label& lab = comp.lsys.labels[i];
        os << "rule " << i + 1 << " label=" << (lab ? std::string(lab->name()) : "eps")
           << " | group=" << info.group << " | source=" << info.source;
        if (!info.note.empty()) os << " | note=" << info.note;
        os << "\n";
    }
    for (const std::string& n : comp.notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flat splicing systems: simulate, enumerate, compile, verify"};
    app.require_subcommand(1);

    // type
    auto* c_type = app.add_subcommand("type", "Report the (m,n) type of a system");
    std::string type_path;
    c_type->add_option("system", type_path, "System file")->required();

    // enum
    auto* c_enum = app.add_subcommand("enum", "Enumerate generated/label words");
    std::string enum_path, enum_mode = "lang";
    std::size_t enum_bound = 0, enum_steps = 0;
    CommonOpts enum_opts;
    c_enum->add_option("system", enum_path, "System file")->required();
    c_enum->add_option("--mode", enum_mode, "lang (closure), szilard, or control")
        ->check(CLI::IsMember({"lang", "szilard", "control"}));
    c_enum->add_option("--bound", enum_bound, "Maximum word length")->required();
    c_enum->add_option("--steps", enum_steps, "Maximum derivation steps (default: --bound)");
    enum_opts.attach(c_enum);

    // member
    auto* c_member = app.add_subcommand("member", "Szilard membership of a label word");
    std::string member_path, member_word;
    CommonOpts member_opts;
    c_member->add_option("system", member_path, "System file")->required();
    c_member->add_option("--word", member_word, "Label word, tokens space-separated")->required();
    member_opts.attach(c_member);

    // trace
    auto* c_trace = app.add_subcommand("trace", "Witness derivation for a label word");
    std::string trace_path, trace_word;
    CommonOpts trace_opts;
    c_trace->add_option("system", trace_path, "System file")->required();
    c_trace->add_option("--word", trace_word, "Label word, tokens space-separated")->required();
    trace_opts.attach(c_trace);

    // compile
    auto* c_compile = app.add_subcommand("compile", "Compile a grammar into a system");
    std::string g_path, target, out_path, hom_path, prov_path;
    c_compile->add_option("grammar", g_path, "Grammar file")->required();
    c_compile->add_option("--target", target, "Construction to apply")
        ->required()
        ->check(CLI::IsMember({"reg-sz", "cnf-sz", "kuroda-sz", "reg-cl", "gnf-cl", "kuroda-cl"}));
    c_compile->add_option("-o,--output", out_path, "System file to write")->required();
    c_compile->add_option("--hom", hom_path, "Homomorphism file to write");
    c_compile->add_option("--provenance", prov_path, "Provenance listing to write");

    // subset
    auto* c_subset = app.add_subcommand("subset", "Bounded subset check against a pattern");
    std::string subset_path, subset_pattern, subset_dir;
    std::size_t subset_bound = 0, subset_steps = 0;
    CommonOpts subset_opts;
    c_subset->add_option("system", subset_path, "System file")->required();
    c_subset->add_option("--pattern", subset_pattern, "Token pattern for the regular set")
        ->required();
    c_subset->add_option("--direction", subset_dir, "Which inclusion to check")
        ->required()
        ->check(CLI::IsMember({"r-in-sz", "sz-in-r"}));
    c_subset->add_option("--bound", subset_bound, "Word-length bound (r-in-sz)");
    c_subset->add_option("--steps", subset_steps, "Step bound (sz-in-r)");
    subset_opts.attach(c_subset);

    // diff
    auto* c_diff = app.add_subcommand("diff", "Compare a grammar against a compiled system");
    std::string diff_grammar, diff_system, diff_hom;
    std::size_t diff_bound = 0, diff_steps = 0;
    CommonOpts diff_opts;
    c_diff->add_option("--grammar", diff_grammar, "Grammar file")->required();
    c_diff->add_option("--system", diff_system, "System file")->required();
    c_diff->add_option("--hom", diff_hom, "Homomorphism file (szilard targets)");
    c_diff->add_option("--bound", diff_bound, "Word-length bound")->required();
    c_diff->add_option("--steps", diff_steps, "Step bound (default: derived from --bound)");
    diff_opts.attach(c_diff);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_type->parsed()) {
            LabeledFlatSplicingSystem lsys = parse_system_file(type_path);
            std::cout << system_type(lsys.sys).str() << "\n";
            return 0;
        }
        if (c_enum->parsed()) {
            LabeledFlatSplicingSystem lsys = parse_system_file(enum_path);
            if (enum_mode == "lang") {
                for (const Word& w : closure_language_upto(lsys.sys, enum_bound))
                    std::cout << w.str() << "\n";
                return 0;
            }
            SearchLimits lim = enum_opts.limits(enum_steps ? enum_steps : enum_bound);
            LabelSlice slice =
                enum_mode == "szilard" ? szilard_upto(lsys, lim) : control_upto(lsys, lim);
            for (const Word& w : slice.words)
                if (w.size() <= enum_bound) std::cout << w.str() << "\n";
            print_stats(slice.stats);
            return 0;
        }
        if (c_member->parsed() || c_trace->parsed()) {
            bool tracing = c_trace->parsed();
            LabeledFlatSplicingSystem lsys =
                parse_system_file(tracing ? trace_path : member_path);
            Word w = Word::parse(tracing ? trace_word : member_word);
            const CommonOpts& opts = tracing ? trace_opts : member_opts;
            std::optional<Derivation> d = is_derivation_member(lsys, w, opts.limits(w.size()));
            if (!d) {
                std::cout << "no\n";
                return 1;
            }
            if (tracing)
                print_derivation(lsys, *d);
            else
                std::cout << "yes\n";
            return 0;
        }
        if (c_compile->parsed()) {
            Grammar g = parse_grammar_file(g_path);
            CompilationOutput comp;
            if (target == "reg-sz") comp = compile_reg_sz(g);
            else if (target == "reg-cl") comp = compile_reg_cl(g);
            else if (target == "cnf-sz") comp = compile_cnf_sz(g);
            else if (target == "gnf-cl") comp = compile_gnf_cl(g);
            else if (target == "kuroda-sz") comp = compile_kuroda_sz(g);
            else comp = compile_kuroda_cl(g);
            write_file(out_path, print_system(comp.lsys));
            if (!hom_path.empty()) {
                if (comp.hom)
                    write_file(hom_path, print_hom(*comp.hom));
                else
                    std::cerr << "note: control-language target has no homomorphism; '" << hom_path
                              << "' not written\n";
            }
            if (!prov_path.empty()) write_file(prov_path, provenance_text(comp, target));
            std::cout << "system " << comp.lsys.name << ": " << comp.lsys.sys.rules.size()
                      << " rules, "
                      << (comp.lsys.sys.initial.is_regular()
                              ? std::string("regular initial set")
                              : std::to_string(comp.lsys.sys.initial.finite_words().size()) +
                                    " axioms")
                      << ", type " << system_type(comp.lsys.sys).str() << "\n";
            return 0;
        }
        if (c_subset->parsed()) {
            LabeledFlatSplicingSystem lsys = parse_system_file(subset_path);
            RegularSet r = RegularSet::from_pattern(subset_pattern);
            Verdict v;
            if (subset_dir == "r-in-sz") {
                if (subset_bound == 0)
                    throw std::runtime_error("r-in-sz needs --bound");
                v = check_reg_subset_sz(r, lsys, subset_bound, subset_opts.limits());
            } else {
                if (subset_steps == 0)
                    throw std::runtime_error("sz-in-r needs --steps");
                v = check_sz_subset_reg(lsys, r, subset_opts.limits(subset_steps));
            }
            std::cout << to_string(v.status) << ": " << v.detail << "\n";
            for (const Word& w : v.counterexamples)
                std::cout << "counterexample: " << w.str() << "\n";
            if (v.status == VerdictStatus::Pass) return 0;
            return v.status == VerdictStatus::Fail ? 1 : 2;
        }
        if (c_diff->parsed()) {
            CompilationOutput comp;
            comp.lsys = parse_system_file(diff_system);
            if (!diff_hom.empty()) comp.hom = parse_hom_file(diff_hom);
            Grammar g = parse_grammar_file(diff_grammar);
            DiffReport rep =
                differential_compare(g, comp, diff_bound, diff_steps, diff_opts.limits());
            std::cout << rep.to_text();
            return rep.equal() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
