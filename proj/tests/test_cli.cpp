#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

// one scratch directory per test run, cleaned up lazily by the OS
const std::string& scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/flatsplice-cli-XXXXXX";
        char* made = mkdtemp(tmpl);
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

std::string scratch(const std::string& name) { return scratch_dir() + "/" + name; }

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string err_path = scratch("stderr-" + std::to_string(counter++));
    std::string cmd = std::string(FLATSPLICE_CLI_PATH) + " " + args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int rc = pclose(pipe);
    res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.err = slurp(err_path);
    return res;
}

std::string fx(const std::string& name) {
    return std::string(FLATSPLICE_FIXTURE_DIR) + "/" + name;
}

bool mentions(const std::string& text, const std::string& what) {
    return text.find(what) != std::string::npos;
}

}  // namespace

TEST_CASE("type reports the context and handle maxima") {
    RunResult r = run_cli("type " + fx("szilard-anc.fss"));
    CHECK(r.code == 0);
    CHECK(r.out == "(1,1)\n");
}

TEST_CASE("closure enumeration lists the slice in canonical order") {
    RunResult r = run_cli("enum " + fx("closure-xay.fss") + " --mode lang --bound 5");
    CHECK(r.code == 0);
    CHECK(r.out == "a\nX Y\nX a Y\n");

    r = run_cli("enum " + fx("closure-anbn.fss") + " --mode lang --bound 10");
    CHECK(r.code == 0);
    CHECK(r.out == "a b\na a b b\na a a b b b\na a a a b b b b\na a a a a b b b b b\n");
}

TEST_CASE("label enumeration writes words to stdout and statistics to stderr") {
    RunResult r = run_cli("enum " + fx("szilard-anc.fss") + " --mode szilard --bound 6");
    CHECK(r.code == 0);
    CHECK(r.out == "c\na c\na a c\na a a c\na a a a c\na a a a a c\n");
    CHECK(r.err == "stats: budget_truncated=1 partner_starved=0 starts_truncated=no\n");

    r = run_cli("enum " + fx("szilard-anbcn.fss") + " --mode szilard --bound 9");
    CHECK(r.code == 0);
    CHECK(r.out == "b\na b c\na a b c c\na a a b c c c\na a a a b c c c c\n");
    CHECK(r.err == "stats: budget_truncated=5 partner_starved=0 starts_truncated=no\n");

    r = run_cli("enum " + fx("control-anbn.fss") + " --mode control --bound 8");
    CHECK(r.code == 0);
    CHECK(r.out == "a b\na a b b\na a a b b b\na a a a b b b b\n");

    r = run_cli("enum " + fx("regular-an.fss") + " --mode szilard --bound 6");
    CHECK(r.code == 0);
    CHECK(r.out == "a\na a\na a a\na a a a\na a a a a\n");
    CHECK(mentions(r.err, "starts_truncated=yes"));
}

TEST_CASE("membership answers with the exit code") {
    RunResult yes = run_cli("member " + fx("probe-aplus.fss") + " --word 'a'");
    CHECK(yes.code == 0);
    CHECK(yes.out == "yes\n");
    RunResult no = run_cli("member " + fx("probe-aplus.fss") + " --word 'a a'");
    CHECK(no.code == 1);
    CHECK(no.out == "no\n");
}

TEST_CASE("trace prints a replayable derivation") {
    RunResult r = run_cli("trace " + fx("szilard-aa.fss") + " --word 'a a'");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "start: S Y S Y\n"
          "step 1: rule 1 [a] site 1 partner Xa -> S Xa Y S Y\n"
          "step 2: rule 1 [a] site 4 partner Xa -> S Xa Y S Xa Y\n"
          "final: S Xa Y S Xa Y\n");

    RunResult no = run_cli("trace " + fx("szilard-aa.fss") + " --word 'a'");
    CHECK(no.code == 1);
    CHECK(no.out == "no\n");
}

TEST_CASE("compile writes system, homomorphism, and provenance") {
    std::string sys = scratch("astarb.fss"), hom = scratch("astarb.hom"),
                prov = scratch("astarb.prov");
    RunResult r = run_cli("compile " + fx("rl-astarb.g") + " --target reg-sz -o " + sys +
                          " --hom " + hom + " --provenance " + prov);
    CHECK(r.code == 0);
    CHECK(r.out == "system rl-astarb-sz: 2 rules, 3 axioms, type (1,2)\n");
    CHECK(slurp(hom) == "a_D1^1 -> a\nb^1 -> b\n");
    std::string ptext = slurp(prov);
    CHECK(mentions(ptext, "axiom X D1 Y | group=start | source="));
    CHECK(mentions(ptext, "axiom Ya D1 | group=production | source=S -> a S"));
    CHECK(mentions(ptext, "rule 1 label=a_D1^1 | group=recursive-step | source=S -> a S"));
    CHECK(mentions(ptext, "rule 2 label=b^1 | group=terminal-step | source=S -> b"));

    // the written system parses and reports the same type
    RunResult t = run_cli("type " + sys);
    CHECK(t.code == 0);
    CHECK(t.out == "(1,2)\n");

    // control targets have no homomorphism to write
    std::string clsys = scratch("astarb-cl.fss"), clhom = scratch("astarb-cl.hom");
    RunResult c = run_cli("compile " + fx("rl-astarb.g") + " --target reg-cl -o " + clsys +
                          " --hom " + clhom);
    CHECK(c.code == 0);
    CHECK(mentions(c.err, "no homomorphism"));
    CHECK_FALSE(file_exists(clhom));
}

TEST_CASE("applicability flag changes the enumeration") {
    std::string path = scratch("one.fss");
    std::ofstream(path) << "system one\n"
                           "mode szilard\n"
                           "alphabet X Y z q\n"
                           "axiom X Y\n"
                           "axiom z\n"
                           "rule s : X | eps - z | Y\n"
                           "rule t : z | eps - q | Y\n";
    RunResult aware = run_cli("enum " + path + " --mode szilard --bound 3");
    CHECK(aware.code == 0);
    CHECK(aware.out == "s\n");
    CHECK(mentions(aware.err, "partner_starved=0"));

    RunResult ctx = run_cli("enum " + path +
                            " --mode szilard --bound 3 --applicability context-only");
    CHECK(ctx.code == 0);
    CHECK(ctx.out.empty());
    CHECK(mentions(ctx.err, "partner_starved=1"));
}

TEST_CASE("subset checks map verdicts to exit codes") {
    RunResult fail = run_cli("subset " + fx("probe-aplus.fss") +
                             " --pattern 'a+' --direction r-in-sz --bound 4");
    CHECK(fail.code == 1);
    CHECK(fail.out ==
          "FAIL: 3 word(s) are not label words\n"
          "counterexample: a a\n"
          "counterexample: a a a\n"
          "counterexample: a a a a\n");

    RunResult pass = run_cli("subset " + fx("probe-aplus.fss") +
                             " --pattern 'a+' --direction sz-in-r --steps 6");
    CHECK(pass.code == 0);
    CHECK(pass.out == "PASS: all 1 label words within 6 steps are in the set\n");

    RunResult inc = run_cli("subset " + fx("regular-an.fss") +
                            " --pattern 'a a a a a a a a a a' --direction r-in-sz --bound 10");
    CHECK(inc.code == 2);
    CHECK(mentions(inc.out, "INCONCLUSIVE:"));
    CHECK(mentions(inc.out, "counterexample: a a a a a a a a a a"));

    RunResult settled = run_cli("subset " + fx("regular-an.fss") +
                                " --pattern 'a a a a a a a a a a' --direction r-in-sz" +
                                " --bound 10 --partner-bound 16");
    CHECK(settled.code == 0);
    CHECK(mentions(settled.out, "PASS:"));
}

TEST_CASE("diff compares grammar and system slices") {
    std::string sys = scratch("d-astarb.fss"), hom = scratch("d-astarb.hom");
    REQUIRE(run_cli("compile " + fx("rl-astarb.g") + " --target reg-sz -o " + sys +
                    " --hom " + hom)
                .code == 0);
    RunResult eq = run_cli("diff --grammar " + fx("rl-astarb.g") + " --system " + sys +
                           " --hom " + hom + " --bound 6");
    CHECK(eq.code == 0);
    CHECK(mentions(eq.out, "grammar words (length <= 6): 6"));
    CHECK(mentions(eq.out, "missing (0):"));
    CHECK(mentions(eq.out, "extra (0):"));
    CHECK(mentions(eq.out, "verdict: EQUAL"));

    std::string csys = scratch("d-cnf.fss"), chom = scratch("d-cnf.hom");
    REQUIRE(run_cli("compile " + fx("cnf-ab.g") + " --target cnf-sz -o " + csys + " --hom " +
                    chom)
                .code == 0);
    RunResult differ = run_cli("diff --grammar " + fx("cnf-ab.g") + " --system " + csys +
                               " --hom " + chom + " --bound 4 --steps 24");
    CHECK(differ.code == 1);
    CHECK(mentions(differ.out, "extra (1):\n  b\n"));
    CHECK(mentions(differ.out, "verdict: DIFFER"));

    std::string gsys = scratch("d-gnf.fss");
    REQUIRE(run_cli("compile " + fx("gnf-anbn.g") + " --target gnf-cl -o " + gsys).code == 0);
    RunResult gnf = run_cli("diff --grammar " + fx("gnf-anbn.g") + " --system " + gsys +
                            " --bound 6");
    CHECK(gnf.code == 0);
    CHECK(mentions(gnf.out, "verdict: EQUAL"));

    std::string ksys = scratch("d-ksz.fss"), khom = scratch("d-ksz.hom");
    REQUIRE(run_cli("compile " + fx("kuroda-ab.g") + " --target kuroda-sz -o " + ksys +
                    " --hom " + khom)
                .code == 0);
    RunResult ksz = run_cli("diff --grammar " + fx("kuroda-ab.g") + " --system " + ksys +
                            " --hom " + khom + " --bound 2 --steps 40");
    CHECK(ksz.code == 0);
    CHECK(mentions(ksz.out, "grammar words (length <= 2): 1"));
    CHECK(mentions(ksz.out, "verdict: EQUAL"));

    std::string kcl = scratch("d-kcl.fss");
    REQUIRE(run_cli("compile " + fx("kuroda-ab.g") + " --target kuroda-cl -o " + kcl).code == 0);
    RunResult kclr = run_cli("diff --grammar " + fx("kuroda-ab.g") + " --system " + kcl +
                             " --bound 2 --steps 40");
    CHECK(kclr.code == 0);
    CHECK(mentions(kclr.out, "verdict: EQUAL"));
}

TEST_CASE("identical compilations are byte-identical") {
    std::string a = scratch("det-a.fss"), b = scratch("det-b.fss");
    std::string pa = scratch("det-a.prov"), pb = scratch("det-b.prov");
    REQUIRE(run_cli("compile " + fx("kuroda-ab.g") + " --target kuroda-sz -o " + a +
                    " --provenance " + pa)
                .code == 0);
    REQUIRE(run_cli("compile " + fx("kuroda-ab.g") + " --target kuroda-sz -o " + b +
                    " --provenance " + pb)
                .code == 0);
    std::string text = slurp(a);
    CHECK_FALSE(text.empty());
    CHECK(text == slurp(b));
    CHECK(slurp(pa) == slurp(pb));
}

TEST_CASE("errors exit with code two") {
    RunResult missing = run_cli("member " + fx("does-not-exist.fss") + " --word 'a'");
    CHECK(missing.code == 2);
    CHECK(mentions(missing.err, "error: cannot open"));

    RunResult nobound = run_cli("subset " + fx("probe-aplus.fss") +
                                " --pattern 'a+' --direction r-in-sz");
    CHECK(nobound.code == 2);
    CHECK(mentions(nobound.err, "r-in-sz needs --bound"));

    RunResult badsub = run_cli("frobnicate");
    CHECK(badsub.code == 2);

    RunResult badtarget = run_cli("compile " + fx("rl-astarb.g") +
                                  " --target bogus -o " + scratch("x.fss"));
    CHECK(badtarget.code == 2);
}
