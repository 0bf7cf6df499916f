#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pswap/cli.hpp"

using namespace pswap;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::path(::testing::TempDir()) / "pswap_cli";
        fs::create_directories(dir_);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& content) {
        const std::string p = path(name);
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        f << content;
        return p;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SynthSwapWritesThreeCx) {
    const std::string out_path = path("swap.qasm");
    const RunResult r = run_cli({"synth", "--gate", "swap", "--out", out_path});
    EXPECT_EQ(r.code, 0);
    const Circuit c = qasm::parse(slurp(out_path));
    EXPECT_EQ(c, standard_swap());
}

TEST_F(CliTest, SynthConceptPrintsMetadata) {
    const RunResult r = run_cli({"synth", "--gate", "pswap", "--concept", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("effected: 01,10"), std::string::npos);
    EXPECT_NE(r.out.find("expected p: pi/2"), std::string::npos);
    EXPECT_NE(r.out.find("rz(pi/2) q[0];"), std::string::npos);
}

TEST_F(CliTest, SynthUsageErrors) {
    EXPECT_EQ(run_cli({"synth", "--gate", "pswap", "--concept", "7"}).code, 2);
    EXPECT_EQ(run_cli({"synth", "--gate", "pswap"}).code, 2);
    EXPECT_EQ(run_cli({"synth", "--gate", "pswap", "--concept", "1", "--cofactors",
                       "1,1,2,1,1,2"}).code, 2);
    EXPECT_EQ(run_cli({"synth", "--gate", "swap", "--concept", "1"}).code, 2);
    EXPECT_EQ(run_cli({"synth", "--gate", "pswap", "--cofactors", "1,1"}).code, 2);
    EXPECT_EQ(run_cli({"synth", "--gate", "pswap", "--cofactors", "3,1,2,1,1,2"}).code, 2);
    EXPECT_EQ(run_cli({"synth"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
}

TEST_F(CliTest, SynthCofactorWrapWarning) {
    const RunResult r = run_cli({"synth", "--gate", "pswap", "--cofactors", "1,3,1,1,0,1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("wrapped"), std::string::npos);
}

TEST_F(CliTest, SynthVerifyComposesForAllConcepts) {
    const struct {
        int id;
        const char* effected;
        const char* p;
    } rows[] = {{1, "01,10", "pi/2"}, {2, "00,11", "pi/2"}, {3, "00", "pi"},
                {4, "01", "pi"},      {5, "10", "pi"},      {6, "11", "pi"}};
    for (const auto& row : rows) {
        const std::string file = path("concept.qasm");
        EXPECT_EQ(run_cli({"synth", "--gate", "pswap", "--concept", std::to_string(row.id),
                           "--out", file}).code, 0);
        const RunResult v =
            run_cli({"verify", file, "--effected", row.effected, "--expect-p", row.p});
        EXPECT_EQ(v.code, 0) << "concept " << row.id << ": " << v.out << v.err;
        EXPECT_NE(v.out.find("PASS"), std::string::npos);
    }
}

TEST_F(CliTest, VerifyMismatchPrintsBothAngles) {
    const std::string file = path("c2.qasm");
    run_cli({"synth", "--gate", "pswap", "--concept", "2", "--out", file});
    const RunResult r = run_cli({"verify", file, "--effected", "00,11", "--expect-p", "pi"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL reason=phase-mismatch"), std::string::npos);
    EXPECT_NE(r.out.find("expected=pi"), std::string::npos);
    EXPECT_NE(r.out.find("actual=pi/2"), std::string::npos);
}

TEST_F(CliTest, VerifyInconsistentSetIsFailure) {
    const std::string file = path("c1.qasm");
    run_cli({"synth", "--gate", "pswap", "--concept", "1", "--out", file});
    const RunResult r = run_cli({"verify", file, "--effected", "00", "--expect-p", "pi/2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("inconsistent-phases"), std::string::npos);
}

TEST_F(CliTest, VerifyNonSwapIsInputError) {
    const std::string file =
        write("cx.qasm", "OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[1];\n");
    const RunResult r = run_cli({"verify", file, "--effected", "01", "--expect-p", "pi"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("not a phased permutation of swap form"), std::string::npos);
}

TEST_F(CliTest, VerifyParseFailureIsInputError) {
    const std::string file = write("bad.qasm", "OPENQASM 2.0;\nqreg q[2];\ncz q[0], q[1];\n");
    const RunResult r = run_cli({"verify", file, "--effected", "01", "--expect-p", "pi"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(run_cli({"verify", path("missing.qasm"), "--effected", "01", "--expect-p",
                       "pi"}).code, 3);
    EXPECT_EQ(run_cli({"verify", file, "--effected", "01", "--expect-p", "pi+"}).code, 2);
    EXPECT_EQ(run_cli({"verify", file, "--effected", "0z", "--expect-p", "pi"}).code, 2);
}

TEST_F(CliTest, SimulatePrintsAmplitudesAndPhases) {
    const std::string file = path("core.qasm");
    run_cli({"synth", "--gate", "pswap", "--concept", "6", "--out", file});
    const RunResult r = run_cli({"simulate", file, "--input", "11"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("|11>  -1.000000000+0.000000000i  prob=1.000000000  phase=pi"),
              std::string::npos);
    EXPECT_EQ(run_cli({"simulate", file, "--input", "113"}).code, 3);
}

TEST_F(CliTest, TranspileReportsAndWritesNativeQasm) {
    const std::string file = path("swap.qasm");
    run_cli({"synth", "--gate", "swap", "--out", file});
    const std::string out_path = path("native.qasm");
    const RunResult r = run_cli({"transpile", file, "--out", out_path, "--report"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("N1=9 N2=3 D=9 TQC=21"), std::string::npos);
    EXPECT_NE(r.out.find("global_phase="), std::string::npos);

    const Circuit native = qasm::parse(slurp(out_path));
    for (const GateInstance& g : native.ops) EXPECT_TRUE(is_native(g.kind));
}

TEST_F(CliTest, TranspileFailureLeavesNoPartialFile) {
    const std::string bad = write("broken.qasm", "OPENQASM 2.0;\nqreg q[2];\nxx q[0];\n");
    const std::string out_path = path("never.qasm");
    const RunResult r = run_cli({"transpile", bad, "--out", out_path});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(fs::exists(out_path));
}

TEST_F(CliTest, CompareBuiltinTrioHasIdenticalIswapAndPswapRows) {
    const RunResult r = run_cli({"compare", "--builtin"});
    EXPECT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string line, iswap_row, pswap_row;
    while (std::getline(lines, line)) {
        if (line.rfind("iSWAP", 0) == 0) iswap_row = line.substr(6);
        if (line.rfind("p-SWAP", 0) == 0) pswap_row = line.substr(7);
    }
    ASSERT_FALSE(iswap_row.empty());
    EXPECT_EQ(iswap_row.substr(iswap_row.find_first_not_of(' ')),
              pswap_row.substr(pswap_row.find_first_not_of(' ')));
    EXPECT_NE(r.out.find("TQC reduction (iSWAP -> p-SWAP): 0.0%"), std::string::npos);

    const RunResult md = run_cli({"compare", "--builtin", "--format", "markdown"});
    EXPECT_NE(md.out.find("| gate | N1 | N2 | D | TQC |"), std::string::npos);
}

TEST_F(CliTest, CompareNamedFilesAndUsage) {
    const std::string a = path("a.qasm"), b = path("b.qasm");
    run_cli({"synth", "--gate", "swap", "--out", a});
    run_cli({"synth", "--gate", "iswap", "--out", b});
    const RunResult r = run_cli({"compare", "SWAP=" + a, "ISW=" + b});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("TQC reduction (SWAP -> ISW)"), std::string::npos);

    EXPECT_EQ(run_cli({"compare"}).code, 2);
    EXPECT_EQ(run_cli({"compare", "--builtin", "X=" + a}).code, 2);
    EXPECT_EQ(run_cli({"compare", "noequals"}).code, 2);
    EXPECT_EQ(run_cli({"compare", "X=" + path("nope.qasm")}).code, 3);
}

TEST_F(CliTest, PlotSvgAndAsciiAreDeterministic) {
    const std::string file = path("core.qasm");
    run_cli({"synth", "--gate", "pswap", "--concept", "6", "--out", file});

    const RunResult svg = run_cli({"plot", file, "--input", "01"});
    EXPECT_EQ(svg.code, 0);
    std::size_t groups = 0, pos = 0;
    while ((pos = svg.out.find("<g class=\"plane\"", pos)) != std::string::npos) {
        ++groups;
        pos += 10;
    }
    EXPECT_EQ(groups, 10u);
    EXPECT_EQ(run_cli({"plot", file, "--input", "01"}).out, svg.out);

    const RunResult ascii = run_cli({"plot", file, "--input", "01", "--format", "ascii"});
    EXPECT_EQ(ascii.code, 0);
    EXPECT_NE(ascii.out.find("-- plane"), std::string::npos);

    const RunResult hinted =
        run_cli({"plot", file, "--input", "11", "--effected", "11", "--format", "svg"});
    EXPECT_EQ(hinted.code, 0);
    EXPECT_NE(hinted.out.find("stroke=\"red\""), std::string::npos);

    EXPECT_EQ(run_cli({"plot", file, "--input", "0"}).code, 3);
}

TEST_F(CliTest, HelpIsExitZero) {
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}
