#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

using namespace qsep;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "qsep");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qsep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_F(CliTest, WernerBelowThresholdIsCertified) {
    const auto r = run({"family", "werner", "--n", "3", "--s", "0.2", "--decompose", "--cert", path("w.cert"),
                        "--out", path("w.state")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "overall: fully-separable (certified)"));
    EXPECT_TRUE(contains(r.out, "boundary"));
    const auto v = run({"verify", path("w.cert"), path("w.state")});
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_TRUE(contains(v.out, "verification: pass"));
}

TEST_F(CliTest, WernerAboveThresholdIsWitnessed) {
    const auto r = run({"family", "werner", "--n", "3", "--s", "0.3", "--decompose"});
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_TRUE(contains(r.out, "overall: not-fully-separable (witnessed)"));
    EXPECT_TRUE(contains(r.out, "1/(2^(n-1)+1) = 0.20000000000000001"));
}

TEST_F(CliTest, WernerOutOfRangeIsUsageError) {
    const auto r = run({"family", "werner", "--n", "3", "--s", "1.5"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "s must be in [0, 1]"));
    EXPECT_TRUE(contains(r.err, "0.20000000000000001"));
}

TEST_F(CliTest, FamilyFileAnalyzeRoundTrip) {
    ASSERT_EQ(run({"family", "werner", "--n", "2", "--s", "0.25", "--sign", "-", "--j", "01", "--out",
                   path("w.state")})
                  .code,
              0);
    const auto r = run({"analyze", path("w.state"), "--decompose", "--out", path("w.cert")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "family:werner"));
    EXPECT_EQ(run({"verify", path("w.cert"), path("w.state")}).code, 0);

    const auto anon = run({"analyze", path("w.state"), "--ignore-family"});
    EXPECT_EQ(anon.code, 0) << anon.out;
    EXPECT_TRUE(contains(anon.out, "from spin-norm"));
}

TEST_F(CliTest, AnonymousWernerAboveTwoQubitsIsInconclusive) {
    // n = 3 at threshold: spin norm 7/5 > 1, every necessary test passes.
    ASSERT_EQ(run({"family", "werner", "--n", "3", "--s", "0.2", "--out", path("w.state")}).code, 0);
    const auto r = run({"analyze", path("w.state"), "--ignore-family"});
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_TRUE(contains(r.out, "spin norm exceeds 1"));
}

TEST_F(CliTest, GhzIsWitnessed) {
    ASSERT_EQ(run({"family", "ghz", "--j", "000", "--out", path("g.state")}).code, 0);
    const auto r = run({"analyze", path("g.state"), "--cuts", "1", "2+3"});
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_TRUE(contains(r.out, "peres {1}: fail"));
    EXPECT_TRUE(contains(r.out, "peres {2,3}: fail"));
    EXPECT_FALSE(contains(r.out, "peres {2}: "));
}

TEST_F(CliTest, SharpnessDecision) {
    const auto unequal = run({"family", "sharpness", "--n", "3", "--c", "0.06", "--d", "0.05", "--decompose"});
    EXPECT_EQ(unequal.code, 1) << unequal.out;
    EXPECT_TRUE(contains(unequal.out, "not fully separable (c != d)"));
    EXPECT_TRUE(contains(unequal.out, "Peres passes on all cuts"));
    EXPECT_TRUE(contains(unequal.out, "||rho||_1=1.04"));
    const auto equal = run({"family", "sharpness", "--n", "3", "--c", "0.05", "--d", "0.05", "--decompose"});
    EXPECT_EQ(equal.code, 0) << equal.out;
}

TEST_F(CliTest, ProductFamily) {
    const auto r = run({"family", "product", "--n", "3", "--sign", "-", "--m", "y", "--m", "0.6,0,0.8", "--m", "z",
                        "--decompose"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "certificate: 4 terms from family:product"));
}

TEST_F(CliTest, MuFamily) {
    const auto ok = run({"family", "mu", "--n", "2", "--s", "0.4", "--uplus", "0.6,0.1", "--uminus", "0.1,0.2",
                         "--decompose"});
    EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
    const auto bad = run({"family", "mu", "--n", "2", "--s", "0.4", "--uplus", "0.6,0.1", "--uminus", "0.1"});
    EXPECT_EQ(bad.code, 3);
}

TEST_F(CliTest, VerifyDetectsMismatch) {
    ASSERT_EQ(run({"family", "werner", "--n", "2", "--s", "0.3", "--decompose", "--cert", path("a.cert"), "--out",
                   path("a.state")})
                  .code,
              0);
    ASSERT_EQ(run({"family", "werner", "--n", "2", "--s", "0.1", "--out", path("b.state")}).code, 0);
    const auto v = run({"verify", path("a.cert"), path("b.state")});
    EXPECT_EQ(v.code, 1);
    EXPECT_TRUE(contains(v.out, "verification: fail"));
}

TEST_F(CliTest, TransformWritesTable) {
    ASSERT_EQ(run({"family", "ghz", "--j", "00", "--out", path("g.state")}).code, 0);
    const auto r = run({"transform", path("g.state")});
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    const auto t = read_table(in);
    EXPECT_EQ(t(3, 3), cplx(1.0));
    EXPECT_EQ(t(1, 2), cplx(0.0));
    const auto a = run({"transform", path("g.state"), "--basis", "adjusted"});
    EXPECT_TRUE(contains(a.out, "qsep/1 table adjusted"));
    EXPECT_EQ(run({"transform", path("g.state"), "--basis", "fourier"}).code, 3);
}

TEST_F(CliTest, ErrorExitCodes) {
    write("bad.state", "qsep/1 state\nn 1\n[1, 0] [0, 0]\n");
    const auto p = run({"analyze", path("bad.state")});
    EXPECT_EQ(p.code, 4);
    EXPECT_TRUE(contains(p.err, "line 4"));

    write("trace.state", "qsep/1 state\nn 1\n[1, 0] [0, 0]\n[0, 0] [1, 0]\n");
    const auto v = run({"analyze", path("trace.state")});
    EXPECT_EQ(v.code, 5);
    EXPECT_TRUE(contains(v.err, "trace"));

    write("herm.state", "qsep/1 state\nn 1\n[0.5, 0] [0.1, 0.1]\n[0.1, 0.1] [0.5, 0]\n");
    EXPECT_EQ(run({"analyze", path("herm.state")}).code, 5);

    EXPECT_EQ(run({"analyze", path("missing.state")}).code, 3);
    EXPECT_EQ(run({}).code, 3);
    EXPECT_EQ(run({"frobnicate"}).code, 3);
    EXPECT_EQ(run({"family", "werner", "--n", "2", "--s", "0.1", "--j", "10"}).code, 3);
    EXPECT_EQ(run({"analyze", path("trace.state"), "--cuts", "1+x"}).code, 3);
}

TEST_F(CliTest, DeclaredFamilyMustMatchMatrix) {
    write("lie.state",
          "qsep/1 state\nn 1\nfamily mixed n=1\n[0.75, 0] [0, 0]\n[0, 0] [0.25, 0]\n");
    const auto r = run({"analyze", path("lie.state")});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "does not match"));
    EXPECT_EQ(run({"analyze", path("lie.state"), "--ignore-family"}).code, 0);
}

TEST_F(CliTest, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "analyze"));
}

TEST_F(CliTest, MaximallyMixedHasOneTermCertificate) {
    ASSERT_EQ(run({"family", "mixed", "--n", "2", "--out", path("m.state")}).code, 0);
    const auto r = run({"analyze", path("m.state"), "--ignore-family", "--decompose", "--out", path("m.cert")});
    EXPECT_EQ(r.code, 0) << r.out;
    std::ifstream in(path("m.cert"));
    EXPECT_EQ(read_certificate(in).terms.size(), 1u);
}

TEST_F(CliTest, GhzFileAntidiagonalWitness) {
    ASSERT_EQ(run({"family", "ghz", "--j", "000", "--out", path("g.state")}).code, 0);
    const auto r = run({"analyze", path("g.state"), "--ignore-family"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "antidiagonal: fail  margin=-0.5  [j=001 u=000]"));
}

TEST_F(CliTest, SharpnessExtremeReport) {
    const auto r = run({"family", "sharpness", "--n", "3", "--c", "0.0625", "--d", "-0.0625", "--decompose"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "not fully separable (c != d)"));
    EXPECT_TRUE(contains(r.out, "Peres passes on all cuts"));
    EXPECT_TRUE(contains(r.out, "||rho||_1=1.5"));
}

TEST_F(CliTest, ProductTwoTermCertificate) {
    const auto r = run({"family", "product", "--n", "2", "--m", "x", "--m", "x", "--decompose"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "certificate: 2 terms"));
}

TEST_F(CliTest, EditedCertificateFails) {
    ASSERT_EQ(run({"family", "werner", "--n", "2", "--s", "0.2", "--decompose", "--cert", path("w.cert"), "--out",
                   path("w.state")})
                  .code,
              0);
    std::ifstream in(path("w.cert"));
    auto dec = read_certificate(in);
    dec.terms[1].weight += 0.01;
    dec.terms[0].weight -= 0.01;
    std::ofstream(path("edited.cert")) << [&] {
        std::ostringstream os;
        write_certificate(os, dec);
        return os.str();
    }();
    const auto v = run({"verify", path("edited.cert"), path("w.state")});
    EXPECT_EQ(v.code, 1);
    EXPECT_TRUE(contains(v.out, "max deviation: "));
}

TEST_F(CliTest, CertificateQubitMismatchIsArgumentError) {
    ASSERT_EQ(run({"family", "werner", "--n", "2", "--s", "0.2", "--decompose", "--cert", path("w.cert")}).code, 0);
    ASSERT_EQ(run({"family", "mixed", "--n", "3", "--out", path("m.state")}).code, 0);
    EXPECT_EQ(run({"verify", path("w.cert"), path("m.state")}).code, 3);
}

TEST_F(CliTest, OutputIsDeterministic) {
    const std::vector<std::string> args{"family", "werner", "--n", "4", "--s", "0.1", "--decompose", "--jobs", "3"};
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
}

TEST_F(CliTest, InProcessVerdictMatchesFileRoundTrip) {
    const WernerSpec spec{3, 0.15, BitIndex::parse("010"), Sign::minus};
    AnalysisOptions opt;
    opt.family = spec;
    const auto direct = analyze(werner(spec), opt);
    ASSERT_EQ(run({"family", "werner", "--n", "3", "--s", "0.15", "--sign", "-", "--j", "010", "--out",
                   path("w.state")})
                  .code,
              0);
    const auto r = run({"analyze", path("w.state")});
    EXPECT_EQ(r.code, exit_code(direct.overall));
    EXPECT_EQ(r.out, render(direct));
}
