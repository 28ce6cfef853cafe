#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace qsep;
using namespace qsep::testing;

namespace {

template <class F>
ParseError parse_error_of(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError thrown";
    return ParseError("none", 0, 0);
}

StateFile read_state_text(const std::string& text) {
    std::istringstream in(text);
    return read_state(in);
}

} // namespace

TEST(StateIo, RoundTripIsLossless) {
    Rng rng(12);
    for (int n = 1; n <= 4; ++n) {
        const auto rho = random_density(n, rng);
        std::stringstream ss;
        write_state(ss, rho);
        const auto sf = read_state(ss);
        EXPECT_EQ(sf.n, n);
        EXPECT_FALSE(sf.family.has_value());
        EXPECT_EQ(sf.matrix, rho.matrix());
        EXPECT_EQ(sf.density().matrix(), rho.matrix());
    }
}

TEST(StateIo, ReadsHandWrittenFile) {
    const auto sf = read_state_text(
        "# two-qubit GHZ\n"
        "qsep/1 state\n"
        "n 2\n"
        "\n"
        "[0.5, 0] [0, 0] [0, 0] [0.5, 0]\n"
        "[0, 0]   [0, 0] [0, 0] [0, 0]   # zero row\n"
        "[0, 0] [0, 0] [0, 0] [0, 0]\n"
        "[0.5, 0] [0, 0] [0, 0] [0.5, 0]\n");
    EXPECT_EQ(sf.matrix, ghz_projector(BitIndex::parse("00"), Sign::plus).matrix());
}

TEST(StateIo, FamilyLineRoundTrip) {
    const std::vector<FamilyDecl> decls = {
        MixedDecl{2},
        GhzDecl{BitIndex::parse("01"), Sign::minus},
        WernerSpec{3, 0.1, BitIndex::parse("011"), Sign::minus},
        DiagonalFamilySpec{2, {0.4, 0.1}, {0.3, 0.2}},
        SharpnessSpec{3, 0.1, -0.05},
        MuSpec{0.2, DiagonalFamilySpec{2, {0.7, 0.1}, {0.1, 0.1}}},
        ProductSpec{2, {x_axis, Bloch{0.6, 0.0, -0.8}}, Sign::minus},
    };
    for (const auto& decl : decls) {
        const auto rho = build_state(decl);
        std::stringstream ss;
        write_state(ss, rho, decl);
        const auto sf = read_state(ss);
        ASSERT_TRUE(sf.family.has_value());
        EXPECT_EQ(format_family(*sf.family), format_family(decl));
        EXPECT_EQ(build_state(*sf.family).matrix(), rho.matrix());
    }
}

TEST(StateIo, ParseErrorsCarryLineAndColumn) {
    auto e = parse_error_of([] { read_state_text("qsep/1 state\nn 1\n[1, 0] [0, 0]\n[0, 0] [0; 0]\n"); });
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 10u);

    e = parse_error_of([] { read_state_text("qsep/1 matrix\nn 1\n"); });
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 8u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 1\n[1, 0] [0, 0]\n"); });
    EXPECT_EQ(e.line(), 4u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 1\n[1, 0] [0, 0] [0, 0]\n[0, 0] [0, 0]\n"); });
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 15u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 17\n"); });
    EXPECT_EQ(e.line(), 2u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 1\n[nan, 0] [0, 0]\n[0, 0] [0, 0]\n"); });
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 2u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 2\nfamily werner n=2 s=0.1 sign=*\n"); });
    EXPECT_EQ(e.line(), 3u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 2\nfamily werner n=3 s=0.1 sign=+ j=000\n"); });
    EXPECT_EQ(e.line(), 3u);

    e = parse_error_of([] { read_state_text("qsep/1 state\nn 1\n[1, 0] [0, 0]\n[0, 0] [0, 0]\nextra\n"); });
    EXPECT_EQ(e.line(), 5u);
}

TEST(StateIo, ValidationHappensAfterParsing) {
    const auto sf = read_state_text("qsep/1 state\nn 1\n[0.6, 0] [0, 0]\n[0, 0] [0.6, 0]\n");
    try {
        (void)sf.density();
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.invariant(), Invariant::trace);
    }
}

TEST(CertificateIo, RoundTrip) {
    const auto dec = werner_decomposition({3, 0.15, BitIndex::parse("001"), Sign::minus});
    std::stringstream ss;
    write_certificate(ss, dec);
    const auto back = read_certificate(ss);
    ASSERT_EQ(back.terms.size(), dec.terms.size());
    EXPECT_EQ(back.n, 3);
    for (std::size_t a = 0; a < dec.terms.size(); ++a) {
        EXPECT_EQ(back.terms[a].weight, dec.terms[a].weight);
        EXPECT_EQ(back.terms[a].bloch, dec.terms[a].bloch);
    }
}

TEST(CertificateIo, ParseErrors) {
    auto e = parse_error_of([] {
        std::istringstream in("qsep/1 certificate\nn 2\nterms 1\n1 [0, 0, 0]\n");
        read_certificate(in);
    });
    EXPECT_EQ(e.line(), 4u);
    e = parse_error_of([] {
        std::istringstream in("qsep/1 certificate\nn 1\nterms 0\n");
        read_certificate(in);
    });
    EXPECT_EQ(e.line(), 3u);
}

TEST(TableIo, RoundTrip) {
    Rng rng(3);
    const auto t = spin_from_density(random_density(2, rng));
    std::stringstream ss;
    write_table(ss, t);
    const auto back = read_table(ss);
    EXPECT_EQ(back.basis(), BasisKind::spin);
    EXPECT_EQ(max_abs_diff(back, t), 0.0);
}

TEST(TableIo, RejectsOutOfOrderEntries) {
    std::istringstream in("qsep/1 table adjusted\nn 1\n0 0 [1, 0]\n1 0 [0, 0]\n");
    const auto e = parse_error_of([&] { read_table(in); });
    EXPECT_EQ(e.line(), 4u);
}

TEST(FormatReal, ShortestRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_real(x)), x);
}
