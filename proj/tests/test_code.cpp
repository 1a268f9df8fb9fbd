#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ubcycle/atlas.hpp"
#include "ubcycle/code.hpp"

using namespace ubcycle;

namespace {

CssCode code42() { return build_ub({21, parse_poly("1+x+x^2+x^4", 21), 1}); }

/// Random UB specs with a nontrivial common factor, n <= 40.
std::vector<UBCodeSpec> random_valid_specs(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<UBCodeSpec> out;
    while (out.size() < count) {
        const std::size_t n = 3 + rng() % 38;
        const RingPoly a = oracle::random_poly(rng, n, true);
        if (gcd_with_modulus(a).degree() <= 0) continue;
        out.push_back({n, a, static_cast<unsigned>(1 + rng() % 5)});
    }
    return out;
}

}  // namespace

TEST(Code, Code42Parameters) {
    const CssCode c = code42();
    EXPECT_EQ(c.num_qubits(), 42u);
    EXPECT_EQ(c.k(), 8u);
    EXPECT_EQ(c.w(), 8u);
    EXPECT_EQ(c.b(), parse_poly("1+x^2+x^4+x^8", 21));
    ASSERT_TRUE(c.divisor_case());
    EXPECT_EQ(c.h()->to_string(), "1+x+x^3+x^7+x^8+x^10+x^14+x^15+x^17");
}

TEST(Code, MultiplicationMatrixActsAsRingProduct) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng() % 40;
        const RingPoly p = oracle::random_poly(rng, n), v = oracle::random_poly(rng, n);
        ASSERT_EQ(mat_vec(multiplication_matrix(p), v.coeffs()), poly_mul(p, v).coeffs());
    }
}

TEST(Code, RandomSpecsSatisfyInvariants) {
    for (const UBCodeSpec &spec : random_valid_specs(200, 32)) {
        const CssCode c = build_ub(spec);
        SCOPED_TRACE(spec.to_string());
        ASSERT_TRUE(check_css(c));
        ASSERT_TRUE(c.hx().multiply(c.hz().transposed()).is_zero());
        const std::size_t N = c.num_qubits();
        ASSERT_EQ(c.k(), N - rank(c.hx()) - rank(c.hz()));
        ASSERT_EQ(c.k(), dimension(c.a(), c.b()));
        ASSERT_EQ(c.k() % 2, 0u);
        ASSERT_EQ(kernel_basis(c.hz()).size(), spec.n + c.k() / 2);
        ASSERT_LE(c.w(), 2 * weight(spec.a));
        if (c.divisor_case()) {
            ASSERT_TRUE(poly_mul(c.a(), *c.h()).is_zero());
            ASSERT_EQ(static_cast<std::size_t>(c.a().degree() + c.h()->degree()), spec.n);
        }
    }
}

TEST(Code, GeneralizedBicycleDimension) {
    // gcd(a, b, x^n - 1) rather than gcd(a, x^n - 1)
    const RingPoly a = parse_poly("1+x", 6), b = parse_poly("1+x+x^2", 6);
    EXPECT_THROW(build_gb(a, b), std::invalid_argument);
    const CssCode c = build_gb(parse_poly("1+x^3", 6), parse_poly("1+x", 6));
    EXPECT_EQ(c.k(), 2u);
    EXPECT_TRUE(check_css(c));
}

TEST(Code, RejectsTrivialAndMismatchedInput) {
    EXPECT_THROW(build_ub({8, parse_poly("1+x+x^3", 8), 1}), std::invalid_argument);
    EXPECT_THROW(build_gb(parse_poly("1+x", 6), parse_poly("1+x", 7)), std::invalid_argument);
}

TEST(Code, TableRowsReproduceNkw) {
    for (const PublishedCode &row : published_codes()) {
        const CssCode c = build_ub(spec_of(row));
        SCOPED_TRACE(row.a);
        EXPECT_EQ(c.num_qubits(), row.N);
        EXPECT_EQ(c.k(), row.k);
        EXPECT_EQ(c.w(), row.w);
        EXPECT_TRUE(c.divisor_case());
    }
}

TEST(SpecFile, ParsesLinesAndComments) {
    std::istringstream in("# table rows\n\nn=21 a=1+x+x^2+x^4 l=1\n  n=30 a=0,1,3,4 l=5  # second code\n");
    const auto specs = parse_spec_file(in);
    ASSERT_EQ(specs.size(), 2u);
    EXPECT_EQ(specs[0].n, 21u);
    EXPECT_EQ(specs[0].a.to_string(), "1+x+x^2+x^4");
    EXPECT_EQ(specs[1].l, 5u);
    EXPECT_EQ(specs[1].a.to_string(), "1+x+x^3+x^4");
    EXPECT_EQ(parse_spec_line(specs[1].to_string()).a, specs[1].a);
}

TEST(SpecFile, ErrorsNameTheToken) {
    try {
        parse_spec_line("n=21 a=1+x l=1 q=3");
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("'q'"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_spec_line("n=21 l=1"), std::invalid_argument);
    EXPECT_THROW(parse_spec_line("n=abc a=1+x l=1"), std::invalid_argument);
}

TEST(Code, JsonFields) {
    const auto j = to_json(code42());
    EXPECT_EQ(j["n"], 21);
    EXPECT_EQ(j["N"], 42);
    EXPECT_EQ(j["k"], 8);
    EXPECT_EQ(j["r"], 4);
    EXPECT_EQ(j["w"], 8);
    EXPECT_EQ(j["divisor_case"], true);
    EXPECT_EQ(j["a"], "1+x+x^2+x^4");
    EXPECT_EQ(j["h"], "1+x+x^3+x^7+x^8+x^10+x^14+x^15+x^17");
}
