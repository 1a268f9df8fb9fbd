#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ubcycle/atlas.hpp"
#include "ubcycle/bounds.hpp"
#include "ubcycle/logical.hpp"

using namespace ubcycle;

namespace {

CssCode code42() { return build_ub({21, parse_poly("1+x+x^2+x^4", 21), 1}); }

void check_witnesses(const CssCode &code, const LogicalBasis &basis, const BoundsReport &rep) {
    for (Side side : {Side::X, Side::Z}) {
        for (int q = 0; q < 3; ++q) {
            const UBound &u = rep.side(side).u[static_cast<std::size_t>(q)];
            ASSERT_LE(u.alpha.popcount() + u.beta.popcount(), static_cast<std::size_t>(q + 1));
            const PauliVector v =
                side == Side::X ? lambda_x(basis, u.alpha, u.beta) : lambda_z(basis, u.alpha, u.beta);
            ASSERT_EQ(v.weight(), u.value);
            ASSERT_TRUE(side == Side::X ? is_nontrivial_logical_x(code, v) : is_nontrivial_logical_z(code, v));
        }
    }
}

}  // namespace

TEST(Rho, PairAndTripleFormulas) {
    // rows {0,1,2}, {0,1,3}, {2,3,4}
    BitMatrix m(3, 5);
    for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 3}, {2, 2}, {2, 3}, {2, 4}})
        m.set(r, c);
    EXPECT_EQ(rho4_induced(m), 1u);  // C(2,2) for rows 0,1
    EXPECT_EQ(rho6_induced(m), 2u);  // |N01|=2 (cols 0,1), |N02|=1, |N12|=1
    EXPECT_THROW(rho4_induced(BitMatrix(1, 4)), std::invalid_argument);
    EXPECT_THROW(rho6_induced(BitMatrix(2, 4)), std::invalid_argument);
}

TEST(Rho, MatchesChordlessCycleEnumeration) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const std::size_t rows = 3 + rng() % 4, cols = 6 + rng() % 19;
        const BitMatrix m = oracle::random_matrix(rng, rows, cols, 0.35);
        ASSERT_EQ(rho4_induced(m), oracle::max_chordless_cycles(m, 2));
        ASSERT_EQ(rho6_induced(m), oracle::max_chordless_cycles(m, 3));
    }
}

TEST(Rho, Code42Circulants) {
    const LogicalBasis b = logical_basis(code42());
    const BitMatrix cf = first_rows(b.f, 4), ch = first_rows(b.h, 4);
    EXPECT_EQ(rho4_induced(cf), 1u);
    EXPECT_EQ(rho4_induced(ch), 3u);
    EXPECT_EQ(rho6_induced(cf), 4u);
    EXPECT_EQ(rho6_induced(ch), 27u);
    EXPECT_EQ(oracle::max_chordless_cycles(ch, 3), 27u);
}

TEST(Bounds, Code42) {
    const CssCode c = code42();
    const LogicalBasis b = logical_basis(c);
    const BoundsReport rep = b_bounds(c, b);
    for (Side side : {Side::X, Side::Z}) {
        const SideBounds &s = rep.side(side);
        EXPECT_EQ(s.u[0].value, 5u);
        EXPECT_EQ(s.u[1].value, 5u);
        EXPECT_EQ(s.u[2].value, 5u);
        EXPECT_DOUBLE_EQ(s.b[0], 5.0);
        EXPECT_DOUBLE_EQ(s.b[1], 6.0);
        EXPECT_NEAR(s.b[2], 5.4756, 1e-3);
    }
    EXPECT_EQ(rep.corollary3, 5u);
    EXPECT_EQ(rep.d_upper, 5u);
    check_witnesses(c, b, rep);
}

TEST(Bounds, B3ClosedForm) {
    // 3 wt(f) + 3 - 6 rho6^(1/3) with wt(f) = 4, rho6 = 4
    EXPECT_NEAR(15.0 - 6.0 * std::cbrt(4.0), 5.475594, 1e-6);
}

TEST(Bounds, OrderingOnTableCodes) {
    for (const PublishedCode &row : published_codes()) {
        const CssCode c = build_ub(spec_of(row));
        if (c.num_qubits() > 400) continue;  // larger rows are covered by the acceptance run
        SCOPED_TRACE(row.a);
        const LogicalBasis b = logical_basis(c);
        const BoundsReport rep = b_bounds(c, b);
        for (Side side : {Side::X, Side::Z}) {
            const SideBounds &s = rep.side(side);
            ASSERT_LE(s.u[2].value, s.u[1].value);
            ASSERT_LE(s.u[1].value, s.u[0].value);
            for (int q = 0; q < 3; ++q) ASSERT_LE(static_cast<double>(s.u[q].value), s.b[q] + 1e-9);
            ASSERT_DOUBLE_EQ(static_cast<double>(s.u[0].value), s.b[0]);
            ASSERT_LE(s.b[0], static_cast<double>(rep.corollary3));
        }
        ASSERT_LE(row.d, rep.d_upper);
        check_witnesses(c, b, rep);
    }
}

TEST(Bounds, XAndZAgreeOnCode42) {
    const CssCode c = code42();
    const BoundsReport rep = b_bounds(c, logical_basis(c));
    EXPECT_EQ(rep.x.f_family.rho4, rep.z.f_family.rho4);
    EXPECT_EQ(rep.x.h_family.rho6, rep.z.h_family.rho6);
}

TEST(Bounds, Corollary3) {
    EXPECT_EQ(corollary3_bound(code42()), 5u);
    const CssCode c = build_ub({30, parse_poly("1+x+x^3+x^4", 30), 5});
    // 4^5 + 1 exceeds wt(h) = 15
    EXPECT_EQ(corollary3_bound(c), 15u);
}

TEST(Bounds, JsonCarriesWitnesses) {
    const CssCode c = code42();
    const auto j = to_json(b_bounds(c, logical_basis(c)));
    EXPECT_EQ(j["d_upper"], 5);
    EXPECT_EQ(j["X"]["U3"]["value"], 5);
    EXPECT_TRUE(j["Z"]["U1"].contains("alpha"));
}
