#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ubcycle/bounds.hpp"
#include "ubcycle/distance.hpp"
#include "ubcycle/logical.hpp"

using namespace ubcycle;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(Distance, ToyCodeMatchesFullEnumeration) {
    const CssCode c = build_ub({7, parse_poly("1+x", 7), 1});
    const DistanceResult res = exact_distance(c);
    EXPECT_EQ(res.d_found, oracle::brute_force_distance(c));
    EXPECT_TRUE(res.lower_weights_exhausted);
    EXPECT_TRUE(is_nontrivial_logical_z(c, res.witness));
    EXPECT_EQ(res.witness.weight(), res.d_found);
}

TEST(Distance, SmallCodesExactAgreesWithBruteForce) {
    for (auto [n, a] : std::vector<std::pair<std::size_t, const char *>>{{7, "1+x+x^3"}, {6, "1+x+x^2"}, {9, "1+x^3"}}) {
        const CssCode c = build_ub({n, parse_poly(a, static_cast<long long>(n)), 1});
        SCOPED_TRACE(a);
        EXPECT_EQ(exact_distance(c).d_found, oracle::brute_force_distance(c));
    }
}

TEST(Distance, Code42Exact) {
    const CssCode c = build_ub({21, parse_poly("1+x+x^2+x^4", 21), 1});
    const DistanceResult res = exact_distance(c);
    EXPECT_EQ(res.d_found, 5u);
    EXPECT_TRUE(is_nontrivial_logical_z(c, res.witness));
    const auto capped = capped_exact_distance(c, 6);
    ASSERT_TRUE(capped);
    EXPECT_EQ(capped->d_found, 5u);
    EXPECT_FALSE(capped_exact_distance(c, 4).has_value());
}

TEST(Distance, DimLimitIsEnforced) {
    const CssCode c = build_ub({21, parse_poly("1+x+x^2+x^4", 21), 1});
    EXPECT_THROW(exact_distance(c, 10), std::invalid_argument);
}

TEST(Distance, CappedAgreesWithExactOnSmallCodes) {
    std::mt19937_64 rng(51);
    int checked = 0;
    while (checked < 25) {
        const std::size_t n = 5 + rng() % 10;
        const RingPoly a = oracle::random_poly(rng, n, true);
        if (gcd_with_modulus(a).degree() <= 0 || weight(a) < 2) continue;
        const CssCode c = build_ub({n, a, static_cast<unsigned>(1 + rng() % 3)});
        if (c.hz().cols() - rank(c.hz()) > 20) continue;
        const std::size_t d = exact_distance(c).d_found;
        const auto capped = capped_exact_distance(c, d);
        ASSERT_TRUE(capped) << c.a().to_string();
        ASSERT_EQ(capped->d_found, d);
        if (d > 1) {
            ASSERT_FALSE(capped_exact_distance(c, d - 1));
        }
        ++checked;
    }
}

TEST(Distance, SearchNeverBeatsExactAndExactRespectsBounds) {
    std::mt19937_64 rng(52);
    int checked = 0;
    while (checked < 15) {
        const std::size_t n = 7 + rng() % 14;
        const RingPoly a = oracle::random_poly(rng, n, true);
        if (gcd_with_modulus(a).degree() <= 0 || weight(a) < 2) continue;
        const CssCode c = build_ub({n, a, static_cast<unsigned>(1 + rng() % 3)});
        if (!c.divisor_case() || c.hz().cols() - rank(c.hz()) > 22) continue;
        const LogicalBasis basis = logical_basis(c);
        const std::size_t d = exact_distance(c).d_found;
        SearchBudget budget;
        budget.max_seconds = 2;
        budget.max_iterations = 200;
        const DistanceResult found = low_weight_search(c, &basis, budget);
        ASSERT_GE(found.d_found, d);
        ASSERT_TRUE(is_nontrivial_logical_z(c, found.witness));
        ASSERT_LE(d, b_bounds(c, basis).d_upper);
        ++checked;
    }
}

TEST(Distance, Code60CappedCertificate) {
    const CssCode c = build_ub({30, parse_poly("1+x+x^3+x^4", 30), 5});
    EXPECT_FALSE(capped_exact_distance(c, 4).has_value());
    const auto res = capped_exact_distance(c, 5);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->d_found, 5u);
    EXPECT_TRUE(is_nontrivial_logical_z(c, res->witness));
}

TEST(Distance, SearchReachesTargetOnCode42) {
    const CssCode c = build_ub({21, parse_poly("1+x+x^2+x^4", 21), 1});
    SearchBudget budget;
    budget.max_seconds = 10;
    budget.target_weight = 5;
    const DistanceResult res = low_weight_search(c, nullptr, budget);
    EXPECT_EQ(res.d_found, 5u);
    EXPECT_TRUE(is_nontrivial_logical_z(c, res.witness));
}

TEST(Search, EnumeratorVisitsBinomialCount) {
    for (std::size_t n : {7u, 12u, 21u})
        for (std::size_t w = 1; w <= 4; ++w) {
            std::size_t count = 0;
            std::vector<std::size_t> prev;
            enumerate_polynomials(n, w, [&](const std::vector<std::size_t> &e) {
                ASSERT_EQ(e.size(), w);
                ASSERT_EQ(e.front(), 0u);
                ASSERT_LT(prev, e);
                prev = e;
                ++count;
            });
            EXPECT_EQ(count, binomial(n - 1, w - 1));
        }
}

TEST(Search, Code42IsFirstDivisorHit) {
    SearchConfig cfg;
    cfg.n_min = cfg.n_max = 21;
    cfg.l_min = cfg.l_max = 1;
    cfg.w = 8;
    cfg.min_weight_a = 4;
    cfg.require_divisor = true;
    std::vector<std::string> hits;
    code_search(cfg, [&](const SearchHit &h) { hits.push_back(h.spec.a.to_string()); });
    ASSERT_FALSE(hits.empty());
    EXPECT_EQ(hits.front(), "1+x+x^2+x^4");
}

TEST(Search, DeterministicAcrossThreadCounts) {
    SearchConfig cfg;
    cfg.n_min = 15;
    cfg.n_max = 31;
    cfg.l_min = 1;
    cfg.l_max = 3;
    cfg.w = 8;
    cfg.require_divisor = true;
    cfg.max_dupper = 8;
    std::vector<std::string> runs[2];
    for (unsigned t : {1u, 3u}) {
        cfg.threads = t;
        code_search(cfg, [&](const SearchHit &h) { runs[t == 3].push_back(to_json(h).dump()); });
    }
    EXPECT_FALSE(runs[0].empty());
    EXPECT_EQ(runs[0], runs[1]);
}

TEST(Search, FiltersApply) {
    SearchConfig cfg;
    cfg.n_min = 15;
    cfg.n_max = 30;
    cfg.l_min = 1;
    cfg.l_max = 2;
    cfg.w = 6;
    cfg.min_k = 6;
    cfg.min_dupper = 4;
    code_search(cfg, [&](const SearchHit &h) {
        ASSERT_GE(h.code.k(), 6u);
        ASSERT_TRUE(h.bounds);
        ASSERT_GE(h.bounds->d_upper, 4u);
        ASSERT_LE(h.code.w(), 6u);
    });
}

TEST(Search, ConfigValidation) {
    SearchConfig cfg;
    cfg.n_min = 10;
    cfg.n_max = 5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.n_max = 12;
    cfg.w = 1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
