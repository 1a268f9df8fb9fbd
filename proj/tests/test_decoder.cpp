#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ubcycle/atlas.hpp"
#include "ubcycle/decoder.hpp"
#include "ubcycle/logical.hpp"

using namespace ubcycle;

namespace {

CssCode code42() { return build_ub({21, parse_poly("1+x+x^2+x^4", 21), 1}); }

BitVec bits_of(std::size_t value, std::size_t len) {
    BitVec v(len);
    for (std::size_t i = 0; i < len; ++i) v.set(i, value >> i & 1);
    return v;
}

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    CounterRng a = CounterRng::for_trial(7, 0.05, 3), b = CounterRng::for_trial(7, 0.05, 3);
    CounterRng c = CounterRng::for_trial(7, 0.05, 4), d = CounterRng::for_trial(7, 0.06, 3);
    const std::uint64_t x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
    // SplitMix64 reference output for state 0x9E3779B97F4A7C15
    EXPECT_EQ(CounterRng(0).next(), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, ErrorDensity) {
    CounterRng rng(12345);
    std::size_t ones = 0;
    for (int t = 0; t < 200; ++t) ones += sample_error(0.1, 500, rng).popcount();
    EXPECT_NEAR(static_cast<double>(ones) / 100000.0, 0.1, 0.005);
}

TEST(Bp, ZeroSyndromeReturnsImmediately) {
    const CssCode c = code42();
    BpDecoder bp(c.hz());
    const BpResult r = bp.decode(BitVec(c.hz().rows()), 0.05, 0.875, 100);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_TRUE(r.hard.none());
}

TEST(Decoder, CorrectsEverySingleError) {
    const CssCode c = code42();
    BpDecoder bp(c.hz());
    for (std::size_t q = 0; q < c.num_qubits(); ++q) {
        BitVec e(c.num_qubits());
        e.set(q);
        const DecodeOutcome out = bp_osd0_decode(bp, syndrome(c, e), 0.05, 0.875, 1000);
        ASSERT_EQ(syndrome(c, out.estimate), syndrome(c, e));
        ASSERT_FALSE(is_logical_failure(c, e, out.estimate)) << "qubit " << q;
    }
}

TEST(Decoder, DoubleErrors) {
    // Min-sum is not a minimum-weight decoder: on a handful of weight-2 errors it
    // stops at a weight-3 estimate in the other coset. Such a residual must then
    // be a genuine logical of weight >= d = 5.
    const CssCode c = code42();
    BpDecoder bp(c.hz());
    std::size_t failures = 0;
    for (std::size_t i = 0; i < c.num_qubits(); ++i)
        for (std::size_t j = i + 1; j < c.num_qubits(); ++j) {
            BitVec e(c.num_qubits());
            e.set(i);
            e.set(j);
            const DecodeOutcome out = bp_osd0_decode(bp, syndrome(c, e), 0.05, 0.875, 1000);
            ASSERT_EQ(syndrome(c, out.estimate), syndrome(c, e));
            if (is_logical_failure(c, e, out.estimate)) {
                ++failures;
                const BitVec residual = e ^ out.estimate;
                ASSERT_TRUE(is_nontrivial_logical_z(c, residual));
                ASSERT_GE(residual.popcount(), 5u);
            }
        }
    EXPECT_LE(failures, 861u / 100);
}

TEST(Osd, AlwaysMatchesSyndrome) {
    const CssCode small = code42();
    const CssCode table = build_ub(spec_of(published_codes()[0]));
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> prate(0.02, 0.2);
    for (int t = 0; t < 10000; ++t) {
        const CssCode &c = t % 4 == 0 ? table : small;
        CounterRng r(rng());
        const BitVec e = sample_error(prate(rng), c.num_qubits(), r);
        const BitVec s = syndrome(c, e);
        // a short BP run leaves OSD plenty of unconverged work
        BpDecoder bp(c.hz());
        const BpResult res = bp.decode(s, 0.1, 0.875, 2);
        const BitVec est = osd0(c.hz(), s, res.posterior, res.hard);
        ASSERT_EQ(mat_vec(c.hz(), est), s) << "trial " << t;
    }
}

TEST(Osd, KeepsHardDecisionOnNonPivots) {
    const CssCode c = code42();
    std::vector<double> llr(c.num_qubits());
    for (std::size_t i = 0; i < llr.size(); ++i) llr[i] = 1.0 + static_cast<double>(i);
    BitVec e(c.num_qubits());
    e.set(3);
    // unreliable bits first: the leading columns form the pivot set
    const BitVec est = osd0(c.hz(), syndrome(c, e), llr, BitVec(c.num_qubits()));
    EXPECT_EQ(mat_vec(c.hz(), est), syndrome(c, e));
    for (std::size_t i = c.num_qubits() - 8; i < c.num_qubits(); ++i) EXPECT_FALSE(est.get(i));
}

TEST(Decoder, ResidualClassMatchesLambdaDecomposition) {
    const CssCode c = build_ub({7, parse_poly("1+x", 7), 1});
    const LogicalBasis basis = logical_basis(c);
    BpDecoder bp(c.hz());
    CounterRng rng(99);
    for (int t = 0; t < 500; ++t) {
        const BitVec e = sample_error(0.15, c.num_qubits(), rng);
        const DecodeOutcome out = bp_osd0_decode(bp, syndrome(c, e), 0.15, 0.875, 50);
        const BitVec residual = e ^ out.estimate;
        ASSERT_TRUE(mat_vec(c.hz(), residual).none());
        int matches = 0;
        std::size_t cls = 0;
        for (std::size_t m = 0; m < 4; ++m) {
            const BitVec rep = lambda_z(basis, bits_of(m & 1, 1), bits_of(m >> 1, 1)).bits();
            if (c.hx_rows().contains(residual ^ rep)) {
                ++matches;
                cls = m;
            }
        }
        ASSERT_EQ(matches, 1);
        ASSERT_EQ(cls == 0, !is_logical_failure(c, e, out.estimate));
    }
}

TEST(Wilson, KnownValues) {
    auto [lo, hi] = wilson_interval(150, 615);
    EXPECT_NEAR(lo, 0.21162, 1e-4);
    EXPECT_NEAR(hi, 0.27936, 1e-4);
    auto [z0, z1] = wilson_interval(0, 100);
    EXPECT_NEAR(z0, 0.0, 1e-12);
    EXPECT_NEAR(z1, 0.0370, 1e-3);
}

TEST(Simulation, DeterministicAcrossThreadCounts) {
    const CssCode c = code42();
    SimConfig cfg;
    cfg.p_list = {0.06, 0.1};
    cfg.target_logical_errors = 25;
    cfg.max_iters = 100;
    cfg.seed = 2024;
    std::vector<std::string> csv;
    for (unsigned t : {1u, 2u, 4u}) {
        cfg.threads = t;
        std::ostringstream out;
        write_sim_csv(out, run_simulation(c, cfg));
        csv.push_back(out.str());
    }
    EXPECT_EQ(csv[0], csv[1]);
    EXPECT_EQ(csv[0], csv[2]);
}

TEST(Simulation, StopsAtTargetAndTruncates) {
    const CssCode c = code42();
    SimConfig cfg;
    cfg.p_list = {0.1};
    cfg.target_logical_errors = 10;
    auto pts = run_simulation(c, cfg);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].logical_errors, 10u);
    EXPECT_FALSE(pts[0].truncated);
    cfg.p_list = {0.01};
    cfg.max_trials = 50;
    pts = run_simulation(c, cfg);
    EXPECT_EQ(pts[0].trials, 50u);
    EXPECT_TRUE(pts[0].truncated);
    EXPECT_EQ(pts[0].syndrome_mismatches, 0u);
}

TEST(Simulation, LerGrowsWithP) {
    const CssCode c = code42();
    SimConfig cfg;
    cfg.p_list = {0.03, 0.06, 0.09, 0.12};
    cfg.target_logical_errors = 60;
    cfg.max_trials = 200000;
    cfg.max_iters = 100;
    const auto pts = run_simulation(c, cfg);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i - 1].ci_low, pts[i].ci_high) << pts[i].p;
    EXPECT_LT(pts.front().ler, pts.back().ler);
}

TEST(Simulation, CsvRoundTrip) {
    std::vector<SimPoint> pts(2);
    pts[0] = {0.05, 1000, 150, 0.15, 0.13, 0.17, false, 3, 0};
    pts[1] = {0.1, 20, 2, 0.1, 0.03, 0.3, true, 0, 0};
    std::stringstream ss;
    write_sim_csv(ss, pts);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "p,trials,logical_errors,ler,ci_low,ci_high,truncated");
    const auto back = read_sim_csv(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].trials, 20u);
    EXPECT_TRUE(back[1].truncated);
    std::stringstream bad("p,trials\n0.1,3\n");
    EXPECT_THROW(read_sim_csv(bad), std::runtime_error);
}

TEST(Simulation, ConfigValidation) {
    SimConfig cfg;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);  // no p values
    cfg.p_list = {0.6};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.p_list = {0.05};
    cfg.alpha = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
