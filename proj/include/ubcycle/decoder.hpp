#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "ubcycle/code.hpp"
#include "ubcycle/gf2.hpp"

namespace ubcycle {

/// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based stream: state_{i+1} = state_i + 0x9E3779B97F4A7C15 and
/// output_i = mix64(state_i). The stream for (seed, p, trial) starts at
/// mix64(mix64(mix64(seed) ^ bits(p)) ^ trial), so every trial draws from its
/// own reproducible sequence independent of scheduling.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : state_(key) {}
    static CounterRng for_trial(std::uint64_t seed, double p, std::uint64_t trial);

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// Each of the n_qubits bits is set independently with probability p.
BitVec sample_error(double p, std::size_t n_qubits, CounterRng &rng);

/// s = H_Z e.
BitVec syndrome(const CssCode &code, const BitVec &e);

struct BpResult {
    std::vector<double> posterior;  // per-bit LLR, positive favours 0
    BitVec hard;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Syndrome belief propagation with a serial (layered) normalized min-sum
/// schedule: checks are visited in row order, each check update reads the
/// freshest variable posteriors and writes them back in place.
class BpDecoder {
  public:
    explicit BpDecoder(const BitMatrix &h);

    BpResult decode(const BitVec &syndrome, double p, double alpha, std::size_t max_iters);

    const BitMatrix &matrix() const { return h_; }

  private:
    BitMatrix h_;
    std::vector<std::uint32_t> row_start_;  // CSR offsets into edge_var_
    std::vector<std::uint32_t> edge_var_;
    std::vector<double> check_msg_;  // check-to-variable message per edge
};

/// Order-0 ordered-statistics post-processing. Columns are ranked by ascending
/// |posterior| (ties by index); Gauss-Jordan elimination in that order picks
/// the pivot set S, non-pivot bits keep the BP hard decision and the pivot bits
/// are solved so that H e = s exactly.
BitVec osd0(const BitMatrix &h, const BitVec &syndrome, const std::vector<double> &posterior, const BitVec &hard);

/// residual = e ^ estimate; failure iff the residual is not in rs(H_X). A
/// residual with nonzero syndrome is also reported as a failure.
bool is_logical_failure(const CssCode &code, const BitVec &e, const BitVec &estimate);

struct DecodeOutcome {
    BitVec estimate;
    bool bp_converged = false;
};

/// BP, then OSD-0 only when BP did not converge.
DecodeOutcome bp_osd0_decode(BpDecoder &bp, const BitVec &syndrome, double p, double alpha, std::size_t max_iters);

struct SimConfig {
    std::vector<double> p_list;
    double alpha = 0.875;
    std::size_t max_iters = 1000;
    std::size_t target_logical_errors = 150;
    std::size_t max_trials = 10'000'000;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

struct SimPoint {
    double p = 0;
    std::size_t trials = 0;
    std::size_t logical_errors = 0;
    double ler = 0;
    double ci_low = 0;
    double ci_high = 0;
    bool truncated = false;
    std::size_t osd_invocations = 0;
    std::size_t syndrome_mismatches = 0;
};

/// 95% Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n);

/// Monte-Carlo logical error rate per p. Trial i at rate p uses
/// CounterRng::for_trial(seed, p, i); the point stops at the first trial index
/// where the error count reaches the target, so the output is identical for
/// any thread count.
std::vector<SimPoint> run_simulation(const CssCode &code, const SimConfig &cfg);

/// Header: p,trials,logical_errors,ler,ci_low,ci_high,truncated
void write_sim_csv(std::ostream &out, const std::vector<SimPoint> &points);
std::vector<SimPoint> read_sim_csv(std::istream &in);
nlohmann::json to_json(const SimPoint &pt);

}  // namespace ubcycle
