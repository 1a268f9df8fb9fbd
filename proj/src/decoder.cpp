#include "ubcycle/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

namespace ubcycle {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

CounterRng CounterRng::for_trial(std::uint64_t seed, double p, std::uint64_t trial) {
    return CounterRng(mix64(mix64(mix64(seed) ^ std::bit_cast<std::uint64_t>(p)) ^ trial));
}

BitVec sample_error(double p, std::size_t n_qubits, CounterRng &rng) {
    BitVec e(n_qubits);
    for (std::size_t i = 0; i < n_qubits; ++i) {
        if (rng.uniform() < p) e.set(i);
    }
    return e;
}

BitVec syndrome(const CssCode &code, const BitVec &e) { return mat_vec(code.hz(), e); }

// ---------------------------------------------------------------- BP

BpDecoder::BpDecoder(const BitMatrix &h) : h_(h) {
    row_start_.push_back(0);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t c : h.row(r).support()) edge_var_.push_back(static_cast<std::uint32_t>(c));
        row_start_.push_back(static_cast<std::uint32_t>(edge_var_.size()));
    }
    check_msg_.assign(edge_var_.size(), 0.0);
}

BpResult BpDecoder::decode(const BitVec &syndrome, double p, double alpha, std::size_t max_iters) {
    if (syndrome.size() != h_.rows()) throw std::invalid_argument("bp_decode: syndrome length mismatch");
    const std::size_t nvars = h_.cols();
    const std::size_t nchecks = h_.rows();
    BpResult res;
    res.posterior.assign(nvars, std::log((1.0 - p) / p));
    res.hard = BitVec(nvars);
    if (syndrome.none()) {
        res.converged = true;
        return res;
    }
    std::fill(check_msg_.begin(), check_msg_.end(), 0.0);
    std::vector<double> &L = res.posterior;
    std::vector<double> q;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        for (std::size_t c = 0; c < nchecks; ++c) {
            const std::uint32_t lo = row_start_[c];
            const std::uint32_t hi = row_start_[c + 1];
            q.resize(hi - lo);
            bool sign = syndrome.get(c);
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            std::uint32_t arg = lo;
            for (std::uint32_t e = lo; e < hi; ++e) {
                const double v = L[edge_var_[e]] - check_msg_[e];
                q[e - lo] = v;
                sign ^= v < 0;
                const double mag = std::fabs(v);
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    arg = e;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::uint32_t e = lo; e < hi; ++e) {
                const double v = q[e - lo];
                const double mag = alpha * (e == arg ? min2 : min1);
                const double msg = (sign ^ (v < 0)) ? -mag : mag;
                check_msg_[e] = msg;
                L[edge_var_[e]] = v + msg;
            }
        }
        for (std::size_t v = 0; v < nvars; ++v) res.hard.set(v, L[v] < 0);
        bool ok = true;
        for (std::size_t c = 0; c < nchecks && ok; ++c) {
            bool parity = false;
            for (std::uint32_t e = row_start_[c]; e < row_start_[c + 1]; ++e) parity ^= res.hard.get(edge_var_[e]);
            ok = parity == syndrome.get(c);
        }
        res.iterations = it;
        if (ok) {
            res.converged = true;
            break;
        }
    }
    return res;
}

// ---------------------------------------------------------------- OSD-0

BitVec osd0(const BitMatrix &h, const BitVec &syndrome, const std::vector<double> &posterior, const BitVec &hard) {
    const std::size_t m = h.rows();
    const std::size_t ncols = h.cols();
    if (syndrome.size() != m) throw std::invalid_argument("osd0: syndrome length mismatch");
    if (posterior.size() != ncols || hard.size() != ncols) throw std::invalid_argument("osd0: reliability length mismatch");
    std::vector<std::size_t> order(ncols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::fabs(posterior[a]) < std::fabs(posterior[b]); });

    BitMatrix work = h;
    BitVec s = syndrome;
    const std::size_t W = work.stride();
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
    std::size_t next = 0;
    for (std::size_t c : order) {
        if (next == m) break;
        const std::size_t cw = c >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        std::size_t p = next;
        while (p < m && !(work.row_ptr(p)[cw] & mask)) ++p;
        if (p == m) continue;
        if (p != next) {
            std::swap_ranges(work.row_ptr(p), work.row_ptr(p) + W, work.row_ptr(next));
            const bool sp = s.get(p);
            s.set(p, s.get(next));
            s.set(next, sp);
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r != next && (work.row_ptr(r)[cw] & mask)) {
                xor_words(work.row_ptr(r), work.row_ptr(next), W);
                if (s.get(next)) s.flip(r);
            }
        }
        pivots.emplace_back(c, next);
        ++next;
    }
    BitVec fixed = hard;
    for (const auto &[c, r] : pivots) fixed.set(c, false);
    BitVec estimate = fixed;
    for (const auto &[c, r] : pivots) {
        std::uint64_t acc = 0;
        const std::uint64_t *row = work.row_ptr(r);
        for (std::size_t w = 0; w < W; ++w) acc ^= row[w] & fixed.words()[w];
        estimate.set(c, s.get(r) ^ static_cast<bool>(std::popcount(acc) & 1));
    }
    return estimate;
}

DecodeOutcome bp_osd0_decode(BpDecoder &bp, const BitVec &syndrome, double p, double alpha, std::size_t max_iters) {
    BpResult res = bp.decode(syndrome, p, alpha, max_iters);
    if (res.converged) return {std::move(res.hard), true};
    return {osd0(bp.matrix(), syndrome, res.posterior, res.hard), false};
}

bool is_logical_failure(const CssCode &code, const BitVec &e, const BitVec &estimate) {
    const BitVec residual = e ^ estimate;
    if (mat_vec(code.hz(), residual).any()) return true;
    return !code.hx_rows().contains(residual);
}

// ---------------------------------------------------------------- simulation

void SimConfig::validate() const {
    if (p_list.empty()) throw std::invalid_argument("simulation needs at least one p");
    for (double p : p_list) {
        if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("each p must lie in (0, 0.5)");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
    if (max_iters == 0 || target_logical_errors == 0 || max_trials == 0) {
        throw std::invalid_argument("iteration and trial targets must be positive");
    }
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n) {
    if (n == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (phat + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct TrialOutcome {
    bool failure = false;
    bool osd = false;
    bool mismatch = false;
};

TrialOutcome run_trial(const CssCode &code, BpDecoder &bp, const SimConfig &cfg, double p, std::uint64_t trial) {
    CounterRng rng = CounterRng::for_trial(cfg.seed, p, trial);
    const BitVec e = sample_error(p, code.num_qubits(), rng);
    const BitVec s = syndrome(code, e);
    const DecodeOutcome out = bp_osd0_decode(bp, s, p, cfg.alpha, cfg.max_iters);
    TrialOutcome t;
    t.osd = !out.bp_converged;
    t.mismatch = syndrome(code, out.estimate) != s;
    t.failure = t.mismatch || is_logical_failure(code, e, out.estimate);
    return t;
}

}  // namespace

std::vector<SimPoint> run_simulation(const CssCode &code, const SimConfig &cfg) {
    cfg.validate();
    const unsigned threads = std::max(1U, cfg.threads);
    std::vector<BpDecoder> decoders(threads, BpDecoder(code.hz()));
    const std::size_t batch = 64 * static_cast<std::size_t>(threads);
    std::vector<SimPoint> out;
    for (double p : cfg.p_list) {
        SimPoint pt;
        pt.p = p;
        std::uint64_t next_trial = 0;
        bool reached = false;
        std::vector<TrialOutcome> results;
        while (!reached && next_trial < cfg.max_trials) {
            const std::size_t count = std::min<std::uint64_t>(batch, cfg.max_trials - next_trial);
            results.assign(count, {});
            auto work = [&](unsigned worker) {
                for (std::size_t j = worker; j < count; j += threads) {
                    results[j] = run_trial(code, decoders[worker], cfg, p, next_trial + j);
                }
            };
            if (threads == 1) {
                work(0);
            } else {
                std::vector<std::jthread> pool;
                for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
            }
            for (const TrialOutcome &t : results) {
                ++pt.trials;
                pt.logical_errors += t.failure ? 1 : 0;
                pt.osd_invocations += t.osd ? 1 : 0;
                pt.syndrome_mismatches += t.mismatch ? 1 : 0;
                if (pt.logical_errors >= cfg.target_logical_errors) {
                    reached = true;
                    break;
                }
            }
            next_trial += count;
        }
        pt.truncated = !reached;
        pt.ler = static_cast<double>(pt.logical_errors) / static_cast<double>(pt.trials);
        std::tie(pt.ci_low, pt.ci_high) = wilson_interval(pt.logical_errors, pt.trials);
        out.push_back(pt);
    }
    return out;
}

void write_sim_csv(std::ostream &out, const std::vector<SimPoint> &points) {
    out << "p,trials,logical_errors,ler,ci_low,ci_high,truncated\n";
    char buf[256];
    for (const SimPoint &pt : points) {
        std::snprintf(buf, sizeof buf, "%.6g,%zu,%zu,%.8g,%.8g,%.8g,%d\n", pt.p, pt.trials, pt.logical_errors, pt.ler,
                      pt.ci_low, pt.ci_high, pt.truncated ? 1 : 0);
        out << buf;
    }
}

std::vector<SimPoint> read_sim_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) return {};
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "p,trials,logical_errors,ler,ci_low,ci_high,truncated") {
        throw std::runtime_error("simulation CSV: unexpected header '" + line + "'");
    }
    std::vector<SimPoint> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7) throw std::runtime_error("simulation CSV: expected 7 columns in '" + line + "'");
        SimPoint pt;
        try {
            pt.p = std::stod(cells[0]);
            pt.trials = std::stoull(cells[1]);
            pt.logical_errors = std::stoull(cells[2]);
            pt.ler = std::stod(cells[3]);
            pt.ci_low = std::stod(cells[4]);
            pt.ci_high = std::stod(cells[5]);
            pt.truncated = std::stoi(cells[6]) != 0;
        } catch (const std::logic_error &) {
            throw std::runtime_error("simulation CSV: malformed row '" + line + "'");
        }
        pts.push_back(pt);
    }
    return pts;
}

nlohmann::json to_json(const SimPoint &pt) {
    return {{"p", pt.p},
            {"trials", pt.trials},
            {"logical_errors", pt.logical_errors},
            {"ler", pt.ler},
            {"ci_low", pt.ci_low},
            {"ci_high", pt.ci_high},
            {"truncated", pt.truncated},
            {"osd_invocations", pt.osd_invocations},
            {"syndrome_mismatches", pt.syndrome_mismatches}};
}

}  // namespace ubcycle
