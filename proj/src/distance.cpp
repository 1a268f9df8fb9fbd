#include "ubcycle/distance.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace ubcycle {

const char *to_string(DistanceMethod m) {
    switch (m) {
        case DistanceMethod::Exact:
            return "exact";
        case DistanceMethod::CappedExact:
            return "capped-exact";
        case DistanceMethod::LowWeightSearch:
            return "low-weight-search";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

/// Incremental echelon basis: each stored row has its pivot cleared from every
/// later row, so reducing in insertion order is exact.
class IncrementalBasis {
  public:
    explicit IncrementalBasis(std::size_t cols) : cols_(cols) {}

    /// Returns true and stores v when it is independent of the current span.
    bool insert(BitVec v) {
        reduce(v);
        const long long p = v.lowest_set();
        if (p < 0) return false;
        rows_.push_back(std::move(v));
        pivots_.push_back(static_cast<std::size_t>(p));
        return true;
    }
    void reduce(BitVec &v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (v.get(pivots_[i])) v ^= rows_[i];
        }
    }

  private:
    std::size_t cols_;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Vectors of ker(kernel_of) completing the stabilizer row space to the whole
/// kernel: a basis of the logical quotient, 2r vectors for a GB code.
std::vector<BitVec> logical_completion(const BitMatrix &kernel_of, const RowEchelon &stabilizers) {
    IncrementalBasis span(kernel_of.cols());
    for (std::size_t r = 0; r < stabilizers.rank(); ++r) span.insert(stabilizers.basis().row(r));
    std::vector<BitVec> out;
    for (BitVec v : kernel_basis(kernel_of)) {
        if (span.insert(v)) out.push_back(std::move(v));
    }
    return out;
}


}  // namespace

// ---------------------------------------------------------------- exact

DistanceResult exact_distance(const CssCode &code, std::size_t dim_limit) {
    const auto start = Clock::now();
    const std::size_t nq = code.num_qubits();
    const RowEchelon &stab = code.hx_rows();
    const std::vector<BitVec> logicals = logical_completion(code.hz(), stab);
    const std::size_t dim = stab.rank() + logicals.size();
    if (dim > dim_limit) {
        throw std::invalid_argument("kernel dimension " + std::to_string(dim) + " exceeds dim_limit " +
                                    std::to_string(dim_limit) + "; use capped or low-weight search");
    }
    if (logicals.empty()) throw std::invalid_argument("code has no logical qubits");
    if (logicals.size() > 64) throw std::invalid_argument("exact_distance supports at most 64 logical directions");

    // Gray-code order over [stabilizer rows | logical completion]; an element is
    // nontrivial iff its logical coordinate mask is nonzero.
    const std::size_t W = BitVec::word_count(nq);
    std::vector<std::uint64_t> gens(dim * W, 0);
    for (std::size_t i = 0; i < stab.rank(); ++i) std::copy_n(stab.basis().row_ptr(i), W, gens.data() + i * W);
    for (std::size_t j = 0; j < logicals.size(); ++j) {
        std::copy_n(logicals[j].words().data(), W, gens.data() + (stab.rank() + j) * W);
    }
    const std::size_t lower_bound = 1;
    std::vector<std::uint64_t> cur(W, 0);
    std::vector<std::uint64_t> best_vec(W, 0);
    std::uint64_t log_mask = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    const std::uint64_t total = dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim);
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto g = static_cast<std::size_t>(std::countr_zero(i));
        xor_words(cur.data(), gens.data() + g * W, W);
        if (g >= stab.rank()) log_mask ^= std::uint64_t{1} << (g - stab.rank());
        if (log_mask == 0) continue;
        const std::size_t wt = popcount_words(cur.data(), W);
        if (wt < best) {
            best = wt;
            best_vec = cur;
            if (best == lower_bound) break;
        }
    }
    BitVec witness(nq);
    std::copy(best_vec.begin(), best_vec.end(), witness.words().begin());
    DistanceResult res;
    res.method = DistanceMethod::Exact;
    res.d_found = best;
    res.witness = PauliVector::from_bits(witness);
    res.lower_weights_exhausted = true;
    res.elapsed = Clock::now() - start;
    return res;
}

// ---------------------------------------------------------------- capped exact

std::optional<DistanceResult> capped_exact_distance(const CssCode &code, std::size_t max_weight) {
    const auto start = Clock::now();
    const std::size_t n = code.n();
    const std::size_t nq = code.num_qubits();
    const BitMatrix hzt = code.hz().transposed();  // row j = syndrome of a flip on qubit j
    const std::size_t SW = hzt.stride();

    auto hash_words = [SW](const std::uint64_t *w) {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::size_t i = 0; i < SW; ++i) h = (h ^ w[i]) * 0xBF58476D1CE4E5B9ULL;
        return h;
    };
    std::unordered_multimap<std::uint64_t, std::size_t> by_syndrome;
    for (std::size_t j = 0; j < nq; ++j) by_syndrome.emplace(hash_words(hzt.row_ptr(j)), j);

    std::vector<std::size_t> chosen;
    std::vector<std::vector<std::uint64_t>> partial;  // partial[d] = syndrome of chosen[0..d)
    std::optional<BitVec> found;

    // The code is invariant under the simultaneous cyclic shift of both halves,
    // so some minimum-weight logical contains qubit 0 or, when its left half is
    // zero, qubit n.
    auto search = [&](auto &&self, std::size_t depth, std::size_t target, std::size_t next, std::size_t limit) -> bool {
        const std::uint64_t *s = partial[depth].data();
        if (depth + 1 == target) {
            auto [lo, hi] = by_syndrome.equal_range(hash_words(s));
            for (auto it = lo; it != hi; ++it) {
                const std::size_t j = it->second;
                if (j < next || j >= limit || !std::equal(s, s + SW, hzt.row_ptr(j))) continue;
                BitVec v(nq);
                for (std::size_t c : chosen) v.set(c);
                v.set(j);
                if (!code.hx_rows().contains(v)) {
                    found = std::move(v);
                    return true;
                }
            }
            return false;
        }
        for (std::size_t j = next; j < limit; ++j) {
            chosen.push_back(j);
            partial[depth + 1] = partial[depth];
            xor_words(partial[depth + 1].data(), hzt.row_ptr(j), SW);
            if (self(self, depth + 1, target, j + 1, limit)) return true;
            chosen.pop_back();
        }
        return false;
    };

    for (std::size_t w = 1; w <= max_weight && !found; ++w) {
        for (const std::size_t first : {std::size_t{0}, n}) {
            chosen.assign(1, first);
            partial.assign(w + 1, std::vector<std::uint64_t>(SW, 0));
            std::copy_n(hzt.row_ptr(first), SW, partial[1].data());
            bool hit = false;
            if (w == 1) {
                BitVec v(nq);
                v.set(first);
                if (std::all_of(partial[1].begin(), partial[1].end(), [](std::uint64_t x) { return x == 0; }) &&
                    !code.hx_rows().contains(v)) {
                    found = std::move(v);
                    hit = true;
                }
            } else {
                hit = search(search, 1, w, first + 1, nq);
            }
            if (hit) break;
        }
    }
    if (!found) return std::nullopt;
    DistanceResult res;
    res.method = DistanceMethod::CappedExact;
    res.d_found = found->popcount();
    res.witness = PauliVector::from_bits(*found);
    res.lower_weights_exhausted = true;
    res.elapsed = Clock::now() - start;
    return res;
}

// ---------------------------------------------------------------- low-weight search

namespace {

/// Repeatedly adds the stabilizer row that lowers the weight most.
void greedy_reduce(BitVec &v, const BitMatrix &stabilizers) {
    const std::size_t W = stabilizers.stride();
    std::vector<std::uint64_t> tmp(W);
    for (;;) {
        std::size_t best_w = v.popcount();
        std::size_t best_row = stabilizers.rows();
        for (std::size_t r = 0; r < stabilizers.rows(); ++r) {
            std::size_t wt = 0;
            const std::uint64_t *row = stabilizers.row_ptr(r);
            for (std::size_t i = 0; i < W; ++i) wt += static_cast<std::size_t>(std::popcount(v.words()[i] ^ row[i]));
            if (wt < best_w) {
                best_w = wt;
                best_row = r;
            }
        }
        if (best_row == stabilizers.rows()) return;
        xor_words(v.words().data(), stabilizers.row_ptr(best_row), W);
    }
}

}  // namespace

DistanceResult low_weight_search(const CssCode &code, const LogicalBasis *basis, const SearchBudget &budget) {
    const auto start = Clock::now();
    const std::size_t nq = code.num_qubits();
    const std::size_t W = BitVec::word_count(nq);

    // A vector of ker(H_Z) is a nontrivial logical iff it has odd overlap with
    // some X-logical representative; track those overlaps as a signature.
    const std::vector<BitVec> x_logicals = logical_completion(code.hx(), code.hz_rows());
    const std::size_t K = x_logicals.size();
    const std::size_t SW = BitVec::word_count(std::max<std::size_t>(K, 1));
    auto signature_of = [&](const BitVec &v) {
        BitVec s(std::max<std::size_t>(K, 1));
        for (std::size_t j = 0; j < K; ++j) {
            if (v.dot(x_logicals[j])) s.set(j);
        }
        return s;
    };

    std::size_t best = std::numeric_limits<std::size_t>::max();
    BitVec best_vec(nq);
    auto offer = [&](const BitVec &v) {
        const std::size_t wt = v.popcount();
        if (wt == 0 || wt >= best) return;
        if (!is_nontrivial_logical_z(code, v)) return;
        best = wt;
        best_vec = v;
    };
    auto done = [&] {
        return budget.target_weight != 0 && best <= budget.target_weight;
    };

    if (basis != nullptr) {
        for (int q = 1; q <= 3; ++q) {
            const UBound ub = u_bound(*basis, Side::Z, q);
            BitVec v = lambda_z(*basis, ub.alpha, ub.beta).bits();
            offer(v);
            greedy_reduce(v, code.hx());
            offer(v);
        }
        for (const auto *family : {&basis->z1, &basis->z2}) {
            for (const PauliVector &p : *family) {
                BitVec v = p.bits();
                greedy_reduce(v, code.hx());
                offer(v);
            }
        }
    }

    const std::vector<BitVec> kernel = kernel_basis(code.hz());
    const std::size_t D = kernel.size();
    BitMatrix gen0 = BitMatrix::from_rows(nq, kernel);
    std::vector<BitVec> sig0;
    for (const BitVec &v : kernel) sig0.push_back(signature_of(v));
    // Seed the fallback witness with a kernel vector that is a logical.
    if (best == std::numeric_limits<std::size_t>::max()) {
        for (std::size_t i = 0; i < D; ++i) {
            if (sig0[i].any()) offer(kernel[i]);
        }
    }

    std::mt19937_64 rng(budget.seed);
    std::vector<std::size_t> order(nq);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint64_t> g(D * W);
    std::vector<std::uint64_t> s(D * SW);
    std::vector<std::size_t> weights(D);
    std::size_t iter = 0;
    while (!done()) {
        if (budget.max_iterations != 0 && iter >= budget.max_iterations) break;
        if (std::chrono::duration<double>(Clock::now() - start).count() > budget.max_seconds) break;
        ++iter;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i = 0; i < D; ++i) {
            std::copy_n(gen0.row_ptr(i), W, g.data() + i * W);
            std::copy_n(sig0[i].words().data(), SW, s.data() + i * SW);
        }
        // Systematic form on a random information set.
        std::size_t next = 0;
        for (std::size_t c : order) {
            if (next == D) break;
            const std::size_t cw = c >> 6;
            const std::uint64_t mask = std::uint64_t{1} << (c & 63);
            std::size_t p = next;
            while (p < D && !(g[p * W + cw] & mask)) ++p;
            if (p == D) continue;
            if (p != next) {
                std::swap_ranges(g.begin() + static_cast<std::ptrdiff_t>(p * W),
                                 g.begin() + static_cast<std::ptrdiff_t>((p + 1) * W),
                                 g.begin() + static_cast<std::ptrdiff_t>(next * W));
                std::swap_ranges(s.begin() + static_cast<std::ptrdiff_t>(p * SW),
                                 s.begin() + static_cast<std::ptrdiff_t>((p + 1) * SW),
                                 s.begin() + static_cast<std::ptrdiff_t>(next * SW));
            }
            for (std::size_t r = 0; r < D; ++r) {
                if (r != next && (g[r * W + cw] & mask)) {
                    xor_words(g.data() + r * W, g.data() + next * W, W);
                    xor_words(s.data() + r * SW, s.data() + next * SW, SW);
                }
            }
            ++next;
        }
        auto sig_nonzero = [&](std::size_t i) {
            return std::any_of(s.begin() + static_cast<std::ptrdiff_t>(i * SW),
                               s.begin() + static_cast<std::ptrdiff_t>((i + 1) * SW), [](std::uint64_t x) { return x != 0; });
        };
        auto take = [&](const std::uint64_t *words) {
            BitVec v(nq);
            std::copy_n(words, W, v.words().begin());
            offer(v);
        };
        for (std::size_t i = 0; i < D; ++i) {
            weights[i] = popcount_words(g.data() + i * W, W);
            if (weights[i] < best && sig_nonzero(i)) take(g.data() + i * W);
        }
        if (budget.use_pairs && !done()) {
            std::vector<std::uint64_t> tmp(W);
            std::vector<std::uint64_t> stmp(SW);
            for (std::size_t i = 0; i < D; ++i) {
                const std::uint64_t *gi = g.data() + i * W;
                for (std::size_t j = i + 1; j < D; ++j) {
                    const std::uint64_t *gj = g.data() + j * W;
                    std::size_t wt = 0;
                    for (std::size_t k = 0; k < W && wt < best; ++k) wt += static_cast<std::size_t>(std::popcount(gi[k] ^ gj[k]));
                    if (wt >= best) continue;
                    bool nontrivial = false;
                    for (std::size_t k = 0; k < SW; ++k) nontrivial |= (s[i * SW + k] ^ s[j * SW + k]) != 0;
                    if (!nontrivial) continue;
                    for (std::size_t k = 0; k < W; ++k) tmp[k] = gi[k] ^ gj[k];
                    take(tmp.data());
                }
            }
        }
    }

    DistanceResult res;
    res.method = DistanceMethod::LowWeightSearch;
    res.d_found = best;
    res.witness = PauliVector::from_bits(best_vec);
    res.lower_weights_exhausted = false;
    res.elapsed = Clock::now() - start;
    return res;
}

// ---------------------------------------------------------------- code search

void SearchConfig::validate() const {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("search: invalid n range");
    if (l_min < 1 || l_max < l_min) throw std::invalid_argument("search: invalid l range");
    if (w < 2) throw std::invalid_argument("search: weight budget w must be at least 2");
    if (min_weight_a < 1) throw std::invalid_argument("search: min_weight_a must be at least 1");
}

void enumerate_polynomials(std::size_t n, std::size_t weight,
                           const std::function<void(const std::vector<std::size_t> &)> &fn) {
    if (weight == 0 || weight > n) return;
    const std::size_t m = weight - 1;  // exponents drawn from [1, n-1]
    std::vector<std::size_t> exps(weight);
    exps[0] = 0;
    for (std::size_t i = 0; i < m; ++i) exps[i + 1] = i + 1;
    for (;;) {
        fn(exps);
        // advance the lexicographic combination in exps[1..m]
        std::size_t i = m;
        while (i > 0 && exps[i] == n - 1 - (m - i)) --i;
        if (i == 0) return;
        ++exps[i];
        for (std::size_t j = i + 1; j <= m; ++j) exps[j] = exps[j - 1] + 1;
    }
}

namespace {

struct Candidate {
    std::vector<std::size_t> exps;
    unsigned l;
    std::size_t n;
};

std::optional<SearchHit> evaluate(const SearchConfig &cfg, const Candidate &cand) {
    const RingPoly a = RingPoly::from_exponents(cand.n, cand.exps);
    const F2Poly g = gcd_with_modulus(a);
    const long long r = g.degree();
    if (r <= 0) return std::nullopt;
    if (2 * static_cast<std::size_t>(r) < cfg.min_k) return std::nullopt;
    const bool divisor = r == a.degree();
    if (cfg.require_divisor && !divisor) return std::nullopt;
    const bool bound_filter = cfg.min_dupper.has_value() || cfg.max_dupper.has_value();
    if (bound_filter && !divisor) return std::nullopt;
    UBCodeSpec spec{cand.n, a, cand.l};
    SearchHit hit{spec, build_ub(spec), std::nullopt};
    if (divisor) {
        const LogicalBasis basis = logical_basis(hit.code);
        hit.bounds = b_bounds(hit.code, basis);
        if (cfg.min_dupper && hit.bounds->d_upper < *cfg.min_dupper) return std::nullopt;
        if (cfg.max_dupper && hit.bounds->d_upper > *cfg.max_dupper) return std::nullopt;
    }
    return hit;
}

}  // namespace

SearchStats code_search(const SearchConfig &cfg, const std::function<void(const SearchHit &)> &emit) {
    cfg.validate();
    SearchStats stats;
    const std::size_t batch_size = 512;
    const unsigned threads = std::max(1U, cfg.threads);
    std::vector<Candidate> batch;

    auto flush = [&] {
        std::vector<std::optional<SearchHit>> results(batch.size());
        auto work = [&](unsigned worker) {
            for (std::size_t i = worker; i < batch.size(); i += threads) results[i] = evaluate(cfg, batch[i]);
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        }
        for (auto &res : results) {
            if (res) {
                emit(*res);
                ++stats.emitted;
            }
        }
        batch.clear();
    };

    const std::size_t max_wt = std::min(cfg.w / 2, cfg.n_max);
    for (std::size_t c = cfg.min_weight_a; c <= max_wt; ++c) {
        enumerate_polynomials(cfg.n_max, c, [&](const std::vector<std::size_t> &exps) {
            const std::size_t lowest_n = std::max(cfg.n_min, exps.back() + 1);
            for (unsigned l = cfg.l_min; l <= cfg.l_max; ++l) {
                for (std::size_t n = lowest_n; n <= cfg.n_max; ++n) {
                    batch.push_back({exps, l, n});
                    ++stats.candidates;
                    if (batch.size() == batch_size) flush();
                }
            }
        });
    }
    flush();
    return stats;
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const DistanceResult &result) {
    return {{"method", to_string(result.method)},
            {"d_found", result.d_found},
            {"exact", result.lower_weights_exhausted},
            {"witness", {{"u", result.witness.u.exponents()}, {"v", result.witness.v.exponents()}}},
            {"elapsed_seconds", result.elapsed.count()}};
}

nlohmann::json to_json(const SearchHit &hit) {
    nlohmann::json j = to_json(hit.code);
    j["spec"] = hit.spec.to_string();
    j["bounds"] = hit.bounds ? to_json(*hit.bounds) : nlohmann::json(nullptr);
    return j;
}

}  // namespace ubcycle
