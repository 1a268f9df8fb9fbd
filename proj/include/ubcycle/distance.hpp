#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ubcycle/bounds.hpp"
#include "ubcycle/code.hpp"
#include "ubcycle/logical.hpp"

namespace ubcycle {

enum class DistanceMethod { Exact, CappedExact, LowWeightSearch };

const char *to_string(DistanceMethod m);

struct DistanceResult {
    DistanceMethod method = DistanceMethod::Exact;
    std::size_t d_found = 0;
    PauliVector witness;
    /// True when every weight below d_found was shown to carry no nontrivial
    /// logical, i.e. d_found is the exact distance.
    bool lower_weights_exhausted = false;
    std::chrono::duration<double> elapsed{};
};

/// Minimum weight over ker(H_Z) \ rs(H_X) by Gray-code enumeration of the
/// whole kernel. By the permutation equivalence of GB codes this is d.
/// Throws std::invalid_argument when dim ker(H_Z) exceeds dim_limit.
DistanceResult exact_distance(const CssCode &code, std::size_t dim_limit = 26);

/// Searches every vector of weight <= max_weight (up to the cyclic symmetry of
/// the code) for a nontrivial Z logical. Returns the lightest one, or nullopt
/// if none exists, which proves d > max_weight.
std::optional<DistanceResult> capped_exact_distance(const CssCode &code, std::size_t max_weight);

struct SearchBudget {
    double max_seconds = 60.0;
    std::size_t max_iterations = 0;  // 0 = unlimited
    std::uint64_t seed = 1;
    /// Stop as soon as a logical of this weight (or lighter) is found.
    std::size_t target_weight = 0;
    /// Also combine pairs of rows of each reduced generator matrix.
    bool use_pairs = true;
};

/// Best-effort upper bound on d: seeds from the U_q witnesses (when a basis is
/// given), greedy stabilizer reduction, then random information sets on a
/// generator matrix of ker(H_Z). Budget exhaustion is not an error.
DistanceResult low_weight_search(const CssCode &code, const LogicalBasis *basis, const SearchBudget &budget);

struct SearchConfig {
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    unsigned l_min = 1;
    unsigned l_max = 1;
    /// Stabilizer weight budget; a(x) ranges over wt(a) <= w / 2.
    std::size_t w = 8;
    /// Smallest wt(a) to enumerate.
    std::size_t min_weight_a = 2;
    bool require_divisor = false;
    std::size_t min_k = 0;
    std::optional<std::size_t> min_dupper;
    std::optional<std::size_t> max_dupper;
    unsigned threads = 1;

    /// Throws std::invalid_argument for empty ranges or w < 2.
    void validate() const;
};

struct SearchHit {
    UBCodeSpec spec;
    CssCode code;
    std::optional<BoundsReport> bounds;
};

struct SearchStats {
    std::size_t candidates = 0;
    std::size_t emitted = 0;
};

/// Calls fn for every exponent set {0} u S with S a (weight-1)-subset of
/// [1, n-1], in lexicographic order.
void enumerate_polynomials(std::size_t n, std::size_t weight, const std::function<void(const std::vector<std::size_t> &)> &fn);

/// Streams codes in deterministic order: wt(a) ascending, exponent sets
/// lexicographic, then l, then n. Results do not depend on cfg.threads.
SearchStats code_search(const SearchConfig &cfg, const std::function<void(const SearchHit &)> &emit);

nlohmann::json to_json(const DistanceResult &result);
nlohmann::json to_json(const SearchHit &hit);

}  // namespace ubcycle
