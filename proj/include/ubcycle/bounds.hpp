#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "json.hpp"
#include "ubcycle/code.hpp"
#include "ubcycle/gf2.hpp"
#include "ubcycle/logical.hpp"

namespace ubcycle {

enum class Side { X, Z };

const char *to_string(Side side);

/// max over row pairs of C(|common support|, 2). Requires at least 2 rows.
std::size_t rho4_induced(const BitMatrix &m);
/// max over row triples of |N12| |N13| |N23|, where N_ab holds the columns
/// supported on rows a and b but not on the third row. Requires at least 3 rows.
std::size_t rho6_induced(const BitMatrix &m);

struct CycleDensities {
    std::string matrix_id;  // "C_r(f)", "C_r(h)", "C_r(f*)", "C_r(h*)"
    std::size_t rho4 = 0;
    std::size_t rho6 = 0;
};

struct UBound {
    std::size_t value = 0;
    BitVec alpha;
    BitVec beta;
};

/// Exhaustive min of wt(Lambda(alpha, beta)) over (alpha, beta) != 0 with
/// wt(alpha) + wt(beta) <= q, both of degree < r. q must be 1, 2 or 3.
UBound u_bound(const LogicalBasis &basis, Side side, int q);

struct SideBounds {
    std::array<UBound, 3> u;   // U1, U2, U3
    std::array<double, 3> b{};  // B1, B2, B3
    CycleDensities f_family;
    CycleDensities h_family;
};

struct BoundsReport {
    SideBounds x;
    SideBounds z;
    std::size_t corollary3 = 0;
    std::size_t d_upper = 0;

    const SideBounds &side(Side s) const { return s == Side::X ? x : z; }
};

/// Cycle densities, U_q and B_q for both sides, the weight-1 closed bound and
/// the overall upper bound. Throws UnsupportedCodeError outside the divisor case.
BoundsReport b_bounds(const CssCode &code, const LogicalBasis &basis);

/// min(wt(a)^l + 1, wt(h)). Throws UnsupportedCodeError outside the divisor case.
std::size_t corollary3_bound(const CssCode &code);

nlohmann::json to_json(const BoundsReport &report);

}  // namespace ubcycle
