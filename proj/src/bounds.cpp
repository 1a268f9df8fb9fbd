#include "ubcycle/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ubcycle {

const char *to_string(Side side) { return side == Side::X ? "X" : "Z"; }

namespace {

std::size_t and_count(const std::uint64_t *a, const std::uint64_t *b, std::size_t words) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return c;
}

std::size_t and3_count(const std::uint64_t *a, const std::uint64_t *b, const std::uint64_t *c, std::size_t words) {
    std::size_t n = 0;
    for (std::size_t w = 0; w < words; ++w) n += static_cast<std::size_t>(std::popcount(a[w] & b[w] & c[w]));
    return n;
}

std::size_t rho4_or_zero(const BitMatrix &m) { return m.rows() >= 2 ? rho4_induced(m) : 0; }
std::size_t rho6_or_zero(const BitMatrix &m) { return m.rows() >= 3 ? rho6_induced(m) : 0; }

}  // namespace

std::size_t rho4_induced(const BitMatrix &m) {
    if (m.rows() < 2) throw std::invalid_argument("rho4_induced needs at least 2 rows");
    std::size_t best = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            const std::size_t c = and_count(m.row_ptr(i), m.row_ptr(j), m.stride());
            best = std::max(best, c * (c - (c > 0 ? 1 : 0)) / 2);
        }
    }
    return best;
}

std::size_t rho6_induced(const BitMatrix &m) {
    if (m.rows() < 3) throw std::invalid_argument("rho6_induced needs at least 3 rows");
    const std::size_t rows = m.rows();
    std::vector<std::size_t> pair(rows * rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = i + 1; j < rows; ++j) pair[i * rows + j] = and_count(m.row_ptr(i), m.row_ptr(j), m.stride());
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = i + 1; j < rows; ++j) {
            for (std::size_t k = j + 1; k < rows; ++k) {
                const std::size_t all3 = and3_count(m.row_ptr(i), m.row_ptr(j), m.row_ptr(k), m.stride());
                const std::size_t n12 = pair[i * rows + j] - all3;
                const std::size_t n13 = pair[i * rows + k] - all3;
                const std::size_t n23 = pair[j * rows + k] - all3;
                best = std::max(best, n12 * n13 * n23);
            }
        }
    }
    return best;
}

UBound u_bound(const LogicalBasis &basis, Side side, int q) {
    if (q < 1 || q > 3) throw std::invalid_argument("u_bound: q must be 1, 2 or 3");
    const std::size_t r = basis.r;
    const RingPoly &p = side == Side::X ? basis.f : basis.fstar;
    const RingPoly &g = side == Side::X ? basis.h : basis.hstar;
    // generator k < r contributes p x^k plus one alpha bit; k >= r contributes g x^{k-r}
    std::vector<BitVec> gens;
    for (std::size_t i = 0; i < r; ++i) gens.push_back(p.shifted(i).coeffs());
    for (std::size_t j = 0; j < r; ++j) gens.push_back(g.shifted(j).coeffs());
    const std::size_t m = gens.size();

    UBound best;
    best.value = std::numeric_limits<std::size_t>::max();
    std::array<std::size_t, 3> chosen{};
    auto consider = [&](const BitVec &acc, std::size_t depth) {
        std::size_t alpha_wt = 0;
        for (std::size_t d = 0; d < depth; ++d) alpha_wt += chosen[d] < r ? 1 : 0;
        const std::size_t wt = acc.popcount() + alpha_wt;
        if (wt < best.value) {
            best.value = wt;
            best.alpha = BitVec(r);
            best.beta = BitVec(r);
            for (std::size_t d = 0; d < depth; ++d) {
                if (chosen[d] < r) {
                    best.alpha.set(chosen[d]);
                } else {
                    best.beta.set(chosen[d] - r);
                }
            }
        }
    };
    for (std::size_t i = 0; i < m; ++i) {
        chosen[0] = i;
        const BitVec acc1 = gens[i];
        consider(acc1, 1);
        if (q < 2) continue;
        for (std::size_t j = i + 1; j < m; ++j) {
            chosen[1] = j;
            const BitVec acc2 = acc1 ^ gens[j];
            consider(acc2, 2);
            if (q < 3) continue;
            for (std::size_t k = j + 1; k < m; ++k) {
                chosen[2] = k;
                consider(acc2 ^ gens[k], 3);
            }
        }
    }
    return best;
}

std::size_t corollary3_bound(const CssCode &code) {
    if (!code.divisor_case() || !code.l()) {
        throw UnsupportedCodeError("corollary-3 bound requires a divisor-case UB code", code.r(),
                                   to_string(code.common_divisor()));
    }
    const std::size_t wa = weight(code.a());
    const std::size_t wh = weight(*code.h());
    // wt(a)^l saturates once it exceeds wt(h)
    std::size_t power = 1;
    for (unsigned i = 0; i < *code.l() && power <= wh; ++i) power *= wa;
    return std::min(power + 1, wh);
}

namespace {

SideBounds side_bounds(const LogicalBasis &basis, Side side) {
    SideBounds sb;
    for (int q = 1; q <= 3; ++q) sb.u[static_cast<std::size_t>(q - 1)] = u_bound(basis, side, q);
    const RingPoly &f = side == Side::X ? basis.f : basis.fstar;
    const RingPoly &h = side == Side::X ? basis.h : basis.hstar;
    const BitMatrix cf = first_rows(f, basis.r);
    const BitMatrix ch = first_rows(h, basis.r);
    sb.f_family = {side == Side::X ? "C_r(f)" : "C_r(f*)", rho4_or_zero(cf), rho6_or_zero(cf)};
    sb.h_family = {side == Side::X ? "C_r(h)" : "C_r(h*)", rho4_or_zero(ch), rho6_or_zero(ch)};
    const auto wf = static_cast<double>(weight(f));
    const auto wh = static_cast<double>(weight(h));
    const auto rf4 = static_cast<double>(sb.f_family.rho4);
    const auto rh4 = static_cast<double>(sb.h_family.rho4);
    const auto rf6 = static_cast<double>(sb.f_family.rho6);
    const auto rh6 = static_cast<double>(sb.h_family.rho6);
    sb.b[0] = std::min(wf + 1.0, wh);
    sb.b[1] = 2.0 * wh - 1.0 - std::sqrt(1.0 + 8.0 * rh4);
    // f = 0 happens when a^t vanishes in R_n (then b = 0 too); the f-term assumes
    // two shifts of f overlap in at least one position and drops to 0 here
    if (wf > 0) sb.b[1] = std::min(sb.b[1], 2.0 * wf + 1.0 - std::sqrt(1.0 + 8.0 * rf4));
    sb.b[2] = std::min(3.0 * wf + 3.0 - 6.0 * std::cbrt(rf6), 3.0 * wh - 6.0 * std::cbrt(rh6));
    return sb;
}

/// floor that tolerates values a hair below an integer from sqrt/cbrt rounding
std::size_t floor_bound(double b) {
    const double rounded = std::round(b);
    const double v = std::fabs(b - rounded) < 1e-9 ? rounded : std::floor(b);
    return v <= 0 ? 0 : static_cast<std::size_t>(v);
}

}  // namespace

BoundsReport b_bounds(const CssCode &code, const LogicalBasis &basis) {
    if (!code.divisor_case()) {
        throw UnsupportedCodeError("distance bounds require a(x) | x^n - 1", code.r(),
                                   to_string(code.common_divisor()));
    }
    BoundsReport rep;
    rep.x = side_bounds(basis, Side::X);
    rep.z = side_bounds(basis, Side::Z);
    rep.corollary3 = corollary3_bound(code);
    std::size_t d = rep.corollary3;
    for (const SideBounds *sb : {&rep.x, &rep.z}) {
        for (std::size_t q = 0; q < 3; ++q) {
            d = std::min(d, sb->u[q].value);
            d = std::min(d, floor_bound(sb->b[q]));
        }
    }
    rep.d_upper = d;
    return rep;
}

nlohmann::json to_json(const BoundsReport &report) {
    auto side_json = [](const SideBounds &sb) {
        nlohmann::json j;
        for (std::size_t q = 0; q < 3; ++q) {
            const std::string key = "U" + std::to_string(q + 1);
            j[key] = {{"value", sb.u[q].value},
                      {"alpha", sb.u[q].alpha.support()},
                      {"beta", sb.u[q].beta.support()}};
            j["B" + std::to_string(q + 1)] = sb.b[q];
        }
        j["densities"] = nlohmann::json::array();
        for (const CycleDensities *cd : {&sb.f_family, &sb.h_family}) {
            j["densities"].push_back({{"matrix", cd->matrix_id}, {"rho4", cd->rho4}, {"rho6", cd->rho6}});
        }
        return j;
    };
    return {{"X", side_json(report.x)},
            {"Z", side_json(report.z)},
            {"corollary3", report.corollary3},
            {"d_upper", report.d_upper}};
}

}  // namespace ubcycle
