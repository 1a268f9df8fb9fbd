#include "ubcycle/logical.hpp"

#include <stdexcept>

namespace ubcycle {

PauliVector::PauliVector(RingPoly u_part, RingPoly v_part) : u(std::move(u_part)), v(std::move(v_part)) {
    if (u.n() != v.n()) throw std::invalid_argument("PauliVector halves live in different rings");
}

PauliVector PauliVector::from_bits(const BitVec &bits) {
    if (bits.size() % 2 != 0 || bits.size() == 0) throw std::invalid_argument("PauliVector needs an even length");
    const std::size_t n = bits.size() / 2;
    return {RingPoly(n, bits.slice(0, n)), RingPoly(n, bits.slice(n, n))};
}

PauliVector &PauliVector::operator+=(const PauliVector &other) {
    u = u + other.u;
    v = v + other.v;
    return *this;
}

namespace {

void expect_kernel(const BitMatrix &m, const PauliVector &p, const char *label) {
    if (mat_vec(m, p.bits()).any()) throw std::logic_error(std::string("logical basis: ") + label + " not in kernel");
}

/// Rank gained by stacking reps on top of the stabilizer row space.
std::size_t rank_gain(const RowEchelon &stabilizers, const std::vector<PauliVector> &reps) {
    BitMatrix stacked = stabilizers.basis();
    std::vector<BitVec> rows;
    for (const auto &p : reps) rows.push_back(p.bits());
    stacked = stacked.vstack(BitMatrix::from_rows(stacked.cols(), rows));
    return rank(stacked) - stabilizers.rank();
}

}  // namespace

LogicalBasis logical_basis(const CssCode &code) {
    if (!code.divisor_case()) {
        throw UnsupportedCodeError("logical basis requires a(x) | x^n - 1; gcd(a, x^n - 1) = " +
                                       to_string(gcd_with_modulus(code.a())),
                                   code.r(), to_string(gcd_with_modulus(code.a())));
    }
    if (!code.l()) {
        throw UnsupportedCodeError("logical basis requires a UB code with b = a^(2^l)", code.r(),
                                   to_string(code.common_divisor()));
    }
    const std::size_t n = code.n();
    const unsigned l = *code.l();
    LogicalBasis basis;
    basis.r = static_cast<std::size_t>(code.a().degree());
    basis.t = 1ULL << l;
    // a^{t-1} = prod_{i<l} a^{2^i}
    RingPoly f = RingPoly::one(n);
    for (unsigned i = 0; i < l; ++i) f = f * frobenius_power(code.a(), i);
    basis.f = f;
    basis.fstar = conjugate(f);
    basis.h = *code.h();
    basis.hstar = conjugate(basis.h);
    const RingPoly zero(n);
    for (std::size_t i = 0; i < basis.r; ++i) {
        const RingPoly xi = RingPoly::monomial(n, i);
        basis.z1.emplace_back(xi, basis.fstar.shifted(i));
        basis.z2.emplace_back(zero, basis.hstar.shifted(i));
        basis.x1.emplace_back(basis.f.shifted(i), xi);
        basis.x2.emplace_back(basis.h.shifted(i), zero);
    }
    for (std::size_t i = 0; i < basis.r; ++i) {
        expect_kernel(code.hz(), basis.z1[i], "Z1");
        expect_kernel(code.hz(), basis.z2[i], "Z2");
        expect_kernel(code.hx(), basis.x1[i], "X1");
        expect_kernel(code.hx(), basis.x2[i], "X2");
    }
    std::vector<PauliVector> zs = basis.z1;
    zs.insert(zs.end(), basis.z2.begin(), basis.z2.end());
    std::vector<PauliVector> xs = basis.x1;
    xs.insert(xs.end(), basis.x2.begin(), basis.x2.end());
    if (rank_gain(code.hx_rows(), zs) != 2 * basis.r) throw std::logic_error("logical basis: Z cosets dependent");
    if (rank_gain(code.hz_rows(), xs) != 2 * basis.r) throw std::logic_error("logical basis: X cosets dependent");
    return basis;
}

RingPoly coefficient_poly(const BitVec &alpha, std::size_t n) {
    std::vector<std::size_t> exps = alpha.support();
    return RingPoly::from_exponents(n, exps);
}

namespace {
void check_coeff_lengths(const LogicalBasis &basis, const BitVec &alpha, const BitVec &beta) {
    if (alpha.size() != basis.r || beta.size() != basis.r) {
        throw std::invalid_argument("alpha and beta must have length r = " + std::to_string(basis.r));
    }
}
}  // namespace

PauliVector lambda_z(const LogicalBasis &basis, const BitVec &alpha, const BitVec &beta) {
    check_coeff_lengths(basis, alpha, beta);
    const RingPoly a = coefficient_poly(alpha, basis.n());
    const RingPoly b = coefficient_poly(beta, basis.n());
    return {a, basis.fstar * a + basis.hstar * b};
}

PauliVector lambda_x(const LogicalBasis &basis, const BitVec &alpha, const BitVec &beta) {
    check_coeff_lengths(basis, alpha, beta);
    const RingPoly a = coefficient_poly(alpha, basis.n());
    const RingPoly b = coefficient_poly(beta, basis.n());
    return {basis.f * a + basis.h * b, a};
}

bool is_nontrivial_logical_z(const CssCode &code, const BitVec &v) {
    return mat_vec(code.hz(), v).none() && !code.hx_rows().contains(v);
}

bool is_nontrivial_logical_z(const CssCode &code, const PauliVector &v) {
    return is_nontrivial_logical_z(code, v.bits());
}

bool is_nontrivial_logical_x(const CssCode &code, const BitVec &v) {
    return mat_vec(code.hx(), v).none() && !code.hz_rows().contains(v);
}

bool is_nontrivial_logical_x(const CssCode &code, const PauliVector &v) {
    return is_nontrivial_logical_x(code, v.bits());
}

nlohmann::json to_json(const LogicalBasis &basis) {
    auto reps = [](const std::vector<PauliVector> &list) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &p : list) arr.push_back({{"u", p.u.exponents()}, {"v", p.v.exponents()}});
        return arr;
    };
    return {
        {"r", basis.r},   {"t", basis.t},   {"f", basis.f.to_string()},   {"fstar", basis.fstar.to_string()},
        {"h", basis.h.to_string()},         {"hstar", basis.hstar.to_string()},
        {"z1", reps(basis.z1)}, {"z2", reps(basis.z2)}, {"x1", reps(basis.x1)}, {"x2", reps(basis.x2)},
    };
}

}  // namespace ubcycle
