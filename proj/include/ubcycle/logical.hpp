#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ubcycle/code.hpp"
#include "ubcycle/ring.hpp"

namespace ubcycle {

/// (u | v) in R_n^2, identified with a length-2n bit vector.
struct PauliVector {
    RingPoly u;
    RingPoly v;

    PauliVector() = default;
    PauliVector(RingPoly u_part, RingPoly v_part);
    static PauliVector from_bits(const BitVec &bits);

    std::size_t n() const { return u.n(); }
    std::size_t weight() const { return ubcycle::weight(u) + ubcycle::weight(v); }
    BitVec bits() const { return u.coeffs().concat(v.coeffs()); }
    bool operator==(const PauliVector &) const = default;
    PauliVector &operator+=(const PauliVector &other);
};

/// Raised for codes outside the divisor-case UB family. Carries the data that
/// explains why.
class UnsupportedCodeError : public std::invalid_argument {
  public:
    UnsupportedCodeError(const std::string &what, std::size_t r, std::string gcd_text)
        : std::invalid_argument(what), r_(r), gcd_(std::move(gcd_text)) {}
    std::size_t r() const { return r_; }
    const std::string &gcd() const { return gcd_; }

  private:
    std::size_t r_;
    std::string gcd_;
};

/// Explicit representatives of the logical quotient spaces of a divisor-case
/// UB code:
///   Z1_i = (x^i, fstar x^i), Z2_j = (0, hstar x^j),
///   X1_i = (f x^i, x^i),     X2_j = (h x^j, 0),
/// for 0 <= i, j < r, with f = a^{t-1}, t = 2^l, h = (x^n - 1)/a and
/// fstar, hstar the conjugates p(x^{-1}) of f and h.
struct LogicalBasis {
    std::size_t r = 0;
    unsigned long long t = 0;
    RingPoly f;
    RingPoly fstar;
    RingPoly h;
    RingPoly hstar;
    std::vector<PauliVector> z1;
    std::vector<PauliVector> z2;
    std::vector<PauliVector> x1;
    std::vector<PauliVector> x2;

    std::size_t n() const { return f.n(); }
};

/// Builds and validates the basis: every representative must lie in the right
/// kernel and each side's 2r representatives must raise the stabilizer rank by
/// exactly 2r. Throws UnsupportedCodeError outside the divisor case and
/// std::logic_error if validation fails.
LogicalBasis logical_basis(const CssCode &code);

/// Sum_i alpha_i x^i for alpha in F2^r.
RingPoly coefficient_poly(const BitVec &alpha, std::size_t n);

/// Lambda_Z(alpha, beta) = (alpha, fstar alpha + hstar beta).
PauliVector lambda_z(const LogicalBasis &basis, const BitVec &alpha, const BitVec &beta);
/// Lambda_X(alpha, beta) = (f alpha + h beta, alpha).
PauliVector lambda_x(const LogicalBasis &basis, const BitVec &alpha, const BitVec &beta);

/// H_Z v = 0 and v not in rs(H_X).
bool is_nontrivial_logical_z(const CssCode &code, const PauliVector &v);
bool is_nontrivial_logical_z(const CssCode &code, const BitVec &v);
/// H_X v = 0 and v not in rs(H_Z).
bool is_nontrivial_logical_x(const CssCode &code, const PauliVector &v);
bool is_nontrivial_logical_x(const CssCode &code, const BitVec &v);

nlohmann::json to_json(const LogicalBasis &basis);

}  // namespace ubcycle
