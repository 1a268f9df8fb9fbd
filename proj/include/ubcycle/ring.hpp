#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ubcycle/bitvec.hpp"

namespace ubcycle {

/// Polynomial in F2[x] with no modulus. The zero polynomial has degree -1
/// (stands in for minus infinity).
class F2Poly {
  public:
    F2Poly() = default;
    explicit F2Poly(BitVec coeffs);
    static F2Poly from_exponents(const std::vector<std::size_t> &exps);
    /// x^n - 1 (= x^n + 1 over F2).
    static F2Poly cyclic_modulus(std::size_t n);
    static F2Poly one() { return from_exponents({0}); }

    long long degree() const { return degree_; }
    bool is_zero() const { return degree_ < 0; }
    bool coeff(std::size_t i) const { return i < bits_.size() && bits_.get(i); }
    const BitVec &bits() const { return bits_; }
    std::vector<std::size_t> exponents() const { return bits_.support(); }
    std::size_t weight() const { return bits_.popcount(); }

    bool operator==(const F2Poly &other) const { return exponents() == other.exponents(); }

    friend F2Poly operator+(const F2Poly &p, const F2Poly &q);
    friend F2Poly operator*(const F2Poly &p, const F2Poly &q);

  private:
    void normalize();

    BitVec bits_;
    long long degree_ = -1;
};

struct DivisionResult {
    F2Poly quotient;
    F2Poly remainder;
};

/// Long division in F2[x]. Throws std::invalid_argument when divisor is zero.
DivisionResult poly_divide(const F2Poly &p, const F2Poly &d);

/// Monic gcd in F2[x] by the Euclidean algorithm. Throws when both inputs are zero.
F2Poly poly_gcd(const F2Poly &p, const F2Poly &q);

/// Element of R_n = F2[x]/(x^n - 1), stored as its length-n coefficient vector.
class RingPoly {
  public:
    RingPoly() = default;
    /// Zero polynomial of R_n.
    explicit RingPoly(std::size_t n);
    RingPoly(std::size_t n, BitVec coeffs);

    /// Reduces arbitrary exponents mod n; repeated exponents cancel in pairs.
    static RingPoly from_exponents(std::size_t n, const std::vector<std::size_t> &exps);
    static RingPoly monomial(std::size_t n, std::size_t e) { return from_exponents(n, {e}); }
    static RingPoly one(std::size_t n) { return monomial(n, 0); }
    /// Reduction of an F2[x] polynomial into R_n.
    static RingPoly from_f2(std::size_t n, const F2Poly &p);

    std::size_t n() const { return n_; }
    const BitVec &coeffs() const { return coeffs_; }
    bool coeff(std::size_t i) const { return coeffs_.get(i); }
    bool is_zero() const { return coeffs_.none(); }
    std::vector<std::size_t> exponents() const { return coeffs_.support(); }
    /// Degree of the canonical representative, -1 for zero.
    long long degree() const { return coeffs_.highest_set(); }
    /// The canonical representative viewed in F2[x].
    F2Poly lift() const { return F2Poly(coeffs_); }

    bool operator==(const RingPoly &other) const = default;

    /// Multiplication by x^k, i.e. a cyclic shift of the coefficients.
    RingPoly shifted(std::size_t k) const { return RingPoly(n_, coeffs_.rotated(k)); }

    /// Symbolic form, exponents ascending: "1+x+x^2+x^4"; zero prints as "0".
    std::string to_string() const;

  private:
    std::size_t n_ = 0;
    BitVec coeffs_;
};

/// Parses "1+x+x^2+x^4" or the exponent list "0,1,2,4" into R_n.
/// Throws std::invalid_argument naming the offending token.
RingPoly parse_poly(std::string_view text, long long n);

RingPoly poly_add(const RingPoly &p, const RingPoly &q);
RingPoly poly_mul(const RingPoly &p, const RingPoly &q);
inline RingPoly operator+(const RingPoly &p, const RingPoly &q) { return poly_add(p, q); }
inline RingPoly operator*(const RingPoly &p, const RingPoly &q) { return poly_mul(p, q); }

/// p^e in R_n by square-and-multiply.
RingPoly poly_pow(const RingPoly &p, unsigned long long e);

/// a(x^{2^l}) via the exponent map i -> 2^l i mod n. l = 0 returns a.
RingPoly frobenius_power(const RingPoly &a, unsigned l);

/// x^{deg p} p(1/x) with deg taken on the canonical representative.
/// Throws std::invalid_argument for the zero polynomial.
RingPoly reciprocal(const RingPoly &p);

/// p(x^{-1}) in R_n. This is the polynomial of the transposed circulant and
/// differs from reciprocal(p) by the unit x^{deg p}.
RingPoly conjugate(const RingPoly &p);

inline std::size_t weight(const RingPoly &p) { return p.coeffs().popcount(); }

/// gcd(p, x^n - 1) computed in F2[x].
F2Poly gcd_with_modulus(const RingPoly &p);

/// Symbolic form of an F2[x] polynomial.
std::string to_string(const F2Poly &p);

}  // namespace ubcycle
