#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ubcycle/gf2.hpp"
#include "ubcycle/ring.hpp"

namespace ubcycle {

/// UB(a, l): b = a^{2^l} in R_n.
struct UBCodeSpec {
    std::size_t n = 0;
    RingPoly a;
    unsigned l = 1;

    std::string to_string() const;
};

/// A generalized bicycle CSS code H_X = [A | B], H_Z = [B^T | A^T].
///
/// A and B act on column vectors as multiplication by a and b in R_n, so
/// H_X (u, v) = a u + b v and H_Z (u, v) = conj(b) u + conj(a) v, with
/// conj(p) = p(x^{-1}). Equivalently A = circulant(a)^T.
class CssCode {
  public:
    std::size_t n() const { return a_.n(); }
    std::size_t num_qubits() const { return 2 * n(); }
    const RingPoly &a() const { return a_; }
    const RingPoly &b() const { return b_; }
    /// Set for codes built through build_ub.
    std::optional<unsigned> l() const { return l_; }

    const BitMatrix &hx() const { return hx_; }
    const BitMatrix &hz() const { return hz_; }
    const RowEchelon &hx_rows() const { return hx_rows_; }
    const RowEchelon &hz_rows() const { return hz_rows_; }

    /// gcd(a, b, x^n - 1) in F2[x].
    const F2Poly &common_divisor() const { return gcd_; }
    /// deg gcd(a, b, x^n - 1); k = 2r.
    std::size_t r() const { return static_cast<std::size_t>(gcd_.degree()); }
    std::size_t k() const { return 2 * r(); }
    /// Stabilizer weight wt(a) + wt(b).
    std::size_t w() const { return weight(a_) + weight(b_); }

    /// a(x) divides x^n - 1 (a taken as its canonical representative).
    bool divisor_case() const { return h_.has_value(); }
    /// (x^n - 1) / a(x), present iff divisor_case().
    const std::optional<RingPoly> &h() const { return h_; }

    friend CssCode build_gb(const RingPoly &a, const RingPoly &b);
    friend CssCode build_ub(const UBCodeSpec &spec);

  private:
    RingPoly a_;
    RingPoly b_;
    std::optional<unsigned> l_;
    F2Poly gcd_;
    std::optional<RingPoly> h_;
    BitMatrix hx_;
    BitMatrix hz_;
    RowEchelon hx_rows_;
    RowEchelon hz_rows_;
};

/// Matrix of multiplication by p on column vectors: (M v) = p v in R_n.
BitMatrix multiplication_matrix(const RingPoly &p);

/// Throws std::invalid_argument on modulus mismatch or k = 0.
CssCode build_gb(const RingPoly &a, const RingPoly &b);
/// Throws std::invalid_argument when deg gcd(a, x^n - 1) = 0.
CssCode build_ub(const UBCodeSpec &spec);

/// k = 2 deg gcd(a, b, x^n - 1).
std::size_t dimension(const RingPoly &a, const RingPoly &b);

/// True iff H_X H_Z^T = 0.
bool check_css(const BitMatrix &hx, const BitMatrix &hz);
inline bool check_css(const CssCode &code) { return check_css(code.hx(), code.hz()); }

/// One spec per line, "n=<int> a=<poly> l=<int>"; blank lines and '#' comments skipped.
std::vector<UBCodeSpec> parse_spec_file(std::istream &in);
UBCodeSpec parse_spec_line(std::string_view line);

nlohmann::json to_json(const CssCode &code);

}  // namespace ubcycle
