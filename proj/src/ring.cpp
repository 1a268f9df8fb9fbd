#include "ubcycle/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ubcycle {

namespace {

std::string symbolic(const std::vector<std::size_t> &exps) {
    if (exps.empty()) return "0";
    std::string out;
    for (std::size_t e : exps) {
        if (!out.empty()) out += '+';
        if (e == 0) {
            out += '1';
        } else if (e == 1) {
            out += 'x';
        } else {
            out += "x^" + std::to_string(e);
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::size_t parse_exponent(std::string_view digits, std::string_view token) {
    std::size_t value = 0;
    const auto *end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, value);
    if (digits.empty() || ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("malformed polynomial token '" + std::string(token) + "'");
    }
    return value;
}

std::size_t parse_term(std::string_view token) {
    const std::string_view t = trim(token);
    if (t == "1") return 0;
    if (t == "x") return 1;
    if (t.size() > 2 && t[0] == 'x' && t[1] == '^') return parse_exponent(t.substr(2), token);
    throw std::invalid_argument("malformed polynomial token '" + std::string(token) + "'");
}

}  // namespace

// ---------------------------------------------------------------- F2Poly

F2Poly::F2Poly(BitVec coeffs) : bits_(std::move(coeffs)) { normalize(); }

F2Poly F2Poly::from_exponents(const std::vector<std::size_t> &exps) {
    std::size_t len = 1;
    for (std::size_t e : exps) len = std::max(len, e + 1);
    BitVec bits(len);
    for (std::size_t e : exps) bits.flip(e);
    return F2Poly(std::move(bits));
}

F2Poly F2Poly::cyclic_modulus(std::size_t n) { return from_exponents({0, n}); }

void F2Poly::normalize() {
    degree_ = bits_.highest_set();
    bits_.resize(static_cast<std::size_t>(degree_ + 1));
}

F2Poly operator+(const F2Poly &p, const F2Poly &q) {
    const std::size_t len = std::max(p.bits_.size(), q.bits_.size());
    BitVec a = p.bits_;
    BitVec b = q.bits_;
    a.resize(len);
    b.resize(len);
    a ^= b;
    return F2Poly(std::move(a));
}

F2Poly operator*(const F2Poly &p, const F2Poly &q) {
    if (p.is_zero() || q.is_zero()) return F2Poly{};
    const auto len = static_cast<std::size_t>(p.degree_ + q.degree_ + 1);
    BitVec acc(len);
    BitVec shifted_q = q.bits_;
    shifted_q.resize(len);
    std::size_t at = 0;
    for (std::size_t e : p.exponents()) {
        shifted_q = shifted_q.rotated(e - at);  // no wrap: len covers the full product
        at = e;
        acc ^= shifted_q;
    }
    return F2Poly(std::move(acc));
}

DivisionResult poly_divide(const F2Poly &p, const F2Poly &d) {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (p.degree() < d.degree()) return {F2Poly{}, p};
    const auto dd = static_cast<std::size_t>(d.degree());
    const auto len = static_cast<std::size_t>(p.degree() + 1);
    BitVec rem = p.bits();
    BitVec quot(len - dd);
    BitVec divisor = d.bits();
    divisor.resize(len);
    for (long long top = rem.highest_set(); top >= static_cast<long long>(dd); top = rem.highest_set()) {
        const auto shift = static_cast<std::size_t>(top) - dd;
        quot.set(shift);
        rem ^= divisor.rotated(shift);
    }
    return {F2Poly(std::move(quot)), F2Poly(std::move(rem))};
}

F2Poly poly_gcd(const F2Poly &p, const F2Poly &q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    F2Poly a = p;
    F2Poly b = q;
    while (!b.is_zero()) {
        F2Poly r = poly_divide(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a;  // leading coefficient over F2 is 1
}

std::string to_string(const F2Poly &p) { return symbolic(p.exponents()); }

// ---------------------------------------------------------------- RingPoly

RingPoly::RingPoly(std::size_t n) : n_(n), coeffs_(n) {
    if (n == 0) throw std::invalid_argument("ring modulus n must be positive");
}

RingPoly::RingPoly(std::size_t n, BitVec coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    if (n == 0) throw std::invalid_argument("ring modulus n must be positive");
    if (coeffs_.size() != n) throw std::invalid_argument("coefficient vector length must equal n");
}

RingPoly RingPoly::from_exponents(std::size_t n, const std::vector<std::size_t> &exps) {
    RingPoly p(n);
    for (std::size_t e : exps) p.coeffs_.flip(e % n);
    return p;
}

RingPoly RingPoly::from_f2(std::size_t n, const F2Poly &p) { return from_exponents(n, p.exponents()); }

std::string RingPoly::to_string() const { return symbolic(exponents()); }

RingPoly parse_poly(std::string_view text, long long n) {
    if (n <= 0) throw std::invalid_argument("ring modulus n must be positive, got " + std::to_string(n));
    const std::string_view body = trim(text);
    if (body.empty()) throw std::invalid_argument("empty polynomial");
    std::vector<std::size_t> exps;
    const bool is_list = body.find_first_not_of("0123456789, \t") == std::string_view::npos;
    const char sep = is_list ? ',' : '+';
    std::size_t start = 0;
    while (start <= body.size()) {
        const std::size_t stop = std::min(body.find(sep, start), body.size());
        const std::string_view token = body.substr(start, stop - start);
        if (is_list) {
            exps.push_back(parse_exponent(trim(token), token));
        } else {
            exps.push_back(parse_term(token));
        }
        start = stop + 1;
    }
    return RingPoly::from_exponents(static_cast<std::size_t>(n), exps);
}

RingPoly poly_add(const RingPoly &p, const RingPoly &q) {
    if (p.n() != q.n()) throw std::invalid_argument("ring modulus mismatch in poly_add");
    return RingPoly(p.n(), p.coeffs() ^ q.coeffs());
}

RingPoly poly_mul(const RingPoly &p, const RingPoly &q) {
    if (p.n() != q.n()) throw std::invalid_argument("ring modulus mismatch in poly_mul");
    const RingPoly &sparse = weight(p) <= weight(q) ? p : q;
    const RingPoly &dense = &sparse == &p ? q : p;
    BitVec acc(p.n());
    for (std::size_t e : sparse.exponents()) acc ^= dense.coeffs().rotated(e);
    return RingPoly(p.n(), std::move(acc));
}

RingPoly poly_pow(const RingPoly &p, unsigned long long e) {
    RingPoly result = RingPoly::one(p.n());
    RingPoly base = p;
    while (e != 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

RingPoly frobenius_power(const RingPoly &a, unsigned l) {
    const std::size_t n = a.n();
    // 2^l mod n without overflow
    std::size_t mult = 1 % n;
    for (unsigned i = 0; i < l; ++i) mult = (mult * 2) % n;
    if (l == 0) return a;
    std::vector<std::size_t> exps;
    for (std::size_t e : a.exponents()) exps.push_back((e * mult) % n);
    return RingPoly::from_exponents(n, exps);
}

RingPoly reciprocal(const RingPoly &p) {
    const long long deg = p.degree();
    if (deg < 0) throw std::invalid_argument("reciprocal of the zero polynomial");
    std::vector<std::size_t> exps;
    for (std::size_t e : p.exponents()) exps.push_back(static_cast<std::size_t>(deg) - e);
    return RingPoly::from_exponents(p.n(), exps);
}

RingPoly conjugate(const RingPoly &p) {
    std::vector<std::size_t> exps;
    for (std::size_t e : p.exponents()) exps.push_back((p.n() - e) % p.n());
    return RingPoly::from_exponents(p.n(), exps);
}

F2Poly gcd_with_modulus(const RingPoly &p) { return poly_gcd(p.lift(), F2Poly::cyclic_modulus(p.n())); }

}  // namespace ubcycle
