#include "ubcycle/code.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ubcycle {

std::string UBCodeSpec::to_string() const {
    return "n=" + std::to_string(n) + " a=" + a.to_string() + " l=" + std::to_string(l);
}

BitMatrix multiplication_matrix(const RingPoly &p) { return circulant(conjugate(p)); }

std::size_t dimension(const RingPoly &a, const RingPoly &b) {
    if (a.n() != b.n()) throw std::invalid_argument("ring modulus mismatch in dimension");
    const F2Poly g = poly_gcd(poly_gcd(a.lift(), b.lift()), F2Poly::cyclic_modulus(a.n()));
    return 2 * static_cast<std::size_t>(g.degree());
}

bool check_css(const BitMatrix &hx, const BitMatrix &hz) {
    if (hx.cols() != hz.cols()) return false;
    return hx.multiply(hz.transposed()).is_zero();
}

CssCode build_gb(const RingPoly &a, const RingPoly &b) {
    if (a.n() != b.n()) throw std::invalid_argument("ring modulus mismatch: a in R_" + std::to_string(a.n()) +
                                                    ", b in R_" + std::to_string(b.n()));
    CssCode code;
    code.a_ = a;
    code.b_ = b;
    code.gcd_ = poly_gcd(poly_gcd(a.lift(), b.lift()), F2Poly::cyclic_modulus(a.n()));
    if (code.gcd_.degree() <= 0) {
        throw std::invalid_argument("gcd(a, b, x^n - 1) is constant, so k = 0 for a=" + a.to_string() +
                                    " b=" + b.to_string() + " n=" + std::to_string(a.n()));
    }
    if (!a.is_zero()) {
        const auto [quot, rem] = poly_divide(F2Poly::cyclic_modulus(a.n()), a.lift());
        if (rem.is_zero()) code.h_ = RingPoly::from_f2(a.n(), quot);
    }
    const BitMatrix A = multiplication_matrix(a);
    const BitMatrix B = multiplication_matrix(b);
    code.hx_ = A.hstack(B);
    code.hz_ = B.transposed().hstack(A.transposed());
    if (!check_css(code.hx_, code.hz_)) throw std::logic_error("CSS orthogonality violated");
    code.hx_rows_ = RowEchelon(code.hx_);
    code.hz_rows_ = RowEchelon(code.hz_);
    return code;
}

CssCode build_ub(const UBCodeSpec &spec) {
    if (spec.a.n() != spec.n) throw std::invalid_argument("UB spec: a is not in R_n");
    if (spec.l < 1) throw std::invalid_argument("UB spec: l must be at least 1");
    if (gcd_with_modulus(spec.a).degree() <= 0) {
        throw std::invalid_argument("UB spec: deg gcd(a, x^n - 1) = 0 for " + spec.to_string());
    }
    CssCode code = build_gb(spec.a, frobenius_power(spec.a, spec.l));
    code.l_ = spec.l;
    return code;
}

UBCodeSpec parse_spec_line(std::string_view line) {
    std::istringstream fields{std::string(line)};
    std::string tok;
    std::optional<long long> n;
    std::optional<std::string> a_text;
    std::optional<long long> l;
    auto parse_int = [](std::string_view s, const std::string &token) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("malformed spec token '" + token + "'");
        }
        return v;
    };
    while (fields >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed spec token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string_view value = std::string_view(tok).substr(eq + 1);
        if (key == "n") {
            n = parse_int(value, tok);
        } else if (key == "a") {
            a_text = std::string(value);
        } else if (key == "l") {
            l = parse_int(value, tok);
        } else {
            throw std::invalid_argument("unknown spec key '" + key + "'");
        }
    }
    if (!n || !a_text || !l) throw std::invalid_argument("spec line needs n=, a= and l=: '" + std::string(line) + "'");
    if (*l < 1) throw std::invalid_argument("spec: l must be at least 1");
    UBCodeSpec spec;
    spec.a = parse_poly(*a_text, *n);
    spec.n = static_cast<std::size_t>(*n);
    spec.l = static_cast<unsigned>(*l);
    return spec;
}

std::vector<UBCodeSpec> parse_spec_file(std::istream &in) {
    std::vector<UBCodeSpec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_spec_line(line));
    }
    return out;
}

nlohmann::json to_json(const CssCode &code) {
    nlohmann::json j;
    j["n"] = code.n();
    j["N"] = code.num_qubits();
    j["k"] = code.k();
    j["r"] = code.r();
    j["w"] = code.w();
    j["divisor_case"] = code.divisor_case();
    j["a"] = code.a().to_string();
    j["b"] = code.b().to_string();
    j["h"] = code.h() ? nlohmann::json(code.h()->to_string()) : nlohmann::json(nullptr);
    if (code.l()) j["l"] = *code.l();
    return j;
}

}  // namespace ubcycle
