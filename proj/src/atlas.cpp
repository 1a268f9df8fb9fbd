#include "ubcycle/atlas.hpp"

#include <cstdio>
#include <ostream>

#include "ubcycle/bounds.hpp"
#include "ubcycle/logical.hpp"

namespace ubcycle {

const std::vector<PublishedCode> &published_codes() {
    static const std::vector<PublishedCode> rows = {
        {"x^7+x^4+x+1", 3, 124, 14, 11, "0.113", 8},     {"x^10+x^9+x^2+1", 4, 146, 20, 8, "0.137", 8},
        {"x^12+x^10+x^9+1", 5, 178, 24, 13, "0.135", 8}, {"x^18+x^8+x^4+1", 6, 204, 36, 8, "0.176", 8},
        {"x^13+x^5+x+1", 5, 234, 26, 14, "0.111", 8},    {"x^6+x^5+1", 3, 252, 12, 14, "0.048", 6},
        {"x^7+x^4+1", 3, 254, 14, 14, "0.055", 6},       {"x^7+x^2+1", 5, 372, 14, 12, "0.038", 6},
        {"x^6+x^1+1", 9, 378, 12, 22, "0.032", 6},       {"x^9+x^8+1", 7, 730, 18, 20, "0.025", 6},
        {"x^28+x^10+x+1", 4, 1022, 56, 21, "0.057", 8},
    };
    return rows;
}

UBCodeSpec spec_of(const PublishedCode &row) {
    const std::size_t n = row.N / 2;
    return {n, parse_poly(row.a, static_cast<long long>(n)), row.l};
}

std::string format_rate(std::size_t k, std::size_t N) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(k) / static_cast<double>(N));
    return buf;
}

CodeAtlasEntry atlas_entry(const PublishedCode &row, bool with_bounds) {
    CodeAtlasEntry e;
    e.spec = spec_of(row);
    const CssCode code = build_ub(e.spec);
    e.N = code.num_qubits();
    e.k = code.k();
    e.w = code.w();
    e.rate = format_rate(e.k, e.N);
    e.d_reported = row.d;
    if (e.N != row.N) e.mismatches.push_back("N");
    if (e.k != row.k) e.mismatches.push_back("k");
    if (e.w != row.w) e.mismatches.push_back("w");
    if (e.rate != row.rate) e.mismatches.push_back("R");
    if (with_bounds && code.divisor_case()) e.d_upper = b_bounds(code, logical_basis(code)).d_upper;
    return e;
}

std::vector<CodeAtlasEntry> build_atlas(bool with_bounds) {
    std::vector<CodeAtlasEntry> out;
    for (const PublishedCode &row : published_codes()) out.push_back(atlas_entry(row, with_bounds));
    return out;
}

namespace {
std::string opt(const std::optional<std::size_t> &v) { return v ? std::to_string(*v) : "-"; }

std::string joined(const std::vector<std::string> &items) {
    std::string s;
    for (const auto &i : items) s += (s.empty() ? "" : "|") + i;
    return s;
}
}  // namespace

void write_atlas_text(std::ostream &out, const std::vector<CodeAtlasEntry> &entries) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %3s %5s %5s %4s %6s %3s %5s %7s %7s  %s\n", "a(x)", "l", "n", "N", "k", "R",
                  "w", "d_rep", "d_upper", "d_found", "status");
    out << buf;
    for (const auto &e : entries) {
        const std::string status = e.mismatches.empty() ? "ok" : "MISMATCH " + joined(e.mismatches);
        std::snprintf(buf, sizeof buf, "%-16s %3u %5zu %5zu %4zu %6s %3zu %5s %7s %7s  %s\n",
                      e.spec.a.to_string().c_str(), e.spec.l, e.spec.n, e.N, e.k, e.rate.c_str(), e.w,
                      opt(e.d_reported).c_str(), opt(e.d_upper).c_str(), opt(e.d_found).c_str(), status.c_str());
        out << buf;
    }
}

void write_atlas_csv(std::ostream &out, const std::vector<CodeAtlasEntry> &entries) {
    out << "a,l,n,N,k,R,w,d_reported,d_upper,d_found,mismatches\n";
    for (const auto &e : entries) {
        out << e.spec.a.to_string() << ',' << e.spec.l << ',' << e.spec.n << ',' << e.N << ',' << e.k << ','
            << e.rate << ',' << e.w << ',' << opt(e.d_reported) << ',' << opt(e.d_upper) << ',' << opt(e.d_found)
            << ',' << joined(e.mismatches) << '\n';
    }
}

const std::vector<ReferenceCurve> &reference_curves() {
    static const std::vector<ReferenceCurve> curves = {
        {"[[252,12,14]] UB", "fig1",
         {{0.03, 0.00011}, {0.04, 0.00154}, {0.05, 0.01084}, {0.06, 0.05467},
          {0.07, 0.14658}, {0.08, 0.29492}, {0.09, 0.47678}, {0.10, 0.60643}}},
        {"[[288,12,18]] BB", "fig1",
         {{0.03, 0.00003}, {0.04, 0.00066}, {0.05, 0.00711}, {0.06, 0.04027},
          {0.07, 0.13579}, {0.08, 0.29883}, {0.09, 0.46749}, {0.10, 0.62651}}},
        {"[[730,18,20]] UB", "fig1",
         {{0.04, 0.00003}, {0.05, 0.00042}, {0.06, 0.00742}, {0.07, 0.06107},
          {0.08, 0.22696}, {0.09, 0.53896}, {0.10, 0.83511}}},
        {"[[756,16,<=34]] BB", "fig1",
         {{0.04, 0.00001}, {0.05, 0.00032}, {0.06, 0.00602}, {0.07, 0.04611},
          {0.08, 0.20770}, {0.09, 0.49026}, {0.10, 0.80319}}},
        {"[[372,14,12]] UB", "fig1",
         {{0.03, 0.00005}, {0.04, 0.00052}, {0.05, 0.00443}, {0.06, 0.02945},
          {0.07, 0.11009}, {0.08, 0.24355}, {0.09, 0.47785}, {0.10, 0.73853}}},
        {"[[360,12,<=24]] BB", "fig1",
         {{0.03, 0.00001}, {0.04, 0.00023}, {0.05, 0.00354}, {0.06, 0.02945},
          {0.07, 0.09895}, {0.08, 0.26129}, {0.09, 0.49684}, {0.10, 0.69266}}},
        {"[[178,24,13]] UB", "fig2",
         {{0.02, 0.00004}, {0.03, 0.00121}, {0.04, 0.01259}, {0.05, 0.05737}, {0.06, 0.16444},
          {0.07, 0.30754}, {0.08, 0.50482}, {0.09, 0.64490}, {0.10, 0.83333}}},
        {"[[180,10,15<=d<=18]] A5 GB", "fig2",
         {{0.02, 0.00002}, {0.03, 0.00082}, {0.04, 0.00834}, {0.05, 0.05889}, {0.06, 0.15519},
          {0.07, 0.31365}, {0.08, 0.48553}, {0.09, 0.61633}, {0.10, 0.78646}}},
        {"[[234,26,14]] UB", "fig2",
         {{0.02, 0.00001}, {0.03, 0.00037}, {0.04, 0.00629}, {0.05, 0.03738}, {0.06, 0.14205},
          {0.07, 0.27656}, {0.08, 0.50842}, {0.09, 0.69266}, {0.10, 0.80749}}},
        {"[[254,28,14<=d<=20]] A1 GB", "fig2",
         {{0.02, 0.00003}, {0.03, 0.00206}, {0.04, 0.02835}, {0.05, 0.11683}, {0.06, 0.34337},
          {0.07, 0.52747}, {0.08, 0.77104}, {0.09, 0.89450}, {0.10, 0.94118}}},
        {"[[1022,56,21]] UB", "fig2",
         {{0.03, 0.00001}, {0.04, 0.00015}, {0.05, 0.00114}, {0.06, 0.02124},
          {0.07, 0.17640}, {0.08, 0.60204}, {0.09, 0.88268}, {0.10, 0.98052}}},
        {"[[900,50,15]] A6 GB", "fig2",
         {{0.03, 0.00017}, {0.04, 0.00116}, {0.05, 0.00769}, {0.06, 0.05288},
          {0.07, 0.21495}, {0.08, 0.51361}, {0.09, 0.84358}, {0.10, 0.98052}}},
    };
    return curves;
}

void write_plot_data(std::ostream &out, const std::string &sim_label, const std::vector<SimPoint> &sim,
                     bool include_references) {
    out << "source,curve,p,ler,ci_low,ci_high\n";
    char buf[256];
    for (const SimPoint &pt : sim) {
        std::snprintf(buf, sizeof buf, "simulated,\"%s\",%.6g,%.8g,%.8g,%.8g\n", sim_label.c_str(), pt.p, pt.ler,
                      pt.ci_low, pt.ci_high);
        out << buf;
    }
    if (!include_references) return;
    for (const ReferenceCurve &c : reference_curves()) {
        for (const auto &[p, ler] : c.points) {
            std::snprintf(buf, sizeof buf, "%s,\"%s\",%.6g,%.8g,,\n", c.figure.c_str(), c.label.c_str(), p, ler);
            out << buf;
        }
    }
}

}  // namespace ubcycle
