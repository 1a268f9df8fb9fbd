#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ubcycle/code.hpp"
#include "ubcycle/decoder.hpp"

namespace ubcycle {

/// One published UB code: polynomial, l and the printed [[N, k, d]], R, w.
struct PublishedCode {
    std::string a;
    unsigned l;
    std::size_t N;
    std::size_t k;
    std::size_t d;
    std::string rate;  // as printed, 3 decimals
    std::size_t w;
};

/// The eleven selected UB codes, in table order.
const std::vector<PublishedCode> &published_codes();

UBCodeSpec spec_of(const PublishedCode &row);

struct CodeAtlasEntry {
    UBCodeSpec spec;
    std::size_t N = 0;
    std::size_t k = 0;
    std::size_t w = 0;
    std::optional<std::size_t> d_reported;
    std::optional<std::size_t> d_found;
    std::optional<std::size_t> d_upper;
    /// k/N rendered with 3 decimals.
    std::string rate;
    /// Fields that disagree with the printed row (empty when it reproduces).
    std::vector<std::string> mismatches;
};

/// k/N rounded to 3 decimals, e.g. "0.113".
std::string format_rate(std::size_t k, std::size_t N);

/// Rebuilds one published row and compares N, k, w and R with the printed values.
CodeAtlasEntry atlas_entry(const PublishedCode &row, bool with_bounds);
std::vector<CodeAtlasEntry> build_atlas(bool with_bounds);

/// Fixed-width text table, stable across runs.
void write_atlas_text(std::ostream &out, const std::vector<CodeAtlasEntry> &entries);
void write_atlas_csv(std::ostream &out, const std::vector<CodeAtlasEntry> &entries);

/// A logical-error-rate curve read off the published figures.
struct ReferenceCurve {
    std::string label;   // e.g. "[[252,12,14]] UB"
    std::string figure;  // "fig1" or "fig2"
    std::vector<std::pair<double, double>> points;  // (p_x, LER)
};

const std::vector<ReferenceCurve> &reference_curves();

/// Tidy CSV "source,curve,p,ler,ci_low,ci_high"; simulated rows carry their
/// Wilson interval, reference rows leave the interval empty.
void write_plot_data(std::ostream &out, const std::string &sim_label, const std::vector<SimPoint> &sim,
                     bool include_references);

}  // namespace ubcycle
