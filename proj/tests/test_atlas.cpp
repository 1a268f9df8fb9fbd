#include <gtest/gtest.h>

#include <sstream>

#include "ubcycle/atlas.hpp"

using namespace ubcycle;

namespace {

bool has_point(const std::string &label, double p, double ler) {
    for (const ReferenceCurve &c : reference_curves())
        if (c.label == label)
            for (const auto &[x, y] : c.points)
                if (x == p && y == ler) return true;
    return false;
}

}  // namespace

TEST(Atlas, ElevenRows) { EXPECT_EQ(published_codes().size(), 11u); }

TEST(Atlas, RateFormatting) {
    EXPECT_EQ(format_rate(14, 124), "0.113");
    EXPECT_EQ(format_rate(12, 378), "0.032");
    EXPECT_EQ(format_rate(8, 42), "0.190");
}

TEST(Atlas, SelectedRows) {
    const auto &rows = published_codes();
    const CodeAtlasEntry r9 = atlas_entry(rows[8], false);
    EXPECT_EQ(r9.N, 378u);
    EXPECT_EQ(r9.k, 12u);
    EXPECT_EQ(r9.w, 6u);
    EXPECT_EQ(r9.rate, "0.032");
    EXPECT_TRUE(r9.mismatches.empty());
    const CodeAtlasEntry r10 = atlas_entry(rows[9], false);
    EXPECT_EQ(r10.N, 730u);
    EXPECT_EQ(r10.k, 18u);
    EXPECT_EQ(r10.rate, "0.025");
}

TEST(Atlas, MismatchesAreFlagged) {
    PublishedCode row = published_codes()[0];
    row.k = 16;
    row.rate = "0.200";
    const CodeAtlasEntry e = atlas_entry(row, false);
    EXPECT_EQ(e.mismatches, (std::vector<std::string>{"k", "R"}));
    std::ostringstream out;
    write_atlas_text(out, {e});
    EXPECT_NE(out.str().find("MISMATCH k|R"), std::string::npos);
}

TEST(Atlas, TextOutputIsStable) {
    const auto entries = build_atlas(false);
    std::ostringstream a, b;
    write_atlas_text(a, entries);
    write_atlas_text(b, build_atlas(false));
    EXPECT_EQ(a.str(), b.str());
    std::ostringstream csv;
    write_atlas_csv(csv, entries);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "a,l,n,N,k,R,w,d_reported,d_upper,d_found,mismatches");
}

TEST(ReferenceCurves, ContainFigurePoints) {
    EXPECT_EQ(reference_curves().size(), 12u);
    EXPECT_TRUE(has_point("[[252,12,14]] UB", 0.03, 0.00011));
    EXPECT_TRUE(has_point("[[234,26,14]] UB", 0.05, 0.03738));
    EXPECT_TRUE(has_point("[[730,18,20]] UB", 0.09, 0.53896));
    EXPECT_TRUE(has_point("[[178,24,13]] UB", 0.06, 0.16444));
}

TEST(PlotData, ReferenceOnlyWithoutSimulation) {
    std::ostringstream out;
    write_plot_data(out, "sim", {}, true);
    const std::string s = out.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "source,curve,p,ler,ci_low,ci_high");
    EXPECT_EQ(s.find("simulated"), std::string::npos);
    EXPECT_NE(s.find("fig1,\"[[252,12,14]] UB\",0.03,0.00011,,"), std::string::npos);
    std::size_t lines = 0;
    for (char ch : s) lines += ch == '\n';
    std::size_t points = 0;
    for (const auto &c : reference_curves()) points += c.points.size();
    EXPECT_EQ(lines, points + 1);
}

TEST(PlotData, MergesSimulatedPoints) {
    SimPoint p;
    p.p = 0.08;
    p.ler = 0.25;
    p.ci_low = 0.2;
    p.ci_high = 0.3;
    std::ostringstream out;
    write_plot_data(out, "[[252,12,14]] ours", {p}, false);
    EXPECT_EQ(out.str(), "source,curve,p,ler,ci_low,ci_high\nsimulated,\"[[252,12,14]] ours\",0.08,0.25,0.2,0.3\n");
}
