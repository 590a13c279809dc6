#include <gtest/gtest.h>

#include "report.hpp"

using namespace rl;
using rl::report::json;

namespace {

json analyze_text_file(const std::string& text, report::AnalyzeOptions opt = {}) {
  return report::analyze(parse_skeleton(text), opt);
}

const char* kK1 = "ends: 6\nnx: (0 1 2)(3 4 5)\nop: (0 3)(1 2)(4 5)\n";
const char* kTheta = "ends: 6\nnx: (0 1 2)(3 4 5)\nop: (0 3)(1 5)(2 4)\nheads: 0 1 2\n";

}  // namespace

TEST(Analyze, PlainFields) {
  auto d = analyze_text_file(kK1);
  EXPECT_EQ(d["kind"], "extremal");
  EXPECT_EQ(d["k"], 1);
  EXPECT_EQ(d["t"], 1);
  EXPECT_EQ(d["regions"].size(), 3u);
  EXPECT_EQ(d["invariants"]["chi"], 12);
  EXPECT_EQ(d["transcendental_lattice"]["rank"], 0);
  EXPECT_EQ(d["mordell_weil"]["text"], "Z/2");
  EXPECT_TRUE(report::analyze_ok(d));
  for (const char* key : {"kernel_cycles_span_radical", "marked_form_agrees", "discriminant_shadow",
                          "determinant_identity"})
    EXPECT_EQ(d["checks"][key], true) << key;
}

TEST(Analyze, Deterministic) {
  report::AnalyzeOptions opt;
  opt.orientation_sweep = true;
  EXPECT_EQ(analyze_text_file(kTheta, opt).dump(), analyze_text_file(kTheta, opt).dump());
}

TEST(Analyze, SweepAndText) {
  report::AnalyzeOptions opt;
  opt.orientation_sweep = true;
  auto d = analyze_text_file(kTheta, opt);
  EXPECT_EQ(d["orientation_sweep"].size(), 4u);
  auto text = report::analyze_text(d);
  EXPECT_NE(text.find("orientation classes (modulo vertex flips): 4"), std::string::npos);
  EXPECT_NE(text.find("MW: Z/2 + Z/2"), std::string::npos);
}

TEST(Analyze, ExpectationFailsForWrongSeries) {
  report::AnalyzeOptions opt;
  opt.expect = {Series::Th12, 2};
  auto d = analyze_text_file(kK1, opt);
  EXPECT_EQ(d["expectation"]["isometric"], false);
  EXPECT_FALSE(report::analyze_ok(d));
  opt.expect = {Series::Th12, 1};
  EXPECT_TRUE(report::analyze_ok(analyze_text_file(kK1, opt)));
}

TEST(Analyze, Generalized) {
  auto d = analyze_text_file(
      "ends: 12\nnx: (0 1 2)(3 4 5)(6 7 8)(9 10 11)\nop: (0 6)(1 2)(3 7)(4 5)(8 9)(10 11)\n"
      "heads: 0 2 7 5 9 11\nlabels: 11:X\ndisks: 10:E6\n");
  EXPECT_EQ(d["kind"], "generalized");
  EXPECT_EQ(d["experimental"], false);
  EXPECT_EQ(d["invariants"]["chi"], 24);
  EXPECT_EQ(d["transcendental_positive_definite"], true);
  EXPECT_TRUE(report::analyze_ok(d));
}

TEST(Analyze, HexavalentIsIndefinite) {
  auto d = analyze_text_file("ends: 6\nnx: (0 1 2 3 4 5)\nop: (0 3)(1 4)(2 5)\nheads: 0 1 2\n");
  EXPECT_EQ(d["transcendental_positive_definite"], false);
  EXPECT_EQ(d["invariants"]["milnor_deficit"], 1);
  EXPECT_TRUE(report::analyze_ok(d));
  EXPECT_NE(report::analyze_text(d).find("(indefinite)"), std::string::npos);
}

TEST(Series, JsonShape) {
  auto d = report::series_json(verify_series(Series::Th14, 2));
  EXPECT_EQ(d["series"], "th1.4");
  EXPECT_EQ(d["trees_expected"], 2);  // k = 3
  EXPECT_EQ(d["sublattice_index"], 4);
  EXPECT_NE(report::series_text(d).find("index 4 sublattice"), std::string::npos);
}

TEST(Enumerate, Record) {
  auto r = report::record_json(report::enumerate_record(enumerate_marked_trees(2).front(), false));
  EXPECT_EQ(r["distances"], json::parse("[3,3]"));
  EXPECT_EQ(r["suffix_sums"], json::parse("[6,3]"));
  EXPECT_EQ(r["fibers"].size(), 4u);
}
