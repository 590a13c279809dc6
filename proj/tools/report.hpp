#pragma once

// Report documents for the command line front end.  Field order is fixed
// by ordered_json so identical inputs give byte-identical output.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ribbonlattice/braid.hpp"
#include "ribbonlattice/generalized.hpp"
#include "ribbonlattice/pseudotree.hpp"
#include "ribbonlattice/skeleton_io.hpp"
#include "ribbonlattice/tripod.hpp"

namespace rl::report {

using json = nlohmann::ordered_json;

// Values beyond 64 bits are written as strings.
inline json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(int_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline json gl2_json(const GL2& g) { return matrix_json(g.matrix()); }

inline json group_json(const AbelianGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion) t.push_back(int_json(d));
  return {{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.to_string()}};
}

inline json lattice_json(const IntLattice& L) {
  return {{"rank", L.rank()}, {"det", int_json(L.rank() ? L.det() : Int(1))}, {"gram", matrix_json(L.gram)}};
}

inline json ends_json(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

struct AnalyzeOptions {
  bool orientation_sweep = false;
  std::optional<std::pair<Series, int>> expect;
};

inline bool is_plain(const LabelledSkeleton& l) {
  if (!l.is_cubic() || !l.disks.empty()) return false;
  for (const auto& L : l.label)
    if (!(L == mat_Y())) return false;
  return true;
}

inline json sweep_json(const Skeleton& sk) {
  json rows = json::array();
  for (const auto& o : orientation_classes(sk)) {
    auto fs = fiber_types(sk, o);
    auto T = transcendental_lattice(sk, o);
    auto mw = mordell_weil(sk, o);
    json fibers = json::array();
    for (const auto& n : fiber_names(fs)) fibers.push_back(n);
    rows.push_back({{"heads", ends_json(o.head)},
                    {"t", fs.t},
                    {"fibers", fibers},
                    {"transcendental_lattice", lattice_json(T)},
                    {"mordell_weil", group_json(mw)}});
  }
  return rows;
}

inline json expectation_json(const IntLattice& T, Series series, int s) {
  auto ex = expected_lattice(series, s);
  auto iso = is_isometric(T, ex.lattice);
  json j{{"series", series_name(series)},
         {"s", s},
         {"expected", lattice_json(ex.lattice)},
         {"isometric", iso.isometric}};
  if (iso.witness) j["witness"] = matrix_json(*iso.witness);
  else j["reason"] = iso.reason;
  return j;
}

inline json analyze_plain(const Skeleton& sk, const Orientation& o, const AnalyzeOptions& opt) {
  auto fs = fiber_types(sk, o);
  auto inv = surface_invariants(sk, o);
  auto h = h_gamma(sk, o);
  auto T = transcendental_lattice(sk, o);
  auto mw = mordell_weil(sk, o);
  auto kc = kernel_cycles(sk, o);
  auto shadow = discriminant_shadow(sk, o);
  IntMatrix marked = restricted_gram(marked_form_times_two(sk, default_marking(sk)), 2, h.basis);

  json regions = json::array();
  for (std::size_t i = 0; i < fs.regions.size(); ++i) {
    const auto& rf = fs.regions[i];
    auto rc = region_cohomology(sk, o, rf.region);
    regions.push_back({{"index", i},
                       {"ends", ends_json(rf.region.ends)},
                       {"corners", rf.type.n},
                       {"sign", rf.sign > 0 ? "+" : "-"},
                       {"fiber", rf.type.name()},
                       {"milnor", rf.type.milnor()},
                       {"monodromy", gl2_json(rf.monodromy)},
                       {"cohomology_torsion", group_json(rc.group.torsion_part())}});
  }
  json doc{{"kind", "extremal"},
           {"ends", sk.n_ends()},
           {"vertices", sk.n_vertices()},
           {"edges", sk.n_edges()},
           {"heads", ends_json(o.head)},
           {"genus", fs.genus},
           {"k", fs.k},
           {"t", fs.t},
           {"regions", regions},
           {"invariants",
            {{"chi", inv.chi},
             {"sigma_plus", inv.sigma_plus},
             {"sigma_minus", inv.sigma_minus},
             {"mu", inv.mu},
             {"r", inv.r},
             {"rank_T", inv.rank_T},
             {"rank_ker", inv.rank_ker}}},
           {"h_gamma", {{"rank", h.basis.cols()}, {"radical_rank", kc.cycles.size()}}},
           {"transcendental_lattice", lattice_json(T)},
           {"mordell_weil", group_json(mw)},
           {"checks",
            {{"kernel_cycles_span_radical", true},
             {"marked_form_agrees", marked == h.gram},
             {"discriminant_shadow", shadow.holds()},
             {"determinant_identity", determinant_identity(fs, T, mw)}}}};
  if (opt.expect) doc["expectation"] = expectation_json(T, opt.expect->first, opt.expect->second);
  if (opt.orientation_sweep) doc["orientation_sweep"] = sweep_json(sk);
  return doc;
}

inline json analyze_generalized(const LabelledSkeleton& l, const AnalyzeOptions& opt) {
  auto gi = generalized_invariants(l);
  auto gc = generalized_kernel_cycles(l);
  json fibers = json::array();
  for (std::size_t i = 0; i < gi.fibers.size(); ++i) {
    const auto& f = gi.fibers[i];
    fibers.push_back({{"index", i},
                      {"ends", ends_json(f.region.ends)},
                      {"fiber", f.name},
                      {"euler", f.euler},
                      {"milnor", f.milnor},
                      {"stable", f.stable},
                      {"shaded_disk", f.disk.has_value()},
                      {"monodromy", gl2_json(f.monodromy)}});
  }
  json labels = json::array();
  for (int e = 0; e < l.graph.n_edges(); ++e)
    if (!(l.label[e] == mat_Y())) labels.push_back({{"head", l.head[e]}, {"label", gl2_json(l.label[e])}});
  bool definite = gi.transcendental.rank() == 0 || is_positive_definite(gi.transcendental.gram);
  // the positive index of H_Gamma is 2 p_g = chi/6 + 2g - 2
  bool chi_ok = gi.euler % 12 == 0;
  bool positive_ok = chi_ok && gi.inertia.positive == gi.euler / 6 + 2 * gi.genus - 2;
  // an extremal surface has mu = 2g + 5 chi/6 - 2; every missing unit of
  // Milnor number is a negative direction of H_Gamma
  int deficit = 2 * gi.genus + 5 * gi.euler / 6 - 2 - gi.milnor;
  json doc{{"kind", "generalized"},
           {"experimental", gi.experimental},
           {"ends", l.graph.n_ends()},
           {"vertices", l.graph.n_vertices()},
           {"edges", l.graph.n_edges()},
           {"heads", ends_json(l.head)},
           {"labels", labels},
           {"genus", gi.genus},
           {"regions", fibers},
           {"invariants", {{"chi", gi.euler}, {"mu", gi.milnor}, {"milnor_deficit", deficit}}},
           {"h_gamma",
            {{"rank", gi.h.basis.cols()},
             {"radical_rank", gc.cycles.size()},
             {"inertia", {gi.inertia.positive, gi.inertia.negative, gi.inertia.zero}}}},
           {"transcendental_lattice", lattice_json(gi.transcendental)},
           {"transcendental_positive_definite", definite},
           {"mordell_weil", group_json(gi.mw)},
           {"checks",
            {{"kernel_cycles_span_radical", true},
             {"euler_divisible_by_12", chi_ok},
             {"positive_index", positive_ok},
             {"negative_index_is_milnor_deficit", chi_ok && gi.inertia.negative == deficit}}}};
  if (opt.expect && definite)
    doc["expectation"] = expectation_json(gi.transcendental, opt.expect->first, opt.expect->second);
  return doc;
}

inline json analyze(const SkeletonFile& f, const AnalyzeOptions& opt) {
  LabelledSkeleton l = resolve(f);
  if (is_plain(l)) {
    validate(l.graph);
    return analyze_plain(l.graph, Orientation{l.head}, opt);
  }
  if (opt.orientation_sweep) throw std::invalid_argument("--orientation-sweep needs a 3-regular unlabelled skeleton");
  return analyze_generalized(l, opt);
}

inline std::string gram_text(const json& L) {
  if (L["rank"] == 0) return "0 (rank 0)";
  std::ostringstream os;
  os << L["gram"].dump() << " (rank " << L["rank"] << ", det " << L["det"] << ")";
  return os.str();
}

inline std::string analyze_text(const json& d) {
  std::ostringstream os;
  os << "skeleton: " << d["ends"] << " ends, " << d["vertices"] << " vertices, " << d["edges"] << " edges, genus "
     << d["genus"] << "\n";
  if (d["kind"] == "generalized" && d["experimental"] == true)
    os << "note: non-3-regular vertices together with E fibers (experimental)\n";
  if (d.contains("k")) os << "k = " << d["k"] << ", t = " << d["t"] << "\n";
  os << "regions:\n";
  for (const auto& r : d["regions"]) {
    os << "  " << r["index"] << ": " << r["fiber"].get<std::string>() << "  ends " << r["ends"].dump();
    if (r.contains("cohomology_torsion")) os << "  torsion " << r["cohomology_torsion"]["text"].get<std::string>();
    os << "\n";
  }
  os << "invariants:";
  for (const auto& [k, v] : d["invariants"].items()) os << " " << k << "=" << v;
  os << "\n";
  os << "H_Gamma: rank " << d["h_gamma"]["rank"] << ", radical rank " << d["h_gamma"]["radical_rank"] << "\n";
  os << "T_X: " << gram_text(d["transcendental_lattice"]);
  if (d.contains("transcendental_positive_definite") && d["transcendental_positive_definite"] != true)
    os << " (indefinite)";
  os << "\n";
  os << "MW: " << d["mordell_weil"]["text"].get<std::string>() << "\n";
  for (const auto& [k, v] : d["checks"].items()) os << "check " << k << ": " << (v == true ? "ok" : "FAILED") << "\n";
  if (d.contains("expectation")) {
    const auto& e = d["expectation"];
    os << "expected " << e["series"].get<std::string>() << " s=" << e["s"] << ": "
       << (e["isometric"] == true ? "isometric" : "not isometric") << "\n";
  }
  if (d.contains("orientation_sweep")) {
    os << "orientation classes (modulo vertex flips): " << d["orientation_sweep"].size() << "\n";
    for (const auto& r : d["orientation_sweep"]) {
      os << "  heads " << r["heads"].dump() << "  t=" << r["t"] << "  fibers " << r["fibers"].dump() << "  T "
         << gram_text(r["transcendental_lattice"]) << "  MW " << r["mordell_weil"]["text"].get<std::string>()
         << "\n";
    }
  }
  return os.str();
}

inline bool analyze_ok(const json& d) {
  for (const auto& [k, v] : d["checks"].items())
    if (v != true) return false;
  if (d.contains("expectation") && d["expectation"]["isometric"] != true) return false;
  return true;
}

inline json series_json(const SeriesReport& r) {
  json trees = json::array();
  for (const auto& v : r.trees) {
    trees.push_back({{"tree", v.tree.code},
                     {"pass", v.pass()},
                     {"fibers_ok", v.fibers_ok},
                     {"isometric", v.isometric},
                     {"mordell_weil_ok", v.mw_ok},
                     {"transcendental_lattice", lattice_json(v.transcendental)},
                     {"mordell_weil", group_json(v.mw)}});
  }
  json fibers = json::array();
  for (const auto& f : expected_fibers(r.series, r.s)) fibers.push_back(f);
  json doc{{"series", series_name(r.series)},
           {"s", r.s},
           {"k", r.k},
           {"trees_expected", int_json(catalan(r.k - 1))},
           {"expected_fibers", fibers},
           {"expected_lattice", lattice_json(r.expected.lattice)},
           {"expected_label", r.expected.lattice.label}};
  if (r.expected.index) doc["sublattice_index"] = int_json(*r.expected.index);
  doc["pass"] = r.pass();
  doc["trees"] = trees;
  return doc;
}

inline std::string series_text(const json& d) {
  std::ostringstream os;
  os << d["series"].get<std::string>() << " s=" << d["s"] << " k=" << d["k"] << ": " << d["trees"].size()
     << " trees, expected T " << gram_text(d["expected_lattice"]);
  if (d.contains("sublattice_index")) os << ", index " << d["sublattice_index"] << " sublattice construction";
  os << "\n";
  for (const auto& t : d["trees"])
    os << "  " << (t["pass"] == true ? "pass" : "FAIL") << "  " << t["tree"].get<std::string>() << "  T "
       << gram_text(t["transcendental_lattice"]) << "  MW " << t["mordell_weil"]["text"].get<std::string>() << "\n";
  return os.str();
}

struct EnumerateRecord {
  MarkedTree tree;
  PseudoTree pt;
  Orientation o;
  FiberSummary fs;
  IntLattice T;
  AbelianGroup mw;
};

inline EnumerateRecord enumerate_record(const MarkedTree& T, bool one_D5) {
  EnumerateRecord r;
  r.tree = T;
  r.pt = tree_to_skeleton(T);
  r.o = orientation_for_series(r.pt, one_D5);
  r.fs = fiber_types(r.pt.skeleton, r.o);
  r.T = transcendental_lattice(r.pt.skeleton, r.o);
  r.mw = mordell_weil(r.pt.skeleton, r.o);
  return r;
}

inline json record_json(const EnumerateRecord& r) {
  auto m = leaf_distances(r.pt);
  json fibers = json::array();
  for (const auto& n : fiber_names(r.fs)) fibers.push_back(n);
  return {{"tree", r.tree.code},
          {"distances", ends_json(m)},
          {"suffix_sums", ends_json(suffix_sums(m))},
          {"skeleton", print_skeleton(r.pt.skeleton, r.o)},
          {"fibers", fibers},
          {"transcendental_lattice", lattice_json(r.T)},
          {"mordell_weil", group_json(r.mw)}};
}

}  // namespace rl::report
