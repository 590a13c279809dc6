// ribbonlattice: invariants of extremal elliptic surfaces from skeletons.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse or usage error,
// 3 invalid skeleton, 4 internal assertion.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "report.hpp"

namespace {

using rl::report::json;

enum Exit { kOk = 0, kVerify = 1, kParse = 2, kInvalid = 3, kInternal = 4 };

std::pair<rl::Series, int> parse_expect(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--expect wants SERIES:S, e.g. th1.2:3");
  auto series = rl::parse_series(s.substr(0, colon));
  if (!series) throw std::invalid_argument("unknown series '" + s.substr(0, colon) + "'");
  int v = std::stoi(s.substr(colon + 1));
  if (v < 1) throw std::invalid_argument("s must be positive");
  return {*series, v};
}

int cmd_analyze(const std::string& path, bool as_json, bool sweep, const std::string& expect) {
  rl::report::AnalyzeOptions opt;
  opt.orientation_sweep = sweep;
  if (!expect.empty()) opt.expect = parse_expect(expect);
  auto file = rl::read_skeleton_file(path);
  json doc = rl::report::analyze(file, opt);
  if (as_json) std::cout << doc.dump(2) << "\n";
  else std::cout << rl::report::analyze_text(doc);
  return rl::report::analyze_ok(doc) ? kOk : kVerify;
}

int cmd_verify_series(const std::string& which, int s_min, int s_max, bool as_json) {
  if (s_max < 1 || s_min < 1 || s_min > s_max) throw std::invalid_argument("need 1 <= --s-min <= --s-max");
  std::vector<rl::Series> list;
  if (which == "all") list = {rl::Series::Th11, rl::Series::Th12, rl::Series::Th13, rl::Series::Th14};
  else if (auto s = rl::parse_series(which)) list = {*s};
  else throw std::invalid_argument("unknown series '" + which + "' (th1.1 .. th1.4 or all)");
  json out = json::array();
  bool ok = true;
  for (auto series : list)
    for (int s = s_min; s <= s_max; ++s) {
      auto r = rl::verify_series(series, s);
      json d = rl::report::series_json(r);
      ok = ok && r.pass();
      if (as_json) out.push_back(d);
      else std::cout << rl::report::series_text(d) << std::flush;
    }
  if (as_json) std::cout << out.dump(2) << "\n";
  else std::cout << (ok ? "all series verified" : "verification FAILED") << "\n";
  return ok ? kOk : kVerify;
}

int cmd_enumerate(int k, bool dedup, const std::string& orientation, bool as_json) {
  if (k < 1 || k > 9) throw std::invalid_argument("k must be between 1 and 9");
  bool one_D5 = orientation == "one-D5";
  std::vector<rl::report::EnumerateRecord> recs;
  for (const auto& T : rl::enumerate_marked_trees(k)) recs.push_back(rl::report::enumerate_record(T, one_D5));

  std::vector<std::vector<std::size_t>> classes;
  if (dedup) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
      bool placed = false;
      for (auto& c : classes)
        if (rl::is_isometric(recs[c.front()].T, recs[i].T).isometric) {
          c.push_back(i);
          placed = true;
          break;
        }
      if (!placed) classes.push_back({i});
    }
  } else {
    for (std::size_t i = 0; i < recs.size(); ++i) classes.push_back({i});
  }

  if (as_json) {
    json doc{{"k", k}, {"orientation", one_D5 ? "one-D5" : "all-A"}, {"trees", recs.size()}};
    json arr = json::array();
    for (const auto& c : classes) {
      json r = rl::report::record_json(recs[c.front()]);
      if (dedup) {
        json members = json::array();
        for (auto i : c) members.push_back(recs[i].tree.code);
        r["class_members"] = members;
      }
      arr.push_back(r);
    }
    doc[dedup ? "classes" : "records"] = arr;
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  for (const auto& c : classes) {
    json r = rl::report::record_json(recs[c.front()]);
    std::cout << "# tree " << r["tree"].get<std::string>() << "  distances " << r["distances"].dump()
              << "  fibers " << r["fibers"].dump() << "\n";
    std::cout << "# T " << rl::report::gram_text(r["transcendental_lattice"]) << "  MW "
              << r["mordell_weil"]["text"].get<std::string>() << "\n";
    if (dedup) std::cout << "# class of " << c.size() << " trees\n";
    std::cout << r["skeleton"].get<std::string>() << "\n";
  }
  std::cout << "# " << recs.size() << " trees";
  if (dedup) std::cout << ", " << classes.size() << " isometry classes of T_X";
  std::cout << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of extremal elliptic surfaces from their skeletons"};
  app.require_subcommand(1);

  std::string path, expect;
  bool as_json = false, sweep = false;
  auto* analyze = app.add_subcommand("analyze", "Analyze a skeleton file");
  analyze->add_option("file", path, "skeleton file")->required();
  analyze->add_flag("--json", as_json, "machine-readable output");
  analyze->add_flag("--orientation-sweep", sweep, "all orientations modulo vertex flips");
  analyze->add_option("--expect", expect, "compare T_X with a series lattice, e.g. th1.2:3");

  std::string series = "all";
  int s_max = 3, s_min = 1;
  auto* verify = app.add_subcommand("verify-series", "Check the closed-form lattice series on all trees");
  verify->add_option("series", series, "th1.1, th1.2, th1.3, th1.4 or all");
  verify->add_option("--s-max", s_max, "largest s")->capture_default_str();
  verify->add_option("--s-min", s_min, "smallest s")->capture_default_str();
  verify->add_flag("--json", as_json, "machine-readable output");

  int k = 2;
  bool dedup = false;
  std::string orientation = "all-A";
  auto* enumerate = app.add_subcommand("enumerate", "List pseudo-trees with 2k vertices and their invariants");
  enumerate->add_option("k", k, "half the number of vertices")->required();
  enumerate->add_flag("--dedup", dedup, "one record per isometry class of T_X");
  enumerate->add_option("--orientation", orientation, "loop orientation")
      ->check(CLI::IsMember({"all-A", "one-D5"}))
      ->capture_default_str();
  enumerate->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*analyze) return cmd_analyze(path, as_json, sweep, expect);
    if (*verify) return cmd_verify_series(series, s_min, s_max, as_json);
    if (*enumerate) return cmd_enumerate(k, dedup, orientation, as_json);
  } catch (const rl::ParseError& e) {
    std::cerr << "parse error: " << (path.empty() ? "" : path + ":") << e.what() << "\n";
    return kParse;
  } catch (const rl::InvalidSkeleton& e) {
    std::cerr << "invalid skeleton: " << e.what() << "\n";
    return kInvalid;
  } catch (const rl::InternalError& e) {
    std::cerr << "internal assertion failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
