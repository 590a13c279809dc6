#pragma once

// Pseudo-trees: skeletons obtained from a marked admissible tree by
// attaching a loop at every leaf.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ribbonlattice/lattice.hpp"
#include "ribbonlattice/skeleton.hpp"
#include "ribbonlattice/tripod.hpp"

namespace rl {

// Rooted binary tree in preorder: '1' is a node followed by its left and
// right subtrees, '0' is an empty child slot.  The leaf v_1 hangs above
// the root and the empty slots are v_2, ..., v_{k+1} from left to right.
struct MarkedTree {
  std::string code = "0";

  int k() const { return static_cast<int>(std::count(code.begin(), code.end(), '1')) + 1; }
  friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
  friend auto operator<=>(const MarkedTree&, const MarkedTree&) = default;
};

inline bool is_valid_tree_code(const std::string& code) {
  int need = 1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (need == 0) return false;
    if (code[i] == '1') ++need;
    else if (code[i] == '0') --need;
    else return false;
  }
  return need == 0;
}

inline std::vector<MarkedTree> enumerate_marked_trees(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<std::vector<std::string>> memo{{"0"}};
  for (int n = 1; n < k; ++n) {
    std::vector<std::string> out;
    for (int l = 0; l < n; ++l)
      for (const auto& L : memo[l])
        for (const auto& R : memo[n - 1 - l]) out.push_back("1" + L + R);
    memo.push_back(std::move(out));
  }
  std::vector<MarkedTree> trees;
  for (const auto& c : memo[k - 1]) trees.push_back({c});
  std::sort(trees.begin(), trees.end());
  return trees;
}

inline Int catalan(int n) {
  Int c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

struct PseudoTree {
  MarkedTree tree;
  Skeleton skeleton;
  // ends of each leaf vertex: {tree end, loop end, loop end} with
  // nx(m1) = m2, nx(m2) = m3
  std::vector<std::array<int, 3>> leaves;
  std::vector<std::array<int, 3>> nodes;  // {parent end, left end, right end}
  std::vector<std::array<int, 2>> tree_edges;  // {parent side, child side}
  int k() const { return tree.k(); }
  int leaf_vertex(int i) const { return skeleton.vertex_of(leaves.at(i)[0]); }
};

inline PseudoTree tree_to_skeleton(const MarkedTree& T) {
  if (!is_valid_tree_code(T.code)) throw std::invalid_argument("malformed tree code");
  PseudoTree pt;
  pt.tree = T;
  int next = 0;
  std::vector<std::vector<int>> nx, op;
  auto leaf = [&] {
    std::array<int, 3> l{next, next + 1, next + 2};
    next += 3;
    nx.push_back({l[0], l[1], l[2]});
    op.push_back({l[1], l[2]});
    pt.leaves.push_back(l);
    return l[0];
  };
  std::size_t pos = 0;
  std::function<int()> build = [&]() -> int {
    if (T.code[pos++] == '0') return leaf();
    std::array<int, 3> v{next, next + 1, next + 2};
    next += 3;
    // the left-turn walk entering at the parent end leaves on the left
    nx.push_back({v[0], v[2], v[1]});
    pt.nodes.push_back(v);
    int l = build();
    op.push_back({v[1], l});
    pt.tree_edges.push_back({v[1], l});
    int r = build();
    op.push_back({v[2], r});
    pt.tree_edges.push_back({v[2], r});
    return v[0];
  };
  int top = leaf();
  int root = build();
  op.push_back({top, root});
  pt.tree_edges.push_back({top, root});
  pt.skeleton = Skeleton::from_cycles(next, nx, op);
  auto info = validate(pt.skeleton);
  require(info.genus == 0, "pseudo-tree has positive genus");
  require(info.regions == T.k() + 2, "pseudo-tree region count");
  return pt;
}

enum class Series { Th11, Th12, Th13, Th14 };

inline bool series_all_A(Series s) { return s == Series::Th11 || s == Series::Th12; }
inline int series_k(Series series, int s) {
  return (series == Series::Th11 || series == Series::Th13) ? 2 * s : 2 * s - 1;
}
inline int series_t(Series series, int s) {
  switch (series) {
    case Series::Th11: return 0;
    case Series::Th12: return 1;
    case Series::Th13: return 2;
    case Series::Th14: return 1;
  }
  (void)s;
  return 0;
}
inline std::string series_name(Series s) {
  switch (s) {
    case Series::Th11: return "th1.1";
    case Series::Th12: return "th1.2";
    case Series::Th13: return "th1.3";
    case Series::Th14: return "th1.4";
  }
  return "?";
}
inline std::optional<Series> parse_series(const std::string& name) {
  for (Series s : {Series::Th11, Series::Th12, Series::Th13, Series::Th14})
    if (series_name(s) == name) return s;
  return std::nullopt;
}

// Loops oriented so that their fibers are A0*, tree edges pointing toward
// the root.  With one_D5 the loop at v_{k+1} is reversed.
inline Orientation orientation_for_series(const PseudoTree& pt, bool one_D5) {
  std::vector<int> heads;
  for (const auto& e : pt.tree_edges) heads.push_back(e[0]);
  for (std::size_t i = 0; i < pt.leaves.size(); ++i) {
    bool flip = one_D5 && i + 1 == pt.leaves.size();
    heads.push_back(flip ? pt.leaves[i][1] : pt.leaves[i][2]);
  }
  return orientation_from_heads(pt.skeleton, heads);
}

inline Orientation orientation_for_series(const PseudoTree& pt, Series s) {
  return orientation_for_series(pt, !series_all_A(s));
}

// Number of vertices on the tree path from v_i to v_{i+1}, i = 1..k.
inline std::vector<int> leaf_distances(const PseudoTree& pt) {
  const Skeleton& sk = pt.skeleton;
  std::vector<std::vector<int>> adj(sk.n_vertices());
  for (const auto& e : pt.tree_edges) {
    int a = sk.vertex_of(e[0]), b = sk.vertex_of(e[1]);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> m;
  for (int i = 0; i + 1 < static_cast<int>(pt.leaves.size()); ++i) {
    std::vector<int> dist(sk.n_vertices(), -1);
    std::queue<int> q;
    q.push(pt.leaf_vertex(i));
    dist[pt.leaf_vertex(i)] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    m.push_back(dist[pt.leaf_vertex(i + 1)]);
  }
  return m;
}

// The same distances measured along the left-turn walk on the skeleton.
inline std::vector<int> left_turn_distances(const PseudoTree& pt) {
  const Skeleton& sk = pt.skeleton;
  std::vector<int> m;
  for (int i = 0; i + 1 < static_cast<int>(pt.leaves.size()); ++i) {
    int a = pt.leaves[i][0], target = pt.leaf_vertex(i + 1), j = 0;
    do {
      a = sk.nx_inv(sk.op(a));
      ++j;
      require(j <= sk.n_ends(), "left-turn walk does not reach the next leaf");
    } while (sk.vertex_of(a) != target);
    m.push_back(j + 1);
  }
  return m;
}

inline std::vector<int> suffix_sums(const std::vector<int>& m) {
  std::vector<int> n(m.size());
  int acc = 0;
  for (std::size_t i = m.size(); i-- > 0;) n[i] = acc += m[i];
  return n;
}

// Leaves sharing their node with an even number of other leaves.
inline int loose_ends(const PseudoTree& pt) {
  const Skeleton& sk = pt.skeleton;
  std::vector<int> leaf_nbrs(sk.n_vertices(), 0);
  std::vector<int> nbr_of_leaf;
  std::vector<char> is_leaf(sk.n_vertices(), 0);
  for (std::size_t i = 0; i < pt.leaves.size(); ++i) is_leaf[pt.leaf_vertex(i)] = 1;
  for (std::size_t i = 0; i < pt.leaves.size(); ++i) {
    int w = sk.vertex_of(sk.op(pt.leaves[i][0]));
    nbr_of_leaf.push_back(w);
    ++leaf_nbrs[w];
  }
  int loose = 0;
  for (std::size_t i = 0; i < pt.leaves.size(); ++i) {
    int w = nbr_of_leaf[i];
    int others = is_leaf[w] ? 0 : leaf_nbrs[w] - 1;
    if (others % 2 == 0) ++loose;
  }
  return loose;
}

struct QLattice {
  IntLattice lattice;
  std::vector<Int> chi;
};

inline QLattice q_lattice_and_chi(const std::vector<int>& m) {
  const std::size_t k = m.size();
  IntMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    g(i, i) = m[i] - 2;
    if (i + 1 < k) g(i, i + 1) = g(i + 1, i) = 1;
  }
  QLattice q{IntLattice(g, "Q_T"), {}};
  for (int x : m) q.chi.push_back(x);
  return q;
}

inline QLattice q_lattice_and_chi(const PseudoTree& pt) {
  return q_lattice_and_chi(leaf_distances(pt));
}

inline std::vector<Int> apply_functional(const std::vector<Int>& f, const IntMatrix& U) {
  std::vector<Int> out(U.cols());
  for (std::size_t j = 0; j < U.cols(); ++j)
    for (std::size_t i = 0; i < U.rows(); ++i) out[j] += f[i] * U(i, j);
  return out;
}

struct Contraction {
  IntMatrix U;  // columns: split-off unit vectors v_1..v_{k-1}, then w
  std::vector<Int> chi_bar, psi_bar;
};

// Splits off weight-one generators until one vector of square zero is
// left; it descends from the generator next to v_{k+1}.
inline Contraction contract(const std::vector<int>& m) {
  const std::size_t k = m.size();
  auto q = q_lattice_and_chi(m);
  const IntMatrix& Q = q.lattice.gram;
  std::vector<std::vector<Int>> b(k, std::vector<Int>(k));
  for (std::size_t i = 0; i < k; ++i) b[i][i] = i % 2 ? -1 : 1;
  auto ip = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
    Int s = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (x[i] != 0 && y[j] != 0) s += x[i] * Q(i, j) * y[j];
    return s;
  };
  std::vector<std::size_t> active(k), split;
  std::iota(active.begin(), active.end(), 0);
  while (active.size() > 1) {
    std::size_t p = active.size();
    for (std::size_t i = 0; i + 1 < active.size(); ++i)
      if (ip(b[active[i]], b[active[i]]) == 1) {
        p = i;
        break;
      }
    if (p == active.size()) throw InternalError("contraction is stuck");
    const auto& bi = b[active[p]];
    for (std::size_t nb : {p - 1, p + 1}) {
      if (nb >= active.size()) continue;  // p - 1 wraps when p == 0
      for (std::size_t l = 0; l < k; ++l) b[active[nb]][l] += bi[l];
    }
    split.push_back(active[p]);
    active.erase(active.begin() + static_cast<long>(p));
  }
  split.push_back(active.front());
  Contraction c;
  c.U = IntMatrix(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) c.U(i, j) = b[split[j]][i];
  IntMatrix W(k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) W(i, i) = 1;
  require(c.U.transpose() * Q * c.U == W, "contraction does not reach W_k");
  Int d = determinant(c.U);
  require(d == 1 || d == -1, "contraction is not unimodular");
  c.chi_bar = apply_functional(q.chi, c.U);
  std::vector<Int> psi = q.chi;
  psi[k - 1] -= 2;
  c.psi_bar = apply_functional(psi, c.U);
  return c;
}

inline Contraction contract(const PseudoTree& pt) { return contract(leaf_distances(pt)); }

// Does f (in W_k coordinates, w last) have |coefficients| equal to
// `threes` threes and `ones` ones on v_1..v_{k-1}, and |w coefficient| == w?
inline bool functional_shape(const std::vector<Int>& f, int threes, int ones, int w) {
  if (f.empty()) return false;
  int c3 = 0, c1 = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (abs(f[i]) == 3) ++c3;
    else if (abs(f[i]) == 1) ++c1;
    else return false;
  }
  return c3 == threes && c1 == ones && abs(f.back()) == w;
}

// The statements of the contraction lemmas for chi and for psi.
inline bool contraction_matches_lemmas(const Contraction& c, int k) {
  if (k % 2 == 0) {
    int s = k / 2;
    return functional_shape(c.chi_bar, s, s - 1, 0) && functional_shape(c.psi_bar, s, s - 1, 2);
  }
  int s = (k + 1) / 2;
  return functional_shape(c.chi_bar, s - 1, s - 1, 2) && functional_shape(c.psi_bar, s - 1, s - 1, 0);
}

inline std::vector<Int> three_one_vector(int threes, int ones) {
  std::vector<Int> v(threes, 3);
  v.insert(v.end(), ones, 1);
  return v;
}

struct ExpectedLattice {
  IntLattice lattice;
  std::optional<Int> index;  // for the index-4 construction
};

inline ExpectedLattice expected_lattice(Series series, int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  switch (series) {
    case Series::Th11: {
      IntLattice V = standard_lattice(Family::V, 2 * s - 1);
      auto r = orthogonal_complement(V, three_one_vector(s, s - 1));
      return {IntLattice(r.lattice.gram, "(3^" + std::to_string(s) + ",1^" +
                                             std::to_string(s - 1) + ")^perp in V" +
                                             std::to_string(2 * s - 1)),
              std::nullopt};
    }
    case Series::Th12:
      return {standard_lattice(Family::D, 2 * s - 2), std::nullopt};
    case Series::Th13: {
      IntLattice x(IntMatrix{{4}}, "[4]");
      return {direct_sum(standard_lattice(Family::D, 2 * s - 1), x), std::nullopt};
    }
    case Series::Th14: {
      IntLattice V = standard_lattice(Family::V, 2 * s - 2);
      auto f = three_one_vector(s - 1, s - 1);
      auto c = congruence_sublattice(modified_form(V, f, Rat(1, 4)), f, 4);
      return {IntLattice(c.lattice.gram, "index-4 sublattice of V'" + std::to_string(2 * s - 2)),
              c.index};
    }
  }
  throw std::invalid_argument("unknown series");
}

// Fiber list the theorem prescribes, sorted by name.
inline std::vector<std::string> expected_fibers(Series series, int s) {
  std::vector<std::string> f;
  int a0 = 0;
  switch (series) {
    case Series::Th11:
      f.push_back("A" + std::to_string(10 * s - 2));
      a0 = 2 * s + 1;
      break;
    case Series::Th12:
      f.push_back("D" + std::to_string(10 * s - 2));
      a0 = 2 * s;
      break;
    case Series::Th13:
      f.push_back("D" + std::to_string(10 * s + 3));
      f.push_back("D5");
      a0 = 2 * s;
      break;
    case Series::Th14:
      f.push_back("A" + std::to_string(10 * s - 7));
      f.push_back("D5");
      a0 = 2 * s - 1;
      break;
  }
  f.insert(f.end(), a0, "A0*");
  std::sort(f.begin(), f.end());
  return f;
}

inline std::vector<std::string> fiber_names(const FiberSummary& fs) {
  std::vector<std::string> out;
  for (const auto& r : fs.regions) out.push_back(r.type.name());
  std::sort(out.begin(), out.end());
  return out;
}

// |det T| |MW|^2 = prod |det R_F| over the singular fibers.
inline bool determinant_identity(const FiberSummary& fs, const IntLattice& T, const AbelianGroup& mw) {
  Int lhs = abs(T.rank() ? T.det() : Int(1)) * mw.order() * mw.order();
  Int rhs = 1;
  for (const auto& r : fs.regions) {
    auto R = r.type.root_lattice();
    if (R.rank()) rhs *= abs(R.det());
  }
  return lhs == rhs;
}

struct TreeVerdict {
  MarkedTree tree;
  bool fibers_ok = false, isometric = false, mw_ok = false;
  std::optional<IntMatrix> witness;
  IntLattice transcendental;
  AbelianGroup mw;
  bool pass() const { return fibers_ok && isometric && mw_ok; }
};

struct SeriesReport {
  Series series;
  int s = 0, k = 0;
  ExpectedLattice expected;
  std::vector<TreeVerdict> trees;
  bool pass() const {
    return std::all_of(trees.begin(), trees.end(), [](const TreeVerdict& v) { return v.pass(); });
  }
};

// The Mordell-Weil group must be trivial for s > 1.  At s = 1 the surface
// in three of the series is rational with a nontrivial torsion section,
// so there only the determinant identity is required.
inline TreeVerdict verify_tree(Series series, int s, const MarkedTree& T, const IntLattice& expected) {
  TreeVerdict v;
  v.tree = T;
  auto pt = tree_to_skeleton(T);
  auto o = orientation_for_series(pt, series);
  auto fs = fiber_types(pt.skeleton, o);
  v.fibers_ok = fiber_names(fs) == expected_fibers(series, s);
  v.transcendental = transcendental_lattice(pt.skeleton, o);
  v.mw = mordell_weil(pt.skeleton, o);
  auto iso = is_isometric(v.transcendental, expected);
  v.isometric = iso.isometric;
  v.witness = iso.witness;
  v.mw_ok = determinant_identity(fs, v.transcendental, v.mw) && (s == 1 || v.mw.is_trivial());
  return v;
}

inline SeriesReport verify_series(Series series, int s) {
  SeriesReport r{series, s, series_k(series, s), expected_lattice(series, s), {}};
  for (const auto& T : enumerate_marked_trees(r.k))
    r.trees.push_back(verify_tree(series, s, T, r.expected.lattice));
  return r;
}

}  // namespace rl
