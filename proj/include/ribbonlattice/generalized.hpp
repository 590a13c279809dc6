#pragma once

// Skeletons with vertices of valency 0 mod 3 and with labelled edges, for
// non-extremal surfaces and for surfaces with fibers of type E.

#include <optional>
#include <string>
#include <vector>

#include "ribbonlattice/exact_algebra.hpp"
#include "ribbonlattice/lattice.hpp"
#include "ribbonlattice/skeleton.hpp"
#include "ribbonlattice/tripod.hpp"

namespace rl {

enum class EKind { A0ss, E6, A1s, E7, A2s, E8 };

inline std::string ekind_name(EKind k) {
  switch (k) {
    case EKind::A0ss: return "A0**";
    case EKind::E6: return "E6";
    case EKind::A1s: return "A1*";
    case EKind::E7: return "E7";
    case EKind::A2s: return "A2*";
    case EKind::E8: return "E8";
  }
  return "?";
}

inline std::optional<EKind> parse_ekind(const std::string& s) {
  for (EKind k : {EKind::A0ss, EKind::E6, EKind::A1s, EKind::E7, EKind::A2s, EKind::E8})
    if (ekind_name(k) == s) return k;
  return std::nullopt;
}

// Kodaira II, IV*, III, III*, IV, II*
inline int ekind_euler(EKind k) {
  static const int e[] = {2, 8, 3, 9, 4, 10};
  return e[static_cast<int>(k)];
}
inline int ekind_milnor(EKind k) {
  static const int m[] = {0, 6, 1, 7, 2, 8};
  return m[static_cast<int>(k)];
}
inline IntLattice ekind_root_lattice(EKind k) {
  switch (k) {
    case EKind::A0ss: return standard_lattice(Family::A, 0);
    case EKind::E6: return standard_lattice(Family::E, 6);
    case EKind::A1s: return standard_lattice(Family::A, 1);
    case EKind::E7: return standard_lattice(Family::E, 7);
    case EKind::A2s: return standard_lattice(Family::A, 2);
    case EKind::E8: return standard_lattice(Family::E, 8);
  }
  throw std::invalid_argument("unknown fiber kind");
}
inline bool ekind_two_edges(EKind k) { return k == EKind::A2s || k == EKind::E8; }

struct ShadedDisk {
  int end;  // an end whose region is the disk
  EKind kind;
};

struct LabelledSkeleton {
  Skeleton graph;
  std::vector<int> head;   // per edge, canonical order
  std::vector<GL2> label;  // per edge
  std::vector<ShadedDisk> disks;

  bool is_head(int end) const { return head.at(graph.edge_of(end)) == end; }
  const GL2& label_of(int end) const { return label.at(graph.edge_of(end)); }
  bool is_cubic() const {
    for (const auto& v : graph.vertices())
      if (v.size() != 3) return false;
    return true;
  }
  // non-extremal vertices together with E fibers
  bool experimental() const { return !is_cubic() && !disks.empty(); }
};

inline void validate(const LabelledSkeleton& l) {
  const Skeleton& sk = l.graph;
  const int n = sk.n_ends();
  if (n == 0) throw InvalidSkeleton("empty skeleton");
  for (int i = 0; i < n; ++i)
    if (sk.op(i) == i || sk.op(sk.op(i)) != i) throw InvalidSkeleton("op is not a free involution");
  for (const auto& v : sk.vertices())
    if (v.size() % 3 != 0)
      throw InvalidSkeleton("vertex at end " + std::to_string(v[0]) + " has valency not divisible by 3");
  if (!is_connected(sk)) throw InvalidSkeleton("skeleton is not connected");
  if (static_cast<int>(l.head.size()) != sk.n_edges() || l.label.size() != l.head.size())
    throw InvalidSkeleton("heads or labels do not match the edges");
  for (int e = 0; e < sk.n_edges(); ++e) {
    if (sk.edge_of(l.head[e]) != e) throw InvalidSkeleton("head end is not on its edge");
    if (l.label[e].det() != 1) throw InvalidSkeleton("edge label is not in SL(2,Z)");
  }
}

inline LabelledSkeleton from_skeleton(const Skeleton& sk, const Orientation& o) {
  return {sk, o.head, std::vector<GL2>(sk.n_edges(), mat_Y()), {}};
}

// Rebuilds canonical edge data from per-end descriptions.
inline LabelledSkeleton assemble(Perm op, Perm nx, const std::vector<char>& head_at,
                                 const std::vector<GL2>& label_at, std::vector<ShadedDisk> disks) {
  LabelledSkeleton l;
  l.graph = Skeleton(std::move(op), std::move(nx));
  for (const auto& e : l.graph.edges()) {
    int h = head_at[e[0]] ? e[0] : e[1];
    l.head.push_back(h);
    l.label.push_back(label_at[h]);
  }
  l.disks = std::move(disks);
  validate(l);
  return l;
}

// Inserts a shaded disk carrying a fiber of the given kind on the edge at
// `site`.  One-edge kinds split the edge by a new vertex with a pendant
// vertex carrying a loop; two-edge kinds split it by a bigon.  For the
// two-edge kinds, `choice` selects the labelling: A2* gets (X, X) or
// (-X, -X), E8 gets (X, -X) or (-X, X).
inline LabelledSkeleton insert_E_fiber(const LabelledSkeleton& l, int site, EKind kind, int choice = -1) {
  const Skeleton& sk = l.graph;
  if (site < 0 || site >= sk.n_ends()) throw std::invalid_argument("site end out of range");
  if (ekind_two_edges(kind) && choice != 0 && choice != 1)
    throw std::invalid_argument("this fiber kind needs an explicit labelling choice");
  const int n = sk.n_ends();
  Perm op = sk.op_perm(), nx = sk.nx_perm();
  std::vector<char> head_at(n + 6, 0);
  std::vector<GL2> label_at(n + 6);
  for (int e = 0; e < sk.n_edges(); ++e) {
    head_at[l.head[e]] = 1;
    label_at[l.head[e]] = l.label[e];
  }
  const int a = site, b = sk.op(site);
  const bool head_b = l.is_head(b);
  const GL2 old = l.label_of(site);
  op.resize(n + 6);
  nx.resize(n + 6);
  auto link = [&](int x, int y) {
    op[x] = y;
    op[y] = x;
  };
  auto mark = [&](int h, const GL2& L) {
    head_at[h] = 1;
    label_at[h] = L;
  };
  head_at[a] = head_at[b] = 0;
  const int p0 = n, p1 = n + 1, p2 = n + 2, q0 = n + 3, q1 = n + 4, q2 = n + 5;
  nx[p0] = p1, nx[p1] = p2, nx[p2] = p0;
  nx[q0] = q1, nx[q1] = q2, nx[q2] = q0;
  std::vector<ShadedDisk> disks = l.disks;
  const GL2 X = mat_X();
  if (!ekind_two_edges(kind)) {
    // a -- p0 (p) p1 -- b, pendant p2 -- q0, loop q1 -- q2
    link(a, p0);
    link(p1, b);
    link(p2, q0);
    link(q1, q2);
    mark(head_b ? p0 : a, old);
    mark(head_b ? b : p1, old);
    mark(q0, mat_Y());
    GL2 L;
    switch (kind) {
      // the disk monodromy is X L: order 6 (type II) needs L = -X and
      // order 3 (type IV*) needs L = X
      case EKind::A0ss: L = -X; break;
      case EKind::E6: L = X; break;
      case EKind::A1s: L = -(X * mat_Y() * X); break;
      case EKind::E7: L = X * mat_Y() * X; break;
      default: throw std::invalid_argument("unknown fiber kind");
    }
    mark(q2, L);
    disks.push_back({q1, kind});
  } else {
    // a -- p0 (p) ... bigon p1 -- q2, p2 -- q1 ... (q) q0 -- b
    link(a, p0);
    link(q0, b);
    link(p1, q2);
    link(p2, q1);
    mark(head_b ? p0 : a, old);
    mark(head_b ? b : q0, old);
    GL2 L1 = choice == 0 ? X : -X;
    GL2 L2 = kind == EKind::A2s ? L1 : -L1;
    mark(q2, L1);
    mark(p2, L2);
    disks.push_back({p1, kind});
  }
  return assemble(std::move(op), std::move(nx), head_at, label_at, std::move(disks));
}

inline GL2 labelled_step_lift(const LabelledSkeleton& l, Step s, int to) {
  switch (s) {
    case Step::Nx: return -mat_X().inverse();
    case Step::NxInv: return -mat_X();
    case Step::Op: {
      const GL2& L = l.label_of(to);
      return l.is_head(to) ? -L : -L.inverse();
    }
  }
  throw std::logic_error("bad step");
}

inline GL2 labelled_monodromy(const LabelledSkeleton& l, const Path& p) {
  auto ends = path_ends(l.graph, p);
  GL2 m;
  for (std::size_t i = 0; i < p.steps.size(); ++i) m = labelled_step_lift(l, p.steps[i], ends[i + 1]) * m;
  return m;
}

inline Chain labelled_transport(const LabelledSkeleton& l, const Path& p, const HVec& h) {
  auto ends = path_ends(l.graph, p);
  Chain c{{p.start, h}};
  HVec cur = h;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    cur = labelled_step_lift(l, p.steps[i], ends[i + 1]) * cur;
    c.push_back({ends[i + 1], cur});
  }
  return c;
}

inline IntMatrix generalized_boundary(const LabelledSkeleton& l) {
  validate(l);
  const Skeleton& sk = l.graph;
  const int V = sk.n_vertices(), E = sk.n_edges();
  IntMatrix B(2 * V + 2 * E, 2 * sk.n_ends());
  for (int v = 0; v < V; ++v) {
    GL2 p;
    for (int e : sk.vertices()[v]) {
      detail::put_block(B, 2 * v, 2 * e, p);
      p = mat_X() * p;
    }
  }
  for (int e = 0; e < E; ++e) {
    int hd = l.head[e], tl = sk.op(hd);
    detail::put_block(B, 2 * V + 2 * e, 2 * hd, GL2{});
    detail::put_block(B, 2 * V + 2 * e, 2 * tl, l.label[e]);
  }
  return B;
}

// Polarization of -sum_alpha sum_{d=1}^{n-2} (n-d-1)/n h_alpha . X^d h_{nx^d alpha}.
inline RatMatrix generalized_form(const Skeleton& sk) {
  const std::size_t N = 2 * sk.n_ends();
  RatMatrix P(N, N);
  IntMatrix J = mat_J();
  for (int a = 0; a < sk.n_ends(); ++a) {
    const int n = static_cast<int>(sk.vertices()[sk.vertex_of(a)].size());
    GL2 Xd;
    int b = a;
    for (int d = 1; d <= n - 2; ++d) {
      Xd = mat_X() * Xd;
      b = sk.nx(b);
      IntMatrix blk = J * Xd.matrix();
      Rat c = ratio(n - d - 1, n);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) P(2 * a + i, 2 * b + j) += c * blk(i, j);
    }
  }
  RatMatrix F(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) F(i, j) = -(P(i, j) + P(j, i)) / 2;
  return F;
}

inline HGamma generalized_h_gamma(const LabelledSkeleton& l) {
  HGamma h;
  h.basis = integer_kernel(generalized_boundary(l));
  RatMatrix B = to_rational(h.basis);
  RatMatrix g = B.transpose() * generalized_form(l.graph) * B;
  h.gram = to_integer(g);
  return h;
}

struct GeneralizedFiber {
  Region region;
  GL2 monodromy;
  std::string name;
  int euler = 0, milnor = 0;
  bool stable = false;
  std::optional<EKind> disk;
  IntLattice root_lattice;
};

inline bool conjugate_by_power_of_X(const GL2& a, const GL2& b) {
  GL2 c;
  for (int j = 0; j < 3; ++j, c = mat_X() * c)
    if (c * a * c.inverse() == b) return true;
  return false;
}

// Checks that the monodromy of a shaded disk has the shape the fiber kind
// prescribes.  The order-4 kinds are compared up to conjugation by X^j.
inline bool disk_monodromy_matches(EKind kind, const GL2& m) {
  const GL2 X = mat_X(), Y = mat_Y();
  const GL2 XYXi = X * Y * X.inverse();
  switch (kind) {
    case EKind::A0ss:
    case EKind::E6:
    case EKind::A2s:
    case EKind::E8:
      return m == X || m == -X || m == X.inverse() || m == -X.inverse();
    case EKind::A1s:
    case EKind::E7:
      return conjugate_by_power_of_X(m, XYXi) || conjugate_by_power_of_X(m, -XYXi);
  }
  return false;
}

inline std::vector<GeneralizedFiber> generalized_fibers(const LabelledSkeleton& l) {
  validate(l);
  std::vector<GeneralizedFiber> out;
  for (auto& r : regions(l.graph)) {
    GeneralizedFiber f;
    f.monodromy = labelled_monodromy(l, boundary_path(r));
    for (const auto& d : l.disks)
      if (std::find(r.ends.begin(), r.ends.end(), d.end) != r.ends.end()) f.disk = d.kind;
    const GL2& m = f.monodromy;
    f.stable = m.trace() == 2;
    if (f.disk) {
      if (!disk_monodromy_matches(*f.disk, m)) throw InternalError("unexpected shaded disk monodromy");
      f.name = ekind_name(*f.disk);
      f.euler = ekind_euler(*f.disk);
      f.milnor = ekind_milnor(*f.disk);
      f.root_lattice = ekind_root_lattice(*f.disk);
    } else if (m.trace() == 2 || m.trace() == -2) {
      int sign = m.trace() == 2 ? 1 : -1;
      Int c = content({m.a - sign, m.b, m.c, m.d - sign});
      int n = static_cast<int>(c.get_si());
      FiberType t{sign > 0 ? (n == 1 ? FiberKind::A0Star : FiberKind::A) : FiberKind::D, n};
      f.name = t.name();
      f.euler = t.euler();
      f.milnor = t.milnor();
      f.root_lattice = sign > 0 && n == 0 ? standard_lattice(Family::A, 0) : t.root_lattice();
      if (sign > 0 && n == 0) f.name = "I0", f.euler = 0, f.milnor = 0;
    } else {
      throw InternalError("region monodromy is neither parabolic nor a shaded disk");
    }
    f.region = std::move(r);
    out.push_back(std::move(f));
  }
  return out;
}

struct GeneralizedInvariants {
  HGamma h;
  IntLattice transcendental;  // H_Gamma / ker, LLL-reduced when definite
  Inertia inertia;
  AbelianGroup mw;
  std::vector<GeneralizedFiber> fibers;
  int euler = 0, milnor = 0, genus = 0;
  bool experimental = false;
};

inline GeneralizedInvariants generalized_invariants(const LabelledSkeleton& l) {
  GeneralizedInvariants gi;
  gi.experimental = l.experimental();
  gi.fibers = generalized_fibers(l);
  for (const auto& f : gi.fibers) {
    gi.euler += f.euler;
    gi.milnor += f.milnor;
  }
  gi.genus = genus(l.graph);
  gi.h = generalized_h_gamma(l);
  auto split = radical_and_quotient(IntLattice(gi.h.gram));
  gi.transcendental = split.quotient;
  if (split.quotient.rank() > 0 && is_positive_definite(split.quotient.gram))
    gi.transcendental = lll_reduce(split.quotient).reduced;
  gi.inertia = inertia(gi.h.gram);
  IntMatrix B = generalized_boundary(l);
  AbelianGroup dual = cokernel_invariants(B).torsion_part();
  AbelianGroup ext = cokernel_invariants(B.transpose()).torsion_part();
  if (!(dual == ext)) throw InternalError("Mordell-Weil routes disagree");
  gi.mw = dual;
  return gi;
}

struct GeneralizedCycles {
  std::vector<Chain> cycles;
  IntMatrix matrix;
};

// Fundamental cycles of the stable regions, checked to span the radical.
inline GeneralizedCycles generalized_kernel_cycles(const LabelledSkeleton& l) {
  GeneralizedCycles gc;
  for (const auto& f : generalized_fibers(l)) {
    if (!f.stable) continue;
    const GL2& m = f.monodromy;
    // primitive vector in the kernel of m - 1
    IntMatrix row = (m.matrix() - IntMatrix::identity(2));
    IntMatrix K = integer_kernel(row);
    require(K.cols() >= 1, "stable region without invariant vector");
    HVec h{K(0, 0), K(1, 0)};
    Chain c = labelled_transport(l, boundary_path(f.region), h);
    c.push_back({f.region.ends.front(), {-h[0], -h[1]}});
    gc.cycles.push_back(std::move(c));
  }
  const Skeleton& sk = l.graph;
  gc.matrix = IntMatrix(2 * sk.n_ends(), gc.cycles.size());
  for (std::size_t j = 0; j < gc.cycles.size(); ++j) {
    auto v = chain_vector(sk, gc.cycles[j]);
    for (std::size_t i = 0; i < v.size(); ++i) gc.matrix(i, j) = v[i];
  }
  if (!(generalized_boundary(l) * gc.matrix).is_zero()) throw InternalError("kernel cycle is not closed");
  auto h = generalized_h_gamma(l);
  if (!same_column_lattice(gc.matrix, h.basis * integer_kernel(h.gram)))
    throw InternalError("kernel cycles do not span the radical");
  return gc;
}

}  // namespace rl
