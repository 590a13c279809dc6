#pragma once

// The tripod calculus: relations on H (x) Gamma, the lattice H_Gamma of
// solutions with its intersection form, and what can be read off it.

#include <string>
#include <vector>

#include "ribbonlattice/exact_algebra.hpp"
#include "ribbonlattice/lattice.hpp"
#include "ribbonlattice/skeleton.hpp"

namespace rl {

namespace detail {

inline void put_block(IntMatrix& M, std::size_t r, std::size_t c, const GL2& g, int sign = 1) {
  M(r, c) += sign * g.a;
  M(r, c + 1) += sign * g.b;
  M(r + 1, c) += sign * g.c;
  M(r + 1, c + 1) += sign * g.d;
}

inline void put_block(IntMatrix& M, std::size_t r, std::size_t c, const IntMatrix& g) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) M(r + i, c + j) += g(i, j);
}

}  // namespace detail

struct TripodComplex {
  IntMatrix boundary;   // rows: vertex blocks then edge blocks
  RatMatrix form;       // on H (x) Gamma, end e in columns 2e, 2e+1
  std::vector<int> marking;  // first end of each vertex
};

// Sum over ends of -(1/3) h_alpha . X h_{nx alpha}, polarized.  Returned
// multiplied by 6 so that it stays integral.
inline IntMatrix form_times_six(const Skeleton& sk) {
  const std::size_t n = 2 * sk.n_ends();
  IntMatrix JX = mat_J() * mat_X().matrix();
  IntMatrix P(n, n);
  for (int e = 0; e < sk.n_ends(); ++e) detail::put_block(P, 2 * e, 2 * sk.nx(e), JX);
  return -(P + P.transpose());
}

// -sum_v h_{m1} . X h_{m2}, polarized, times two.
inline IntMatrix marked_form_times_two(const Skeleton& sk, const std::vector<int>& marking) {
  const std::size_t n = 2 * sk.n_ends();
  if (static_cast<int>(marking.size()) != sk.n_vertices())
    throw std::invalid_argument("marking needs one end per vertex");
  IntMatrix JX = mat_J() * mat_X().matrix();
  IntMatrix P(n, n);
  for (int v = 0; v < sk.n_vertices(); ++v) {
    int m1 = marking[v];
    if (sk.vertex_of(m1) != v) throw std::invalid_argument("marking end not at its vertex");
    detail::put_block(P, 2 * m1, 2 * sk.nx(m1), JX);
  }
  return -(P + P.transpose());
}

inline std::vector<int> default_marking(const Skeleton& sk) {
  std::vector<int> m;
  for (const auto& v : sk.vertices()) m.push_back(v.front());
  return m;
}

inline TripodComplex boundary_matrix(const Skeleton& sk, const Orientation& o) {
  validate(sk);
  if (static_cast<int>(o.head.size()) != sk.n_edges())
    throw InvalidSkeleton("orientation does not match the skeleton");
  const int V = sk.n_vertices(), E = sk.n_edges();
  TripodComplex tc;
  tc.boundary = IntMatrix(2 * V + 2 * E, 2 * sk.n_ends());
  const GL2 X = mat_X();
  for (int v = 0; v < V; ++v) {
    const auto& ends = sk.vertices()[v];
    GL2 p;
    for (int e : ends) {
      detail::put_block(tc.boundary, 2 * v, 2 * e, p);
      p = X * p;
    }
    tc.marking.push_back(ends.front());
  }
  for (int e = 0; e < E; ++e) {
    int hd = o.head[e], tl = sk.op(hd);
    detail::put_block(tc.boundary, 2 * V + 2 * e, 2 * hd, GL2{});
    detail::put_block(tc.boundary, 2 * V + 2 * e, 2 * tl, mat_Y());
  }
  IntMatrix six = form_times_six(sk);
  tc.form = RatMatrix(six.rows(), six.cols());
  for (std::size_t i = 0; i < six.rows(); ++i)
    for (std::size_t j = 0; j < six.cols(); ++j) tc.form(i, j) = ratio(six(i, j), 6);
  return tc;
}

struct HGamma {
  IntMatrix basis;  // columns in H (x) Gamma
  IntMatrix gram;
};

// Restricts (1/d) F to the columns of B, insisting on integrality.
inline IntMatrix restricted_gram(const IntMatrix& F, const Int& d, const IntMatrix& B) {
  IntMatrix g = B.transpose() * F * B;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) % d != 0) throw InternalError("restricted Gram is not integral");
      g(i, j) /= d;
    }
  return g;
}

inline HGamma h_gamma(const Skeleton& sk, const Orientation& o) {
  auto tc = boundary_matrix(sk, o);
  HGamma h;
  h.basis = integer_kernel(tc.boundary);
  h.gram = restricted_gram(form_times_six(sk), 6, h.basis);
  if (inertia(h.gram).negative != 0) throw InternalError("H_Gamma form is not semidefinite");
  return h;
}

inline IntLattice transcendental_lattice(const Skeleton& sk, const Orientation& o) {
  auto h = h_gamma(sk, o);
  auto split = radical_and_quotient(IntLattice(h.gram));
  if (!is_positive_definite(split.quotient.gram) && split.quotient.rank() > 0)
    throw InternalError("transcendental lattice is not positive definite");
  if (split.quotient.rank() == 0) return split.quotient;
  return lll_reduce(split.quotient).reduced;
}

// Torsion of H*_Gamma = Z^{cols} / (rows of the boundary), checked against
// the torsion of Coker(boundary) itself.
inline AbelianGroup mordell_weil(const Skeleton& sk, const Orientation& o) {
  auto tc = boundary_matrix(sk, o);
  AbelianGroup dual = cokernel_invariants(tc.boundary).torsion_part();
  AbelianGroup ext = cokernel_invariants(tc.boundary.transpose()).torsion_part();
  if (!(dual == ext)) throw InternalError("Mordell-Weil routes disagree");
  return dual;
}

// Coordinate change on H (x) Gamma matching reorient(sk, o, vset): the
// ends at flipped vertices change sign.  It carries H_Gamma onto the
// H_Gamma of the new orientation and preserves the form.
inline IntMatrix reorientation_map(const Skeleton& sk, const std::vector<int>& vset) {
  std::vector<char> in(sk.n_vertices(), 0);
  for (int v : vset) in.at(v) = 1;
  IntMatrix D = IntMatrix::identity(2 * sk.n_ends());
  for (int e = 0; e < sk.n_ends(); ++e)
    if (in[sk.vertex_of(e)]) D(2 * e, 2 * e) = D(2 * e + 1, 2 * e + 1) = -1;
  return D;
}

struct KernelCycles {
  std::vector<Chain> cycles;
  std::vector<int> regions;  // index of the region each cycle comes from
  IntMatrix matrix;          // cycles as columns in H (x) Gamma
};

inline KernelCycles kernel_cycles(const Skeleton& sk, const Orientation& o) {
  auto fibers = fiber_types(sk, o);
  auto tc = boundary_matrix(sk, o);
  KernelCycles kc;
  for (std::size_t i = 0; i < fibers.regions.size(); ++i) {
    const auto& rf = fibers.regions[i];
    if (rf.sign < 0) continue;
    kc.cycles.push_back(fundamental_cycle(sk, o, boundary_path(rf.region), HVec{1, 0}));
    kc.regions.push_back(static_cast<int>(i));
  }
  kc.matrix = IntMatrix(2 * sk.n_ends(), kc.cycles.size());
  for (std::size_t j = 0; j < kc.cycles.size(); ++j) {
    auto v = chain_vector(sk, kc.cycles[j]);
    for (std::size_t i = 0; i < v.size(); ++i) kc.matrix(i, j) = v[i];
  }
  if (!(tc.boundary * kc.matrix).is_zero()) throw InternalError("kernel cycle is not closed");
  auto h = h_gamma(sk, o);
  IntMatrix rad = h.basis * integer_kernel(h.gram);
  if (!same_column_lattice(kc.matrix, rad))
    throw InternalError("kernel cycles do not span the radical");
  return kc;
}

// rowspan(B) inside rowspan(A)
inline bool row_span_contains(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols() != B.cols()) return false;
  IntMatrix both(A.rows() + B.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) both(i, j) = A(i, j);
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) both(A.rows() + i, j) = B(i, j);
  auto h1 = hermite_normal_form(A, false), h2 = hermite_normal_form(both, false);
  return h1.H.block(0, 0, h1.rank(), A.cols()) == h2.H.block(0, 0, h2.rank(), A.cols());
}

struct RegionCohomology {
  AbelianGroup group;    // H* (x) dR modulo u ~ m*u
  IntMatrix relations;   // rows, over the 2n path positions
  IntMatrix restriction; // dual generators of H (x) Gamma -> path positions
};

inline RegionCohomology region_cohomology(const Skeleton& sk, const Orientation& o,
                                          const Region& R) {
  Path p = boundary_path(R);
  auto ends = path_ends(sk, p);
  const std::size_t L = p.steps.size();
  RegionCohomology rc;
  rc.relations = IntMatrix(2 * L, 2 * L);
  // u at position i+1 is identified with u m_i at position i
  for (std::size_t i = 0; i < L; ++i) {
    GL2 m = step_lift(sk, o, p.steps[i], ends[i + 1]);
    IntMatrix mm = m.matrix();
    std::size_t next = (i + 1) % L;
    for (std::size_t c = 0; c < 2; ++c) {
      rc.relations(2 * i + c, 2 * next + c) += 1;
      for (std::size_t d = 0; d < 2; ++d) rc.relations(2 * i + c, 2 * i + d) -= mm(c, d);
    }
  }
  rc.group = cokernel_invariants(rc.relations);
  rc.restriction = IntMatrix(2 * sk.n_ends(), 2 * L);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t c = 0; c < 2; ++c) rc.restriction(2 * ends[i] + c, 2 * i + c) += 1;

  GL2 M = monodromy(sk, o, p);
  IntMatrix Mi = M.matrix() - IntMatrix::identity(2);
  if (!(cokernel_invariants(Mi).torsion_part() == rc.group.torsion_part()))
    throw InternalError("region cohomology disagrees with Coker(m* - id)");
  auto tc = boundary_matrix(sk, o);
  if (!row_span_contains(rc.relations, tc.boundary * rc.restriction))
    throw InternalError("restriction does not respect the relations");
  return rc;
}

// The sum over regions of the torsion of the region cohomology, against the
// sum of the discriminant groups of the fiber root lattices.
struct DiscriminantShadow {
  AbelianGroup from_regions, from_fibers;
  bool holds() const { return from_regions == from_fibers; }
};

inline DiscriminantShadow discriminant_shadow(const Skeleton& sk, const Orientation& o) {
  auto fs = fiber_types(sk, o);
  std::vector<AbelianGroup> a, b;
  for (const auto& rf : fs.regions) {
    a.push_back(region_cohomology(sk, o, rf.region).group.torsion_part());
    auto R = rf.type.root_lattice();
    if (R.rank()) b.push_back(discriminant(R).group);
  }
  return {group_sum(a), group_sum(b)};
}

struct SurfaceInvariants {
  int k = 0, t = 0, g = 0, r = 0;
  int chi = 0, sigma_plus = 0, sigma_minus = 0, mu = 0, rank_T = 0, rank_ker = 0;

  static SurfaceInvariants from_counts(int k, int t, int g) {
    SurfaceInvariants s;
    s.k = k;
    s.t = t;
    s.g = g;
    s.r = k + 2 - 2 * g;
    s.chi = 6 * (k + t);
    s.sigma_plus = k + t + 2 * g - 1;
    s.sigma_minus = 5 * k + 5 * t + 2 * g - 1;
    s.mu = 2 * g + 5 * k + 5 * t - 2;
    s.rank_T = k + t + 2 * g - 2;
    s.rank_ker = k - t + 2 - 2 * g;
    return s;
  }
};

inline SurfaceInvariants surface_invariants(const Skeleton& sk, const Orientation& o) {
  auto f = fiber_types(sk, o);
  auto s = SurfaceInvariants::from_counts(f.k, f.t, f.genus);
  if (static_cast<int>(f.regions.size()) != s.r) throw InternalError("region count mismatch");
  if (f.total_milnor() != s.mu) throw InternalError("Milnor number mismatch");
  auto h = h_gamma(sk, o);
  auto in = inertia(h.gram);
  if (static_cast<int>(h.basis.cols()) != 2 * s.k) throw InternalError("rank H_Gamma != 2k");
  if (in.zero != s.rank_ker || in.positive != s.rank_T)
    throw InternalError("H_Gamma inertia disagrees with the counts");
  return s;
}

}  // namespace rl
