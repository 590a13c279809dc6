#pragma once

// Integral and rational lattices given by Gram matrices.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ribbonlattice/exact_algebra.hpp"

namespace rl {

struct IntLattice {
  IntMatrix gram;
  std::string label;

  IntLattice() = default;
  explicit IntLattice(IntMatrix g, std::string l = {}) : gram(std::move(g)), label(std::move(l)) {
    if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  }
  std::size_t rank() const { return gram.rows(); }
  Int det() const { return determinant(gram); }
  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram(i, i) % 2 != 0) return false;
    return true;
  }
};

struct RatLattice {
  RatMatrix gram;
  std::size_t rank() const { return gram.rows(); }
};

enum class Family { A, D, E, U, V, W, Diagonal };

// Root lattices are positive definite here.  D_n for n < 4 follows the
// even-sum sublattice of Z^n: D_0 = 0, D_1 = [4], D_2 = [2]+[2], D_3 = A_3.
inline IntLattice standard_lattice(Family f, int n, std::vector<Int> diag = {}) {
  if (n < 0) throw std::invalid_argument("negative lattice rank");
  auto tridiag = [](int m) {
    IntMatrix g(m, m);
    for (int i = 0; i < m; ++i) {
      g(i, i) = 2;
      if (i + 1 < m) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
  };
  switch (f) {
    case Family::A:
      return IntLattice(tridiag(n), "A" + std::to_string(n));
    case Family::D: {
      if (n == 0) return IntLattice(IntMatrix(0, 0), "D0");
      if (n == 1) return IntLattice(IntMatrix{{4}}, "D1");
      if (n == 2) return IntLattice(IntMatrix{{2, 0}, {0, 2}}, "D2");
      // chain 0 - 1 - ... - (n-2), extra node n-1 attached to n-3
      IntMatrix g = tridiag(n);
      g(n - 2, n - 1) = g(n - 1, n - 2) = 0;
      g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
      return IntLattice(g, "D" + std::to_string(n));
    }
    case Family::E: {
      if (n < 6 || n > 8) throw std::invalid_argument("E_n needs 6 <= n <= 8");
      // chain 0 - ... - (n-2), extra node n-1 attached to node 2
      IntMatrix g = tridiag(n);
      g(n - 2, n - 1) = g(n - 1, n - 2) = 0;
      g(2, n - 1) = g(n - 1, 2) = -1;
      return IntLattice(g, "E" + std::to_string(n));
    }
    case Family::U:
      if (n != 2) throw std::invalid_argument("U has rank 2");
      return IntLattice(IntMatrix{{0, 1}, {1, 0}}, "U");
    case Family::V:
      return IntLattice(IntMatrix::identity(n), "V" + std::to_string(n));
    case Family::W: {
      if (n < 1) throw std::invalid_argument("W_n needs n >= 1");
      IntMatrix g = IntMatrix::identity(n);
      g(n - 1, n - 1) = 0;
      return IntLattice(g, "W" + std::to_string(n));
    }
    case Family::Diagonal:
      if (static_cast<int>(diag.size()) != n)
        throw std::invalid_argument("diagonal lattice needs n entries");
      return IntLattice(diagonal_matrix(diag), "diag");
  }
  throw std::invalid_argument("unknown lattice family");
}

inline IntLattice direct_sum(const IntLattice& a, const IntLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  std::string l = a.label.empty() ? b.label : b.label.empty() ? a.label : a.label + "+" + b.label;
  return IntLattice(g, l);
}

// Restriction of the form to the sublattice spanned by the columns of B.
inline IntLattice sublattice(const IntLattice& L, const IntMatrix& B) {
  return IntLattice(B.transpose() * L.gram * B);
}

struct RadicalSplit {
  IntMatrix radical;     // columns span {x : G x = 0}
  IntMatrix complement;  // columns complete the radical to a basis
  IntLattice quotient;   // form on L / radical, via the complement
};

inline RadicalSplit radical_and_quotient(const IntLattice& L) {
  const std::size_t n = L.rank();
  IntMatrix K = integer_kernel(L.gram);
  const std::size_t r = K.cols();
  // W K = [I; 0] with W unimodular because K is saturated; the last
  // columns of W^{-1} complete K.
  auto h = hermite_normal_form(K);
  require(h.rank() == r, "radical basis is not independent");
  for (std::size_t i = 0; i < r; ++i) require(h.H(i, i) == 1, "radical is not saturated");
  IntMatrix Winv = unimodular_inverse(h.U);
  IntMatrix C(n, n - r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = r; j < n; ++j) C(i, j - r) = Winv(i, j);
  return {K, C, sublattice(L, C)};
}

inline std::vector<Int> functional_of(const IntMatrix& row) {
  std::vector<Int> f;
  for (std::size_t j = 0; j < row.cols(); ++j) f.push_back(row(0, j));
  return f;
}

inline IntMatrix row_of(const std::vector<Int>& f) {
  IntMatrix r(1, f.size());
  for (std::size_t j = 0; j < f.size(); ++j) r(0, j) = f[j];
  return r;
}

struct SublatticeResult {
  IntLattice lattice;
  IntMatrix basis;  // columns, in the coordinates of the ambient lattice
};

// {x : f(x) = 0}
inline SublatticeResult functional_kernel(const IntLattice& L, const std::vector<Int>& f) {
  if (f.size() != L.rank()) throw std::invalid_argument("functional has wrong length");
  IntMatrix K = integer_kernel(row_of(f));
  return {sublattice(L, K), K};
}

// {x : <x, v> = 0}
inline SublatticeResult orthogonal_complement(const IntLattice& L, const std::vector<Int>& v) {
  if (v.size() != L.rank()) throw std::invalid_argument("vector has wrong length");
  IntMatrix vc(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) vc(i, 0) = v[i];
  IntMatrix gv = L.gram * vc;
  return functional_kernel(L, functional_of(gv.transpose()));
}

// Gram + c f f^T
inline RatLattice modified_form(const IntLattice& L, const std::vector<Int>& f, const Rat& c) {
  if (f.size() != L.rank()) throw std::invalid_argument("functional has wrong length");
  RatLattice out{to_rational(L.gram)};
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) out.gram(i, j) += c * f[i] * f[j];
  return out;
}

struct CongruenceResult {
  IntLattice lattice;
  IntMatrix basis;
  Int index;
};

// {x : f(x) = 0 mod m}.  Throws if the restricted form is not integral.
inline CongruenceResult congruence_sublattice(const RatLattice& L, const std::vector<Int>& f,
                                              const Int& m) {
  const std::size_t n = L.rank();
  if (f.size() != n) throw std::invalid_argument("functional has wrong length");
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  // x with f(x) + m y = 0 for some y
  IntMatrix row(1, n + 1);
  for (std::size_t j = 0; j < n; ++j) row(0, j) = f[j];
  row(0, n) = m;
  IntMatrix K = integer_kernel(row);
  IntMatrix proj = K.block(0, 0, n, K.cols());
  auto h = hermite_normal_form(proj.transpose(), false);
  IntMatrix B = h.H.block(0, 0, h.rank(), n).transpose();
  if (B.cols() != n) throw InternalError("congruence sublattice lost rank");
  RatMatrix g = to_rational(B.transpose()) * L.gram * to_rational(B);
  IntMatrix gi;
  try {
    gi = to_integer(g);
  } catch (const InternalError&) {
    throw std::domain_error("congruence sublattice is not integral");
  }
  return {IntLattice(gi), B, abs(determinant(B))};
}

struct DiscriminantForm {
  AbelianGroup group;
  std::vector<RatMatrix> generators;  // dual vectors, as columns
  RatMatrix bilinear;                 // values mod 1 in [0,1)
  std::optional<std::vector<Rat>> quadratic;  // mod 2 in [0,2), even lattices only
};

inline Rat mod_rational(const Rat& x, const Int& m) {
  Rat q = x / m;
  Int f = detail::floor_div(q.get_num(), q.get_den());
  Rat r = x - Rat(f * m);
  r.canonicalize();
  return r;
}

// A^v / A for a nondegenerate lattice A.
inline DiscriminantForm discriminant(const IntLattice& L) {
  if (L.rank() > 0 && L.det() == 0) throw std::domain_error("degenerate lattice");
  auto s = smith_normal_form(L.gram);
  DiscriminantForm d;
  d.group = group_from_diagonal(L.rank(), s.diagonal);
  // G = U^{-1} S V^{-1}; the dual lattice is G^{-1} Z^n, and its quotient by
  // Z^n has generators V e_i / d_i.
  RatMatrix V = to_rational(s.V);
  std::vector<RatMatrix> gens;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    if (s.diagonal[i] == 1) continue;
    RatMatrix g(L.rank(), 1);
    for (std::size_t r = 0; r < L.rank(); ++r) g(r, 0) = V(r, i) / Rat(s.diagonal[i]);
    gens.push_back(g);
  }
  const std::size_t m = gens.size();
  RatMatrix G = to_rational(L.gram);
  d.bilinear = RatMatrix(m, m);
  std::vector<Rat> q(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat v = (gens[i].transpose() * G * gens[j])(0, 0);
      d.bilinear(i, j) = mod_rational(v, 1);
      if (i == j) q[i] = mod_rational(v, 2);
    }
  if (L.is_even()) d.quadratic = q;
  d.generators = std::move(gens);
  return d;
}

struct LllResult {
  IntLattice reduced;
  IntMatrix transform;  // reduced.gram == T^T G T
};

// LLL reduction (delta = 3/4) of a positive definite Gram matrix, carried
// out with exact rational Gram-Schmidt data.
inline LllResult lll_reduce(const IntLattice& L) {
  const std::size_t n = L.rank();
  if (!is_positive_definite(L.gram)) throw std::domain_error("LLL needs a positive definite form");
  IntMatrix G = L.gram, T = IntMatrix::identity(n);
  if (n <= 1) return {IntLattice(G, L.label), T};
  RatMatrix mu(n, n);
  std::vector<Rat> r(n);
  auto gso = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = G(i, j);
        for (std::size_t l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * r[l];
        mu(i, j) = s / r[j];
      }
      Rat s = G(i, i);
      for (std::size_t l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * r[l];
      r[i] = s;
    }
  };
  // b_k -= q b_j
  auto sub = [&](std::size_t k, std::size_t j, const Int& q) {
    detail::row_submul(G, k, j, q);
    detail::col_submul(G, k, j, q);
    detail::col_submul(T, k, j, q);
    for (std::size_t l = 0; l < j; ++l) mu(k, l) -= q * mu(j, l);
    mu(k, j) -= q;
  };
  const Rat delta(3, 4);
  std::size_t k = 1;
  gso();
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Int q = round_nearest(mu(k, jj));
      if (q != 0) sub(k, jj, q);
    }
    if (r[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * r[k - 1]) {
      G.swap_rows(k, k - 1);
      G.swap_cols(k, k - 1);
      T.swap_cols(k, k - 1);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  require(T.transpose() * L.gram * T == G, "LLL transform check");
  return {IntLattice(G, L.label), T};
}

namespace detail {

// All x with x^T G x <= bound, G positive definite, via exact Fincke-Pohst.
inline std::vector<std::vector<Int>> short_vectors(const IntMatrix& G, const Int& bound) {
  const std::size_t n = G.rows();
  // G = L D L^T with q(x) = sum_i D_i (x_i + sum_{j>i} c_ij x_j)^2
  RatMatrix c(n, n);
  std::vector<Rat> D(n);
  {
    RatMatrix A = to_rational(G);
    for (std::size_t i = n; i-- > 0;) {
      D[i] = A(i, i);
      for (std::size_t j = 0; j < i; ++j) c(j, i) = A(j, i) / D[i];
      for (std::size_t a = 0; a < i; ++a)
        for (std::size_t b = 0; b < i; ++b) A(a, b) -= c(a, i) * D[i] * c(b, i);
    }
  }
  // now q(x) = sum_i D_i (x_i + sum_{j<i} c(j,i) x_j)^2 ; enumerate x_0 first
  std::vector<std::vector<Int>> out;
  std::vector<Int> x(n);
  std::vector<Rat> rem(n + 1);
  const Rat B(bound);
  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t i, const Rat& budget) {
    if (i == n) {
      out.push_back(x);
      return;
    }
    Rat centre = 0;
    for (std::size_t j = 0; j < i; ++j) centre -= c(j, i) * x[j];
    Int mid = round_nearest(centre);
    auto cost = [&](const Int& v) -> Rat {
      Rat d = Rat(v) - centre;
      return D[i] * d * d;
    };
    for (Int v = mid; cost(v) <= budget; --v) {
      x[i] = v;
      rec(i + 1, budget - cost(v));
    }
    for (Int v = mid + 1; cost(v) <= budget; ++v) {
      x[i] = v;
      rec(i + 1, budget - cost(v));
    }
  };
  rec(0, B);
  return out;
}

}  // namespace detail

// Every x with x^T G x == norm.
inline std::vector<std::vector<Int>> vectors_of_norm(const IntLattice& L, const Int& norm) {
  std::vector<std::vector<Int>> out;
  for (auto& v : detail::short_vectors(L.gram, norm)) {
    Int q = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) q += v[i] * L.gram(i, j) * v[j];
    if (q == norm) out.push_back(std::move(v));
  }
  return out;
}

struct IsometryResult {
  bool isometric = false;
  // G2' == U^T G1' U on the nondegenerate quotients
  std::optional<IntMatrix> witness;
  std::string reason;
};

constexpr std::size_t kMaxIsometryRank = 24;

// Decides whether two positive semidefinite lattices are isometric after
// removing their radicals.  Exhaustive, so only meant for small ranks.
inline IsometryResult is_isometric(const IntLattice& A, const IntLattice& B) {
  auto sa = radical_and_quotient(A), sb = radical_and_quotient(B);
  if (sa.radical.cols() != sb.radical.cols()) return {false, {}, "radical ranks differ"};
  const IntLattice& Q1 = sa.quotient;
  const IntLattice& Q2 = sb.quotient;
  const std::size_t n = Q1.rank();
  if (n != Q2.rank()) return {false, {}, "ranks differ"};
  if (n > kMaxIsometryRank) throw std::domain_error("rank too large for isometry search");
  if (n == 0) return {true, IntMatrix(0, 0), ""};
  if (!is_positive_definite(Q1.gram) || !is_positive_definite(Q2.gram))
    throw std::domain_error("isometry test needs semidefinite lattices");
  if (Q1.det() != Q2.det()) return {false, {}, "determinants differ"};
  auto r1 = lll_reduce(Q1), r2 = lll_reduce(Q2);
  const IntMatrix& R1 = r1.reduced.gram;
  const IntMatrix& R2 = r2.reduced.gram;

  Int maxnorm = 0;
  for (std::size_t i = 0; i < n; ++i) maxnorm = std::max(maxnorm, R2(i, i));
  auto pool = detail::short_vectors(R1, maxnorm);
  struct Cand {
    std::vector<Int> v;
    std::vector<Int> Gv;
    Int norm;
  };
  std::vector<Cand> cands;
  for (auto& v : pool) {
    Cand c{v, std::vector<Int>(n), 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c.Gv[i] += R1(i, j) * v[j];
    for (std::size_t i = 0; i < n; ++i) c.norm += v[i] * c.Gv[i];
    if (c.norm > 0) cands.push_back(std::move(c));
  }
  // cheap filter: counts of vectors per diagonal norm must agree
  {
    auto pool2 = detail::short_vectors(R2, maxnorm);
    auto count = [&](const IntMatrix& G, const std::vector<std::vector<Int>>& vs, const Int& d) {
      std::size_t c = 0;
      for (const auto& v : vs) {
        Int q = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) q += v[i] * G(i, j) * v[j];
        if (q == d) ++c;
      }
      return c;
    };
    for (std::size_t i = 0; i < n; ++i)
      if (count(R1, pool, R2(i, i)) != count(R2, pool2, R2(i, i)))
        return {false, {}, "short vector counts differ"};
  }
  std::vector<std::size_t> choice(n);
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (cands[c].norm != R2(i, i)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        Int ip = 0;
        const auto& vj = cands[choice[j]].v;
        for (std::size_t l = 0; l < n; ++l) ip += vj[l] * cands[c].Gv[l];
        ok = ip == R2(j, i);
      }
      if (!ok) continue;
      choice[i] = c;
      if (search(i + 1)) return true;
    }
    return false;
  };
  if (!search(0)) return {false, {}, "no isometry found"};
  IntMatrix W(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) W(i, j) = cands[choice[j]].v[i];
  require(W.transpose() * R1 * W == R2, "isometry witness on reduced bases");
  IntMatrix U = r1.transform * W * unimodular_inverse(r2.transform);
  require(U.transpose() * Q1.gram * U == Q2.gram, "isometry witness check");
  return {true, U, ""};
}

}  // namespace rl
