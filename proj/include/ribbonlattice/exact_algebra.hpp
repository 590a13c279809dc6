#pragma once

// Dense integer and rational matrices with Hermite and Smith normal forms.
// Everything is exact; entries are GMP integers and rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rl {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when an internal consistency check fails.  The CLI maps this to
// exit code 4.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw InternalError(what);
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  T* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const T* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix b(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = -a.data_[i];
    return c;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = s * a.data_[i];
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    T tmp;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(l, j) == 0) continue;
          tmp = x * b(l, j);
          c(i, j) += tmp;
        }
      }
    return c;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

// Throws if some entry is not an integer.
inline IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InternalError("matrix is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

inline IntMatrix diagonal_matrix(const std::vector<Int>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

namespace detail {

// row_a -= q * row_b, restricted to columns [from, cols)
inline void row_submul(IntMatrix& m, std::size_t a, std::size_t b, const Int& q,
                       std::size_t from = 0) {
  Int* ra = m.row_ptr(a);
  const Int* rb = m.row_ptr(b);
  for (std::size_t j = from; j < m.cols(); ++j)
    if (rb[j] != 0) mpz_submul(ra[j].get_mpz_t(), q.get_mpz_t(), rb[j].get_mpz_t());
}

inline void col_submul(IntMatrix& m, std::size_t a, std::size_t b, const Int& q,
                       std::size_t from = 0) {
  for (std::size_t i = from; i < m.rows(); ++i)
    if (m(i, b) != 0)
      mpz_submul(m(i, a).get_mpz_t(), q.get_mpz_t(), m(i, b).get_mpz_t());
}

inline void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// nearest integer quotient, ties toward floor
inline Int round_div(const Int& a, const Int& b) {
  Int twice_a = 2 * a + b;
  Int twice_b = 2 * b;
  return floor_div(twice_a, twice_b);
}

}  // namespace detail

// a / b in lowest terms; mpq_class(a, b) alone is not canonical
inline Rat ratio(const Int& a, const Int& b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

inline Int round_nearest(const Rat& x) {
  return detail::floor_div(2 * x.get_num() + x.get_den(), 2 * x.get_den());
}

struct HermiteForm {
  IntMatrix H;  // U * M == H
  IntMatrix U;  // unimodular
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

// Row-style Hermite normal form: echelon rows, positive pivots, entries
// above each pivot reduced into [0, pivot).
inline HermiteForm hermite_normal_form(const IntMatrix& M, bool with_transform = true) {
  HermiteForm r{M, with_transform ? IntMatrix::identity(M.rows()) : IntMatrix(), {}};
  IntMatrix& H = r.H;
  IntMatrix& U = r.U;
  const std::size_t m = H.rows(), n = H.cols();
  std::size_t piv = 0;
  for (std::size_t c = 0; c < n && piv < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = piv; i < m; ++i)
        if (H(i, c) != 0 && (best == m || abs(H(i, c)) < abs(H(best, c)))) best = i;
      if (best == m) break;
      H.swap_rows(piv, best);
      if (with_transform) U.swap_rows(piv, best);
      bool clean = true;
      for (std::size_t i = piv + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Int q = detail::floor_div(H(i, c), H(piv, c));
        detail::row_submul(H, i, piv, q, c);
        if (with_transform) detail::row_submul(U, i, piv, q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(piv, c) == 0) continue;
    if (H(piv, c) < 0) {
      detail::negate_row(H, piv);
      if (with_transform) detail::negate_row(U, piv);
    }
    for (std::size_t i = 0; i < piv; ++i) {
      Int q = detail::floor_div(H(i, c), H(piv, c));
      if (q == 0) continue;
      detail::row_submul(H, i, piv, q, c);
      if (with_transform) detail::row_submul(U, i, piv, q);
    }
    r.pivots.push_back(c);
    ++piv;
  }
  return r;
}

struct SmithForm {
  IntMatrix S;  // U * M * V == S
  IntMatrix U, V;
  std::vector<Int> diagonal;  // nonzero invariant factors, each dividing the next
};

inline SmithForm smith_normal_form(const IntMatrix& M, bool with_transform = true) {
  SmithForm r{M, {}, {}, {}};
  IntMatrix& S = r.S;
  const std::size_t m = S.rows(), n = S.cols();
  if (with_transform) {
    r.U = IntMatrix::identity(m);
    r.V = IntMatrix::identity(n);
  }
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found = false;
    for (;;) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (bi == m || abs(S(i, j)) < abs(S(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      found = true;
      S.swap_rows(t, bi);
      S.swap_cols(t, bj);
      if (with_transform) {
        r.U.swap_rows(t, bi);
        r.V.swap_cols(t, bj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Int q = detail::floor_div(S(i, t), S(t, t));
        detail::row_submul(S, i, t, q, t);
        if (with_transform) detail::row_submul(r.U, i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Int q = detail::floor_div(S(t, j), S(t, t));
        detail::col_submul(S, j, t, q, t);
        if (with_transform) detail::col_submul(r.V, j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      detail::row_submul(S, t, bad, Int(-1), t);
      if (with_transform) detail::row_submul(r.U, t, bad, Int(-1));
    }
    if (!found) break;
    if (S(t, t) < 0) {
      detail::negate_row(S, t);
      if (with_transform) detail::negate_row(r.U, t);
    }
    r.diagonal.push_back(S(t, t));
  }
  return r;
}

// Finitely generated abelian group Z^free + sum Z/d_i with d_i | d_{i+1}.
struct AbelianGroup {
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  bool is_cyclic() const {
    return free_rank + static_cast<int>(torsion.size()) <= 1;
  }
  Int order() const {
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
  }
  AbelianGroup torsion_part() const { return {0, torsion}; }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (const auto& d : torsion) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) {
  return os << g.to_string();
}

inline AbelianGroup group_from_diagonal(std::size_t ambient, const std::vector<Int>& diag) {
  AbelianGroup g;
  g.free_rank = static_cast<int>(ambient - diag.size());
  for (const auto& d : diag)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

// Z^cols modulo the span of the rows of M.
inline AbelianGroup cokernel_invariants(const IntMatrix& M) {
  auto s = smith_normal_form(M, false);
  return group_from_diagonal(M.cols(), s.diagonal);
}

// Direct sum, brought back to invariant factors.
inline AbelianGroup group_sum(const std::vector<AbelianGroup>& parts) {
  std::vector<Int> d;
  int free = 0;
  for (const auto& g : parts) {
    free += g.free_rank;
    d.insert(d.end(), g.torsion.begin(), g.torsion.end());
  }
  AbelianGroup t = cokernel_invariants(diagonal_matrix(d));
  t.free_rank += free;
  return t;
}

// Basis of {x : M x = 0} as the columns of the result.  The basis is
// saturated: it spans the full integral kernel.
inline IntMatrix integer_kernel(const IntMatrix& M) {
  const std::size_t n = M.cols();
  auto h = hermite_normal_form(M.transpose());
  const std::size_t r = h.rank();
  IntMatrix K(n, n - r);
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) K(j, i - r) = h.U(i, j);
  return K;
}

inline std::size_t rank(const IntMatrix& M) {
  return hermite_normal_form(M, false).rank();
}

// HNF of the lattice spanned by the columns, with zero rows dropped.
// Two column sets span the same lattice iff these agree.
inline IntMatrix column_lattice_hnf(const IntMatrix& B) {
  auto h = hermite_normal_form(B.transpose(), false);
  return h.H.block(0, 0, h.rank(), h.H.cols());
}

inline bool same_column_lattice(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) return false;
  return column_lattice_hnf(A) == column_lattice_hnf(B);
}

// Fraction-free Gaussian elimination.
inline Int determinant(const IntMatrix& A) {
  if (!A.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

inline std::vector<Int> leading_minors(const IntMatrix& A) {
  std::vector<Int> out;
  for (std::size_t k = 1; k <= A.rows(); ++k) out.push_back(determinant(A.block(0, 0, k, k)));
  return out;
}

inline bool is_positive_definite(const IntMatrix& G) {
  if (!G.is_symmetric()) return false;
  for (const auto& d : leading_minors(G))
    if (d <= 0) return false;
  return true;
}

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Signature of a symmetric rational matrix by congruence diagonalisation.
inline Inertia inertia(const RatMatrix& A) {
  if (!A.is_symmetric()) throw std::invalid_argument("inertia of non-symmetric matrix");
  RatMatrix M = A;
  const std::size_t n = M.rows();
  Inertia in;
  std::size_t done = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i)
      if (M(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish; borrow an off-diagonal one
      std::size_t oi = n, oj = n;
      for (std::size_t i = k; i < n && oi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (M(i, j) != 0) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == n) break;
      for (std::size_t c = 0; c < n; ++c) M(oi, c) += M(oj, c);
      for (std::size_t r = 0; r < n; ++r) M(r, oi) += M(r, oj);
      p = oi;
    }
    M.swap_rows(k, p);
    M.swap_cols(k, p);
    const Rat piv = M(k, k);
    (piv > 0 ? in.positive : in.negative)++;
    ++done;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M(k, i) == 0) continue;
      Rat f = M(i, k) / piv;
      for (std::size_t j = k; j < n; ++j) M(i, j) -= f * M(k, j);
      for (std::size_t j = k; j < n; ++j) M(j, i) = M(i, j);
    }
  }
  in.zero = static_cast<int>(n - done);
  return in;
}

inline Inertia inertia(const IntMatrix& A) { return inertia(to_rational(A)); }

// Exact inverse over Q; throws on singular input.
inline RatMatrix inverse(const RatMatrix& A) {
  if (!A.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix M = A, I = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    M.swap_rows(k, p);
    I.swap_rows(k, p);
    Rat inv = 1 / M(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      M(k, j) *= inv;
      I(k, j) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || M(i, k) == 0) continue;
      Rat f = M(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        M(i, j) -= f * M(k, j);
        I(i, j) -= f * I(k, j);
      }
    }
  }
  return I;
}

inline IntMatrix unimodular_inverse(const IntMatrix& U) {
  IntMatrix inv = to_integer(inverse(to_rational(U)));
  require(U * inv == IntMatrix::identity(U.rows()), "unimodular inverse check");
  return inv;
}

inline Int content(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

}  // namespace rl
