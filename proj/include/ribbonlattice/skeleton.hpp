#pragma once

// Oriented skeletons: trivalent ribbon graphs given by two permutations of
// the set of edge ends, with a choice of head end for every edge.

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ribbonlattice/exact_algebra.hpp"
#include "ribbonlattice/lattice.hpp"

namespace rl {

class InvalidSkeleton : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Perm = std::vector<int>;
using HVec = std::array<Int, 2>;

// 2x2 integer matrix acting on column vectors of H = Za + Zb.
struct GL2 {
  Int a = 1, b = 0, c = 0, d = 1;

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  GL2 inverse() const {
    Int D = det();
    if (D != 1 && D != -1) throw std::domain_error("matrix is not invertible over Z");
    return {d * D, -b * D, -c * D, a * D};
  }
  GL2 operator-() const { return {-a, -b, -c, -d}; }
  friend GL2 operator*(const GL2& x, const GL2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend HVec operator*(const GL2& m, const HVec& v) {
    return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
  }
  friend bool operator==(const GL2&, const GL2&) = default;
  GL2 pow(long e) const {
    GL2 base = e < 0 ? inverse() : *this, r;
    for (long n = e < 0 ? -e : e; n; n >>= 1) {
      if (n & 1) r = r * base;
      base = base * base;
    }
    return r;
  }
  IntMatrix matrix() const { return IntMatrix{{a, b}, {c, d}}; }
  std::string to_string() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
  }
};

inline const GL2& mat_X() {
  static const GL2 x{-1, 1, -1, 0};
  return x;
}
inline const GL2& mat_Y() {
  static const GL2 y{0, -1, 1, 0};
  return y;
}

// u . v with a . b = 1
inline Int symplectic(const HVec& u, const HVec& v) { return u[0] * v[1] - u[1] * v[0]; }

inline IntMatrix mat_J() { return IntMatrix{{0, 1}, {-1, 0}}; }

class Skeleton {
 public:
  Skeleton() = default;

  Skeleton(Perm op, Perm nx) : op_(std::move(op)), nx_(std::move(nx)) {
    if (op_.size() != nx_.size()) throw InvalidSkeleton("op and nx act on different sets");
    check_permutation(op_, "op");
    check_permutation(nx_, "nx");
    const int n = n_ends();
    nx_inv_.assign(n, 0);
    for (int i = 0; i < n; ++i) nx_inv_[nx_[i]] = i;
    vertex_of_.assign(n, -1);
    edge_of_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (vertex_of_[i] < 0) {
        std::vector<int> orbit;
        for (int j = i; vertex_of_[j] < 0; j = nx_[j]) {
          vertex_of_[j] = static_cast<int>(vertices_.size());
          orbit.push_back(j);
        }
        vertices_.push_back(orbit);
      }
      if (edge_of_[i] < 0) {
        edge_of_[i] = static_cast<int>(edges_.size());
        edge_of_[op_[i]] = edge_of_[i];
        edges_.push_back({i, op_[i]});
      }
    }
  }

  static Skeleton from_cycles(int n_ends, const std::vector<std::vector<int>>& nx_cycles,
                              const std::vector<std::vector<int>>& op_cycles) {
    return Skeleton(cycles_to_perm(n_ends, op_cycles, "op"), cycles_to_perm(n_ends, nx_cycles, "nx"));
  }

  static Perm cycles_to_perm(int n, const std::vector<std::vector<int>>& cycles, const char* what) {
    Perm p(n, -1);
    for (const auto& cyc : cycles)
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
        if (x < 0 || x >= n || y < 0 || y >= n)
          throw InvalidSkeleton(std::string(what) + ": end index out of range");
        if (p[x] >= 0) throw InvalidSkeleton(std::string(what) + ": end listed twice");
        p[x] = y;
      }
    for (int i = 0; i < n; ++i)
      if (p[i] < 0) p[i] = i;
    return p;
  }

  int n_ends() const { return static_cast<int>(op_.size()); }
  int op(int e) const { return op_.at(e); }
  int nx(int e) const { return nx_.at(e); }
  int nx_inv(int e) const { return nx_inv_.at(e); }
  const Perm& op_perm() const { return op_; }
  const Perm& nx_perm() const { return nx_; }

  // Vertices are nx-orbits listed from their smallest end, in order of that
  // end.  Edges are {smaller end, larger end}, ordered the same way.
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  int vertex_of(int e) const { return vertex_of_.at(e); }
  int edge_of(int e) const { return edge_of_.at(e); }
  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  friend bool operator==(const Skeleton& a, const Skeleton& b) {
    return a.op_ == b.op_ && a.nx_ == b.nx_;
  }

 private:
  static void check_permutation(const Perm& p, const char* what) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
      if (x < 0 || x >= static_cast<int>(p.size()) || seen[x])
        throw InvalidSkeleton(std::string(what) + " is not a permutation");
      seen[x] = 1;
    }
  }

  Perm op_, nx_, nx_inv_;
  std::vector<int> vertex_of_, edge_of_;
  std::vector<std::vector<int>> vertices_;
  std::vector<std::array<int, 2>> edges_;
};

struct Region {
  // ends alpha_0, alpha_1, ... with alpha_{i+1} = nx^{-1}(op(alpha_i)); the
  // number of corners is ends.size()
  std::vector<int> ends;
  int corners() const { return static_cast<int>(ends.size()); }
};

inline std::vector<Region> regions(const Skeleton& sk) {
  std::vector<Region> out;
  std::vector<char> seen(sk.n_ends(), 0);
  for (int i = 0; i < sk.n_ends(); ++i) {
    if (seen[i]) continue;
    Region r;
    for (int j = i; !seen[j]; j = sk.nx_inv(sk.op(j))) {
      seen[j] = 1;
      r.ends.push_back(j);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline bool is_connected(const Skeleton& sk) {
  if (sk.n_ends() == 0) return true;
  std::vector<char> seen(sk.n_ends(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    for (int f : {sk.op(e), sk.nx(e), sk.nx_inv(e)})
      if (!seen[f]) {
        seen[f] = 1;
        ++count;
        stack.push_back(f);
      }
  }
  return count == sk.n_ends();
}

inline int genus(const Skeleton& sk) {
  int euler = sk.n_vertices() - sk.n_edges() + static_cast<int>(regions(sk).size());
  if (euler % 2 != 0 || euler > 2) throw InternalError("odd Euler characteristic");
  return (2 - euler) / 2;
}

struct SkeletonInfo {
  int vertices = 0, edges = 0, regions = 0, genus = 0, k = 0;
};

// Checks the defining conditions: op a free involution, nx of cycle type
// 3^m, connected.  Throws InvalidSkeleton naming the violated condition.
inline SkeletonInfo validate(const Skeleton& sk) {
  const int n = sk.n_ends();
  if (n == 0) throw InvalidSkeleton("empty skeleton");
  for (int i = 0; i < n; ++i) {
    if (sk.op(i) == i) throw InvalidSkeleton("op has a fixed point at end " + std::to_string(i));
    if (sk.op(sk.op(i)) != i) throw InvalidSkeleton("op is not an involution");
  }
  for (const auto& v : sk.vertices())
    if (v.size() != 3)
      throw InvalidSkeleton("vertex at end " + std::to_string(v[0]) + " is not trivalent");
  if (!is_connected(sk)) throw InvalidSkeleton("skeleton is not connected");
  SkeletonInfo info;
  info.vertices = sk.n_vertices();
  info.edges = sk.n_edges();
  info.regions = static_cast<int>(regions(sk).size());
  info.genus = genus(sk);
  info.k = info.vertices / 2;
  return info;
}

// head[e] is the end of edge e that is its head (e^+).
struct Orientation {
  std::vector<int> head;

  bool is_head(const Skeleton& sk, int end) const { return head.at(sk.edge_of(end)) == end; }
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

// Accepts one head end per edge, in any order.
inline Orientation orientation_from_heads(const Skeleton& sk, const std::vector<int>& heads) {
  Orientation o{std::vector<int>(sk.n_edges(), -1)};
  for (int h : heads) {
    if (h < 0 || h >= sk.n_ends()) throw InvalidSkeleton("head end out of range");
    int e = sk.edge_of(h);
    if (o.head[e] >= 0) throw InvalidSkeleton("edge has two heads");
    o.head[e] = h;
  }
  for (int e = 0; e < sk.n_edges(); ++e)
    if (o.head[e] < 0) throw InvalidSkeleton("edge without a head");
  return o;
}

inline Orientation heads_at_smaller_end(const Skeleton& sk) {
  Orientation o;
  for (const auto& e : sk.edges()) o.head.push_back(std::min(e[0], e[1]));
  return o;
}

// Reverses every edge with exactly one end at a vertex of the set.
inline Orientation reorient(const Skeleton& sk, const Orientation& o, const std::vector<int>& vset) {
  std::vector<char> in(sk.n_vertices(), 0);
  for (int v : vset) in.at(v) = 1;
  Orientation r = o;
  for (int e = 0; e < sk.n_edges(); ++e) {
    auto [x, y] = sk.edges()[e];
    if (in[sk.vertex_of(x)] != in[sk.vertex_of(y)]) r.head[e] = sk.op(o.head[e]);
  }
  return r;
}

// One orientation from each class modulo vertex flips.  Edges of a BFS
// spanning tree keep their head at the parent side; the remaining
// E - V + 1 edges run over both choices, lowest edge varying fastest.
inline std::vector<Orientation> orientation_classes(const Skeleton& sk, int max_free = 16) {
  const int V = sk.n_vertices();
  Orientation base = heads_at_smaller_end(sk);
  std::vector<char> tree(sk.n_edges(), 0), seen(V, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int end : sk.vertices()[queue[q]]) {
      int w = sk.vertex_of(sk.op(end));
      if (seen[w]) continue;
      seen[w] = 1;
      tree[sk.edge_of(end)] = 1;
      base.head[sk.edge_of(end)] = end;
      queue.push_back(w);
    }
  std::vector<int> free;
  for (int e = 0; e < sk.n_edges(); ++e)
    if (!tree[e]) free.push_back(e);
  if (static_cast<int>(free.size()) > max_free) throw std::invalid_argument("too many orientation classes");
  std::vector<Orientation> out;
  for (unsigned long mask = 0; mask < (1ul << free.size()); ++mask) {
    Orientation o = base;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) o.head[free[i]] = sk.op(o.head[free[i]]);
    out.push_back(o);
  }
  return out;
}

enum class Step : char { Op, Nx, NxInv };

// A reduced word applied to a starting end; steps[0] is applied first.
struct Path {
  int start = 0;
  std::vector<Step> steps;
};

inline void check_reduced(const Path& p) {
  for (std::size_t i = 1; i < p.steps.size(); ++i) {
    bool a = p.steps[i - 1] == Step::Op, b = p.steps[i] == Step::Op;
    if (a == b) throw std::invalid_argument("path word is not reduced");
  }
}

inline std::vector<int> path_ends(const Skeleton& sk, const Path& p) {
  check_reduced(p);
  std::vector<int> out{p.start};
  int cur = p.start;
  for (Step s : p.steps) {
    cur = s == Step::Op ? sk.op(cur) : s == Step::Nx ? sk.nx(cur) : sk.nx_inv(cur);
    out.push_back(cur);
  }
  return out;
}

inline Path boundary_path(const Region& r) {
  Path p{r.ends.front(), {}};
  for (int i = 0; i < r.corners(); ++i) {
    p.steps.push_back(Step::Op);
    p.steps.push_back(Step::NxInv);
  }
  return p;
}

// Lift of a single step arriving at `to`.
inline GL2 step_lift(const Skeleton& sk, const Orientation& o, Step s, int to) {
  switch (s) {
    case Step::Nx:
      return -mat_X().inverse();
    case Step::NxInv:
      return -mat_X();
    case Step::Op:
      return o.is_head(sk, to) ? -mat_Y() : -mat_Y().inverse();
  }
  throw std::logic_error("bad step");
}

// m_r ... m_1
inline GL2 monodromy(const Skeleton& sk, const Orientation& o, const Path& p) {
  auto ends = path_ends(sk, p);
  GL2 m;
  for (std::size_t i = 0; i < p.steps.size(); ++i) m = step_lift(sk, o, p.steps[i], ends[i + 1]) * m;
  return m;
}

struct ChainTerm {
  int end;
  HVec h;
};
using Chain = std::vector<ChainTerm>;

inline Chain parallel_transport(const Skeleton& sk, const Orientation& o, const Path& p,
                                const HVec& h) {
  auto ends = path_ends(sk, p);
  Chain c{{p.start, h}};
  HVec cur = h;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    cur = step_lift(sk, o, p.steps[i], ends[i + 1]) * cur;
    c.push_back({ends[i + 1], cur});
  }
  return c;
}

// Dense coordinates in H (x) Z^{ends}: end e occupies slots 2e, 2e+1.
inline std::vector<Int> chain_vector(const Skeleton& sk, const Chain& c) {
  std::vector<Int> v(2 * sk.n_ends());
  for (const auto& t : c) {
    v[2 * t.end] += t.h[0];
    v[2 * t.end + 1] += t.h[1];
  }
  return v;
}

// The closed chain sum_i h_i (x) alpha_i - h (x) alpha_0 of an invariant
// vector along a loop.
inline Chain fundamental_cycle(const Skeleton& sk, const Orientation& o, const Path& loop,
                               const HVec& h) {
  auto ends = path_ends(sk, loop);
  if (ends.back() != loop.start) throw std::invalid_argument("path is not a loop");
  if (monodromy(sk, o, loop) * h != h)
    throw std::invalid_argument("vector is not invariant under the loop monodromy");
  Chain c = parallel_transport(sk, o, loop, h);
  c.push_back({loop.start, {-h[0], -h[1]}});
  return c;
}

enum class FiberKind { A0Star, A, D };

struct FiberType {
  FiberKind kind = FiberKind::A;
  int n = 1;  // corners of the region

  int milnor() const { return kind == FiberKind::D ? n + 4 : n - 1; }
  int euler() const { return kind == FiberKind::D ? n + 6 : n; }
  std::string name() const {
    switch (kind) {
      case FiberKind::A0Star:
        return "A0*";
      case FiberKind::A:
        return "A" + std::to_string(n - 1);
      case FiberKind::D:
        return "D" + std::to_string(n + 4);
    }
    return "?";
  }
  IntLattice root_lattice() const {
    return kind == FiberKind::D ? standard_lattice(Family::D, n + 4)
                                : standard_lattice(Family::A, n - 1);
  }
};

struct RegionFiber {
  Region region;
  GL2 monodromy;
  int sign = 1;  // boundary monodromy is sign * (XY)^n
  FiberType type;
};

struct FiberSummary {
  std::vector<RegionFiber> regions;
  int k = 0, t = 0, genus = 0;
  int total_milnor() const {
    int m = 0;
    for (const auto& r : regions) m += r.type.milnor();
    return m;
  }
};

inline FiberSummary fiber_types(const Skeleton& sk, const Orientation& o) {
  auto info = validate(sk);
  FiberSummary s;
  s.k = info.k;
  s.genus = info.genus;
  for (auto& r : regions(sk)) {
    RegionFiber rf;
    rf.monodromy = monodromy(sk, o, boundary_path(r));
    const int n = r.corners();
    // (XY)^n = [[1, n], [0, 1]]
    const GL2 parabolic{1, n, 0, 1};
    int tails = 0;
    for (int e : r.ends)
      if (!o.is_head(sk, sk.op(e))) ++tails;
    rf.sign = tails % 2 ? -1 : 1;
    if (rf.monodromy != (rf.sign > 0 ? parabolic : -parabolic))
      throw InternalError("region monodromy is not +-(XY)^n");
    rf.type.n = n;
    rf.type.kind = rf.sign < 0 ? FiberKind::D : n == 1 ? FiberKind::A0Star : FiberKind::A;
    if (rf.sign < 0) ++s.t;
    rf.region = std::move(r);
    s.regions.push_back(std::move(rf));
  }
  if ((s.k + s.t) % 2 != 0) throw InternalError("k + t is odd");
  return s;
}

}  // namespace rl
