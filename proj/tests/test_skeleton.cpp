#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "random_skeleton.hpp"
#include "ribbonlattice/skeleton.hpp"

using namespace rl;

namespace {

Skeleton theta_planar() { return Skeleton::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 5}, {2, 4}}); }
Skeleton theta_torus() { return Skeleton::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {2, 5}}); }
Skeleton k1() { return Skeleton::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 2}, {4, 5}}); }

std::vector<int> corner_counts(const Skeleton& sk) {
  std::vector<int> c;
  for (const auto& r : regions(sk)) c.push_back(r.corners());
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<std::string> names(const FiberSummary& fs) {
  std::vector<std::string> out;
  for (const auto& r : fs.regions) out.push_back(r.type.name());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Matrices, Relations) {
  EXPECT_EQ(mat_X() * mat_Y(), (GL2{1, 1, 0, 1}));
  EXPECT_EQ(mat_Y() * mat_Y(), -GL2{});
  EXPECT_EQ(mat_X().pow(3), GL2{});
  EXPECT_EQ((mat_X() * mat_Y()).pow(5), (GL2{1, 5, 0, 1}));
  EXPECT_EQ(mat_X().pow(-1) * mat_X(), GL2{});
}

TEST(Validate, RejectsBadInput) {
  EXPECT_THROW(validate(Skeleton::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 2}})), InvalidSkeleton);
  EXPECT_THROW(validate(Skeleton::from_cycles(6, {{0, 1, 2, 3}, {4, 5}}, {{0, 3}, {1, 2}, {4, 5}})),
               InvalidSkeleton);
  // two disjoint k1 pieces
  EXPECT_THROW(validate(Skeleton::from_cycles(12, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}},
                                              {{0, 3}, {1, 2}, {4, 5}, {6, 9}, {7, 8}, {10, 11}})),
               InvalidSkeleton);
  EXPECT_THROW(Skeleton({1, 1}, {0, 1}), InvalidSkeleton);
  EXPECT_THROW(Skeleton({1, 0}, {0}), InvalidSkeleton);
}

TEST(Validate, Theta) {
  auto info = validate(theta_planar());
  EXPECT_EQ(info.vertices, 2);
  EXPECT_EQ(info.edges, 3);
  EXPECT_EQ(info.regions, 3);
  EXPECT_EQ(info.genus, 0);
  EXPECT_EQ(info.k, 1);
  EXPECT_EQ(validate(theta_torus()).genus, 1);
}

TEST(Regions, Examples) {
  EXPECT_EQ(corner_counts(theta_planar()), (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(corner_counts(theta_torus()), (std::vector<int>{6}));
  EXPECT_EQ(corner_counts(k1()), (std::vector<int>{1, 1, 4}));
}

TEST(Regions, PartitionTheEnds) {
  for (const auto& in : rltest::random_batch(200, 3)) {
    std::vector<int> all;
    for (const auto& r : regions(in.sk)) all.insert(all.end(), r.ends.begin(), r.ends.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(static_cast<int>(all.size()), in.sk.n_ends());
    for (int i = 0; i < in.sk.n_ends(); ++i) EXPECT_EQ(all[i], i);
  }
}

TEST(Monodromy, EmptyPathIsIdentity) {
  auto sk = k1();
  EXPECT_EQ(monodromy(sk, heads_at_smaller_end(sk), Path{0, {}}), GL2{});
}

TEST(Monodromy, RegionBoundaryIsParabolic) {
  for (const auto& in : rltest::random_batch(300, 5)) {
    for (const auto& r : regions(in.sk)) {
      GL2 m = monodromy(in.sk, in.o, boundary_path(r));
      GL2 p{1, r.corners(), 0, 1};
      EXPECT_TRUE(m == p || m == -p);
    }
  }
}

TEST(Monodromy, MonogonWithHeadAtItsEnd) {
  auto sk = k1();
  // region {1}: op(1) = 2, so the loop step arrives at end 2
  auto o = orientation_from_heads(sk, {0, 2, 5});
  EXPECT_EQ(monodromy(sk, o, Path{1, {Step::Op, Step::NxInv}}), (GL2{1, 1, 0, 1}));
  auto r = reorient(sk, o, {});
  EXPECT_EQ(r, o);
}

TEST(Monodromy, ReducedWordsOnly) {
  auto sk = k1();
  EXPECT_THROW(path_ends(sk, Path{0, {Step::Op, Step::Op}}), std::invalid_argument);
}

TEST(Transport, EndsAtMonodromyImage) {
  std::mt19937_64 rng(2);
  for (const auto& in : rltest::random_batch(50, 8)) {
    Path p{0, {Step::Op, Step::Nx, Step::Op, Step::NxInv, Step::Op}};
    HVec h{2, -1};
    auto c = parallel_transport(in.sk, in.o, p, h);
    EXPECT_EQ(c.size(), p.steps.size() + 1);
    EXPECT_EQ(c.back().h, monodromy(in.sk, in.o, p) * h);
  }
}

TEST(Transport, FundamentalCycleNeedsInvariantVector) {
  auto sk = k1();
  auto o = orientation_from_heads(sk, {0, 2, 5});
  Path loop{1, {Step::Op, Step::NxInv}};
  EXPECT_NO_THROW(fundamental_cycle(sk, o, loop, {1, 0}));
  EXPECT_THROW(fundamental_cycle(sk, o, loop, {0, 1}), std::invalid_argument);
  EXPECT_THROW(fundamental_cycle(sk, o, Path{0, {Step::Op}}, {1, 0}), std::invalid_argument);
  // a D region has monodromy -(XY)^n and no invariant vector at all
  auto fs = fiber_types(sk, o);
  for (const auto& rf : fs.regions)
    if (rf.sign < 0) {
      EXPECT_THROW(fundamental_cycle(sk, o, boundary_path(rf.region), {1, 0}), std::invalid_argument);
    }
}

TEST(Fibers, PseudoTreeKOne) {
  auto sk = k1();
  auto fs = fiber_types(sk, orientation_from_heads(sk, {0, 2, 5}));
  EXPECT_EQ(names(fs), (std::vector<std::string>{"A0*", "A0*", "D8"}));
  EXPECT_EQ(fs.t, 1);
  EXPECT_EQ(fs.total_milnor(), 2 * 0 + 5 + 5 - 2);
  // reversing one loop turns its monogon into D5
  auto flipped = fiber_types(sk, orientation_from_heads(sk, {0, 1, 5}));
  auto n = names(flipped);
  EXPECT_EQ(std::count(n.begin(), n.end(), "D5"), 1);
}

TEST(Fibers, ThetaPlanar) {
  auto sk = theta_planar();
  auto fs = fiber_types(sk, orientation_from_heads(sk, {0, 1, 2}));
  EXPECT_EQ(names(fs), (std::vector<std::string>{"D6", "D6", "D6"}));
  EXPECT_EQ(fs.t, 3);
}

TEST(Fibers, EulerNumbersAddUp) {
  for (const auto& in : rltest::random_batch(300, 6)) {
    auto fs = fiber_types(in.sk, in.o);
    int e = 0;
    for (const auto& r : fs.regions) e += r.type.euler();
    EXPECT_EQ(e, 6 * (fs.k + fs.t));
  }
}

TEST(Fibers, KPlusTEvenOverEveryOrientation) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    auto sk = rltest::random_skeleton(rng, 1 + rep % 2);
    const int E = sk.n_edges();
    for (int mask = 0; mask < (1 << E); ++mask) {
      Orientation o = heads_at_smaller_end(sk);
      for (int e = 0; e < E; ++e)
        if (mask >> e & 1) o.head[e] = sk.op(o.head[e]);
      auto fs = fiber_types(sk, o);
      EXPECT_EQ((fs.k + fs.t) % 2, 0);
    }
  }
}

TEST(Orientation, ReorientFlipsCutEdges) {
  auto sk = theta_planar();
  auto o = orientation_from_heads(sk, {0, 1, 2});
  EXPECT_EQ(reorient(sk, o, {0}), orientation_from_heads(sk, {3, 5, 4}));
  EXPECT_EQ(reorient(sk, o, {0, 1}), o);
  auto l = k1();
  auto ol = orientation_from_heads(l, {0, 2, 5});
  // loops never cross the cut
  EXPECT_EQ(reorient(l, ol, {0}), orientation_from_heads(l, {3, 2, 5}));
}

TEST(Orientation, FromHeadsRejectsBadInput) {
  auto sk = theta_planar();
  EXPECT_THROW(orientation_from_heads(sk, {0, 3, 1}), InvalidSkeleton);
  EXPECT_THROW(orientation_from_heads(sk, {0, 1}), InvalidSkeleton);
  EXPECT_THROW(orientation_from_heads(sk, {0, 1, 9}), InvalidSkeleton);
}

TEST(Orientation, FlipsKeepFiberTypes) {
  std::mt19937_64 rng(41);
  for (const auto& in : rltest::random_batch(100, 12)) {
    std::vector<int> vs;
    for (int v = 0; v < in.sk.n_vertices(); ++v)
      if (rng() & 1) vs.push_back(v);
    EXPECT_EQ(names(fiber_types(in.sk, in.o)), names(fiber_types(in.sk, reorient(in.sk, in.o, vs))));
  }
}

TEST(Orientation, ClassesCoverEveryOrientation) {
  // every orientation is a vertex flip of exactly one class representative
  auto sk = theta_torus();
  auto classes = orientation_classes(sk);
  EXPECT_EQ(classes.size(), 4u);
  const int V = sk.n_vertices(), E = sk.n_edges();
  for (int mask = 0; mask < (1 << E); ++mask) {
    Orientation o = heads_at_smaller_end(sk);
    for (int e = 0; e < E; ++e)
      if (mask >> e & 1) o.head[e] = sk.op(o.head[e]);
    int hits = 0;
    for (const auto& c : classes)
      for (int vm = 0; vm < (1 << V); ++vm) {
        std::vector<int> vs;
        for (int v = 0; v < V; ++v)
          if (vm >> v & 1) vs.push_back(v);
        if (reorient(sk, c, vs) == o) ++hits;
      }
    EXPECT_EQ(hits, 2);  // flipping all vertices changes nothing
  }
}
