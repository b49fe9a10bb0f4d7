// Copyright 2026 The netreduce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "netreduce/cluster.hpp"
#include "netreduce/errors.hpp"
#include "netreduce/gramian.hpp"
#include "oracles.hpp"

namespace {

using namespace netreduce;
using Eigen::MatrixXd;
using Clusters = std::vector<std::vector<int>>;

DissimilarityMatrix from_points(const std::vector<double>& xs) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  DissimilarityMatrix d{MatrixXd::Zero(n, n), DissimilarityKind::Position};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d.d(i, j) = std::abs(xs[i] - xs[j]);
  }
  return d;
}

DissimilarityMatrix random_metric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MatrixXd pts(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) pts(i, k) = u(rng);
  }
  DissimilarityMatrix d{MatrixXd::Zero(n, n), DissimilarityKind::Position};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d.d(i, j) = (pts.row(i) - pts.row(j)).norm();
  }
  return d;
}

double direct_average(const MatrixXd& d, const std::vector<int>& a, const std::vector<int>& b) {
  double s = 0.0;
  for (int i : a) {
    for (int j : b) s += d(i, j);
  }
  return s / static_cast<double>(a.size() * b.size());
}

// Re-evaluates every cross-cluster average from scratch at each step.
struct Trace {
  std::vector<std::pair<Clusters, Clusters>> merges;  // (clusters before, merged pair)
  std::vector<double> heights;
};

Trace brute_force_average(const MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  Clusters cur;
  for (int v = 0; v < n; ++v) cur.push_back({v});
  Trace t;
  while (cur.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        const double v = direct_average(d, cur[i], cur[j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    t.merges.push_back({cur, {cur[bi], cur[bj]}});
    t.heights.push_back(best);
    cur[bi].insert(cur[bi].end(), cur[bj].begin(), cur[bj].end());
    std::sort(cur[bi].begin(), cur[bi].end());
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return t;
}

// Kruskal-style single linkage: join the closest pair of clusters each step.
Clusters brute_force_single(const MatrixXd& d, int r) {
  const int n = static_cast<int>(d.rows());
  Clusters cur;
  for (int v = 0; v < n; ++v) cur.push_back({v});
  while (static_cast<int>(cur.size()) > r) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        double m = std::numeric_limits<double>::infinity();
        for (int a : cur[i]) {
          for (int b : cur[j]) m = std::min(m, d(a, b));
        }
        if (m < best) {
          best = m;
          bi = i;
          bj = j;
        }
      }
    }
    cur[bi].insert(cur[bi].end(), cur[bj].begin(), cur[bj].end());
    std::sort(cur[bi].begin(), cur[bi].end());
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return cur;
}

void expect_partition(const ClusteringPartition& p, int n, int r) {
  EXPECT_EQ(p.n(), n);
  EXPECT_EQ(p.r(), r);
  std::vector<int> seen(n, 0);
  for (const auto& c : p.clusters()) {
    EXPECT_FALSE(c.empty());
    for (int v : c) ++seen[v];
  }
  for (int v = 0; v < n; ++v) EXPECT_EQ(seen[v], 1);
}

TEST(Dissimilarity, DiagonalZeroAndSymmetric) {
  const auto sys = oracle::random_network(6, 2, 1);
  const auto g = network_gramian(sys);
  for (const auto& d : {dissimilarity_position(sys, g), dissimilarity_velocity(sys, g)}) {
    EXPECT_EQ(d.d.diagonal(), Eigen::VectorXd::Zero(6));
    EXPECT_EQ(d.d, d.d.transpose());
    EXPECT_GE(d.d.minCoeff(), 0.0);
  }
  EXPECT_EQ(dissimilarity_velocity(sys, g).kind, DissimilarityKind::Velocity);
}

TEST(Dissimilarity, SwapSymmetricPairIsZero) {
  const auto sys = validate(Eigen::VectorXd::Constant(2, 2.0), MatrixXd{{1.5, -0.3}, {-0.3, 1.5}},
                            MatrixXd{{0.9, -0.9}, {-0.9, 0.9}}, MatrixXd{{0.4, -1.0}, {0.4, -1.0}});
  const auto g = network_gramian(sys);
  EXPECT_LE(dissimilarity_position(sys, g).d(0, 1), 1e-7);
  EXPECT_LE(dissimilarity_velocity(sys, g).d(0, 1), 1e-7);
}

TEST(Dissimilarity, MatchesQuadrature) {
  const auto sys = oracle::random_network(4, 2, 2);
  const auto g = network_gramian(sys);
  const auto pos = dissimilarity_position(sys, g);
  const auto vel = dissimilarity_velocity(sys, g);
  const double t_max = oracle::horizon(sys);
  const int steps = oracle::quadrature_steps(first_order(sys).a, t_max);
  const MatrixXd zero = MatrixXd::Zero(1, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      MatrixXd e = zero;
      e(0, i) = 1.0;
      e(0, j) = -1.0;
      const double qp = h2_quadrature(sys, e, zero, t_max, steps);
      const double qv = h2_quadrature(sys, zero, e, t_max, steps);
      EXPECT_NEAR(pos.d(i, j), qp, 1e-5 * qp);
      EXPECT_NEAR(vel.d(i, j), qv, 1e-5 * qv);
    }
  }
}

TEST(Dissimilarity, ThreadCountDoesNotChangeResult) {
  const auto sys = benchmark_system(25, {}, 3);
  const auto g = network_gramian(sys);
  EXPECT_EQ(dissimilarity_position(sys, g, 1).d, dissimilarity_position(sys, g, 4).d);
  EXPECT_EQ(dissimilarity_velocity(sys, g, 1).d, dissimilarity_velocity(sys, g, 3).d);
}

TEST(Dissimilarity, TriangleInequality) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto sys = benchmark_system(8 + 3 * static_cast<int>(s), {}, 10 + s);
    const auto d = dissimilarity_position(sys, network_gramian(sys));
    const double slack = 1e-9 * d.d.maxCoeff();
    for (int i = 0; i < d.n(); ++i) {
      for (int j = 0; j < d.n(); ++j) {
        for (int k = 0; k < d.n(); ++k) EXPECT_LE(d.d(i, j), d.d(i, k) + d.d(k, j) + slack);
      }
    }
  }
}

TEST(Linkage, Basics) {
  const auto d = from_points({0.0, 2.0, 1.0, 5.0});
  const std::vector<int> a{0}, b{1};
  EXPECT_EQ(linkage(d, a, b), 2.0);
  DissimilarityMatrix c{MatrixXd::Constant(4, 4, 0.7), DissimilarityKind::Position};
  c.d.diagonal().setZero();
  const std::vector<int> x{0, 2}, y{1, 3};
  EXPECT_DOUBLE_EQ(linkage(c, x, y), 0.7);
}

TEST(Linkage, HandArithmetic) {
  DissimilarityMatrix d{MatrixXd::Zero(3, 3), DissimilarityKind::Position};
  d.d(0, 2) = d.d(2, 0) = 1.0;
  d.d(1, 2) = d.d(2, 1) = 3.0;
  const std::vector<int> a{0, 1}, b{2};
  EXPECT_EQ(linkage(d, a, b), 2.0);
}

TEST(Linkage, OverlapRejected) {
  const auto d = from_points({0.0, 1.0, 2.0});
  const std::vector<int> a{0, 1}, b{1, 2};
  EXPECT_THROW(linkage(d, a, b), ArgumentError);
}

TEST(Hierarchical, EndpointsOfTheOrderRange) {
  const auto d = random_metric(7, 5);
  const auto all = hierarchical_clustering(d, 7);
  EXPECT_EQ(all.partition, ClusteringPartition::singletons(7));
  EXPECT_EQ(all.dendrogram.merges.size(), 6u);
  const auto one = hierarchical_clustering(d, 1);
  EXPECT_EQ(one.partition.r(), 1);
  EXPECT_EQ(one.partition.clusters()[0].size(), 7u);
  EXPECT_THROW(hierarchical_clustering(d, 0), ArgumentError);
  EXPECT_THROW(hierarchical_clustering(d, 8), ArgumentError);
}

TEST(Hierarchical, StrictMinimumMergesFirst) {
  DissimilarityMatrix d{MatrixXd::Constant(4, 4, 1.0), DissimilarityKind::Position};
  d.d.diagonal().setZero();
  d.d(2, 3) = d.d(3, 2) = 0.1;
  const auto res = hierarchical_clustering(d, 3);
  EXPECT_EQ(res.partition.clusters(), (Clusters{{0}, {1}, {2, 3}}));
  EXPECT_EQ(res.dendrogram.merges[0].a, 2);
  EXPECT_EQ(res.dendrogram.merges[0].b, 3);
  EXPECT_EQ(res.dendrogram.merges[0].id, 4);
}

TEST(Hierarchical, TiesGoToLexicographicallyFirstPair) {
  DissimilarityMatrix d{MatrixXd::Constant(5, 5, 1.0), DissimilarityKind::Position};
  d.d.diagonal().setZero();
  const auto res = hierarchical_clustering(d, 4);
  EXPECT_EQ(res.partition.clusters(), (Clusters{{0, 1}, {2}, {3}, {4}}));
}

TEST(Hierarchical, MatchesExhaustiveTrace) {
  // Five hand-placed points with well-separated merge levels.
  DissimilarityMatrix d{MatrixXd{{0.0, 0.9, 4.0, 6.5, 7.0},
                                 {0.9, 0.0, 3.6, 6.1, 6.4},
                                 {4.0, 3.6, 0.0, 2.2, 3.1},
                                 {6.5, 6.1, 2.2, 0.0, 1.4},
                                 {7.0, 6.4, 3.1, 1.4, 0.0}},
                        DissimilarityKind::Position};
  const Trace ref = brute_force_average(d.d);
  std::size_t step = 0;
  const auto res = hierarchical_clustering(d, 1, [&](std::span<const std::vector<int>> cl, const MatrixXd&) {
    ASSERT_LT(step, ref.merges.size());
    EXPECT_EQ(Clusters(cl.begin(), cl.end()), ref.merges[step].first);
    ++step;
  });
  ASSERT_EQ(res.dendrogram.merges.size(), ref.heights.size());
  for (std::size_t k = 0; k < ref.heights.size(); ++k) {
    EXPECT_NEAR(res.dendrogram.merges[k].height, ref.heights[k], 1e-12);
  }
  for (int seed = 0; seed < 5; ++seed) {
    const auto rd = random_metric(9, 40 + seed);
    const Trace rt = brute_force_average(rd.d);
    const auto rr = hierarchical_clustering(rd, 1);
    for (std::size_t k = 0; k < rt.heights.size(); ++k) {
      EXPECT_NEAR(rr.dendrogram.merges[k].height, rt.heights[k], 1e-12);
    }
    for (int r = 1; r <= 9; ++r) {
      Clusters want = r == 1 ? Clusters{} : rt.merges[9 - r].first;
      if (r == 1) {
        want = {{0, 1, 2, 3, 4, 5, 6, 7, 8}};
      }
      EXPECT_EQ(hierarchical_clustering(rd, r).partition.clusters(), want);
    }
  }
}

TEST(Hierarchical, LanceWilliamsMatchesDirectAverage) {
  const auto d = random_metric(12, 7);
  hierarchical_clustering(d, 1, [&](std::span<const std::vector<int>> cl, const MatrixXd& link) {
    for (std::size_t i = 0; i < cl.size(); ++i) {
      for (std::size_t j = i + 1; j < cl.size(); ++j) {
        EXPECT_NEAR(link(i, j), linkage(d, cl[i], cl[j]), 1e-12);
      }
    }
  });
}

TEST(Hierarchical, DendrogramShape) {
  const auto d = random_metric(15, 8);
  const auto tree = hierarchical_clustering(d, 4).dendrogram;
  ASSERT_EQ(tree.merges.size(), 14u);
  std::vector<int> used(29, 0);
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const auto& m = tree.merges[k];
    EXPECT_EQ(m.id, 15 + static_cast<int>(k));
    EXPECT_LT(m.a, m.id);
    EXPECT_LT(m.b, m.id);
    EXPECT_EQ(used[m.a]++, 0);
    EXPECT_EQ(used[m.b]++, 0);
    if (k > 0) EXPECT_GE(m.height, tree.merges[k - 1].height);
  }
  EXPECT_EQ(tree.cut(4), hierarchical_clustering(d, 4).partition);
  EXPECT_EQ(tree.cut(15), ClusteringPartition::singletons(15));
}

TEST(Hierarchical, ScaleInvariant) {
  const auto d = random_metric(10, 9);
  DissimilarityMatrix scaled{3.7 * d.d, d.kind};
  const auto a = hierarchical_clustering(d, 1), b = hierarchical_clustering(scaled, 1);
  for (std::size_t k = 0; k < a.dendrogram.merges.size(); ++k) {
    EXPECT_EQ(a.dendrogram.merges[k].a, b.dendrogram.merges[k].a);
    EXPECT_EQ(a.dendrogram.merges[k].b, b.dendrogram.merges[k].b);
    EXPECT_NEAR(b.dendrogram.merges[k].height, 3.7 * a.dendrogram.merges[k].height, 1e-12);
  }
}

TEST(Random, ForcedCasesAndDeterminism) {
  EXPECT_EQ(random_clustering(6, 6, 3), ClusteringPartition::singletons(6));
  EXPECT_EQ(random_clustering(6, 1, 3).r(), 1);
  EXPECT_EQ(random_clustering(30, 7, 11), random_clustering(30, 7, 11));
  EXPECT_THROW(random_clustering(5, 6, 1), ArgumentError);
  EXPECT_THROW(random_clustering(5, 0, 1), ArgumentError);
  for (std::uint64_t s = 0; s < 20; ++s) expect_partition(random_clustering(20, 1 + s % 20, s), 20, 1 + s % 20);
}

TEST(Greedy, SmallCases) {
  const auto d = random_metric(6, 1);
  EXPECT_EQ(greedy_clustering(d, 6), ClusteringPartition::singletons(6));
  DissimilarityMatrix three{MatrixXd{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}}, DissimilarityKind::Position};
  EXPECT_EQ(greedy_clustering(three, 2).clusters(), (Clusters{{0, 1}, {2}}));
  EXPECT_THROW(greedy_clustering(d, 7), ArgumentError);
}

TEST(Greedy, EqualsSingleLinkage) {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto d = random_metric(6, 60 + s);
    for (int r = 1; r <= 6; ++r) {
      const auto got = greedy_clustering(d, r);
      expect_partition(got, 6, r);
      Clusters want = brute_force_single(d.d, r);
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got.clusters(), want);
    }
  }
}

}  // namespace
