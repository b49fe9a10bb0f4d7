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

#include <random>
#include <set>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "netreduce/errors.hpp"
#include "netreduce/network.hpp"
#include "netreduce/sys2.hpp"
#include "oracles.hpp"

namespace {

using namespace netreduce;
using Eigen::MatrixXd;
using Eigen::VectorXd;

WeightedGraph random_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.1, 3.0);
  std::bernoulli_distribution coin(0.4);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({j, i, w(rng)});  // reversed on purpose
    }
  }
  return WeightedGraph(n, edges);
}

TEST(Graph, CanonicalizesAndRejectsBadEdges) {
  const WeightedGraph g(3, {{2, 0, 1.0}, {1, 0, 2.0}});
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 2.0}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 2, 1.0}));
  EXPECT_THROW(WeightedGraph(3, {{1, 1, 1.0}}), ArgumentError);
  EXPECT_THROW(WeightedGraph(3, {{0, 3, 1.0}}), ArgumentError);
  EXPECT_THROW(WeightedGraph(3, {{0, 1, 0.0}}), ArgumentError);
  EXPECT_THROW(WeightedGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), ArgumentError);
}

TEST(Incidence, SingleEdge) {
  const MatrixXd r = incidence_matrix(WeightedGraph(2, {{0, 1, 1.0}}));
  ASSERT_EQ(r.cols(), 1);
  EXPECT_EQ(r(0, 0), 1.0);
  EXPECT_EQ(r(1, 0), -1.0);
}

TEST(Incidence, EmptyEdgeList) {
  const MatrixXd r = incidence_matrix(WeightedGraph(4, {}));
  EXPECT_EQ(r.rows(), 4);
  EXPECT_EQ(r.cols(), 0);
}

TEST(Incidence, Triangle) {
  const MatrixXd r = incidence_matrix(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  for (Eigen::Index k = 0; k < r.cols(); ++k) {
    EXPECT_EQ(r.col(k).sum(), 0.0);
    EXPECT_DOUBLE_EQ(r.col(k).norm(), std::sqrt(2.0));
  }
}

TEST(Laplacian, SingleEdge) {
  const MatrixXd l = laplacian(WeightedGraph(2, {{0, 1, 2.5}}));
  EXPECT_EQ(l, (MatrixXd{{2.5, -2.5}, {-2.5, 2.5}}));
}

TEST(Laplacian, UnitTriangle) {
  const MatrixXd l = laplacian(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  EXPECT_EQ(l, (MatrixXd{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
}

TEST(Laplacian, EqualsIncidenceProduct) {
  const WeightedGraph g = random_graph(7, 3);
  VectorXd w(static_cast<Eigen::Index>(g.edges().size()));
  for (std::size_t k = 0; k < g.edges().size(); ++k) w(k) = g.edges()[k].w;
  const MatrixXd r = incidence_matrix(g);
  EXPECT_LE((laplacian(g) - r * w.asDiagonal() * r.transpose()).norm(), 1e-12);
}

TEST(Laplacian, RandomGraphsArePsdWithZeroRowSums) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const int n = 2 + static_cast<int>(s % 9);
    const MatrixXd l = laplacian(random_graph(n, 10 + s));
    const double norm = std::max(1e-300, l.norm());
    EXPECT_LE((l * VectorXd::Ones(n)).cwiseAbs().maxCoeff(), 1e-12 * norm);
    EXPECT_EQ(l, l.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(l);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LE(std::abs(es.eigenvalues()(0)), 1e-10 * std::max(1.0, norm));
    for (int t = 0; t < 5; ++t) {
      VectorXd x(n);
      for (int i = 0; i < n; ++i) x(i) = gauss(rng);
      EXPECT_GE(x.dot(l * x), -1e-10 * x.squaredNorm());
    }
  }
}

TEST(GraphFromLaplacian, ReducedExampleGraph) {
  const MatrixXd lhat{{4, -1, -3}, {-1, 3, -2}, {-3, -2, 5}};
  const WeightedGraph g = graph_from_laplacian(lhat);
  const std::vector<Edge> want{{0, 1, 1.0}, {0, 2, 3.0}, {1, 2, 2.0}};
  EXPECT_EQ(g.edges(), want);
}

TEST(GraphFromLaplacian, ZeroMatrix) {
  EXPECT_TRUE(graph_from_laplacian(MatrixXd::Zero(3, 3)).edges().empty());
}

TEST(GraphFromLaplacian, RoundTrip) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const WeightedGraph g = random_graph(3 + static_cast<int>(s), 40 + s);
    EXPECT_EQ(graph_from_laplacian(laplacian(g)), g);
    const MatrixXd l = laplacian(g);
    EXPECT_LE((laplacian(graph_from_laplacian(l)) - l).norm(), 1e-9 * std::max(1.0, l.norm()));
  }
}

TEST(GraphFromLaplacian, RejectsNonLaplacians) {
  EXPECT_THROW(graph_from_laplacian(MatrixXd{{1, 1}, {1, 1}}), NotLaplacianError);
  EXPECT_THROW(graph_from_laplacian(MatrixXd{{2, -1}, {-1, 1}}), NotLaplacianError);
}

TEST(Characteristic, ExamplePartition) {
  const ClusteringPartition part(4, {{0}, {1}, {2, 3}});
  const MatrixXd p = characteristic_matrix(part, 4).p;
  EXPECT_EQ(p, (MatrixXd{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}}));
}

TEST(Characteristic, SingletonsAndWholeSet) {
  EXPECT_EQ(characteristic_matrix(ClusteringPartition::singletons(5), 5).p, MatrixXd::Identity(5, 5));
  const MatrixXd one = characteristic_matrix(ClusteringPartition(4, {{0, 1, 2, 3}}), 4).p;
  EXPECT_EQ(one, MatrixXd::Ones(4, 1));
}

TEST(Characteristic, GramIsClusterSizes) {
  const ClusteringPartition part(7, {{6, 0}, {2, 3, 4}, {1}, {5}});
  const MatrixXd p = characteristic_matrix(part, 7).p;
  EXPECT_EQ(p.transpose() * p, VectorXd((VectorXd(4) << 2, 3, 1, 1).finished()).asDiagonal().toDenseMatrix());
  EXPECT_EQ(p * VectorXd::Ones(4), VectorXd::Ones(7));
  EXPECT_THROW(characteristic_matrix(part, 6), DimensionError);
}

TEST(Partition, RejectsInvalidCovers) {
  EXPECT_THROW(ClusteringPartition(3, {{0, 1}}), ArgumentError);
  EXPECT_THROW(ClusteringPartition(3, {{0, 1}, {1, 2}}), ArgumentError);
  EXPECT_THROW(ClusteringPartition(3, {{0, 1, 2}, {}}), ArgumentError);
  EXPECT_THROW(ClusteringPartition(2, {{0, 2}}), ArgumentError);
}

std::vector<int> degrees(const WeightedGraph& g) {
  std::vector<int> deg(g.n(), 0);
  for (const auto& e : g.edges()) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

TEST(WattsStrogatz, NoRewiringKeepsLattice) {
  const WeightedGraph g = watts_strogatz(12, 4, 0.0, 3);
  for (int d : degrees(g)) EXPECT_EQ(d, 4);
  const WeightedGraph cycle = watts_strogatz(6, 2, 0.0, 9);
  const std::vector<Edge> want{{0, 1, 1.0}, {0, 5, 1.0}, {1, 2, 1.0},
                               {2, 3, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}};
  EXPECT_EQ(cycle.edges(), want);
}

TEST(WattsStrogatz, DeterministicConnectedSimple) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const WeightedGraph a = watts_strogatz(30, 4, 0.3, s);
    EXPECT_EQ(a, watts_strogatz(30, 4, 0.3, s));
    EXPECT_TRUE(a.connected());
    EXPECT_EQ(a.edges().size(), 60u);  // rewiring preserves the edge count
  }
}

TEST(WattsStrogatz, RejectsBadParameters) {
  EXPECT_THROW(watts_strogatz(10, 3, 0.1, 1), ArgumentError);
  EXPECT_THROW(watts_strogatz(4, 4, 0.1, 1), ArgumentError);
  EXPECT_THROW(watts_strogatz(10, 4, 1.5, 1), ArgumentError);
}

TEST(Benchmark, MassPattern) {
  const auto sys = benchmark_system(12, {}, 4);
  EXPECT_EQ(sys.masses()(0), 2.0);
  EXPECT_EQ(sys.masses()(9), 1.0);
  EXPECT_EQ(sys.masses()(10), 2.0);
}

TEST(Benchmark, RejectsNonPositiveAlpha) {
  BenchmarkConfig cfg;
  cfg.alpha = 0.0;
  EXPECT_THROW(benchmark_system(10, cfg, 1), ArgumentError);
  EXPECT_THROW(benchmark_system(1, {}, 1), ArgumentError);
}

TEST(Benchmark, SeventyVertexInstanceValidates) {
  const auto sys = benchmark_system(70, {}, 1);
  EXPECT_EQ(sys.n(), 70);
  EXPECT_EQ(sys.m(), 5);
  EXPECT_TRUE(check_assumptions(sys.masses(), sys.damping(), sys.stiffness(), sys.input()).empty());
  EXPECT_LE(sys.input().cwiseAbs().maxCoeff(), 1.0);
}

TEST(Benchmark, SmallOrdersAndDeterminism) {
  for (int n = 2; n <= 6; ++n) EXPECT_NO_THROW(benchmark_system(n, {}, 3));
  const auto a = benchmark_instance(20, {}, 8), b = benchmark_instance(20, {}, 8);
  EXPECT_EQ(a.springs, b.springs);
  EXPECT_EQ(a.dampers, b.dampers);
  EXPECT_EQ(a.f, b.f);
  EXPECT_NE(a.springs, a.dampers);
}

}  // namespace
