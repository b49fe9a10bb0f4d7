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

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace netreduce {

class SecondOrderNetwork;

/// Undirected weighted edge with 0-based endpoints, i < j.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with positive edge weights. Edges are kept in
/// canonical order (sorted by (i, j)).
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Validates and canonicalizes; throws ArgumentError on self-loops,
  /// duplicates, out-of-range indices or non-positive weights. Endpoints
  /// may be given in either order.
  WeightedGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool connected() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Disjoint cover of {0, ..., n-1} by non-empty clusters.
class ClusteringPartition {
 public:
  ClusteringPartition() = default;
  /// Throws ArgumentError unless the clusters form a partition of [0, n).
  ClusteringPartition(int n, std::vector<std::vector<int>> clusters);

  static ClusteringPartition singletons(int n);

  int n() const { return n_; }
  int r() const { return static_cast<int>(clusters_.size()); }
  const std::vector<std::vector<int>>& clusters() const { return clusters_; }
  /// cluster index of every vertex
  std::vector<int> labels() const;

  friend bool operator==(const ClusteringPartition&, const ClusteringPartition&) = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> clusters_;
};

/// Binary n x r matrix whose columns indicate the clusters.
struct CharacteristicMatrix {
  Eigen::MatrixXd p;
};

/// Column k for edge (i, j) holds +1 at row i and -1 at row j.
Eigen::MatrixXd incidence_matrix(const WeightedGraph& g);

/// L = R diag(w) R^T, assembled entrywise.
Eigen::MatrixXd laplacian(const WeightedGraph& g);

/// Reads the edge set off a Laplacian. Off-diagonals below -tol become edges;
/// throws NotLaplacianError on asymmetry, positive couplings or nonzero row
/// sums (all relative to ||l||_2).
WeightedGraph graph_from_laplacian(const Eigen::MatrixXd& l, double tol_rel = 1e-9);

CharacteristicMatrix characteristic_matrix(const ClusteringPartition& part, int n);

/// Watts-Strogatz small-world graph with unit weights: a ring lattice of mean
/// degree k whose edges are rewired with probability beta. Redraws until the
/// graph is connected, at most `max_attempts` times.
WeightedGraph watts_strogatz(int n, int k, double beta, std::uint64_t seed,
                             int max_attempts = 200);

struct BenchmarkConfig {
  int m = 5;             // inputs
  int k = 4;             // Watts-Strogatz mean degree
  double beta = 0.3;     // rewiring probability
  double alpha = 0.5;    // vertex damper = alpha * mass
  double weight_min = 0.5;
  double weight_max = 1.5;
};

/// Raw ingredients of a benchmark system, kept graph-native for export.
struct BenchmarkInstance {
  Eigen::VectorXd masses;
  WeightedGraph springs;
  WeightedGraph dampers;
  double alpha = 0.5;
  Eigen::MatrixXd f;
};

/// Draws the ingredients of `benchmark_system`. For n < k + 1 the degree is
/// lowered to the largest even value below n; n = 2 gives a single edge.
BenchmarkInstance benchmark_instance(int n, const BenchmarkConfig& cfg, std::uint64_t seed);

/// Mass-damper-spring benchmark: M_ii = (i mod 10) + 1 for 1-based i,
/// independent small-world spring and damper topologies with uniform random
/// weights, D = L_damper + alpha M, F uniform on [-1, 1].
SecondOrderNetwork benchmark_system(int n, const BenchmarkConfig& cfg, std::uint64_t seed);

}  // namespace netreduce
