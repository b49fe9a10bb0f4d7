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
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "netreduce/gramian.hpp"
#include "netreduce/network.hpp"

namespace netreduce {

enum class DissimilarityKind { Position, Velocity };

/// Pairwise H2 distances between the input-to-vertex transfer functions
/// (positions or velocities). Symmetric, zero diagonal.
struct DissimilarityMatrix {
  Eigen::MatrixXd d;
  DissimilarityKind kind = DissimilarityKind::Position;

  int n() const { return static_cast<int>(d.rows()); }
};

/// d_ij = ||eta_i - eta_j||_H2 read off the position block of the Gramian.
DissimilarityMatrix dissimilarity_position(const SecondOrderNetwork& sys,
                                           const NetworkGramian& g, int threads = 1);
/// Same for s eta(s), from the velocity block.
DissimilarityMatrix dissimilarity_velocity(const SecondOrderNetwork& sys,
                                           const NetworkGramian& g, int threads = 1);
DissimilarityMatrix dissimilarity(const SecondOrderNetwork& sys, const NetworkGramian& g,
                                  DissimilarityKind kind, int threads = 1);

/// Average linkage: mean of d over all cross pairs. Throws ArgumentError on
/// empty or overlapping clusters.
double linkage(const DissimilarityMatrix& d, std::span<const int> a, std::span<const int> b);

/// One agglomeration step. Leaves are 0..n-1, merged clusters get ids
/// n, n+1, ... in merge order.
struct Merge {
  int a = 0;
  int b = 0;
  double height = 0.0;
  int id = 0;
};

struct Dendrogram {
  int n = 0;
  std::vector<Merge> merges;

  /// Partition left after the first n - r merges.
  ClusteringPartition cut(int r) const;
};

struct HierarchicalResult {
  ClusteringPartition partition;
  Dendrogram dendrogram;
};

/// Called before every merge with the current clusters (ordered by smallest
/// member) and the pairwise linkage matrix between them.
using MergeObserver =
    std::function<void(std::span<const std::vector<int>> clusters, const Eigen::MatrixXd& link)>;

/// Greedy agglomeration under average linkage. Merges the pair with the
/// smallest linkage until r clusters remain (ties go to the lexicographically
/// first pair); the dendrogram always runs to a single cluster.
HierarchicalResult hierarchical_clustering(const DissimilarityMatrix& d, int r,
                                           const MergeObserver& observer = {});

/// Random partition into r non-empty clusters: a seeded permutation seeds
/// one vertex per cluster, the rest are assigned uniformly.
ClusteringPartition random_clustering(int n, int r, std::uint64_t seed);

/// Unites the clusters of vertex pairs in ascending d_ij until r clusters
/// remain (single linkage).
ClusteringPartition greedy_clustering(const DissimilarityMatrix& d, int r);

}  // namespace netreduce
