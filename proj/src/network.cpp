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

#include "netreduce/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "netreduce/errors.hpp"
#include "netreduce/matrixeq.hpp"
#include "netreduce/sys2.hpp"

namespace netreduce {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ArgumentError("graph: negative vertex count");
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n) {
      throw ArgumentError("graph: edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                          ") out of range");
    }
    if (e.i == e.j) throw ArgumentError("graph: self-loop at " + std::to_string(e.i));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw ArgumentError("graph: non-positive weight on edge (" + std::to_string(e.i) + ", " +
                          std::to_string(e.j) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j) {
      throw ArgumentError("graph: duplicate edge (" + std::to_string(edges_[k].i) + ", " +
                          std::to_string(edges_[k].j) + ")");
    }
  }
}

bool WeightedGraph::connected() const {
  if (n_ <= 1) return true;
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n_;
  for (const auto& e : edges_) {
    const int a = find(e.i), b = find(e.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

ClusteringPartition::ClusteringPartition(int n, std::vector<std::vector<int>> clusters)
    : n_(n), clusters_(std::move(clusters)) {
  std::vector<int> seen(std::max(n, 0), 0);
  for (auto& c : clusters_) {
    if (c.empty()) throw ArgumentError("partition: empty cluster");
    std::sort(c.begin(), c.end());
    for (int v : c) {
      if (v < 0 || v >= n) throw ArgumentError("partition: vertex " + std::to_string(v) +
                                               " out of range");
      if (seen[v]++) throw ArgumentError("partition: vertex " + std::to_string(v) +
                                         " appears twice");
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!seen[v]) throw ArgumentError("partition: vertex " + std::to_string(v) + " not covered");
  }
}

ClusteringPartition ClusteringPartition::singletons(int n) {
  std::vector<std::vector<int>> c(n);
  for (int v = 0; v < n; ++v) c[v] = {v};
  return ClusteringPartition(n, std::move(c));
}

std::vector<int> ClusteringPartition::labels() const {
  std::vector<int> out(n_);
  for (int k = 0; k < r(); ++k) {
    for (int v : clusters_[k]) out[v] = k;
  }
  return out;
}

Eigen::MatrixXd incidence_matrix(const WeightedGraph& g) {
  const auto& edges = g.edges();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.n(), static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    r(edges[k].i, k) = 1.0;
    r(edges[k].j, k) = -1.0;
  }
  return r;
}

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) {
    l(e.i, e.i) += e.w;
    l(e.j, e.j) += e.w;
    l(e.i, e.j) -= e.w;
    l(e.j, e.i) -= e.w;
  }
  return l;
}

WeightedGraph graph_from_laplacian(const Eigen::MatrixXd& l, double tol_rel) {
  if (l.rows() != l.cols()) throw NotLaplacianError("graph_from_laplacian: not square");
  const int n = static_cast<int>(l.rows());
  const double tol = tol_rel * spectral_norm(l);
  if ((l - l.transpose()).cwiseAbs().maxCoeff() > tol && n > 0) {
    throw NotLaplacianError("graph_from_laplacian: matrix is not symmetric");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const double row_sum = l.row(i).sum();
    if (std::abs(row_sum) > tol) {
      throw NotLaplacianError("graph_from_laplacian: row " + std::to_string(i) + " sums to " +
                              std::to_string(row_sum));
    }
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (l(i, j) + l(j, i));
      if (v > tol) {
        throw NotLaplacianError("graph_from_laplacian: positive coupling at (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (v < -tol) edges.push_back({i, j, -v});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

CharacteristicMatrix characteristic_matrix(const ClusteringPartition& part, int n) {
  if (part.n() != n) {
    throw DimensionError("characteristic_matrix: partition covers " + std::to_string(part.n()) +
                         " vertices, expected " + std::to_string(n));
  }
  CharacteristicMatrix out{Eigen::MatrixXd::Zero(n, part.r())};
  for (int k = 0; k < part.r(); ++k) {
    for (int v : part.clusters()[k]) out.p(v, k) = 1.0;
  }
  return out;
}

WeightedGraph watts_strogatz(int n, int k, double beta, std::uint64_t seed, int max_attempts) {
  if (k < 2 || k % 2 != 0 || k >= n) {
    throw ArgumentError("watts_strogatz: need even k with 2 <= k < n");
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ArgumentError("watts_strogatz: beta must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    auto link = [&](int a, int b, char on) { adj[a][b] = adj[b][a] = on; };
    for (int i = 0; i < n; ++i) {
      for (int j = 1; j <= k / 2; ++j) link(i, (i + j) % n, 1);
    }
    std::vector<int> candidates;
    for (int j = 1; j <= k / 2; ++j) {
      for (int i = 0; i < n; ++i) {
        const int t = (i + j) % n;
        if (!adj[i][t] || coin(rng) >= beta) continue;
        candidates.clear();
        for (int w = 0; w < n; ++w) {
          if (w != i && !adj[i][w]) candidates.push_back(w);
        }
        if (candidates.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        link(i, t, 0);
        link(i, candidates[pick(rng)], 1);
      }
    }
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (adj[a][b]) edges.push_back({a, b, 1.0});
      }
    }
    WeightedGraph g(n, std::move(edges));
    if (g.connected()) return g;
  }
  throw GenerationError("watts_strogatz: no connected graph after " +
                        std::to_string(max_attempts) + " attempts");
}

namespace {

WeightedGraph small_world_topology(int n, const BenchmarkConfig& cfg, std::uint64_t seed) {
  if (n == 2) return WeightedGraph(2, {{0, 1, 1.0}});
  const int largest_even_below_n = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  return watts_strogatz(n, std::min(cfg.k, largest_even_below_n), cfg.beta, seed);
}

WeightedGraph reweighted(const WeightedGraph& g, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> weight(lo, hi);
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w = weight(rng);
  return WeightedGraph(g.n(), std::move(edges));
}

}  // namespace

BenchmarkInstance benchmark_instance(int n, const BenchmarkConfig& cfg, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("benchmark: need at least 2 vertices");
  if (cfg.m < 1) throw ArgumentError("benchmark: need at least one input");
  if (!(cfg.alpha > 0.0)) {
    throw ArgumentError("benchmark: vertex damper constant alpha must be positive");
  }
  if (!(cfg.weight_min > 0.0) || cfg.weight_max < cfg.weight_min) {
    throw ArgumentError("benchmark: need 0 < weight_min <= weight_max");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t spring_seed = rng();
  const std::uint64_t damper_seed = rng();

  BenchmarkInstance inst;
  inst.alpha = cfg.alpha;
  inst.springs = reweighted(small_world_topology(n, cfg, spring_seed), rng, cfg.weight_min,
                            cfg.weight_max);
  inst.dampers = reweighted(small_world_topology(n, cfg, damper_seed), rng, cfg.weight_min,
                            cfg.weight_max);
  inst.masses.resize(n);
  for (int i = 1; i <= n; ++i) inst.masses(i - 1) = static_cast<double>(i % 10 + 1);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  inst.f.resize(n, cfg.m);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < cfg.m; ++c) inst.f(i, c) = entry(rng);
  }
  return inst;
}

SecondOrderNetwork benchmark_system(int n, const BenchmarkConfig& cfg, std::uint64_t seed) {
  const BenchmarkInstance inst = benchmark_instance(n, cfg, seed);
  Eigen::MatrixXd d = laplacian(inst.dampers);
  d.diagonal() += inst.alpha * inst.masses;
  return validate(inst.masses, std::move(d), laplacian(inst.springs), inst.f);
}

}  // namespace netreduce
