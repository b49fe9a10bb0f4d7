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

#include "netreduce/cluster.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <tuple>

#include "netreduce/errors.hpp"

namespace netreduce {

namespace {

void require_order(int n, int r) {
  if (r < 1 || r > n) {
    throw ArgumentError("clustering: target order " + std::to_string(r) + " outside [1, " +
                        std::to_string(n) + "]");
  }
}

ClusteringPartition from_labels(int n, const std::vector<int>& root) {
  std::vector<std::vector<int>> clusters;
  std::vector<int> slot(n, -1);
  for (int v = 0; v < n; ++v) {
    const int key = root[v];
    if (slot[key] < 0) {
      slot[key] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[slot[key]].push_back(v);
  }
  return ClusteringPartition(n, std::move(clusters));
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
};

DissimilarityMatrix pairwise(const SecondOrderNetwork& sys, const NetworkGramian& g,
                             DissimilarityKind kind, int threads) {
  const int n = sys.n();
  if (g.p.rows() != 2 * n) {
    throw DimensionError("dissimilarity: Gramian does not match the network");
  }
  const Eigen::Index offset = kind == DissimilarityKind::Position ? 0 : n;
  DissimilarityMatrix out{Eigen::MatrixXd::Zero(n, n), kind};
  auto fill_rows = [&](int first, int stride) {
    std::vector<std::vector<SelectorEntry>> row(1);
    for (int i = first; i < n; i += stride) {
      for (int j = i + 1; j < n; ++j) {
        row[0] = {{offset + i, 1.0}, {offset + j, -1.0}};
        out.d(i, j) = selector_h2(g.p, row);
      }
    }
  };
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(fill_rows, t, threads);
  }
  out.d.triangularView<Eigen::StrictlyLower>() = out.d.transpose();
  return out;
}

}  // namespace

DissimilarityMatrix dissimilarity_position(const SecondOrderNetwork& sys, const NetworkGramian& g,
                                           int threads) {
  return pairwise(sys, g, DissimilarityKind::Position, threads);
}

DissimilarityMatrix dissimilarity_velocity(const SecondOrderNetwork& sys, const NetworkGramian& g,
                                           int threads) {
  return pairwise(sys, g, DissimilarityKind::Velocity, threads);
}

DissimilarityMatrix dissimilarity(const SecondOrderNetwork& sys, const NetworkGramian& g,
                                  DissimilarityKind kind, int threads) {
  return pairwise(sys, g, kind, threads);
}

double linkage(const DissimilarityMatrix& d, std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty()) throw ArgumentError("linkage: empty cluster");
  std::vector<char> in_a(d.n(), 0);
  for (int i : a) {
    if (i < 0 || i >= d.n()) throw ArgumentError("linkage: vertex out of range");
    in_a[i] = 1;
  }
  double sum = 0.0;
  for (int j : b) {
    if (j < 0 || j >= d.n()) throw ArgumentError("linkage: vertex out of range");
    if (in_a[j]) throw ArgumentError("linkage: clusters overlap at vertex " + std::to_string(j));
  }
  for (int i : a) {
    for (int j : b) sum += d.d(i, j);
  }
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

ClusteringPartition Dendrogram::cut(int r) const {
  require_order(n, r);
  DisjointSets sets(2 * n);
  for (int k = 0; k < n - r; ++k) {
    const auto& m = merges.at(k);
    sets.parent[m.a] = m.id;
    sets.parent[m.b] = m.id;
  }
  std::vector<int> root(n);
  for (int v = 0; v < n; ++v) root[v] = sets.find(v);
  // Roots range over [0, 2n); compress them to first-seen order.
  std::vector<int> compact(2 * n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (compact[root[v]] < 0) compact[root[v]] = next++;
    root[v] = compact[root[v]];
  }
  return from_labels(n, root);
}

HierarchicalResult hierarchical_clustering(const DissimilarityMatrix& d, int r,
                                           const MergeObserver& observer) {
  const int n = d.n();
  require_order(n, r);

  // Slot s holds the cluster whose smallest vertex is s; merging keeps the
  // lower slot, so ascending slot order is the lexicographic label order.
  Eigen::MatrixXd link = d.d;
  std::vector<std::vector<int>> members(n);
  std::vector<int> ids(n);
  std::vector<int> active(n);
  for (int v = 0; v < n; ++v) {
    members[v] = {v};
    ids[v] = v;
    active[v] = v;
  }

  HierarchicalResult out;
  out.dendrogram.n = n;
  if (r == n) out.partition = ClusteringPartition::singletons(n);

  while (active.size() > 1) {
    if (observer) {
      const auto k = static_cast<Eigen::Index>(active.size());
      std::vector<std::vector<int>> current;
      Eigen::MatrixXd sub(k, k);
      for (Eigen::Index x = 0; x < k; ++x) {
        current.push_back(members[active[x]]);
        for (Eigen::Index y = 0; y < k; ++y) sub(x, y) = x == y ? 0.0 : link(active[x], active[y]);
      }
      observer(current, sub);
    }

    double best = std::numeric_limits<double>::infinity();
    std::size_t mu = 0, nu = 1;
    for (std::size_t x = 0; x + 1 < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double v = link(active[x], active[y]);
        if (v < best) {
          best = v;
          mu = x;
          nu = y;
        }
      }
    }

    const int sa = active[mu], sb = active[nu];
    const double na = static_cast<double>(members[sa].size());
    const double nb = static_cast<double>(members[sb].size());
    for (int sc : active) {
      if (sc == sa || sc == sb) continue;
      const double merged = (na * link(sa, sc) + nb * link(sb, sc)) / (na + nb);
      link(sa, sc) = link(sc, sa) = merged;
    }
    const int new_id = n + static_cast<int>(out.dendrogram.merges.size());
    out.dendrogram.merges.push_back({ids[sa], ids[sb], best, new_id});
    members[sa].insert(members[sa].end(), members[sb].begin(), members[sb].end());
    std::sort(members[sa].begin(), members[sa].end());
    members[sb].clear();
    ids[sa] = new_id;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(nu));

    if (static_cast<int>(active.size()) == r) {
      std::vector<std::vector<int>> clusters;
      for (int s : active) clusters.push_back(members[s]);
      out.partition = ClusteringPartition(n, std::move(clusters));
    }
  }
  return out;
}

ClusteringPartition random_clustering(int n, int r, std::uint64_t seed) {
  require_order(n, r);
  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> label(n);
  std::uniform_int_distribution<int> pick(0, r - 1);
  for (int k = 0; k < n; ++k) label[perm[k]] = k < r ? k : pick(rng);
  std::vector<int> first_vertex(r, n);
  for (int v = n - 1; v >= 0; --v) first_vertex[label[v]] = v;
  std::vector<int> root(n);
  for (int v = 0; v < n; ++v) root[v] = first_vertex[label[v]];
  return from_labels(n, root);
}

ClusteringPartition greedy_clustering(const DissimilarityMatrix& d, int r) {
  const int n = d.n();
  require_order(n, r);
  std::vector<std::tuple<double, int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(d.d(i, j), i, j);
  }
  std::sort(pairs.begin(), pairs.end());
  DisjointSets sets(n);
  int components = n;
  for (const auto& [w, i, j] : pairs) {
    if (components == r) break;
    const int a = sets.find(i), b = sets.find(j);
    if (a == b) continue;
    sets.parent[std::max(a, b)] = std::min(a, b);
    --components;
  }
  std::vector<int> root(n);
  for (int v = 0; v < n; ++v) root[v] = sets.find(v);
  return from_labels(n, root);
}

}  // namespace netreduce
