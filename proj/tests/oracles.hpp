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

// Independent reference computations shared by the test binaries. Nothing
// here calls the Schur-based solvers.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "netreduce/cluster.hpp"
#include "netreduce/network.hpp"
#include "netreduce/sys2.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Minimum-norm least-squares solution of a X + X b + c = 0 through the
/// Kronecker form (I (x) a + b^T (x) I) vec X = -vec c.
inline MatrixXd kron_sylvester(const MatrixXd& a, const MatrixXd& b, const MatrixXd& c) {
  const Eigen::Index n1 = a.rows(), n2 = b.rows();
  MatrixXd k = MatrixXd::Zero(n1 * n2, n1 * n2);
  for (Eigen::Index j = 0; j < n2; ++j) {
    k.block(j * n1, j * n1, n1, n1) += a;
    for (Eigen::Index i = 0; i < n2; ++i) {
      k.block(j * n1, i * n1, n1, n1) += b(i, j) * MatrixXd::Identity(n1, n1);
    }
  }
  const VectorXd rhs = -Eigen::Map<const VectorXd>(c.data(), c.size());
  const VectorXd x = k.completeOrthogonalDecomposition().solve(rhs);
  return Eigen::Map<const MatrixXd>(x.data(), n1, n2);
}

/// Composite Simpson rule for
///   int_0^T (e^{a1 t} - j1) b1 b2^T (e^{a2 t} - j2)^T dt.
inline MatrixXd quadrature_gramian(const MatrixXd& a1, const MatrixXd& b1, const MatrixXd& j1,
                                   const MatrixXd& a2, const MatrixXd& b2, const MatrixXd& j2,
                                   double t_max, int steps) {
  if (steps % 2) ++steps;
  const double h = t_max / steps;
  const MatrixXd phi1 = (a1 * h).exp(), phi2 = (a2 * h).exp();
  MatrixXd e1 = b1, e2 = b2;
  const MatrixXd jb1 = j1 * b1, jb2 = j2 * b2;
  MatrixXd sum = MatrixXd::Zero(a1.rows(), a2.rows());
  for (int k = 0; k <= steps; ++k) {
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * (e1 - jb1) * (e2 - jb2).transpose();
    e1 = phi1 * e1;
    e2 = phi2 * e2;
  }
  return sum * (h / 3.0);
}

/// Horizon after which the slowest transient has decayed by e^-40.
inline double horizon(const netreduce::SecondOrderNetwork& sys) {
  return 40.0 / netreduce::slowest_decay_rate(sys);
}

/// Step count keeping h * ||A|| <= 1/32, which puts Simpson error near 1e-9.
inline int quadrature_steps(const MatrixXd& a, double t_max) {
  const double rate = a.cwiseAbs().rowwise().sum().maxCoeff();
  return std::max(2000, static_cast<int>(std::ceil(t_max * rate * 32.0)) & ~1);
}

/// Four vertices, two inputs; reference network with known reductions.
struct FourVertex {
  VectorXd masses{{1.0, 2.0, 1.0, 2.0}};
  MatrixXd d{{4, -2, 0, -1}, {-2, 2, 0, 0}, {0, 0, 3.5, -3}, {-1, 0, -3, 4}};
  MatrixXd l{{4, -1, -2, -1}, {-1, 3, -1, -1}, {-2, -1, 5, -2}, {-1, -1, -2, 4}};
  MatrixXd f{{1, 0}, {0, 0}, {0, 0}, {0, 1}};

  netreduce::SecondOrderNetwork system() const { return netreduce::validate(masses, d, l, f); }
};

/// Dense random network: random connected weighted graph for L, Laplacian
/// plus positive diagonal for D, arbitrary F.
inline netreduce::SecondOrderNetwork random_network(int n, int m, std::uint64_t seed,
                                                    bool balanced_input = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.2, 2.0), u(-1.0, 1.0), mass(0.5, 3.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<netreduce::Edge> springs, dampers;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    springs.push_back({parent(rng), i, w(rng)});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) dampers.push_back({i, j, w(rng)});
    }
  }
  // Spanning-tree springs plus a few extra chords.
  for (int k = 0; k < n / 2; ++k) {
    std::uniform_int_distribution<int> v(0, n - 1);
    const int a = v(rng), b = v(rng);
    if (a == b) continue;
    bool dup = false;
    for (const auto& e : springs) dup |= (std::min(a, b) == std::min(e.i, e.j) && std::max(a, b) == std::max(e.i, e.j));
    if (!dup) springs.push_back({a, b, w(rng)});
  }
  VectorXd masses(n);
  for (int i = 0; i < n; ++i) masses(i) = mass(rng);
  MatrixXd d = netreduce::laplacian(netreduce::WeightedGraph(n, dampers));
  for (int i = 0; i < n; ++i) d(i, i) += 0.3 + 0.5 * (u(rng) + 1.0);
  MatrixXd f(n, m);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) f(i, k) = u(rng);
  }
  if (balanced_input) f.rowwise() -= f.colwise().mean();
  return netreduce::validate(masses, d, netreduce::laplacian(netreduce::WeightedGraph(n, springs)), f);
}

/// Uniform-style random partition of n vertices into r non-empty clusters.
inline netreduce::ClusteringPartition random_partition(int n, int r, std::uint64_t seed) {
  return netreduce::random_clustering(n, r, seed);
}

inline double rel_diff(const MatrixXd& x, const MatrixXd& ref) {
  const double scale = ref.norm();
  return (x - ref).norm() / (scale > 0.0 ? scale : 1.0);
}

}  // namespace oracle
