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

#include "netreduce/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netreduce/errors.hpp"

namespace netreduce {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kClampTol = 1e-10;

}  // namespace

ReducedModel project(const SecondOrderNetwork& sys, const ClusteringPartition& part) {
  const int n = sys.n();
  if (part.n() != n) {
    throw DimensionError("project: partition covers " + std::to_string(part.n()) +
                         " vertices, network has " + std::to_string(n));
  }
  const int r = part.r();
  const std::vector<int> label = part.labels();
  const MatrixXd& d = sys.damping();
  const MatrixXd& l = sys.stiffness();

  VectorXd m_hat = VectorXd::Zero(r);
  MatrixXd d_hat = MatrixXd::Zero(r, r);
  MatrixXd l_hat = MatrixXd::Zero(r, r);
  MatrixXd f_hat = MatrixXd::Zero(r, sys.m());
  for (int i = 0; i < n; ++i) {
    m_hat(label[i]) += sys.masses()(i);
    f_hat.row(label[i]) += sys.input().row(i);
    for (int j = 0; j < n; ++j) {
      d_hat(label[i], label[j]) += d(i, j);
      l_hat(label[i], label[j]) += l(i, j);
    }
  }
  d_hat = 0.5 * (d_hat + d_hat.transpose()).eval();
  l_hat = 0.5 * (l_hat + l_hat.transpose()).eval();
  // Merged rows are summed from many entries, so pin their row sums to zero.
  // Singleton rows are already exact copies and stay untouched.
  const auto& groups = part.clusters();
  for (int k = 0; k < r; ++k) {
    if (groups[k].size() < 2) continue;
    double off = 0.0;
    for (int j = 0; j < r; ++j) {
      if (j != k) off += l_hat(k, j);
    }
    l_hat(k, k) = -off;
  }

  ReducedModel out{validate(std::move(m_hat), std::move(d_hat), l_hat, std::move(f_hat)),
                   characteristic_matrix(part, n), part, WeightedGraph{}};
  out.graph = graph_from_laplacian(l_hat);
  return out;
}

ReducedRealization reduced_first_order(const ReducedModel& red) {
  return {first_order(red.system), convergence_matrix(red.system)};
}

ErrorSystem build_error_system(const SecondOrderNetwork& sys, const ReducedModel& red) {
  const Eigen::Index n = sys.n(), r = red.system.n();
  const auto fo = first_order(sys);
  const auto cd = convergence_matrix(sys);
  const auto ro = reduced_first_order(red);
  const MatrixXd& p = red.p.p;

  ErrorSystem e;
  e.a_e = MatrixXd::Zero(2 * (n + r), 2 * (n + r));
  e.a_e.topLeftCorner(2 * n, 2 * n) = fo.a;
  e.a_e.bottomRightCorner(2 * r, 2 * r) = ro.realization.a;
  e.b_e.resize(2 * (n + r), sys.m());
  e.b_e << fo.b, ro.realization.b;
  e.j_e = MatrixXd::Zero(2 * (n + r), 2 * (n + r));
  e.j_e.topLeftCorner(2 * n, 2 * n) = cd.j;
  e.j_e.bottomRightCorner(2 * r, 2 * r) = ro.convergence.j;
  e.c_e = MatrixXd::Zero(n, 2 * (n + r));
  e.c_e.block(0, 0, n, n).setIdentity();
  e.c_e.block(0, 2 * n, n, r) = -p;
  e.c_e_velocity = MatrixXd::Zero(n, 2 * (n + r));
  e.c_e_velocity.block(0, n, n, n).setIdentity();
  e.c_e_velocity.block(0, 2 * n + r, n, r) = -p;
  return e;
}

ErrorEvaluator::ErrorEvaluator(const SecondOrderNetwork& sys, const SolveOptions& opts)
    : sys_(sys), opts_(opts), full_(factorize(sys, opts)), gramian_(network_gramian(full_, opts)) {}

ErrorEvaluator::ErrorEvaluator(const SecondOrderNetwork& sys, SystemFactorization full,
                               NetworkGramian gramian, const SolveOptions& opts)
    : sys_(sys), opts_(opts), full_(std::move(full)), gramian_(std::move(gramian)) {
  if (gramian_.p.rows() != 2 * sys.n() || full_.realization.a.rows() != 2 * sys.n()) {
    throw DimensionError("ErrorEvaluator: Gramian does not match the network");
  }
}

double ErrorEvaluator::error(const ReducedModel& red, Variant variant) const {
  const int n = sys_.n();
  if (red.partition.n() != n || red.system.m() != sys_.m()) {
    throw DimensionError("ErrorEvaluator: reduction belongs to a different network");
  }
  const int r = red.system.n();
  const SystemFactorization reduced = factorize(red.system, opts_);
  const NetworkGramian pr = network_gramian(reduced, opts_);
  const CouplingGramian px = coupling_gramian(full_, reduced, opts_);

  // With P binary, tr(C_e P_e C_e^T) collapses to one term per vertex.
  const Eigen::Index sn = variant == Variant::Position ? 0 : n;
  const Eigen::Index sr = variant == Variant::Position ? 0 : r;
  const std::vector<int> label = red.partition.labels();
  double trace = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = gramian_.p(sn + i, sn + i);
    const double b = px.px(sn + i, sr + label[i]);
    const double c = pr.p(sr + label[i], sr + label[i]);
    trace += a - 2.0 * b + c;
    scale += std::abs(a) + 2.0 * std::abs(b) + std::abs(c);
  }
  if (trace < 0.0) {
    if (trace < -kClampTol * std::max(1.0, scale)) {
      throw NumericalError("approximation_error_h2: negative error energy " +
                           std::to_string(trace));
    }
    trace = 0.0;
  }
  return std::sqrt(trace);
}

double approximation_error_h2(const SecondOrderNetwork& sys, const ReducedModel& red,
                              Variant variant, const SolveOptions& opts) {
  return ErrorEvaluator(sys, opts).error(red, variant);
}

}  // namespace netreduce
