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

#include "netreduce/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "netreduce/reduce.hpp"

namespace netreduce {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kAnnihilatorTol = 1e-8;
constexpr double kPsdTol = 1e-8;
constexpr double kClampTol = 1e-10;

MatrixXd deviation_forcing(const MatrixXd& j1, const MatrixXd& b1, const MatrixXd& j2,
                           const MatrixXd& b2) {
  const MatrixXd lhs = b1 - j1 * b1;
  const MatrixXd rhs = b2 - j2 * b2;
  return lhs * rhs.transpose();
}

// u^T x v summed in a fixed order, so the same particular solution always
// gets the same shift wherever it is canonicalized.
double bilinear(const VectorXd& u, const MatrixXd& x, const VectorXd& v) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) col += u(i) * x(i, j);
    sum += col * v(j);
  }
  return sum;
}

}  // namespace

SystemFactorization factorize(const SecondOrderNetwork& sys, const SolveOptions& opts) {
  SystemFactorization f;
  f.realization = first_order(sys);
  f.convergence = convergence_matrix(sys);
  f.schur_a = real_schur(f.realization.a, opts.zero_tol_rel);
  f.schur_at = real_schur(f.realization.a.transpose(), opts.zero_tol_rel);
  return f;
}

MatrixXd canonicalize_gramian(const MatrixXd& particular, const ConvergenceData& cd) {
  const Eigen::Index n = particular.rows() / 2;
  const double beta = -bilinear(cd.nu, particular, cd.nu) / (cd.sigma_d * cd.sigma_d);
  MatrixXd p = particular;
  p.topLeftCorner(n, n).array() += beta;
  return p;
}

NetworkGramian network_gramian(const SystemFactorization& f, const SolveOptions& opts) {
  const auto& fo = f.realization;
  const auto& cd = f.convergence;
  const MatrixXd c = deviation_forcing(cd.j, fo.b, cd.j, fo.b);
  // Shift before symmetrizing so the coupling Gramian of a system with itself
  // reproduces this matrix on the diagonal exactly.
  const SolveResult particular = solve_sylvester_like(f.schur_a, f.schur_at, c, opts);

  NetworkGramian g;
  g.p = canonicalize_gramian(particular.x, cd);
  g.p = 0.5 * (g.p + g.p.transpose()).eval();
  g.nu = cd.nu;
  g.report = particular.report;

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g.p, Eigen::EigenvaluesOnly);
  const double pnorm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double leak = (g.nu.transpose() * g.p).norm();
  if (leak > kAnnihilatorTol * pnorm * g.nu.norm()) {
    throw NumericalError("network_gramian: nu^T P = " + std::to_string(leak) +
                         " after canonicalization");
  }
  if (es.eigenvalues()(0) < -kPsdTol * pnorm) {
    throw NumericalError("network_gramian: Gramian has eigenvalue " +
                         std::to_string(es.eigenvalues()(0)));
  }
  return g;
}

NetworkGramian network_gramian(const SecondOrderNetwork& sys, const SolveOptions& opts) {
  return network_gramian(factorize(sys, opts), opts);
}

CouplingGramian coupling_gramian(const SystemFactorization& full,
                                 const SystemFactorization& reduced, const SolveOptions& opts) {
  const auto& fo = full.realization;
  const auto& ro = reduced.realization;
  if (fo.b.cols() != ro.b.cols()) {
    throw DimensionError("coupling_gramian: input counts differ");
  }
  const MatrixXd c = deviation_forcing(full.convergence.j, fo.b, reduced.convergence.j, ro.b);
  const SolveResult particular = solve_sylvester_like(full.schur_a, reduced.schur_at, c, opts);

  const Eigen::Index n = fo.a.rows() / 2, r = ro.a.rows() / 2;
  const double sigma = full.convergence.sigma_d;
  const double beta =
      -bilinear(full.convergence.nu, particular.x, reduced.convergence.nu) / (sigma * sigma);
  CouplingGramian out;
  out.px = particular.x;
  out.px.topLeftCorner(n, r).array() += beta;
  out.report = particular.report;
  return out;
}

CouplingGramian coupling_gramian(const SecondOrderNetwork& sys, const ReducedModel& red,
                                 const SolveOptions& opts) {
  if (red.partition.n() != sys.n()) {
    throw DimensionError("coupling_gramian: reduction belongs to a different network");
  }
  return coupling_gramian(factorize(sys, opts), factorize(red.system, opts), opts);
}

MatrixXd gramian_spd_stiffness(const VectorXd& masses, const MatrixXd& d, const MatrixXd& k,
                               const MatrixXd& f, const SolveOptions& opts) {
  const Eigen::Index n = masses.size();
  if (d.rows() != n || d.cols() != n || k.rows() != n || k.cols() != n || f.rows() != n) {
    throw DimensionError("gramian_spd_stiffness: inconsistent dimensions");
  }
  if ((masses.array() <= 0.0).any()) {
    throw ArgumentError("gramian_spd_stiffness: masses must be positive");
  }
  const auto min_eig = [](const MatrixXd& s) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
    return std::pair{es.eigenvalues()(0), es.eigenvalues().cwiseAbs().maxCoeff()};
  };
  for (const auto* s : {&d, &k}) {
    const auto [lo, hi] = min_eig(*s);
    if (!(lo > 1e-10 * hi) || ((*s) - s->transpose()).cwiseAbs().maxCoeff() > 1e-12 * hi) {
      throw ArgumentError("gramian_spd_stiffness: D and K must be symmetric positive definite");
    }
  }
  const VectorXd inv_m = masses.cwiseInverse();
  MatrixXd a = MatrixXd::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n).setIdentity();
  a.bottomLeftCorner(n, n) = -(inv_m.asDiagonal() * k);
  a.bottomRightCorner(n, n) = -(inv_m.asDiagonal() * d);
  MatrixXd b = MatrixXd::Zero(2 * n, f.cols());
  b.bottomRows(n) = inv_m.asDiagonal() * f;
  // J = 0 here, so the forcing is plain B B^T and no shift is needed.
  auto out = solve_lyapunov_like(a, b * b.transpose(), opts);
  if (out.report.singular_blocks_zeroed != 0) {
    throw NumericalError("gramian_spd_stiffness: system is not asymptotically stable");
  }
  return out.x;
}

double selector_h2(const MatrixXd& p, std::span<const std::vector<SelectorEntry>> rows) {
  double trace = 0.0, scale = 0.0;
  for (const auto& row : rows) {
    for (const auto& a : row) {
      for (const auto& b : row) {
        const double term = a.coeff * b.coeff * p(a.index, b.index);
        trace += term;
        scale += std::abs(term);
      }
    }
  }
  if (trace < 0.0) {
    if (trace < -kClampTol * std::max(1.0, scale)) {
      throw NumericalError("selector_h2: negative output energy " + std::to_string(trace));
    }
    trace = 0.0;
  }
  return std::sqrt(trace);
}

double h2_output_norm(const SecondOrderNetwork& sys, const NetworkGramian& g, const MatrixXd& hs,
                      const MatrixXd& hv) {
  const int n = sys.n();
  if (hs.cols() != n || hv.cols() != n || hs.rows() != hv.rows()) {
    throw DimensionError("h2_output_norm: selectors must both be p x n");
  }
  if (g.p.rows() != 2 * n) {
    throw DimensionError("h2_output_norm: Gramian does not match the network");
  }
  if (!output_norm_bounded(sys, hs)) {
    throw UnboundedNormError("h2_output_norm: need hs 1 = 0 or 1^T F = 0 for a finite norm");
  }
  std::vector<std::vector<SelectorEntry>> rows(hs.rows());
  for (Eigen::Index r = 0; r < hs.rows(); ++r) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (hs(r, k) != 0.0) rows[r].push_back({k, hs(r, k)});
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      if (hv(r, k) != 0.0) rows[r].push_back({n + k, hv(r, k)});
    }
  }
  return selector_h2(g.p, rows);
}

}  // namespace netreduce
