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

#include "netreduce/sys2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "netreduce/matrixeq.hpp"

namespace netreduce {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDampingPdTol = 1e-10;
constexpr double kCouplingTol = 1e-12;
constexpr double kRowSumTol = 1e-10;
constexpr double kConnectivityTol = 1e-10;
constexpr double kBoundednessTol = 1e-10;
constexpr double kTailRatio = 1e-8;
constexpr double kRoundoffFloor = 1e-12;

// Diagnostics name vertices 1-based, like the file formats.
std::string entry(const char* name, Eigen::Index i, Eigen::Index j) {
  std::ostringstream os;
  os << name << '(' << i + 1 << ',' << j + 1 << ')';
  return os.str();
}

void check_symmetric(const MatrixXd& a, const char* name, Clause clause,
                     std::vector<Violation>& out) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      const double gap = std::abs(a(i, j) - a(j, i));
      if (gap > kSymmetryTol * scale) {
        out.push_back({clause, entry(name, i, j), gap,
                       std::string(name) + " is not symmetric at " + entry(name, i, j)});
      }
    }
  }
}

VectorXd symmetric_eigenvalues(const MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw GridError("simulate: empty time grid");
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) {
      throw GridError("simulate: time grid is not strictly increasing at index " +
                      std::to_string(k));
    }
  }
}

void split_state(const SecondOrderNetwork& sys, const VectorXd& state, Trajectory& out) {
  out.x.push_back(state.head(sys.n()));
  out.v.push_back(state.tail(sys.n()));
}

}  // namespace

const char* clause_name(Clause c) {
  switch (c) {
    case Clause::Dimension: return "dimension";
    case Clause::Mass: return "mass";
    case Clause::Damping: return "damping";
    case Clause::Stiffness: return "stiffness";
    case Clause::Connectivity: return "connectivity";
  }
  return "unknown";
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error([&] {
        std::ostringstream os;
        os << "network violates " << violations.size() << " structural condition(s)";
        for (const auto& v : violations) os << "\n  [" << clause_name(v.clause) << "] " << v.message;
        return os.str();
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> check_assumptions(const VectorXd& masses, const MatrixXd& d,
                                         const MatrixXd& l, const MatrixXd& f) {
  std::vector<Violation> out;
  const Eigen::Index n = masses.size();
  if (n == 0 || d.rows() != n || d.cols() != n || l.rows() != n || l.cols() != n ||
      f.rows() != n) {
    out.push_back({Clause::Dimension, "shape", 0.0,
                   "inconsistent dimensions: masses " + std::to_string(n) + ", D " +
                       std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", L " +
                       std::to_string(l.rows()) + "x" + std::to_string(l.cols()) + ", F " +
                       std::to_string(f.rows()) + "x" + std::to_string(f.cols())});
    return out;
  }
  if (!masses.allFinite() || !d.allFinite() || !l.allFinite() || !f.allFinite()) {
    out.push_back({Clause::Dimension, "values", 0.0, "non-finite entries"});
    return out;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(masses(i) > 0.0)) {
      out.push_back({Clause::Mass, "m[" + std::to_string(i + 1) + "]", masses(i),
                     "mass " + std::to_string(i + 1) + " is not positive (" +
                         std::to_string(masses(i)) + ")"});
    }
  }

  const std::size_t before_d = out.size();
  check_symmetric(d, "D", Clause::Damping, out);
  if (out.size() == before_d) {
    const VectorXd ev = symmetric_eigenvalues(d);
    const double norm = ev.cwiseAbs().maxCoeff();
    if (!(ev(0) > kDampingPdTol * norm)) {
      out.push_back({Clause::Damping, "lambda_min(D)", ev(0),
                     "D is not positive definite (smallest eigenvalue " +
                         std::to_string(ev(0)) + ")"});
    }
  }

  const std::size_t before_l = out.size();
  check_symmetric(l, "L", Clause::Stiffness, out);
  const VectorXd lev = symmetric_eigenvalues(l);
  const double lnorm = lev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && l(i, j) > kCouplingTol * lnorm) {
        out.push_back({Clause::Stiffness, entry("L", i, j), l(i, j),
                       "positive off-diagonal coupling at " + entry("L", i, j)});
      }
    }
    const double row_sum = l.row(i).sum();
    if (std::abs(row_sum) > kRowSumTol * lnorm) {
      out.push_back({Clause::Stiffness, "rowsum(L)[" + std::to_string(i + 1) + "]", row_sum,
                     "row " + std::to_string(i + 1) + " of L sums to " + std::to_string(row_sum)});
    }
  }
  if (out.size() == before_l && n >= 2 && !(lev(1) > kConnectivityTol * lnorm)) {
    out.push_back({Clause::Connectivity, "lambda_2(L)", lev(1),
                   "graph is disconnected (second smallest Laplacian eigenvalue " +
                       std::to_string(lev(1)) + ")"});
  }
  return out;
}

SecondOrderNetwork validate(VectorXd masses, MatrixXd d, MatrixXd l, MatrixXd f) {
  auto violations = check_assumptions(masses, d, l, f);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  SecondOrderNetwork sys;
  sys.masses_ = std::move(masses);
  sys.d_ = std::move(d);
  sys.l_ = std::move(l);
  sys.f_ = std::move(f);
  return sys;
}

FirstOrderRealization first_order(const SecondOrderNetwork& sys) {
  const int n = sys.n();
  const VectorXd inv_m = sys.masses().cwiseInverse();
  FirstOrderRealization fo;
  fo.a = MatrixXd::Zero(2 * n, 2 * n);
  fo.a.topRightCorner(n, n).setIdentity();
  fo.a.bottomLeftCorner(n, n) = -(inv_m.asDiagonal() * sys.stiffness());
  fo.a.bottomRightCorner(n, n) = -(inv_m.asDiagonal() * sys.damping());
  fo.b = MatrixXd::Zero(2 * n, sys.m());
  fo.b.bottomRows(n) = inv_m.asDiagonal() * sys.input();
  return fo;
}

ConvergenceData convergence_matrix(const SecondOrderNetwork& sys) {
  const int n = sys.n();
  ConvergenceData cd;
  cd.sigma_d = sys.damping().sum();
  cd.nu.resize(2 * n);
  cd.nu.head(n) = sys.damping().rowwise().sum();
  cd.nu.tail(n) = sys.masses();
  cd.j = MatrixXd::Zero(2 * n, 2 * n);
  const Eigen::RowVectorXd top =
      (Eigen::RowVectorXd(2 * n) << sys.damping().colwise().sum(), sys.masses().transpose())
          .finished() /
      cd.sigma_d;
  cd.j.topRows(n) = top.replicate(n, 1);
  return cd;
}

Eigen::MatrixXcd eval_transfer(const SecondOrderNetwork& sys, std::complex<double> s) {
  if (s == 0.0) {
    throw SingularPencilError("eval_transfer: pencil is singular at s = 0 (L 1 = 0)");
  }
  const Eigen::MatrixXcd k = (s * s) * sys.mass_matrix().cast<std::complex<double>>() +
                             s * sys.damping().cast<std::complex<double>>() +
                             sys.stiffness().cast<std::complex<double>>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(k);
  if (!lu.isInvertible()) {
    throw SingularPencilError("eval_transfer: s is an eigenvalue of the pencil");
  }
  return lu.solve(sys.input().cast<std::complex<double>>());
}

double slowest_decay_rate(const SecondOrderNetwork& sys) {
  const MatrixXd a = first_order(sys).a;
  const double tol = 1e-9 * spectral_norm(a);
  Eigen::EigenSolver<MatrixXd> es(a, false);
  double rate = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto lambda = es.eigenvalues()(i);
    if (std::abs(lambda) <= tol) continue;
    rate = std::min(rate, -lambda.real());
  }
  return rate;
}

Trajectory simulate(const SecondOrderNetwork& sys, const VectorXd& x0, const VectorXd& v0,
                    const std::vector<double>& t_grid) {
  return simulate(sys, x0, v0, InputSignal{}, t_grid);
}

Trajectory simulate(const SecondOrderNetwork& sys, const VectorXd& x0, const VectorXd& v0,
                    const InputSignal& u, const std::vector<double>& t_grid) {
  check_grid(t_grid);
  const int n = sys.n(), m = sys.m();
  if (x0.size() != n || v0.size() != n) {
    throw DimensionError("simulate: initial state has wrong size");
  }
  const auto fo = first_order(sys);
  MatrixXd aug = MatrixXd::Zero(2 * n + m, 2 * n + m);
  aug.topLeftCorner(2 * n, 2 * n) = fo.a;
  aug.topRightCorner(2 * n, m) = fo.b;

  Trajectory out;
  VectorXd state(2 * n);
  state << x0, v0;
  out.t.push_back(t_grid.front());
  split_state(sys, state, out);

  double cached_dt = -1.0;
  MatrixXd phi, gamma;
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double dt = t_grid[k] - t_grid[k - 1];
    if (dt != cached_dt) {
      const MatrixXd e = (aug * dt).exp();
      phi = e.topLeftCorner(2 * n, 2 * n);
      gamma = e.topRightCorner(2 * n, m);
      cached_dt = dt;
    }
    VectorXd next = phi * state;
    if (u) {
      const VectorXd uk = u(t_grid[k - 1]);
      if (uk.size() != m) throw DimensionError("simulate: input signal has wrong size");
      next += gamma * uk;
    }
    state = std::move(next);
    out.t.push_back(t_grid[k]);
    split_state(sys, state, out);
  }
  return out;
}

std::vector<MatrixXd> impulse_response(const SecondOrderNetwork& sys,
                                       const std::vector<double>& t_grid) {
  check_grid(t_grid);
  const auto fo = first_order(sys);
  std::vector<MatrixXd> out;
  out.reserve(t_grid.size());
  MatrixXd e = (fo.a * t_grid.front()).exp() * fo.b;
  out.push_back(e);
  double cached_dt = -1.0;
  MatrixXd phi;
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double dt = t_grid[k] - t_grid[k - 1];
    if (dt != cached_dt) {
      phi = (fo.a * dt).exp();
      cached_dt = dt;
    }
    e = phi * e;
    out.push_back(e);
  }
  return out;
}

double h2_quadrature(const MatrixXd& a, const MatrixXd& b, const MatrixXd& c, const MatrixXd& j,
                     double t_max, int steps) {
  if (!(t_max > 0.0) || steps < 2) {
    throw ArgumentError("h2_quadrature: need t_max > 0 and at least 2 steps");
  }
  if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.rows() ||
      j.rows() != a.rows() || j.cols() != a.cols()) {
    throw DimensionError("h2_quadrature: inconsistent shapes");
  }
  if (steps % 2 != 0) ++steps;
  const double h = t_max / steps;
  const MatrixXd phi = (a * h).exp();
  const MatrixXd jb = j * b;
  MatrixXd e = b;
  double sum = 0.0, peak = 0.0, last = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double g = (c * (e - jb)).norm();
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * g * g;
    peak = std::max(peak, g);
    last = g;
    e = phi * e;
  }
  // A response that never rises above roundoff has nothing left to truncate.
  const double floor = kRoundoffFloor * c.norm() * b.norm();
  if (last > kTailRatio * peak && last > floor) {
    throw TruncationError("h2_quadrature: impulse response has not decayed by t_max (tail " +
                              std::to_string(last) + ", peak " + std::to_string(peak) + ")",
                          last);
  }
  return std::sqrt(std::max(0.0, sum * h / 3.0));
}

bool output_norm_bounded(const SecondOrderNetwork& sys, const MatrixXd& hs) {
  const auto scaled_zero = [](const MatrixXd& v, const MatrixXd& ref) {
    const double scale = ref.size() ? std::max(1.0, ref.cwiseAbs().maxCoeff()) : 1.0;
    return v.size() == 0 || v.cwiseAbs().maxCoeff() <= kBoundednessTol * scale;
  };
  return scaled_zero(hs.rowwise().sum(), hs) || scaled_zero(sys.input().colwise().sum(),
                                                            sys.input());
}

double h2_quadrature(const SecondOrderNetwork& sys, const MatrixXd& hs, const MatrixXd& hv,
                     double t_max, int steps) {
  const int n = sys.n();
  if (hs.cols() != n || hv.cols() != n || hs.rows() != hv.rows()) {
    throw DimensionError("h2_quadrature: selectors must both be p x n");
  }
  if (!output_norm_bounded(sys, hs)) {
    throw UnboundedNormError("h2_quadrature: need hs 1 = 0 or 1^T F = 0 for a finite norm");
  }
  MatrixXd c(hs.rows(), 2 * n);
  c << hs, hv;
  const auto fo = first_order(sys);
  return h2_quadrature(fo.a, fo.b, c, convergence_matrix(sys).j, t_max, steps);
}

}  // namespace netreduce
