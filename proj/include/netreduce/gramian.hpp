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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "netreduce/matrixeq.hpp"
#include "netreduce/sys2.hpp"

namespace netreduce {

struct ReducedModel;

/// First-order data of a network together with the Schur forms of a and
/// a^T, so that several Gramian solves can share one factorization.
struct SystemFactorization {
  FirstOrderRealization realization;
  ConvergenceData convergence;
  RealSchurForm schur_a;
  RealSchurForm schur_at;
};

SystemFactorization factorize(const SecondOrderNetwork& sys, const SolveOptions& opts = {});

/// Controllability Gramian of a semistable network,
///   P = int_0^inf (e^{At} - J) B B^T (e^{A^T t} - J^T) dt,
/// obtained from any solution P_a of
///   A P_a + P_a A^T + (I - J) B B^T (I - J)^T = 0
/// by adding beta * Pi, Pi = [1 1^T 0; 0 0], so that nu^T P nu = 0.
struct NetworkGramian {
  Eigen::MatrixXd p;
  Eigen::VectorXd nu;
  SolveReport report;
};

NetworkGramian network_gramian(const SecondOrderNetwork& sys, const SolveOptions& opts = {});
NetworkGramian network_gramian(const SystemFactorization& f, const SolveOptions& opts = {});

/// Shifts a particular Lyapunov-like solution onto the Gramian:
/// P_a - (nu^T P_a nu / sigma_d^2) Pi.
Eigen::MatrixXd canonicalize_gramian(const Eigen::MatrixXd& particular,
                                     const ConvergenceData& cd);

/// Cross Gramian between a network and its reduction,
///   P_x = int_0^inf (e^{At} - J) B Bh^T (e^{Ah^T t} - Jh^T) dt   (2n x 2r).
struct CouplingGramian {
  Eigen::MatrixXd px;
  SolveReport report;
};

CouplingGramian coupling_gramian(const SecondOrderNetwork& sys, const ReducedModel& red,
                                 const SolveOptions& opts = {});
CouplingGramian coupling_gramian(const SystemFactorization& full,
                                 const SystemFactorization& reduced,
                                 const SolveOptions& opts = {});

/// Controllability Gramian of M x'' + D x' + K x = F u for a symmetric
/// positive definite K (asymptotically stable, J = 0). Cross-checking branch
/// only; Laplacian networks go through network_gramian.
Eigen::MatrixXd gramian_spd_stiffness(const Eigen::VectorXd& masses, const Eigen::MatrixXd& d,
                                      const Eigen::MatrixXd& k, const Eigen::MatrixXd& f,
                                      const SolveOptions& opts = {});

/// A nonzero entry of a sparse output row.
struct SelectorEntry {
  Eigen::Index index = 0;
  double coeff = 0.0;
};

/// sqrt(sum_rows sum_k sum_l c_k c_l P(k, l)), accumulated in the given
/// entry order. Small negative round-off is clamped to zero.
double selector_h2(const Eigen::MatrixXd& p, std::span<const std::vector<SelectorEntry>> rows);

/// H2 norm of (hs + s hv) eta(s) as sqrt(tr(H P H^T)), H = [hs, hv].
/// Throws UnboundedNormError unless hs 1 = 0 or 1^T F = 0.
double h2_output_norm(const SecondOrderNetwork& sys, const NetworkGramian& g,
                      const Eigen::MatrixXd& hs, const Eigen::MatrixXd& hv);

}  // namespace netreduce
