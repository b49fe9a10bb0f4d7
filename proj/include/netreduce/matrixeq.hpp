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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace netreduce {

/// A diagonal block of a real Schur form: 1x1 (real eigenvalue) or 2x2
/// (complex conjugate pair).
struct SchurBlock {
  Eigen::Index start = 0;
  Eigen::Index size = 1;
  std::complex<double> eigenvalue;  // the one with nonnegative imaginary part
  bool zero_real_part = false;
};

/// a = q * t * q^T with q orthogonal and t quasi-upper-triangular.
///
/// Blocks whose eigenvalues have real part within `zero_tol` of the origin
/// are moved behind all other blocks; their relative order is unchanged.
struct RealSchurForm {
  Eigen::MatrixXd q;
  Eigen::MatrixXd t;
  std::vector<SchurBlock> blocks;
  double zero_tol = 0.0;

  Eigen::Index size() const { return t.rows(); }
  /// Number of trailing blocks with (near) zero real part.
  int zero_real_blocks() const;
};

/// Relative tolerances shared by the singular solvers.
struct SolveOptions {
  /// An eigenvalue counts as zero when |Re| and |Im| are both at most
  /// zero_tol_rel * ||a||_2.
  double zero_tol_rel = 1e-9;
  /// Singular-block right-hand sides up to consistency_tol_rel * ||c||_F are
  /// accepted and dropped.
  double consistency_tol_rel = 1e-7;
  /// Value assigned to the free unknown of the singular block, in Schur
  /// coordinates. Zero except when probing the solution family.
  double free_value = 0.0;
};

struct SolveReport {
  double residual_rel = 0.0;
  int singular_blocks_zeroed = 0;
  double consistency_defect = 0.0;
};

struct SolveResult {
  Eigen::MatrixXd x;
  SolveReport report;
};

double spectral_norm(const Eigen::MatrixXd& a);

/// Real Schur decomposition with zero-real-part blocks ordered last.
/// `zero_tol_rel` is scaled by ||a||_2. Throws ConvergenceError.
RealSchurForm real_schur(const Eigen::MatrixXd& a, double zero_tol_rel = 1e-9);

/// Unique X with a X + X a^T + q = 0 for Hurwitz a (complex Schur route).
/// Throws StabilityError when a is not Hurwitz.
Eigen::MatrixXd solve_standard_lyapunov(const Eigen::MatrixXd& a,
                                        const Eigen::MatrixXd& q,
                                        double zero_tol_rel = 1e-9);

/// Particular solution of a X + X b + c = 0 for semistable a and b that may
/// both carry one simple zero eigenvalue. The unknown coupling the two zero
/// eigenvalues is set to `opts.free_value` in Schur coordinates.
SolveResult solve_sylvester_like(const Eigen::MatrixXd& a,
                                 const Eigen::MatrixXd& b,
                                 const Eigen::MatrixXd& c,
                                 const SolveOptions& opts = {});

/// Same, reusing precomputed Schur forms of a and b.
SolveResult solve_sylvester_like(const RealSchurForm& sa,
                                 const RealSchurForm& sb,
                                 const Eigen::MatrixXd& c,
                                 const SolveOptions& opts = {});

/// Symmetric particular solution of a X + X a^T + c = 0.
SolveResult solve_lyapunov_like(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& c,
                                const SolveOptions& opts = {});

SolveResult solve_lyapunov_like(const RealSchurForm& sa,
                                const RealSchurForm& sat,
                                const Eigen::MatrixXd& c,
                                const SolveOptions& opts = {});

/// Frobenius residual ||a x + x b + c||_F.
double sylvester_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          const Eigen::MatrixXd& c, const Eigen::MatrixXd& x);

}  // namespace netreduce
