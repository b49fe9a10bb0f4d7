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
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netreduce/errors.hpp"

namespace netreduce {

/// The structural conditions a second-order network must satisfy.
enum class Clause {
  Dimension,     // inconsistent shapes or non-finite entries
  Mass,          // masses positive
  Damping,       // D symmetric positive definite
  Stiffness,     // L symmetric, zero row sums, nonpositive couplings
  Connectivity,  // rank L = n - 1
};

const char* clause_name(Clause c);

struct Violation {
  Clause clause;
  std::string location;  // e.g. "m[3]", "D(1,2)", "lambda_min(D)"
  double magnitude = 0.0;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// M x'' + D x' + L x = F u with M = diag(masses). Only constructible through
/// validate(), so every instance satisfies the structural conditions.
class SecondOrderNetwork {
 public:
  int n() const { return static_cast<int>(masses_.size()); }
  int m() const { return static_cast<int>(f_.cols()); }
  const Eigen::VectorXd& masses() const { return masses_; }
  Eigen::MatrixXd mass_matrix() const { return masses_.asDiagonal(); }
  const Eigen::MatrixXd& damping() const { return d_; }
  const Eigen::MatrixXd& stiffness() const { return l_; }
  const Eigen::MatrixXd& input() const { return f_; }

  friend SecondOrderNetwork validate(Eigen::VectorXd masses, Eigen::MatrixXd d,
                                     Eigen::MatrixXd l, Eigen::MatrixXd f);

 private:
  SecondOrderNetwork() = default;
  Eigen::VectorXd masses_;
  Eigen::MatrixXd d_;
  Eigen::MatrixXd l_;
  Eigen::MatrixXd f_;
};

/// Every violated condition, empty when the data is a valid network.
std::vector<Violation> check_assumptions(const Eigen::VectorXd& masses,
                                         const Eigen::MatrixXd& d,
                                         const Eigen::MatrixXd& l,
                                         const Eigen::MatrixXd& f);

/// Throws ValidationError listing all violations.
SecondOrderNetwork validate(Eigen::VectorXd masses, Eigen::MatrixXd d, Eigen::MatrixXd l,
                            Eigen::MatrixXd f);

/// State (x, x') realization: a = [0 I; -M^-1 L  -M^-1 D], b = [0; M^-1 F].
struct FirstOrderRealization {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

/// Limit of exp(a t): j = [1 1^T D  1 1^T M; 0 0] / sigma_d, with
/// sigma_d = 1^T D 1 and left annihilator nu = (D 1; M 1).
struct ConvergenceData {
  Eigen::MatrixXd j;
  double sigma_d = 0.0;
  Eigen::VectorXd nu;
};

FirstOrderRealization first_order(const SecondOrderNetwork& sys);
ConvergenceData convergence_matrix(const SecondOrderNetwork& sys);

/// (s^2 M + s D + L)^-1 F. Throws SingularPencilError at s = 0 or on the
/// spectrum.
Eigen::MatrixXcd eval_transfer(const SecondOrderNetwork& sys, std::complex<double> s);

/// Smallest decay rate -Re(lambda) over the nonzero eigenvalues of a.
double slowest_decay_rate(const SecondOrderNetwork& sys);

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> v;
};

using InputSignal = std::function<Eigen::VectorXd(double)>;

/// Free response (u = 0), exact on each grid step via exp(a dt).
Trajectory simulate(const SecondOrderNetwork& sys, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& v0, const std::vector<double>& t_grid);

/// Forced response with u held constant on each step at its left-endpoint
/// value.
Trajectory simulate(const SecondOrderNetwork& sys, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& v0, const InputSignal& u,
                    const std::vector<double>& t_grid);

/// exp(a t) b on the grid: one 2n x m matrix per time (impulse on every
/// input from a zero state).
std::vector<Eigen::MatrixXd> impulse_response(const SecondOrderNetwork& sys,
                                              const std::vector<double>& t_grid);

/// sqrt(int_0^t_max ||c (exp(a t) - j) b||_F^2 dt) by composite Simpson.
/// Throws TruncationError when the integrand at t_max has not decayed below
/// 1e-8 of its peak.
double h2_quadrature(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     const Eigen::MatrixXd& c, const Eigen::MatrixXd& j, double t_max,
                     int steps);

/// H2 norm of (hs + s hv) eta(s) from its impulse response. Throws
/// UnboundedNormError unless hs 1 = 0 or 1^T F = 0.
double h2_quadrature(const SecondOrderNetwork& sys, const Eigen::MatrixXd& hs,
                     const Eigen::MatrixXd& hv, double t_max, int steps);

/// hs 1 = 0 or 1^T F = 0, the condition for a finite output H2 norm.
bool output_norm_bounded(const SecondOrderNetwork& sys, const Eigen::MatrixXd& hs);

}  // namespace netreduce
