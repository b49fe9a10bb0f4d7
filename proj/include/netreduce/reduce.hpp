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

#include <memory>

#include <Eigen/Dense>

#include "netreduce/gramian.hpp"
#include "netreduce/network.hpp"
#include "netreduce/sys2.hpp"

namespace netreduce {

/// Galerkin reduction x ~ P z of a network by a clustering.
struct ReducedModel {
  SecondOrderNetwork system;  // (M^, D^, L^, P^T F), validated
  CharacteristicMatrix p;
  ClusteringPartition partition;
  WeightedGraph graph;  // reduced spring graph read back from L^
};

/// M^ = P^T M P, D^ = P^T D P, L^ = P^T L P, F^ = P^T F. Singleton
/// clusters copy their entries unchanged, so the all-singleton partition
/// reproduces the network bit for bit.
ReducedModel project(const SecondOrderNetwork& sys, const ClusteringPartition& part);

struct ReducedRealization {
  FirstOrderRealization realization;
  ConvergenceData convergence;
};

ReducedRealization reduced_first_order(const ReducedModel& red);

enum class Variant { Position, Velocity };

/// Stacked error system: state (full, reduced), output x - P z (position) or
/// x' - P z' (velocity).
struct ErrorSystem {
  Eigen::MatrixXd a_e;
  Eigen::MatrixXd b_e;
  Eigen::MatrixXd c_e;
  Eigen::MatrixXd c_e_velocity;
  Eigen::MatrixXd j_e;
};

ErrorSystem build_error_system(const SecondOrderNetwork& sys, const ReducedModel& red);

/// H2 error evaluation against a fixed full network. Factorization and
/// Gramian of the full network are computed once and reused.
class ErrorEvaluator {
 public:
  explicit ErrorEvaluator(const SecondOrderNetwork& sys, const SolveOptions& opts = {});
  /// Reuses a factorization and Gramian already computed for sys.
  ErrorEvaluator(const SecondOrderNetwork& sys, SystemFactorization full,
                 NetworkGramian gramian, const SolveOptions& opts = {});

  const SecondOrderNetwork& system() const { return sys_; }
  const SystemFactorization& factorization() const { return full_; }
  const NetworkGramian& gramian() const { return gramian_; }

  double error(const ReducedModel& red, Variant variant = Variant::Position) const;

 private:
  SecondOrderNetwork sys_;
  SolveOptions opts_;
  SystemFactorization full_;
  NetworkGramian gramian_;
};

double approximation_error_h2(const SecondOrderNetwork& sys, const ReducedModel& red,
                              Variant variant = Variant::Position,
                              const SolveOptions& opts = {});

}  // namespace netreduce
