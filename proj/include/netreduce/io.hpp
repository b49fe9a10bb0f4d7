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

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "netreduce/cluster.hpp"
#include "netreduce/network.hpp"
#include "netreduce/sys2.hpp"

namespace netreduce {

inline constexpr const char* kSchemaVersion = "1.0";

/// Matrices as read from a network file, before any Assumption-1 check.
struct RawNetwork {
  Eigen::VectorXd masses;
  Eigen::MatrixXd d;
  Eigen::MatrixXd l;
  Eigen::MatrixXd f;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Throws ParseError on malformed structure. Shapes are checked later by
/// validate(), which reports them as dimension violations.
RawNetwork network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const SecondOrderNetwork& sys);
/// Damping stored as damper edges plus alpha * masses on the diagonal.
nlohmann::json network_to_json(const BenchmarkInstance& inst);

ClusteringPartition partition_from_json(const nlohmann::json& j);
nlohmann::json partition_to_json(const ClusteringPartition& part);

/// Reads and parses a JSON file; I/O and syntax problems raise ParseError.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string to_newick(const Dendrogram& tree);
std::string to_dot(const Dendrogram& tree);

struct SweepRow {
  std::string strategy;
  int r = 0;
  int trial = 0;
  bool has_seed = false;
  std::uint64_t seed = 0;
  double error_h2 = 0.0;
  double wall_ms = 0.0;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace netreduce
