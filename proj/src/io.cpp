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

#include "netreduce/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "netreduce/errors.hpp"

namespace netreduce {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

int index(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

Eigen::MatrixXd dense(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd out;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array()) throw ParseError(where + ": row " + std::to_string(r + 1) + " is not an array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      out.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(where + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = number(row[c], where);
  }
  if (cols < 0) out.resize(0, 0);
  return out;
}

json dense_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

// Edge lists are [[i, j, w], ...] with 1-based vertices.
WeightedGraph edges_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an edge list");
  std::vector<Edge> edges;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 3) throw ParseError(where + ": edges are [i, j, w]");
    edges.push_back({index(e[0], where) - 1, index(e[1], where) - 1, number(e[2], where)});
  }
  try {
    return WeightedGraph(n, std::move(edges));
  } catch (const ArgumentError& err) {
    throw ParseError(where + ": " + err.what());
  }
}

json edges_to_json(const WeightedGraph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) out.push_back(json::array({e.i + 1, e.j + 1, e.w}));
  return out;
}

json header(int n, int m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = n;
  j["m"] = m;
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

RawNetwork network_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("network file: top level must be an object");
  const json& version = field(j, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    throw ParseError("network file: unsupported schema_version");
  }
  const int n = index(field(j, "n"), "n");
  const int m = index(field(j, "m"), "m");
  if (n < 1 || m < 0) throw ParseError("network file: need n >= 1 and m >= 0");

  RawNetwork raw;
  const json& masses = field(j, "masses");
  if (!masses.is_array()) throw ParseError("masses: expected an array");
  raw.masses.resize(static_cast<Eigen::Index>(masses.size()));
  for (std::size_t i = 0; i < masses.size(); ++i) raw.masses(i) = number(masses[i], "masses");

  const json& damping = field(j, "damping");
  if (damping.is_object() && damping.contains("dense")) {
    raw.d = dense(damping.at("dense"), "damping.dense");
  } else if (damping.is_object() && damping.contains("edges")) {
    if (raw.masses.size() != n) throw ParseError("damping: masses must have n entries");
    const double alpha = number(field(damping, "alpha"), "damping.alpha");
    raw.d = laplacian(edges_from_json(damping.at("edges"), n, "damping.edges"));
    raw.d.diagonal() += alpha * raw.masses;
  } else {
    throw ParseError("damping: expected {\"dense\": ...} or {\"edges\": ..., \"alpha\": ...}");
  }

  raw.l = laplacian(edges_from_json(field(j, "stiffness_edges"), n, "stiffness_edges"));
  raw.f = dense(field(j, "input_matrix"), "input_matrix");
  if (raw.f.size() == 0) raw.f.resize(n, m);
  if (raw.f.cols() != m) throw ParseError("input_matrix: expected m columns");
  return raw;
}

json network_to_json(const SecondOrderNetwork& sys) {
  json j = header(sys.n(), sys.m());
  j["masses"] = std::vector<double>(sys.masses().data(), sys.masses().data() + sys.n());
  j["damping"] = {{"dense", dense_to_json(sys.damping())}};
  j["stiffness_edges"] = edges_to_json(graph_from_laplacian(sys.stiffness()));
  j["input_matrix"] = dense_to_json(sys.input());
  return j;
}

json network_to_json(const BenchmarkInstance& inst) {
  const int n = static_cast<int>(inst.masses.size());
  json j = header(n, static_cast<int>(inst.f.cols()));
  j["masses"] = std::vector<double>(inst.masses.data(), inst.masses.data() + n);
  j["damping"] = {{"edges", edges_to_json(inst.dampers)}, {"alpha", inst.alpha}};
  j["stiffness_edges"] = edges_to_json(inst.springs);
  j["input_matrix"] = dense_to_json(inst.f);
  return j;
}

ClusteringPartition partition_from_json(const json& j) {
  const int n = index(field(j, "n"), "n");
  const json& clusters = field(j, "clusters");
  if (!clusters.is_array()) throw ParseError("clusters: expected an array of arrays");
  std::vector<std::vector<int>> out;
  for (const json& c : clusters) {
    if (!c.is_array()) throw ParseError("clusters: expected an array of arrays");
    auto& members = out.emplace_back();
    for (const json& v : c) members.push_back(index(v, "clusters") - 1);
  }
  try {
    return ClusteringPartition(n, std::move(out));
  } catch (const ArgumentError& err) {
    throw ParseError(std::string("clusters: ") + err.what());
  }
}

json partition_to_json(const ClusteringPartition& part) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = part.n();
  json clusters = json::array();
  for (const auto& c : part.clusters()) {
    json members = json::array();
    for (int v : c) members.push_back(v + 1);
    clusters.push_back(std::move(members));
  }
  j["clusters"] = std::move(clusters);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    throw ParseError("'" + path + "': " + err.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw ParseError("cannot write '" + path + "'");
  }
}

std::string to_newick(const Dendrogram& tree) {
  const int n = tree.n;
  if (n == 1) return "1;";
  std::vector<double> height(2 * n - 1, 0.0);
  for (const Merge& m : tree.merges) height[m.id] = m.height;
  std::function<void(std::ostringstream&, int, double)> emit = [&](std::ostringstream& os, int id,
                                                                   double parent) {
    if (id < n) {
      os << id + 1;
    } else {
      const Merge& m = tree.merges.at(id - n);
      os << '(';
      emit(os, m.a, m.height);
      os << ',';
      emit(os, m.b, m.height);
      os << ')';
    }
    if (parent >= 0.0) os << ':' << format_double(parent - height[id]);
  };
  std::ostringstream os;
  emit(os, tree.merges.back().id, -1.0);
  os << ";\n";
  return os.str();
}

std::string to_dot(const Dendrogram& tree) {
  std::ostringstream os;
  os << "digraph dendrogram {\n";
  for (int v = 0; v < tree.n; ++v) os << "  n" << v << " [label=\"" << v + 1 << "\", shape=box];\n";
  for (const Merge& m : tree.merges) {
    os << "  n" << m.id << " [label=\"" << format_double(m.height) << "\"];\n";
    os << "  n" << m.id << " -> n" << m.a << ";\n";
    os << "  n" << m.id << " -> n" << m.b << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "strategy,r,trial,seed,error_h2,wall_ms\r\n";
  char buf[64];
  for (const SweepRow& row : rows) {
    out += row.strategy + ',' + std::to_string(row.r) + ',' + std::to_string(row.trial) + ',';
    if (row.has_seed) out += std::to_string(row.seed);
    std::snprintf(buf, sizeof(buf), ",%.17g", row.error_h2);
    out += buf;
    std::snprintf(buf, sizeof(buf), ",%.17g\r\n", row.wall_ms);
    out += buf;
  }
  return out;
}

}  // namespace netreduce
