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

// netreduce command-line front end.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netreduce/cluster.hpp"
#include "netreduce/errors.hpp"
#include "netreduce/gramian.hpp"
#include "netreduce/io.hpp"
#include "netreduce/network.hpp"
#include "netreduce/reduce.hpp"
#include "netreduce/sys2.hpp"

namespace {

using namespace netreduce;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

enum Exit { kOk = 0, kUsage = 2, kParse = 3, kInvalid = 4, kNumerical = 5 };

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

SecondOrderNetwork load_network(const std::string& path) {
  RawNetwork raw = network_from_json(read_json_file(path));
  return validate(std::move(raw.masses), std::move(raw.d), std::move(raw.l), std::move(raw.f));
}

DissimilarityKind kind_of(Variant v) {
  return v == Variant::Position ? DissimilarityKind::Position : DissimilarityKind::Velocity;
}

const std::map<std::string, Variant> kVariants{{"position", Variant::Position},
                                               {"velocity", Variant::Velocity}};

struct Common {
  Variant variant = Variant::Position;
  double tol = SolveOptions{}.zero_tol_rel;
  int threads = 1;

  SolveOptions solve_options() const {
    SolveOptions o;
    o.zero_tol_rel = tol;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--variant", c.variant, "position or velocity")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  cmd->add_option("--tol", c.tol, "relative zero-eigenvalue tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "threads for pairwise distances")
      ->check(CLI::Range(1, 256));
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  int n = 0;
  BenchmarkConfig cfg;
  std::uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const BenchmarkInstance inst = benchmark_instance(a.n, a.cfg, a.seed);
  const json j = network_to_json(inst);
  RawNetwork raw = network_from_json(j);
  validate(std::move(raw.masses), std::move(raw.d), std::move(raw.l), std::move(raw.f));
  write_text_file(a.out, j.dump(2) + "\n");
  std::printf(
      "generated n=%d m=%d k=%d beta=%s alpha=%s weights=[%s, %s] seed=%llu -> %s\n", a.n,
      a.cfg.m, a.cfg.k, format_double(a.cfg.beta).c_str(), format_double(a.cfg.alpha).c_str(),
      format_double(a.cfg.weight_min).c_str(), format_double(a.cfg.weight_max).c_str(),
      static_cast<unsigned long long>(a.seed), a.out.c_str());
  return kOk;
}

// ------------------------------------------------------------------ reduce

struct ReduceArgs {
  std::string file;
  std::optional<int> r;
  std::string partition_file;
  std::string strategy = "hierarchical";
  std::uint64_t seed = 1;
  std::string out = "reduced";
  Common common;
};

int run_reduce(const ReduceArgs& a) {
  const SecondOrderNetwork sys = load_network(a.file);
  const SolveOptions opts = a.common.solve_options();
  std::string strategy = a.strategy;

  const auto t_total = Clock::now();
  auto t0 = Clock::now();
  SystemFactorization fact = factorize(sys, opts);
  NetworkGramian gram = network_gramian(fact, opts);
  const double ms_gramian = ms_since(t0);

  double ms_dissimilarity = 0.0, ms_clustering = 0.0;
  ClusteringPartition part;
  if (!a.partition_file.empty()) {
    part = partition_from_json(read_json_file(a.partition_file));
    if (part.n() != sys.n()) throw ArgumentError("partition does not match the network size");
    if (a.r && *a.r != part.r()) throw ArgumentError("--r disagrees with the partition file");
    strategy = "explicit";
  } else {
    if (!a.r) throw ArgumentError("reduce: give --r or --partition");
    if (strategy == "random") {
      t0 = Clock::now();
      part = random_clustering(sys.n(), *a.r, a.seed);
      ms_clustering = ms_since(t0);
    } else {
      t0 = Clock::now();
      const DissimilarityMatrix d = dissimilarity(sys, gram, kind_of(a.common.variant),
                                                  a.common.threads);
      ms_dissimilarity = ms_since(t0);
      t0 = Clock::now();
      part = strategy == "greedy" ? greedy_clustering(d, *a.r)
                                  : hierarchical_clustering(d, *a.r).partition;
      ms_clustering = ms_since(t0);
    }
  }

  t0 = Clock::now();
  const ReducedModel red = project(sys, part);
  const double ms_projection = ms_since(t0);

  t0 = Clock::now();
  const SolveReport solve = gram.report;
  const ErrorEvaluator eval(sys, std::move(fact), std::move(gram), opts);
  const double error = eval.error(red, a.common.variant);
  const double ms_error = ms_since(t0);
  const double ms_total = ms_since(t_total);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["network"] = a.file;
  report["n"] = sys.n();
  report["r"] = part.r();
  report["strategy"] = strategy;
  report["variant"] = a.common.variant == Variant::Position ? "position" : "velocity";
  if (strategy == "random") report["seed"] = a.seed;
  report["error_h2"] = error;
  report["timings_ms"] = {{"gramian", ms_gramian},       {"dissimilarity", ms_dissimilarity},
                          {"clustering", ms_clustering}, {"projection", ms_projection},
                          {"error", ms_error},           {"total", ms_total}};
  report["gramian_fraction"] = ms_total > 0.0 ? ms_gramian / ms_total : 0.0;
  report["gramian_solve"] = {{"residual_rel", solve.residual_rel},
                             {"singular_blocks_zeroed", solve.singular_blocks_zeroed},
                             {"consistency_defect", solve.consistency_defect}};

  write_text_file(a.out + ".network.json", network_to_json(red.system).dump(2) + "\n");
  write_text_file(a.out + ".partition.json", partition_to_json(part).dump(2) + "\n");
  write_text_file(a.out + ".report.json", report.dump(2) + "\n");
  std::printf("reduced n=%d -> r=%d (%s), H2 error %s\n", sys.n(), part.r(), strategy.c_str(),
              format_double(error).c_str());
  std::printf("timings ms: gramian %.3f, dissimilarity %.3f, clustering %.3f, projection %.3f, "
              "error %.3f, total %.3f\n",
              ms_gramian, ms_dissimilarity, ms_clustering, ms_projection, ms_error, ms_total);
  return kOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string file;
  std::vector<int> orders;
  std::vector<std::string> strategies{"hierarchical", "random", "greedy"};
  int trials = 50;
  std::uint64_t seed = 1;
  std::string out = "sweep.csv";
  Common common;
};

int run_sweep(const SweepArgs& a) {
  const SecondOrderNetwork sys = load_network(a.file);
  const SolveOptions opts = a.common.solve_options();
  for (int r : a.orders) {
    if (r < 1 || r > sys.n()) throw ArgumentError("sweep: order " + std::to_string(r) + " out of range");
  }
  SystemFactorization fact = factorize(sys, opts);
  NetworkGramian gram = network_gramian(fact, opts);
  const DissimilarityMatrix d =
      dissimilarity(sys, gram, kind_of(a.common.variant), a.common.threads);
  const ErrorEvaluator eval(sys, std::move(fact), std::move(gram), opts);

  auto wants = [&](const std::string& s) {
    return std::find(a.strategies.begin(), a.strategies.end(), s) != a.strategies.end();
  };
  std::vector<SweepRow> rows;
  auto run = [&](const std::string& name, int r, int trial, std::optional<std::uint64_t> seed,
                 auto&& make) {
    const auto t0 = Clock::now();
    const ClusteringPartition part = make();
    const double err = eval.error(project(sys, part), a.common.variant);
    rows.push_back({name, r, trial, seed.has_value(), seed.value_or(0), err, ms_since(t0)});
  };
  for (int r : a.orders) {
    if (wants("hierarchical")) {
      run("hierarchical", r, 1, std::nullopt, [&] { return hierarchical_clustering(d, r).partition; });
    }
    if (wants("random")) {
      for (int t = 1; t <= a.trials; ++t) {
        const std::uint64_t s = a.seed + static_cast<std::uint64_t>(t - 1);
        run("random", r, t, s, [&] { return random_clustering(sys.n(), r, s); });
      }
    }
    if (wants("greedy")) {
      run("greedy", r, 1, std::nullopt, [&] { return greedy_clustering(d, r); });
    }
  }
  write_text_file(a.out, sweep_csv(rows));

  for (int r : a.orders) {
    double sum = 0.0;
    int count = 0;
    std::string line = "r=" + std::to_string(r);
    for (const SweepRow& row : rows) {
      if (row.r != r) continue;
      if (row.strategy == "random") {
        sum += row.error_h2;
        ++count;
      } else {
        line += " " + row.strategy + "=" + format_double(row.error_h2);
      }
    }
    if (count > 0) line += " random_mean=" + format_double(sum / count);
    std::printf("%s\n", line.c_str());
  }
  std::printf("wrote %zu rows to %s\n", rows.size(), a.out.c_str());
  return kOk;
}

// -------------------------------------------------------------- dendrogram

struct DendrogramArgs {
  std::string file;
  std::string format = "newick";
  std::string out;
  Common common;
};

int run_dendrogram(const DendrogramArgs& a) {
  const SecondOrderNetwork sys = load_network(a.file);
  const NetworkGramian gram = network_gramian(sys, a.common.solve_options());
  const DissimilarityMatrix d =
      dissimilarity(sys, gram, kind_of(a.common.variant), a.common.threads);
  const Dendrogram tree = hierarchical_clustering(d, 1).dendrogram;
  const std::string text = a.format == "dot" ? to_dot(tree) : to_newick(tree);
  if (a.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(a.out, text);
  }
  return kOk;
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& file) {
  const RawNetwork raw = network_from_json(read_json_file(file));
  const auto violations = check_assumptions(raw.masses, raw.d, raw.l, raw.f);
  if (violations.empty()) {
    std::printf("pass: %s (n=%d, m=%d)\n", file.c_str(), static_cast<int>(raw.masses.size()),
                static_cast<int>(raw.f.cols()));
    return kOk;
  }
  for (const Violation& v : violations) {
    std::printf("fail [%s] %s magnitude=%s: %s\n", clause_name(v.clause), v.location.c_str(),
                format_double(v.magnitude).c_str(), v.message.c_str());
  }
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving reduction of second-order networks by clustering"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a seeded small-world benchmark network");
  generate->add_option("--n", gen.n, "vertices")->required();
  generate->add_option("--m", gen.cfg.m, "inputs")->check(CLI::NonNegativeNumber);
  generate->add_option("--k", gen.cfg.k, "mean degree (even)");
  generate->add_option("--beta", gen.cfg.beta, "rewiring probability")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--alpha", gen.cfg.alpha, "vertex damper per unit mass");
  generate->add_option("--weight-min", gen.cfg.weight_min, "smallest edge weight");
  generate->add_option("--weight-max", gen.cfg.weight_max, "largest edge weight");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--out", gen.out, "output network file")->required();

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "reduce one network and report the H2 error");
  reduce->add_option("file", red.file, "network file")->required();
  reduce->add_option("--r", red.r, "target order");
  reduce->add_option("--partition", red.partition_file, "explicit partition file");
  reduce->add_option("--strategy", red.strategy, "hierarchical, random or greedy")
      ->check(CLI::IsMember({"hierarchical", "random", "greedy"}));
  reduce->add_option("--seed", red.seed, "seed for the random strategy");
  reduce->add_option("--out", red.out, "output prefix");
  add_common(reduce, red.common);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "compare strategies over several orders");
  sweep->add_option("file", sw.file, "network file")->required();
  sweep->add_option("--r-list", sw.orders, "target orders")->required()->delimiter(',');
  sweep->add_option("--strategies", sw.strategies, "subset of hierarchical,random,greedy")
      ->delimiter(',')
      ->check(CLI::IsMember({"hierarchical", "random", "greedy"}));
  sweep->add_option("--trials", sw.trials, "random trials per order")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sw.seed, "first random seed");
  sweep->add_option("--out", sw.out, "CSV output");
  add_common(sweep, sw.common);

  DendrogramArgs den;
  auto* dendrogram = app.add_subcommand("dendrogram", "export the full merge tree");
  dendrogram->add_option("file", den.file, "network file")->required();
  dendrogram->add_option("--format", den.format, "newick or dot")
      ->check(CLI::IsMember({"newick", "dot"}));
  dendrogram->add_option("--out", den.out, "output file (default stdout)");
  add_common(dendrogram, den.common);

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "check a network file");
  validate_cmd->add_option("file", validate_file, "network file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*reduce) return run_reduce(red);
    if (*sweep) return run_sweep(sw);
    if (*dendrogram) return run_dendrogram(den);
    if (*validate_cmd) return run_validate(validate_file);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "invalid network: %s\n", e.what());
    for (const Violation& v : e.violations()) {
      std::fprintf(stderr, "  [%s] %s magnitude=%s: %s\n", clause_name(v.clause),
                   v.location.c_str(), format_double(v.magnitude).c_str(), v.message.c_str());
    }
    return kInvalid;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParse;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const ArgumentError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
