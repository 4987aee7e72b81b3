// Copyright 2026 The scenred Authors
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

#include "scenred/experiment.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

namespace scenred {
namespace {

// Deterministic per-instance seed from the grid coordinates.
std::uint64_t InstanceSeed(std::uint64_t seed, int scenarios, double s_inc) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(s_inc);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(scenarios), static_cast<std::uint32_t>(bits),
                    static_cast<std::uint32_t>(bits >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

struct Group {
  int scenarios;
  double s_inc;
  std::uint64_t seed;
  std::size_t first_row;  // rows for this group are contiguous
};

const char* const kColumns[] = {
    "schema_version", "row_type",   "kind",       "scenarios",      "dimension",
    "constraints",    "binaries",   "samples",    "delta",          "s_inc",
    "seed",           "method",     "K_requested", "K",             "srf",
    "af",             "alpha",      "beta",       "guarantee",      "original_objective",
    "reduced_objective", "evaluated", "bound",    "certificate",    "clustering_exact",
    "status",         "tf",         "clustering_seconds", "original_seconds", "reduced_seconds"};

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::kInvalidSpec, field + ": " + why);
  };
  if (scenario_counts.empty()) fail("scenarios", "empty list");
  for (int n : scenario_counts)
    if (n < 1) fail("scenarios", "must be >= 1");
  if (ks.empty()) fail("k", "empty list");
  for (int k : ks)
    if (k < 1) fail("k", "must be >= 1");
  if (s_incs.empty()) fail("s-inc", "empty list");
  for (double s : s_incs)
    if (!(s >= 0.0 && s < 1.0)) fail("s-inc", "must lie in [0, 1)");
  if (seeds.empty()) fail("seeds", "empty list");
  if (methods.empty()) fail("method", "empty list");
  if (dimension < 1) fail("dimension", "must be >= 1");
  if (constraints < 0) fail("constraints", "must be >= 0");
  if (binaries < 0 || binaries > dimension) fail("binaries", "must lie in [0, dimension]");
  if (binaries > kMaxBinaries) fail("binaries", "at most " + std::to_string(kMaxBinaries));
  if (samples < 0) fail("samples", "must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta", "must lie in (0, 1)");
  if (parallel < 1) fail("parallel", "must be >= 1");
  if (kind == ObjectiveKind::kQuadratic) {
    for (ReductionMethod m : methods)
      if (m == ReductionMethod::kHyperrect) fail("method", "hyperrect needs linear instances");
  }
}

DroInstance ExperimentInstance(const ExperimentConfig& config, int scenarios, double s_inc,
                               std::uint64_t seed) {
  const std::uint64_t instance_seed = InstanceSeed(seed, scenarios, s_inc);
  if (config.kind == ObjectiveKind::kLinear) {
    LinearInstanceSpec spec;
    spec.scenarios = scenarios;
    spec.dimension = config.dimension;
    spec.constraints = config.constraints;
    spec.binaries = config.binaries;
    spec.s_inc = s_inc;
    spec.samples = config.samples;
    spec.delta = config.delta;
    spec.seed = instance_seed;
    return GenerateLinearInstance(spec);
  }
  PortfolioInstanceSpec spec;
  spec.scenarios = scenarios;
  spec.assets = config.dimension;
  spec.s_inc = s_inc;
  spec.samples = config.samples;
  spec.delta = config.delta;
  spec.seed = instance_seed;
  return GeneratePortfolioInstance(spec);
}

std::vector<ExperimentRow> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  std::vector<ExperimentRow> rows;
  std::vector<Group> groups;
  for (int n : config.scenario_counts) {
    for (double s_inc : config.s_incs) {
      for (std::uint64_t seed : config.seeds) {
        groups.push_back({n, s_inc, seed, rows.size()});
        for (int k : config.ks) {
          for (ReductionMethod m : config.methods) {
            ExperimentRow row;
            row.scenarios = n;
            row.k_requested = k;
            row.s_inc = s_inc;
            row.seed = seed;
            row.method = std::string(MethodName(m));
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }

  auto run_group = [&](const Group& g) {
    std::size_t r = g.first_row;
    std::optional<DroInstance> instance;
    std::optional<DroSolution> original;
    std::string setup_error;
    try {
      instance.emplace(ExperimentInstance(config, g.scenarios, g.s_inc, g.seed));
      original.emplace(config.cutting_plane ? SolveCuttingPlane(*instance) : Solve(*instance));
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (int k : config.ks) {
      for (ReductionMethod m : config.methods) {
        ExperimentRow& row = rows[r++];
        if (!setup_error.empty()) {
          row.error = setup_error;
          continue;
        }
        if (k > g.scenarios) {
          row.error = "K exceeds the number of scenarios";
          continue;
        }
        try {
          ReduceOptions opts;
          opts.method = m;
          opts.k = k;
          opts.seed = g.seed;
          opts.node_limit = config.node_limit;
          opts.cutting_plane = config.cutting_plane;
          row.metrics = ReduceAndSolve(*instance, opts, &*original).metrics;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
    }
  };

  if (config.parallel <= 1) {
    for (const Group& g : groups) run_group(g);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(config.parallel, static_cast<int>(groups.size()));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < groups.size(); i = next++) run_group(groups[i]);
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string ExperimentCsv(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  bool first = true;
  for (const char* c : kColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << "\r\n";

  const std::string kind(ObjectiveKindName(config.kind));
  auto prefix = [&](const std::string& type) {
    std::ostringstream p;
    p << kExperimentSchemaVersion << "," << type << "," << kind << ",";
    return p.str();
  };
  auto config_cols = [&](int scenarios, double s_inc) {
    std::ostringstream p;
    p << scenarios << "," << config.dimension << "," << config.constraints << ","
      << config.binaries << "," << config.samples << "," << FormatDouble(config.delta) << ","
      << FormatDouble(s_inc) << ",";
    return p.str();
  };
  auto f = [](double v) { return FormatDouble(v); };

  for (const ExperimentRow& row : rows) {
    const MetricsReport& m = row.metrics;
    out << prefix("data") << config_cols(row.scenarios, row.s_inc) << row.seed << ","
        << row.method << "," << row.k_requested << ",";
    if (row.ok()) {
      out << m.k << "," << f(m.srf) << "," << f(m.af) << "," << f(m.alpha) << "," << f(m.beta)
          << "," << f(m.guarantee) << "," << f(m.original_objective) << ","
          << f(m.reduced_objective) << "," << f(m.evaluated) << "," << f(m.bound) << ","
          << (m.certificate ? 1 : 0) << "," << (m.clustering_exact ? 1 : 0) << ",ok," << f(m.tf)
          << "," << f(m.clustering_seconds) << "," << f(m.original_seconds) << ","
          << f(m.reduced_seconds);
    } else {
      out << ",,,,,,,,,,,," << Quote("error: " + row.error) << ",,,,";
    }
    out << "\r\n";
  }

  // Means over seeds, in first-appearance order of the group keys.
  using Key = std::tuple<std::string, int, int, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const ExperimentRow*>> members;
  for (const ExperimentRow& row : rows) {
    const Key key{row.method, row.scenarios, row.k_requested, row.s_inc};
    if (!members.count(key)) order.push_back(key);
    auto& list = members[key];
    if (row.ok()) list.push_back(&row);
  }
  for (const Key& key : order) {
    const auto& list = members[key];
    const auto& [method, scenarios, k, s_inc] = key;
    out << prefix("mean") << config_cols(scenarios, s_inc) << "," << method << "," << k << ",";
    if (list.empty()) {
      out << ",,,,,,,,,,,,n=0,,,,\r\n";
      continue;
    }
    auto mean = [&](auto field) {
      double s = 0.0;
      for (const ExperimentRow* r : list) s += field(r->metrics);
      return FormatDouble(s / static_cast<double>(list.size()));
    };
    bool all_cert = true, all_exact = true;
    for (const ExperimentRow* r : list) {
      all_cert = all_cert && r->metrics.certificate;
      all_exact = all_exact && r->metrics.clustering_exact;
    }
    out << mean([](const MetricsReport& m) { return static_cast<double>(m.k); }) << ","
        << mean([](const MetricsReport& m) { return m.srf; }) << ","
        << mean([](const MetricsReport& m) { return m.af; }) << ","
        << mean([](const MetricsReport& m) { return m.alpha; }) << ","
        << mean([](const MetricsReport& m) { return m.beta; }) << ","
        << mean([](const MetricsReport& m) { return m.guarantee; }) << ","
        << mean([](const MetricsReport& m) { return m.original_objective; }) << ","
        << mean([](const MetricsReport& m) { return m.reduced_objective; }) << ","
        << mean([](const MetricsReport& m) { return m.evaluated; }) << ","
        << mean([](const MetricsReport& m) { return m.bound; }) << "," << (all_cert ? 1 : 0)
        << "," << (all_exact ? 1 : 0) << ",n=" << list.size() << ","
        << mean([](const MetricsReport& m) { return m.tf; }) << ","
        << mean([](const MetricsReport& m) { return m.clustering_seconds; }) << ","
        << mean([](const MetricsReport& m) { return m.original_seconds; }) << ","
        << mean([](const MetricsReport& m) { return m.reduced_seconds; }) << "\r\n";
  }
  return out.str();
}

}  // namespace scenred
