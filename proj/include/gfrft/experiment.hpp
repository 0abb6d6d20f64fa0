// Copyright 2026 The gfrft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GFRFT_EXPERIMENT_HPP
#define GFRFT_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "gfrft/dataio.hpp"
#include "gfrft/denoise.hpp"
#include "gfrft/graph.hpp"
#include "gfrft/transform.hpp"

namespace gfrft {

/// Parameters of one CLI run. Serialises to and from JSON; every field is
/// optional on input and falls back to the defaults below.
struct RunConfig {
  std::string command;
  double alpha = 0.7;
  double q = 0.5;
  Index k = 5;
  std::string weight = "w1";
  double epsilon = 4.0;
  Index omega = 40;
  std::uint64_t seed = 1;
  Index trials = 100;
  std::vector<Index> days{1};
  std::string data_dir;
  std::string out_dir = "out";
  std::vector<std::string> transforms{"box", "kron", "dgfrft"};
  bool zero_perturbation = false;

  // Sweep axes; an empty list means "use the scalar field above".
  std::vector<std::string> weights;
  std::vector<double> alphas;
  std::vector<double> epsilons;
  std::vector<Index> omegas;

  // Benchmark workload.
  Index bench_n1 = 24;
  Index bench_n2 = 32;
  Index bench_reps = 20;

  std::vector<std::string> weight_axis() const;
  std::vector<double> alpha_axis() const;
  std::vector<double> epsilon_axis() const;
  std::vector<Index> omega_axis() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Station graph from the cube's station table and hourly series.
DirectedGraph station_graph(const WeatherCube& cube, WeightScheme scheme, Index k,
                            std::uint64_t seed, bool zero_perturbation = false);

/// Noise seed of a (day, trial) cell.
inline std::uint64_t trial_seed(std::uint64_t base, Index day, Index trial) {
  return base + 1000u * static_cast<std::uint64_t>(day) + static_cast<std::uint64_t>(trial);
}

struct DenoiseRow {
  Index day = 1;
  Index trial = 0;
  std::string weight;
  double alpha = 0.0;
  double epsilon = 0.0;
  Index omega = 0;
  std::string transform;
  DenoiseMetrics metrics;
};

/// Runs the (day, weight, alpha, epsilon, omega, transform, trial) sweep.
/// Rows come back sorted by that key.
std::vector<DenoiseRow> run_denoise(const WeatherCube& cube, const RunConfig& config);

/// Means per (weight, alpha, epsilon, omega), one column per transform.
nlohmann::json summarize(const std::vector<DenoiseRow>& rows);

void write_denoise_csv(const std::vector<DenoiseRow>& rows, const std::filesystem::path& path);

struct BenchReport {
  Index n1 = 0;
  Index n2 = 0;
  Index reps = 0;
  std::string weight;
  double median_box = 0.0;     // seconds
  double median_kron = 0.0;    // seconds
  double median_dgfrft = 0.0;  // seconds
  double speedup() const { return median_kron > 0.0 ? median_box / median_kron : 0.0; }
};

/// Times the frequency-component computation of each transform on
/// directed_path(n1) ⊠ (k-NN graph over n2 synthetic stations).
BenchReport run_bench(const RunConfig& config);

nlohmann::json to_json(const BenchReport& report);

/// Writes a JSON value with 2-space indentation, mapping non-finite numbers
/// to the strings "inf", "-inf" and "nan".
std::string dump_json(const nlohmann::json& j);

/// Number formatting used by every CSV writer ("inf" for +∞).
std::string format_metric(double v);

}  // namespace gfrft

#endif  // GFRFT_EXPERIMENT_HPP
