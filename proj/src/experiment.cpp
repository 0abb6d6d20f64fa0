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

#include "gfrft/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "gfrft/csv.hpp"
#include "gfrft/error.hpp"

namespace gfrft {

using nlohmann::json;

std::vector<std::string> RunConfig::weight_axis() const {
  return weights.empty() ? std::vector<std::string>{weight} : weights;
}
std::vector<double> RunConfig::alpha_axis() const {
  return alphas.empty() ? std::vector<double>{alpha} : alphas;
}
std::vector<double> RunConfig::epsilon_axis() const {
  return epsilons.empty() ? std::vector<double>{epsilon} : epsilons;
}
std::vector<Index> RunConfig::omega_axis() const {
  return omegas.empty() ? std::vector<Index>{omega} : omegas;
}

void to_json(json& j, const RunConfig& c) {
  j = json{
      {"command", c.command},
      {"alpha", c.alpha},
      {"q", c.q},
      {"k", c.k},
      {"weight", c.weight},
      {"epsilon", c.epsilon},
      {"omega", c.omega},
      {"seed", c.seed},
      {"trials", c.trials},
      {"days", c.days},
      {"data_dir", c.data_dir},
      {"out_dir", c.out_dir},
      {"transforms", c.transforms},
      {"zero_perturbation", c.zero_perturbation},
      {"weights", c.weights},
      {"alphas", c.alphas},
      {"epsilons", c.epsilons},
      {"omegas", c.omegas},
      {"bench_n1", c.bench_n1},
      {"bench_n2", c.bench_n2},
      {"bench_reps", c.bench_reps},
  };
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) fail(ErrorCode::Parse, "config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "alpha",     "q",       "k",          "weight",   "epsilon",
      "omega",   "seed",      "trials",  "days",       "data_dir", "out_dir",
      "transforms", "zero_perturbation", "weights", "alphas", "epsilons", "omegas",
      "bench_n1", "bench_n2", "bench_reps"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) fail(ErrorCode::Parse, "unknown config key '" + item.key() + "'");
  }
  try {
    c.command = j.value("command", c.command);
    c.alpha = j.value("alpha", c.alpha);
    c.q = j.value("q", c.q);
    c.k = j.value("k", c.k);
    c.weight = j.value("weight", c.weight);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.omega = j.value("omega", c.omega);
    c.seed = j.value("seed", c.seed);
    c.trials = j.value("trials", c.trials);
    c.days = j.value("days", c.days);
    c.data_dir = j.value("data_dir", c.data_dir);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.transforms = j.value("transforms", c.transforms);
    c.zero_perturbation = j.value("zero_perturbation", c.zero_perturbation);
    c.weights = j.value("weights", c.weights);
    c.alphas = j.value("alphas", c.alphas);
    c.epsilons = j.value("epsilons", c.epsilons);
    c.omegas = j.value("omegas", c.omegas);
    c.bench_n1 = j.value("bench_n1", c.bench_n1);
    c.bench_n2 = j.value("bench_n2", c.bench_n2);
    c.bench_reps = j.value("bench_reps", c.bench_reps);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("config: ") + e.what());
  }
}

DirectedGraph station_graph(const WeatherCube& cube, WeightScheme scheme, Index k,
                            std::uint64_t seed, bool zero_perturbation) {
  KnnOptions opts;
  opts.k = k;
  opts.scheme = scheme;
  opts.seed = seed;
  opts.zero_perturbation = zero_perturbation;
  return knn_graph(cube.stations(), opts, station_series(cube));
}

namespace {

std::vector<TransformKind> transform_axis(const RunConfig& c) {
  std::vector<TransformKind> out;
  for (const auto& name : c.transforms) {
    if (name == "all") {
      out = {TransformKind::Box, TransformKind::Kron, TransformKind::Dgfrft};
      break;
    }
    const TransformKind k = parse_transform_kind(name);
    if (k == TransformKind::MBox || k == TransformKind::MKron) {
      fail(ErrorCode::Parameter, "denoising runs on two-factor graphs; got " + name);
    }
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  if (out.empty()) fail(ErrorCode::Parameter, "no transforms selected");
  return out;
}

void validate(const RunConfig& c, const WeatherCube& cube) {
  if (c.trials < 1) fail(ErrorCode::Parameter, "trials must be positive");
  if (c.days.empty()) fail(ErrorCode::Parameter, "no days selected");
  for (Index d : c.days) {
    if (d < 1 || d > cube.days()) {
      fail(ErrorCode::Parameter, "day " + std::to_string(d) + " outside the data range");
    }
  }
  const Index n = cube.hours() * cube.station_count();
  for (Index omega : c.omega_axis()) {
    if (omega < 1 || omega > n) {
      fail(ErrorCode::Parameter, "omega " + std::to_string(omega) + " outside [1, " +
                                     std::to_string(n) + "]");
    }
  }
}

}  // namespace

std::vector<DenoiseRow> run_denoise(const WeatherCube& cube, const RunConfig& config) {
  validate(config, cube);
  const auto kinds = transform_axis(config);
  const DirectedGraph time_graph = DirectedGraph::directed_path(cube.hours());

  std::vector<DenoiseRow> rows;
  for (const auto& weight_name : config.weight_axis()) {
    const WeightScheme scheme = parse_weight_scheme(weight_name);
    const DirectedGraph g2 =
        station_graph(cube, scheme, config.k, config.seed, config.zero_perturbation);
    const DirectedGraph factors[] = {time_graph, g2};
    for (double alpha : config.alpha_axis()) {
      std::vector<TransformPlan> plans;
      for (TransformKind kind : kinds) {
        plans.emplace_back(kind, factors, TransformPlan::Options{alpha, config.q, false});
      }
      for (Index day : config.days) {
        const Eigen::MatrixXd x = day_matrix(cube, day);
        for (double eps : config.epsilon_axis()) {
          for (Index trial = 0; trial < config.trials; ++trial) {
            const Eigen::MatrixXd xhat =
                add_uniform_noise(x, {eps, trial_seed(config.seed, day, trial)});
            const Eigen::VectorXd xhat_vec = vec(xhat);
            for (Index omega : config.omega_axis()) {
              for (const auto& plan : plans) {
                const Eigen::MatrixXd xtilde =
                    unvec(bandlimit(plan, xhat_vec, omega), x.rows(), x.cols());
                rows.push_back({day, trial, to_string(scheme), alpha, eps, omega,
                                to_string(plan.kind()), metrics(x, xhat, xtilde)});
              }
            }
          }
        }
      }
    }
  }
  auto key = [](const DenoiseRow& r) {
    return std::tie(r.day, r.weight, r.alpha, r.epsilon, r.omega, r.transform, r.trial);
  };
  std::sort(rows.begin(), rows.end(),
            [&](const DenoiseRow& a, const DenoiseRow& b) { return key(a) < key(b); });
  return rows;
}

json summarize(const std::vector<DenoiseRow>& rows) {
  struct Acc {
    double isnr = 0, snr = 0, bae = 0;
    Index n = 0;
  };
  using GroupKey = std::tuple<std::string, double, double, Index>;
  std::map<GroupKey, std::map<std::string, Acc>> groups;
  // Sum in key order so the means do not depend on the input order.
  std::vector<const DenoiseRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const DenoiseRow* a, const DenoiseRow* b) {
    return std::tie(a->day, a->weight, a->alpha, a->epsilon, a->omega, a->transform, a->trial) <
           std::tie(b->day, b->weight, b->alpha, b->epsilon, b->omega, b->transform, b->trial);
  });
  for (const DenoiseRow* row : sorted) {
    const DenoiseRow& r = *row;
    Acc& a = groups[{r.weight, r.alpha, r.epsilon, r.omega}][r.transform];
    a.isnr += r.metrics.isnr;
    a.snr += r.metrics.snr;
    a.bae += r.metrics.bae;
    ++a.n;
  }
  json out = json::array();
  for (const auto& [key, per_transform] : groups) {
    const auto& [weight, alpha, epsilon, omega] = key;
    json g = {{"weight", weight}, {"alpha", alpha}, {"epsilon", epsilon}, {"omega", omega}};
    json t = json::object();
    double isnr = 0.0;
    Index n = 0;
    for (const auto& [name, a] : per_transform) {
      t[name] = {{"snr", a.snr / a.n}, {"bae", a.bae / a.n}, {"samples", a.n}};
      isnr = a.isnr / a.n;
      n = a.n;
    }
    g["isnr"] = isnr;
    g["samples"] = n;
    g["transforms"] = t;
    out.push_back(g);
  }
  return json{{"groups", out}};
}

std::string format_metric(double v) { return csv::format_double(v); }

void write_denoise_csv(const std::vector<DenoiseRow>& rows, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "day,trial,weight,alpha,epsilon,omega,transform,isnr,snr,bae\n";
  for (const auto& r : rows) {
    out << r.day << ',' << r.trial << ',' << r.weight << ',' << format_metric(r.alpha) << ','
        << format_metric(r.epsilon) << ',' << r.omega << ',' << r.transform << ','
        << format_metric(r.metrics.isnr) << ',' << format_metric(r.metrics.snr) << ','
        << format_metric(r.metrics.bae) << '\n';
  }
  csv::write_text(path, out.str());
}

BenchReport run_bench(const RunConfig& config) {
  if (config.bench_n1 < 1 || config.bench_n2 < 2) {
    fail(ErrorCode::Parameter, "bench needs n1 >= 1 and n2 >= 2");
  }
  if (config.bench_reps < 1) fail(ErrorCode::Parameter, "bench_reps must be positive");
  const WeightScheme scheme = parse_weight_scheme(config.weight);

  SynthOptions so;
  so.stations = config.bench_n2;
  so.hours = config.bench_n1;
  so.seed = config.seed;
  const WeatherCube cube = synth_cube(so);
  const Index k = std::min(config.k, config.bench_n2 - 1);
  const DirectedGraph g1 = DirectedGraph::directed_path(config.bench_n1);
  const DirectedGraph g2 = station_graph(cube, scheme, k, config.seed, config.zero_perturbation);
  const Eigen::MatrixXd l1 = laplacian(g1);
  const Eigen::MatrixXd l2 = laplacian(g2);
  const HermitianLaplacian h1 = hermitian_laplacian(g1, config.q);
  const HermitianLaplacian h2 = hermitian_laplacian(g2, config.q);
  const double alpha = config.alpha;

  using Clock = std::chrono::steady_clock;
  auto time = [](auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  std::vector<double> box, kron, dg;
  for (Index rep = 0; rep < config.bench_reps; ++rep) {
    box.push_back(time([&] {
      const auto f1 = fractional_laplacian(l1, alpha);
      const auto f2 = fractional_laplacian(l2, alpha);
      const auto p = product_fractional_laplacian(f1, f2);
      (void)p;
    }));
    kron.push_back(time([&] {
      const auto f1 = fractional_laplacian(l1, alpha);
      const auto f2 = fractional_laplacian(l2, alpha);
      (void)f1;
      (void)f2;
    }));
    dg.push_back(time([&] {
      const auto f1 = hermitian_fractional(h1, alpha);
      const auto f2 = hermitian_fractional(h2, alpha);
      (void)f1;
      (void)f2;
    }));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  BenchReport r;
  r.n1 = config.bench_n1;
  r.n2 = config.bench_n2;
  r.reps = config.bench_reps;
  r.weight = to_string(scheme);
  r.median_box = median(box);
  r.median_kron = median(kron);
  r.median_dgfrft = median(dg);
  return r;
}

json to_json(const BenchReport& r) {
  return json{{"n1", r.n1},
              {"n2", r.n2},
              {"n", r.n1 * r.n2},
              {"reps", r.reps},
              {"weight", r.weight},
              {"median_seconds", {{"box", r.median_box}, {"kron", r.median_kron},
                                  {"dgfrft", r.median_dgfrft}}},
              {"speedup_kron_over_box", r.speedup()},
              {"complexity", {{"box", "O(N^3), N = n1 * n2"},
                              {"kron", "O(n1^3 + n2^3)"},
                              {"dgfrft", "O(n1^3 + n2^3)"}}}};
}

namespace {

json sanitize(const json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return j;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(sanitize(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& item : j.items()) out[item.key()] = sanitize(item.value());
    return out;
  }
  return j;
}

}  // namespace

std::string dump_json(const json& j) { return sanitize(j).dump(2); }

}  // namespace gfrft
