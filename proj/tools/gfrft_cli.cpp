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

// gfrft command-line driver. Talks to the library only through gfrft.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gfrft/gfrft.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(gfrft_status s) {
  switch (s) {
    case GFRFT_OK: return kExitOk;
    case GFRFT_E_NUMERIC:
    case GFRFT_E_PRECONDITION: return kExitNumeric;
    case GFRFT_E_INTERNAL: return kExitInternal;
    default: return kExitInput;
  }
}

void check(gfrft_status s, const std::string& what) {
  if (s != GFRFT_OK) {
    throw Failure{exit_code_for(s), what + ": " + gfrft_status_string(s) + ": " +
                                        gfrft_last_error()};
  }
}

struct GraphDeleter {
  void operator()(gfrft_graph* g) const { gfrft_graph_free(g); }
};
struct CubeDeleter {
  void operator()(gfrft_cube* c) const { gfrft_cube_free(c); }
};
struct TransformDeleter {
  void operator()(gfrft_transform* t) const { gfrft_transform_free(t); }
};
struct StationsDeleter {
  void operator()(gfrft_stations* s) const { gfrft_stations_free(s); }
};
using GraphPtr = std::unique_ptr<gfrft_graph, GraphDeleter>;
using CubePtr = std::unique_ptr<gfrft_cube, CubeDeleter>;
using TransformPtr = std::unique_ptr<gfrft_transform, TransformDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  gfrft_string_free(s);
  return out;
}

// Flags shared by every subcommand. Unset flags leave the config file (or
// the library default) in charge.
struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double q = 0.0;
  long long omega = 0;
  double epsilon = 0.0;
  std::string weight;
  std::string transform;
  std::string out;
  std::string data;
  long long k = 0;
  long long trials = 0;
  std::vector<long long> days;
  bool zero_perturbation = false;
  bool strict = false;
};

struct Options {
  CLI::Option* seed;
  CLI::Option* alpha;
  CLI::Option* q;
  CLI::Option* omega;
  CLI::Option* epsilon;
  CLI::Option* weight;
  CLI::Option* transform;
  CLI::Option* out;
  CLI::Option* data;
  CLI::Option* k;
  CLI::Option* trials;
  CLI::Option* days;
};

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitInput, "cannot open config " + path};
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Failure{kExitInput, "config " + path + ": " + e.what()};
  }
}

// Defaults <- config file <- command-line flags, normalised by the library.
json resolve_config(const std::string& command, const Flags& f, const Options& o) {
  json j = f.config.empty() ? json::object() : read_config_file(f.config);
  if (!j.is_object()) throw Failure{kExitInput, "config must be a JSON object"};
  j["command"] = command;
  if (o.seed->count()) j["seed"] = f.seed;
  if (o.alpha->count()) j["alpha"] = f.alpha;
  if (o.q->count()) j["q"] = f.q;
  if (o.omega->count()) j["omega"] = f.omega;
  if (o.epsilon->count()) j["epsilon"] = f.epsilon;
  if (o.weight->count()) {
    if (f.weight == "all") {
      j["weights"] = {"w1", "w2", "w3"};
    } else {
      j["weight"] = f.weight;
      j["weights"] = json::array();
    }
  }
  if (o.transform->count()) {
    j["transforms"] = f.transform == "all" ? json{"box", "kron", "dgfrft"} : json{f.transform};
  }
  if (o.out->count()) j["out_dir"] = f.out;
  if (o.data->count()) j["data_dir"] = f.data;
  if (o.k->count()) j["k"] = f.k;
  if (o.trials->count()) j["trials"] = f.trials;
  if (o.days->count()) j["days"] = f.days;
  if (f.zero_perturbation) j["zero_perturbation"] = true;

  char* normalized = nullptr;
  check(gfrft_config_normalize(j.dump().c_str(), &normalized), "config");
  return json::parse(take(normalized));
}

// Data root: --data / config, then GFRFT_DATA_DIR, else the synthetic cube.
CubePtr load_cube(const json& config) {
  std::string dir = config.value("data_dir", "");
  if (dir.empty()) {
    if (const char* env = std::getenv("GFRFT_DATA_DIR")) dir = env;
  }
  gfrft_cube* cube = nullptr;
  if (!dir.empty()) {
    const fs::path root(dir);
    gfrft_stations* raw = nullptr;
    check(gfrft_stations_load((root / "stations.csv").string().c_str(), &raw), "stations");
    std::unique_ptr<gfrft_stations, StationsDeleter> stations(raw);
    check(gfrft_cube_load((root / "weather.csv").string().c_str(), stations.get(), &cube),
          "weather");
    const size_t imputed = gfrft_cube_imputed(cube);
    if (imputed > 0) std::cerr << "note: imputed " << imputed << " missing readings\n";
  } else {
    std::cerr << "note: no data directory; using the synthetic cube (32 stations, 24 h, "
                 "31 days, seed 2014)\n";
    check(gfrft_cube_synth(32, 24, 31, 2014, &cube), "synth");
  }
  return CubePtr(cube);
}

gfrft_weight weight_of(const std::string& name) {
  if (name == "w1") return GFRFT_W1;
  if (name == "w2") return GFRFT_W2;
  if (name == "w3") return GFRFT_W3;
  throw Failure{kExitInput, "unknown weight '" + name + "'"};
}

gfrft_kind kind_of(const std::string& name) {
  if (name == "box") return GFRFT_BOX;
  if (name == "kron") return GFRFT_KRON;
  if (name == "dgfrft") return GFRFT_DGFRFT;
  throw Failure{kExitInput, "unknown transform '" + name + "'"};
}

std::vector<std::string> weights_of(const json& c) {
  auto w = c.at("weights").get<std::vector<std::string>>();
  if (w.empty()) w.push_back(c.at("weight").get<std::string>());
  return w;
}

GraphPtr station_graph(const gfrft_cube* cube, const json& c, const std::string& weight) {
  gfrft_graph* g = nullptr;
  check(gfrft_graph_knn(cube, c.at("k").get<size_t>(), weight_of(weight),
                        c.at("seed").get<std::uint64_t>(), c.at("zero_perturbation").get<bool>(),
                        &g),
        "build graph");
  return GraphPtr(g);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Failure{kExitInput, "cannot write " + path.string()};
  out << text;
}

int cmd_synth(const json& c, long long stations, long long hours, long long days) {
  if (stations < 1 || hours < 1 || days < 1) {
    throw Failure{kExitInput, "synth dimensions must be positive"};
  }
  gfrft_cube* raw = nullptr;
  check(gfrft_cube_synth(stations, hours, days, c.at("seed").get<std::uint64_t>(), &raw),
        "synth");
  CubePtr cube(raw);
  const fs::path out(c.at("out_dir").get<std::string>());
  fs::create_directories(out);
  check(gfrft_cube_save(cube.get(), (out / "weather.csv").string().c_str(),
                        (out / "stations.csv").string().c_str()),
        "save");
  std::cout << "wrote " << (out / "stations.csv").string() << " and "
            << (out / "weather.csv").string() << '\n';
  return kExitOk;
}

int cmd_build_graph(const json& c) {
  CubePtr cube = load_cube(c);
  const fs::path out(c.at("out_dir").get<std::string>());
  for (const auto& w : weights_of(c)) {
    GraphPtr g = station_graph(cube.get(), c, w);
    const fs::path path = out / ("graph_" + w + ".csv");
    fs::create_directories(out);
    check(gfrft_graph_save(g.get(), path.string().c_str()), "save graph");
    std::cout << w << ": " << gfrft_graph_size(g.get()) << " vertices, "
              << gfrft_graph_edge_count(g.get()) << " edges -> " << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_transform(const json& c, bool undirected, bool strict) {
  CubePtr cube = load_cube(c);
  size_t days = 0, hours = 0, stations = 0;
  check(gfrft_cube_dims(cube.get(), &days, &hours, &stations), "cube");
  const size_t day = c.at("days").at(0).get<size_t>();
  std::vector<double> x(hours * stations);
  check(gfrft_cube_day_matrix(cube.get(), day, x.data()), "day matrix");

  const std::string weight = weights_of(c).front();
  GraphPtr g2 = station_graph(cube.get(), c, weight);
  gfrft_graph* raw = nullptr;
  check(gfrft_graph_directed_path(hours, &raw), "time graph");
  GraphPtr g1(raw);
  if (undirected) {
    check(gfrft_graph_symmetrize(g1.get(), &raw), "symmetrize");
    g1.reset(raw);
    check(gfrft_graph_symmetrize(g2.get(), &raw), "symmetrize");
    g2.reset(raw);
  }
  const gfrft_graph* factors[] = {g1.get(), g2.get()};
  const fs::path out(c.at("out_dir").get<std::string>());
  const size_t omega = c.at("omega").get<size_t>();
  const auto seed = c.at("seed").get<std::uint64_t>();
  const double alpha = c.at("alpha").get<double>();

  json summary = {{"day", day}, {"weight", weight}, {"alpha", alpha}, {"omega", omega},
                  {"undirected", undirected}, {"energy_fraction", json::object()}};
  int status = kExitOk;
  for (const auto& name : c.at("transforms").get<std::vector<std::string>>()) {
    gfrft_transform* t = nullptr;
    check(gfrft_transform_create(kind_of(name), factors, 2, alpha, c.at("q").get<double>(), &t),
          name);
    TransformPtr plan(t);
    if (strict && gfrft_transform_is_complex(t) && name != "dgfrft") {
      std::cerr << name << ": fractional power is complex (strict mode)\n";
      status = kExitNumeric;
    }
    const std::string stem = "spectrum_" + name;
    check(gfrft_transform_export_spectrum(t, x.data(), x.size(),
                                          (out / (stem + ".csv")).string().c_str(),
                                          (out / (stem + ".json")).string().c_str(), seed),
          name);
    double fraction = 0.0;
    check(gfrft_transform_energy_fraction(t, x.data(), x.size(), omega, &fraction), name);
    summary["energy_fraction"][name] = fraction;
    std::printf("%-7s energy in first %zu of %zu frequencies: %.4f%s\n", name.c_str(), omega,
                x.size(), fraction, gfrft_transform_is_complex(t) ? " (complex basis)" : "");
  }
  write_file(out / "transform_summary.json", summary.dump(2) + "\n");
  return status;
}

int cmd_denoise(const json& c) {
  CubePtr cube = load_cube(c);
  const std::string out = c.at("out_dir").get<std::string>();
  char* raw = nullptr;
  check(gfrft_run_denoise(c.dump().c_str(), cube.get(), out.c_str(), &raw), "denoise");
  const json summary = json::parse(take(raw));
  std::printf("%-6s %-6s %-8s %-6s %-9s %-10s %-10s %-10s %-9s %-9s %-9s\n", "weight", "alpha",
              "epsilon", "omega", "isnr", "snr_box", "snr_kron", "snr_q", "bae_box", "bae_kron",
              "bae_q");
  auto num = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v.get<double>());
    return std::string(buf);
  };
  auto field = [&](const json& g, const char* t, const char* m) {
    const auto& ts = g.at("transforms");
    return ts.contains(t) ? num(ts.at(t).at(m)) : std::string("-");
  };
  for (const auto& g : summary.at("groups")) {
    std::printf("%-6s %-6s %-8s %-6s %-9s %-10s %-10s %-10s %-9s %-9s %-9s\n",
                g.at("weight").get<std::string>().c_str(), num(g.at("alpha")).c_str(),
                num(g.at("epsilon")).c_str(), std::to_string(g.at("omega").get<long long>()).c_str(),
                num(g.at("isnr")).c_str(), field(g, "box", "snr").c_str(),
                field(g, "kron", "snr").c_str(), field(g, "dgfrft", "snr").c_str(),
                field(g, "box", "bae").c_str(), field(g, "kron", "bae").c_str(),
                field(g, "dgfrft", "bae").c_str());
  }
  std::cout << "wrote " << (fs::path(out) / "report.csv").string() << " and "
            << (fs::path(out) / "summary.json").string() << '\n';
  return kExitOk;
}

int cmd_bench(const json& c, long long n1, long long n2, long long reps) {
  json cfg = c;
  if (n1 > 0) cfg["bench_n1"] = n1;
  if (n2 > 0) cfg["bench_n2"] = n2;
  if (reps > 0) cfg["bench_reps"] = reps;
  char* raw = nullptr;
  check(gfrft_run_bench(cfg.dump().c_str(), &raw), "bench");
  const std::string text = take(raw);
  const json report = json::parse(text);
  const auto& m = report.at("median_seconds");
  std::printf("N1=%lld N2=%lld reps=%lld weight=%s\n", report.at("n1").get<long long>(),
              report.at("n2").get<long long>(), report.at("reps").get<long long>(),
              report.at("weight").get<std::string>().c_str());
  std::printf("median seconds: box %.6f  kron %.6f  dgfrft %.6f\n", m.at("box").get<double>(),
              m.at("kron").get<double>(), m.at("dgfrft").get<double>());
  std::printf("kron speedup over box: %.1fx\n", report.at("speedup_kron_over_box").get<double>());
  write_file(fs::path(c.at("out_dir").get<std::string>()) / "bench.json", text + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph fractional Fourier transforms on directed product graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gfrft_version()));

  Flags f;
  Options o{};
  app.add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  o.seed = app.add_option("--seed", f.seed, "Base seed");
  o.alpha = app.add_option("--alpha", f.alpha, "Fractional order in (0, 1]");
  o.q = app.add_option("--q", f.q, "Magnetic Laplacian phase parameter");
  o.omega = app.add_option("--omega", f.omega, "Bandwidth (number of kept frequencies)");
  o.epsilon = app.add_option("--epsilon", f.epsilon, "Uniform noise bound");
  o.weight = app.add_option("--weight", f.weight, "Station edge weights")
                 ->check(CLI::IsMember({"w1", "w2", "w3", "all"}));
  o.transform = app.add_option("--transform", f.transform, "Transform selection")
                    ->check(CLI::IsMember({"box", "kron", "dgfrft", "all"}));
  o.out = app.add_option("--out", f.out, "Output directory");
  o.data = app.add_option("--data", f.data,
                          "Directory with stations.csv and weather.csv (default $GFRFT_DATA_DIR)");
  o.k = app.add_option("--k", f.k, "Nearest neighbours per station");
  o.trials = app.add_option("--trials", f.trials, "Noise trials per day");
  o.days = app.add_option("--days", f.days, "1-based days to process");
  app.add_flag("--zero-perturbation", f.zero_perturbation, "Disable random weight perturbation");
  app.add_flag("--strict", f.strict, "Exit 3 when a fractional power comes out complex");

  auto* synth = app.add_subcommand("synth", "Write a synthetic stations/weather data set");
  long long synth_stations = 32, synth_hours = 24, synth_days = 31;
  synth->add_option("--stations", synth_stations, "Station count");
  synth->add_option("--hours", synth_hours, "Hours per day");
  synth->add_option("--n-days", synth_days, "Number of days");

  auto* build = app.add_subcommand("build-graph", "Write k-NN station graphs as edge lists");
  auto* transform = app.add_subcommand("transform", "Export spectra of one day's signal");
  bool undirected = false;
  transform->add_flag("--undirected", undirected, "Symmetrise both factor graphs first");
  auto* denoise = app.add_subcommand("denoise", "Run the seeded denoising sweep");
  auto* bench = app.add_subcommand("bench", "Time the frequency-component computations");
  long long n1 = 0, n2 = 0, reps = 0;
  bench->add_option("--n1", n1, "Time-graph size (default 24)");
  bench->add_option("--n2", n2, "Station-graph size (default 32)");
  bench->add_option("--reps", reps, "Repetitions (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    json config = resolve_config(command, f, o);
    if (synth->parsed()) {
      if (!o.out->count() && f.config.empty()) config["out_dir"] = "data";
      if (!o.seed->count()) config["seed"] = 2014;
      return cmd_synth(config, synth_stations, synth_hours, synth_days);
    }
    if (build->parsed()) return cmd_build_graph(config);
    if (transform->parsed()) return cmd_transform(config, undirected, f.strict);
    if (denoise->parsed()) return cmd_denoise(config);
    if (bench->parsed()) return cmd_bench(config, n1, n2, reps);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
