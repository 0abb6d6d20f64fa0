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

#include "gfrft/gfrft.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "gfrft/csv.hpp"
#include "gfrft/dataio.hpp"
#include "gfrft/denoise.hpp"
#include "gfrft/error.hpp"
#include "gfrft/experiment.hpp"
#include "gfrft/graph.hpp"
#include "gfrft/transform.hpp"

struct gfrft_graph {
  gfrft::DirectedGraph g;
};
struct gfrft_stations {
  gfrft::StationTable table;
};
struct gfrft_cube {
  gfrft::WeatherCube cube;
};
struct gfrft_transform {
  gfrft::TransformPlan plan;
};

namespace {

thread_local std::string g_last_error;

gfrft_status record(gfrft_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
gfrft_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GFRFT_OK;
  } catch (const gfrft::Error& e) {
    return record(static_cast<gfrft_status>(static_cast<int>(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    return record(GFRFT_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return record(GFRFT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(GFRFT_E_INTERNAL, e.what());
  } catch (...) {
    return record(GFRFT_E_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) gfrft::fail(gfrft::ErrorCode::Parameter, std::string(name) + " is NULL");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Eigen::MatrixXd from_row_major(const double* data, size_t n) {
  Eigen::MatrixXd m(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m(i, j) = data[i * n + j];
  }
  return m;
}

void to_row_major(const Eigen::MatrixXd& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
}

Eigen::VectorXd signal(const gfrft_transform* t, const double* x, size_t n) {
  require(t, "transform");
  require(x, "signal");
  if (static_cast<gfrft::Index>(n) != t->plan.size()) {
    gfrft::fail(gfrft::ErrorCode::Dimension, "signal length " + std::to_string(n) +
                                                 " does not match transform size " +
                                                 std::to_string(t->plan.size()));
  }
  return Eigen::Map<const Eigen::VectorXd>(x, static_cast<gfrft::Index>(n));
}

gfrft::RunConfig parse_config(const char* config_json) {
  gfrft::RunConfig c;
  if (config_json != nullptr && *config_json != '\0') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
      gfrft::fail(gfrft::ErrorCode::Parse, std::string("config: ") + e.what());
    }
    c = j.get<gfrft::RunConfig>();
  }
  return c;
}

}  // namespace

extern "C" {

const char* gfrft_version(void) { return "0.1.0"; }

const char* gfrft_last_error(void) { return g_last_error.c_str(); }

const char* gfrft_status_string(gfrft_status status) {
  switch (status) {
    case GFRFT_OK: return "ok";
    case GFRFT_E_DIMENSION: return "dimension error";
    case GFRFT_E_PARAMETER: return "parameter error";
    case GFRFT_E_INPUT: return "input error";
    case GFRFT_E_PARSE: return "parse error";
    case GFRFT_E_REFERENCE: return "reference error";
    case GFRFT_E_PRECONDITION: return "precondition error";
    case GFRFT_E_NUMERIC: return "numerical error";
    case GFRFT_E_IO: return "i/o error";
    case GFRFT_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gfrft_string_free(char* s) { std::free(s); }

gfrft_status gfrft_graph_create(size_t n, const double* adjacency, gfrft_graph** out) {
  return guarded([&] {
    require(adjacency, "adjacency");
    require(out, "out");
    *out = new gfrft_graph{gfrft::DirectedGraph(from_row_major(adjacency, n))};
  });
}

gfrft_status gfrft_graph_directed_path(size_t n, gfrft_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gfrft_graph{gfrft::DirectedGraph::directed_path(static_cast<gfrft::Index>(n))};
  });
}

gfrft_status gfrft_graph_load(const char* path, gfrft_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new gfrft_graph{gfrft::load_edge_list(path)};
  });
}

gfrft_status gfrft_graph_save(const gfrft_graph* g, const char* path) {
  return guarded([&] {
    require(g, "graph");
    require(path, "path");
    gfrft::save_edge_list(g->g, path);
  });
}

size_t gfrft_graph_size(const gfrft_graph* g) {
  return g ? static_cast<size_t>(g->g.size()) : 0;
}

size_t gfrft_graph_edge_count(const gfrft_graph* g) {
  return g ? static_cast<size_t>(g->g.edge_count()) : 0;
}

gfrft_status gfrft_graph_adjacency(const gfrft_graph* g, double* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    to_row_major(g->g.adjacency(), out);
  });
}

gfrft_status gfrft_graph_laplacian(const gfrft_graph* g, double* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    to_row_major(gfrft::laplacian(g->g), out);
  });
}

gfrft_status gfrft_graph_symmetrize(const gfrft_graph* g, gfrft_graph** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new gfrft_graph{gfrft::symmetrize(g->g)};
  });
}

void gfrft_graph_free(gfrft_graph* g) { delete g; }

gfrft_status gfrft_stations_load(const char* path, gfrft_stations** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new gfrft_stations{gfrft::load_stations(path)};
  });
}

size_t gfrft_stations_count(const gfrft_stations* s) {
  return s ? static_cast<size_t>(s->table.size()) : 0;
}

void gfrft_stations_free(gfrft_stations* s) { delete s; }

gfrft_status gfrft_graph_knn(const gfrft_cube* cube, size_t k, gfrft_weight weight,
                             uint64_t seed, int zero_perturbation, gfrft_graph** out) {
  return guarded([&] {
    require(cube, "cube");
    require(out, "out");
    gfrft::WeightScheme scheme;
    switch (weight) {
      case GFRFT_W1: scheme = gfrft::WeightScheme::W1; break;
      case GFRFT_W2: scheme = gfrft::WeightScheme::W2; break;
      case GFRFT_W3: scheme = gfrft::WeightScheme::W3; break;
      default: gfrft::fail(gfrft::ErrorCode::Parameter, "unknown weight scheme");
    }
    *out = new gfrft_graph{gfrft::station_graph(cube->cube, scheme, static_cast<gfrft::Index>(k),
                                                seed, zero_perturbation != 0)};
  });
}

gfrft_status gfrft_cube_load(const char* weather_path, const gfrft_stations* stations,
                             gfrft_cube** out) {
  return guarded([&] {
    require(weather_path, "weather_path");
    require(stations, "stations");
    require(out, "out");
    *out = new gfrft_cube{gfrft::load_weather(weather_path, stations->table)};
  });
}

gfrft_status gfrft_cube_synth(size_t stations, size_t hours, size_t days, uint64_t seed,
                              gfrft_cube** out) {
  return guarded([&] {
    require(out, "out");
    gfrft::SynthOptions o;
    o.stations = static_cast<gfrft::Index>(stations);
    o.hours = static_cast<gfrft::Index>(hours);
    o.days = static_cast<gfrft::Index>(days);
    o.seed = seed;
    *out = new gfrft_cube{gfrft::synth_cube(o)};
  });
}

gfrft_status gfrft_cube_save(const gfrft_cube* cube, const char* weather_path,
                             const char* stations_path) {
  return guarded([&] {
    require(cube, "cube");
    require(weather_path, "weather_path");
    require(stations_path, "stations_path");
    gfrft::save_weather(cube->cube, weather_path);
    gfrft::save_stations(cube->cube.stations(), stations_path);
  });
}

gfrft_status gfrft_cube_dims(const gfrft_cube* cube, size_t* days, size_t* hours,
                             size_t* stations) {
  return guarded([&] {
    require(cube, "cube");
    if (days) *days = static_cast<size_t>(cube->cube.days());
    if (hours) *hours = static_cast<size_t>(cube->cube.hours());
    if (stations) *stations = static_cast<size_t>(cube->cube.station_count());
  });
}

size_t gfrft_cube_imputed(const gfrft_cube* cube) {
  return cube ? static_cast<size_t>(cube->cube.imputed_count()) : 0;
}

gfrft_status gfrft_cube_day_matrix(const gfrft_cube* cube, size_t day, double* out) {
  return guarded([&] {
    require(cube, "cube");
    require(out, "out");
    const Eigen::MatrixXd x = gfrft::day_matrix(cube->cube, static_cast<gfrft::Index>(day));
    std::memcpy(out, x.data(), sizeof(double) * static_cast<size_t>(x.size()));
  });
}

void gfrft_cube_free(gfrft_cube* cube) { delete cube; }

gfrft_status gfrft_transform_create(gfrft_kind kind, const gfrft_graph* const* factors,
                                    size_t m, double alpha, double q, gfrft_transform** out) {
  return guarded([&] {
    require(factors, "factors");
    require(out, "out");
    gfrft::TransformKind k;
    switch (kind) {
      case GFRFT_BOX: k = gfrft::TransformKind::Box; break;
      case GFRFT_KRON: k = gfrft::TransformKind::Kron; break;
      case GFRFT_DGFRFT: k = gfrft::TransformKind::Dgfrft; break;
      case GFRFT_MBOX: k = gfrft::TransformKind::MBox; break;
      case GFRFT_MKRON: k = gfrft::TransformKind::MKron; break;
      default: gfrft::fail(gfrft::ErrorCode::Parameter, "unknown transform kind");
    }
    std::vector<gfrft::DirectedGraph> graphs;
    for (size_t i = 0; i < m; ++i) {
      require(factors[i], "factor graph");
      graphs.push_back(factors[i]->g);
    }
    *out = new gfrft_transform{
        gfrft::TransformPlan(k, graphs, gfrft::TransformPlan::Options{alpha, q, false})};
  });
}

size_t gfrft_transform_size(const gfrft_transform* t) {
  return t ? static_cast<size_t>(t->plan.size()) : 0;
}

int gfrft_transform_is_complex(const gfrft_transform* t) {
  return t && t->plan.is_complex() ? 1 : 0;
}

gfrft_status gfrft_transform_forward(const gfrft_transform* t, const double* x, size_t n,
                                     double* y1_re, double* y1_im, double* y2_re,
                                     double* y2_im) {
  return guarded([&] {
    const Eigen::VectorXd xv = signal(t, x, n);
    require(y1_re, "y1_re");
    const gfrft::SpectrumPair sp = t->plan.forward(xv);
    for (size_t i = 0; i < n; ++i) {
      y1_re[i] = sp.y1(i).real();
      if (y1_im) y1_im[i] = sp.y1(i).imag();
      if (sp.y2.size() == static_cast<gfrft::Index>(n)) {
        if (y2_re) y2_re[i] = sp.y2(i).real();
        if (y2_im) y2_im[i] = sp.y2(i).imag();
      }
    }
  });
}

gfrft_status gfrft_transform_inverse(const gfrft_transform* t, const double* y1_re,
                                     const double* y1_im, const double* y2_re,
                                     const double* y2_im, size_t n, double* x) {
  return guarded([&] {
    require(t, "transform");
    require(y1_re, "y1_re");
    require(x, "x");
    if (static_cast<gfrft::Index>(n) != t->plan.size()) {
      gfrft::fail(gfrft::ErrorCode::Dimension, "spectrum length does not match the transform");
    }
    const auto len = static_cast<gfrft::Index>(n);
    const bool single = t->plan.kind() == gfrft::TransformKind::Dgfrft;
    if (!single) require(y2_re, "y2_re");
    gfrft::SpectrumPair sp;
    sp.kind = t->plan.kind();
    sp.alpha = t->plan.alpha();
    sp.y1.resize(len);
    if (!single) sp.y2.resize(len);
    for (gfrft::Index i = 0; i < len; ++i) {
      sp.y1(i) = {y1_re[i], y1_im ? y1_im[i] : 0.0};
      if (!single) sp.y2(i) = {y2_re[i], y2_im ? y2_im[i] : 0.0};
    }
    const Eigen::VectorXd out = t->plan.inverse(sp);
    std::memcpy(x, out.data(), sizeof(double) * n);
  });
}

gfrft_status gfrft_transform_bandlimit(const gfrft_transform* t, const double* x, size_t n,
                                       size_t omega, double* out) {
  return guarded([&] {
    const Eigen::VectorXd xv = signal(t, x, n);
    require(out, "out");
    const Eigen::VectorXd y = gfrft::bandlimit(t->plan, xv, static_cast<gfrft::Index>(omega));
    std::memcpy(out, y.data(), sizeof(double) * n);
  });
}

gfrft_status gfrft_transform_frequencies(const gfrft_transform* t, double* taus,
                                         size_t* positions) {
  return guarded([&] {
    require(t, "transform");
    const auto& f = t->plan.frequencies();
    for (gfrft::Index i = 0; i < f.size(); ++i) {
      if (taus) taus[i] = f(i);
      if (positions) positions[i] = static_cast<size_t>(t->plan.order()[i]);
    }
  });
}

gfrft_status gfrft_transform_energy_fraction(const gfrft_transform* t, const double* x,
                                             size_t n, size_t omega, double* fraction) {
  return guarded([&] {
    const Eigen::VectorXd xv = signal(t, x, n);
    require(fraction, "fraction");
    *fraction = gfrft::energy_fraction(t->plan.forward(xv), t->plan.order(),
                                       static_cast<gfrft::Index>(omega));
  });
}

gfrft_status gfrft_transform_export_spectrum(const gfrft_transform* t, const double* x,
                                             size_t n, const char* csv_path,
                                             const char* json_path, uint64_t seed) {
  return guarded([&] {
    const Eigen::VectorXd xv = signal(t, x, n);
    require(csv_path, "csv_path");
    require(json_path, "json_path");
    gfrft::export_spectrum(t->plan, t->plan.forward(xv), csv_path, json_path, seed);
  });
}

gfrft_status gfrft_transform_export_factorization(const gfrft_transform* t, const char* dir) {
  return guarded([&] {
    require(t, "transform");
    require(dir, "dir");
    const std::filesystem::path root(dir);
    const auto& plan = t->plan;
    if (plan.product_laplacian()) {
      gfrft::export_factorization(*plan.product_laplacian(), root);
    } else if (!plan.factor_laplacians().empty()) {
      const auto& f = plan.factor_laplacians();
      for (size_t i = 0; i < f.size(); ++i) {
        gfrft::export_factorization(f[i], root / ("factor" + std::to_string(i + 1)));
      }
    } else {
      gfrft::fail(gfrft::ErrorCode::Parameter,
                  "DGFRFT holds eigendecompositions, not SVD factorizations");
    }
  });
}

void gfrft_transform_free(gfrft_transform* t) { delete t; }

gfrft_status gfrft_add_uniform_noise(const double* x, size_t n, double epsilon, uint64_t seed,
                                     double* out) {
  return guarded([&] {
    require(x, "x");
    require(out, "out");
    const auto len = static_cast<gfrft::Index>(n);
    const Eigen::MatrixXd xm = Eigen::Map<const Eigen::MatrixXd>(x, len, 1);
    const Eigen::MatrixXd y = gfrft::add_uniform_noise(xm, {epsilon, seed});
    std::memcpy(out, y.data(), sizeof(double) * n);
  });
}

gfrft_status gfrft_metrics(const double* x, const double* xhat, const double* xtilde, size_t n,
                           double* isnr, double* snr, double* bae) {
  return guarded([&] {
    require(x, "x");
    require(xhat, "xhat");
    require(xtilde, "xtilde");
    const auto len = static_cast<gfrft::Index>(n);
    const auto m = gfrft::metrics(Eigen::Map<const Eigen::MatrixXd>(x, len, 1),
                                  Eigen::Map<const Eigen::MatrixXd>(xhat, len, 1),
                                  Eigen::Map<const Eigen::MatrixXd>(xtilde, len, 1));
    if (isnr) *isnr = m.isnr;
    if (snr) *snr = m.snr;
    if (bae) *bae = m.bae;
  });
}

gfrft_status gfrft_config_normalize(const char* config_json, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    const nlohmann::json j = parse_config(config_json);
    *out_json = duplicate(j.dump(2));
  });
}

gfrft_status gfrft_run_denoise(const char* config_json, const gfrft_cube* cube,
                               const char* out_dir, char** summary_json) {
  return guarded([&] {
    require(cube, "cube");
    require(out_dir, "out_dir");
    const gfrft::RunConfig config = parse_config(config_json);
    const auto rows = gfrft::run_denoise(cube->cube, config);
    const std::filesystem::path dir(out_dir);
    gfrft::write_denoise_csv(rows, dir / "report.csv");
    nlohmann::json summary = gfrft::summarize(rows);
    summary["config"] = config;
    const std::string text = gfrft::dump_json(summary);
    gfrft::csv::write_text(dir / "summary.json", text + "\n");
    if (summary_json) *summary_json = duplicate(text);
  });
}

gfrft_status gfrft_run_bench(const char* config_json, char** report_json) {
  return guarded([&] {
    require(report_json, "report_json");
    const gfrft::RunConfig config = parse_config(config_json);
    *report_json = duplicate(gfrft::dump_json(gfrft::to_json(gfrft::run_bench(config))));
  });
}

}  // extern "C"
