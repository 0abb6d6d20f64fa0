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

#include "gfrft/dataio.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "gfrft/csv.hpp"
#include "gfrft/error.hpp"
#include "gfrft/rng.hpp"

namespace gfrft {

WeatherCube::WeatherCube(Index days, Index hours, StationTable stations)
    : days_(days), hours_(hours), stations_(std::move(stations)) {
  if (days < 1 || hours < 1 || stations_.size() < 1) {
    fail(ErrorCode::Dimension, "weather cube dimensions must be positive");
  }
  const auto n = static_cast<std::size_t>(days * hours * stations_.size());
  values_.assign(n, 0.0);
  imputed_.assign(n, 0);
}

Index WeatherCube::imputed_count() const {
  Index c = 0;
  for (unsigned char f : imputed_) c += f;
  return c;
}

namespace {

// Fills NaN entries of one station's flattened (day, hour) series by linear
// interpolation, holding the nearest reading past either end.
void interpolate_series(std::vector<double>& s) {
  const Index n = static_cast<Index>(s.size());
  Index prev = -1;
  for (Index t = 0; t < n; ++t) {
    if (std::isnan(s[t])) continue;
    if (prev < 0) {
      for (Index u = 0; u < t; ++u) s[u] = s[t];
    } else if (t - prev > 1) {
      for (Index u = prev + 1; u < t; ++u) {
        const double w = static_cast<double>(u - prev) / static_cast<double>(t - prev);
        s[u] = (1.0 - w) * s[prev] + w * s[t];
      }
    }
    prev = t;
  }
  for (Index u = prev + 1; u < n; ++u) s[u] = s[prev];
}

}  // namespace

WeatherCube load_weather(const std::filesystem::path& path, const StationTable& stations) {
  stations.validate();
  const auto lines = csv::read_lines(path);
  const std::string ctx = path.string();
  if (lines.empty() || csv::trim(lines[0]) != "day,hour,station_id,temp_c") {
    fail(ErrorCode::Parse, ctx + ":1: expected header 'day,hour,station_id,temp_c'");
  }

  struct Reading {
    Index day, hour, station;
    double value;
    std::size_t line;
  };
  std::vector<Reading> rows;
  Index days = 0;
  Index hours = 0;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (csv::trim(lines[ln]).empty()) continue;
    const std::string where = ctx + ":" + std::to_string(ln + 1);
    const auto f = csv::split(lines[ln]);
    if (f.size() != 4) fail(ErrorCode::Parse, where + ": expected 4 fields");
    const long long day = csv::parse_int(f[0], where);
    const long long hour = csv::parse_int(f[1], where);
    if (day < 1) fail(ErrorCode::Parse, where + ": day must be >= 1");
    if (hour < 0) fail(ErrorCode::Parse, where + ": hour must be >= 0");
    Index station = 0;
    try {
      station = stations.index_of(std::string(csv::trim(f[2])));
    } catch (const Error& e) {
      fail(ErrorCode::Reference, where + ": " + e.what());
    }
    const auto temp = csv::trim(f[3]);
    const double value = temp.empty() ? std::nan("") : csv::parse_double(temp, where);
    if (std::isinf(value)) fail(ErrorCode::Parse, where + ": infinite temperature");
    rows.push_back({static_cast<Index>(day - 1), static_cast<Index>(hour), station, value, ln + 1});
    days = std::max(days, static_cast<Index>(day));
    hours = std::max(hours, static_cast<Index>(hour + 1));
  }
  if (rows.empty()) fail(ErrorCode::Input, ctx + ": no readings");

  WeatherCube cube(days, hours, stations);
  const Index s_count = stations.size();
  std::vector<char> seen(static_cast<std::size_t>(days * hours * s_count), 0);
  std::vector<std::vector<double>> series(static_cast<std::size_t>(s_count),
                                          std::vector<double>(days * hours, std::nan("")));
  for (const auto& r : rows) {
    const auto key = static_cast<std::size_t>((r.day * hours + r.hour) * s_count + r.station);
    if (seen[key]) {
      fail(ErrorCode::Parse, ctx + ":" + std::to_string(r.line) + ": duplicate reading for day " +
                                 std::to_string(r.day + 1) + ", hour " + std::to_string(r.hour) +
                                 ", station " + stations.ids[r.station]);
    }
    seen[key] = 1;
    series[r.station][r.day * hours + r.hour] = r.value;
  }

  for (Index s = 0; s < s_count; ++s) {
    auto& x = series[s];
    bool any = false;
    for (double v : x) any = any || !std::isnan(v);
    if (!any) fail(ErrorCode::Input, ctx + ": station " + stations.ids[s] + " has no readings");
    std::vector<char> missing(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) missing[t] = std::isnan(x[t]);
    interpolate_series(x);
    for (Index t = 0; t < days * hours; ++t) {
      cube.at(t / hours, t % hours, s) = x[t];
      if (missing[t]) cube.mark_imputed(t / hours, t % hours, s);
    }
  }
  return cube;
}

void save_weather(const WeatherCube& cube, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "day,hour,station_id,temp_c\n";
  for (Index d = 0; d < cube.days(); ++d) {
    for (Index h = 0; h < cube.hours(); ++h) {
      for (Index s = 0; s < cube.station_count(); ++s) {
        out << d + 1 << ',' << h << ',' << cube.stations().ids[s] << ','
            << csv::format_double(cube.at(d, h, s)) << '\n';
      }
    }
  }
  csv::write_text(path, out.str());
}

Eigen::MatrixXd day_matrix(const WeatherCube& cube, Index day) {
  if (day < 1 || day > cube.days()) {
    fail(ErrorCode::Parameter, "day " + std::to_string(day) + " outside [1, " +
                                   std::to_string(cube.days()) + "]");
  }
  Eigen::MatrixXd x(cube.station_count(), cube.hours());
  for (Index h = 0; h < cube.hours(); ++h) {
    for (Index s = 0; s < cube.station_count(); ++s) x(s, h) = cube.at(day - 1, h, s);
  }
  return x;
}

std::vector<Eigen::VectorXd> station_series(const WeatherCube& cube) {
  std::vector<Eigen::VectorXd> out;
  const Index len = cube.days() * cube.hours();
  for (Index s = 0; s < cube.station_count(); ++s) {
    Eigen::VectorXd x(len);
    for (Index t = 0; t < len; ++t) x(t) = cube.at(t / cube.hours(), t % cube.hours(), s);
    out.push_back(std::move(x));
  }
  return out;
}

WeatherCube synth_cube(const SynthOptions& o) {
  if (o.stations < 1 || o.hours < 1 || o.days < 1) {
    fail(ErrorCode::Parameter, "synthetic cube dimensions must be positive");
  }
  Rng rng(o.seed);
  constexpr double kPi = std::numbers::pi;

  // Stations scattered over a 0.8° x 1.1° box near 48°N; (u, v)
  // are the normalised positions driving the spatial pattern.
  StationTable st;
  std::vector<double> u(o.stations), v(o.stations);
  for (Index s = 0; s < o.stations; ++s) {
    u[s] = rng.canonical();
    v[s] = rng.canonical();
    st.ids.push_back((s < 9 ? "S0" : "S") + std::to_string(s + 1));
    st.lat.push_back(48.0 + 0.8 * v[s]);
    st.lon.push_back(-5.0 + 1.1 * u[s]);
  }
  const double phase_a = 2.0 * kPi * rng.canonical();
  const double phase_b = 2.0 * kPi * rng.canonical();
  const double tilt = rng.uniform(-1.0, 1.0);

  WeatherCube cube(o.days, o.hours, st);
  for (Index d = 0; d < o.days; ++d) {
    const double drift = 0.7 * std::sin(2.0 * kPi * d / 11.0 + phase_a) +
                         0.3 * std::sin(2.0 * kPi * d / 5.3 + phase_b);
    for (Index h = 0; h < o.hours; ++h) {
      // Peak in mid-afternoon for a 24-hour day.
      const double diurnal = std::sin(2.0 * kPi * (static_cast<double>(h) - 9.0) / o.hours);
      for (Index s = 0; s < o.stations; ++s) {
        // Inland stations (large u) swing more over the day.
        const double spatial = std::cos(kPi * u[s]) + 0.5 * tilt * std::cos(kPi * v[s]);
        const double swing = 1.0 + 0.3 * (u[s] - 0.5);
        cube.at(d, h, s) = o.mean_c + o.daily_amplitude * drift +
                           o.diurnal_amplitude * swing * diurnal + o.spatial_amplitude * spatial +
                           o.noise_amplitude * rng.uniform(-1.0, 1.0);
      }
    }
  }
  return cube;
}

}  // namespace gfrft
