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

#ifndef GFRFT_DATAIO_HPP
#define GFRFT_DATAIO_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "gfrft/graph.hpp"

namespace gfrft {

/// Hourly temperatures (°C) indexed day x hour x station.
class WeatherCube {
 public:
  WeatherCube(Index days, Index hours, StationTable stations);

  Index days() const { return days_; }
  Index hours() const { return hours_; }
  Index station_count() const { return stations_.size(); }
  const StationTable& stations() const { return stations_; }

  // day is 0-based here.
  double& at(Index day, Index hour, Index station) { return values_[offset(day, hour, station)]; }
  double at(Index day, Index hour, Index station) const {
    return values_[offset(day, hour, station)];
  }
  bool imputed(Index day, Index hour, Index station) const {
    return imputed_[offset(day, hour, station)] != 0;
  }
  void mark_imputed(Index day, Index hour, Index station) {
    imputed_[offset(day, hour, station)] = 1;
  }
  Index imputed_count() const;

 private:
  std::size_t offset(Index day, Index hour, Index station) const {
    return static_cast<std::size_t>((day * hours_ + hour) * station_count() + station);
  }

  Index days_;
  Index hours_;
  StationTable stations_;
  std::vector<double> values_;
  std::vector<unsigned char> imputed_;
};

/// Parses rows of "day,hour,station_id,temp_c" (day 1-based, hour 0-based).
/// Missing readings (absent rows or empty/nan temp_c) are filled by linear
/// interpolation along each station's hourly series.
WeatherCube load_weather(const std::filesystem::path& path, const StationTable& stations);
void save_weather(const WeatherCube& cube, const std::filesystem::path& path);

/// Stations x hours matrix for 1-based day d: the signal on T ⊠ S with
/// G1 = the hourly line graph and G2 = the station graph.
Eigen::MatrixXd day_matrix(const WeatherCube& cube, Index day);

/// Full hourly series of every station (days x hours samples each).
std::vector<Eigen::VectorXd> station_series(const WeatherCube& cube);

struct SynthOptions {
  Index stations = 32;
  Index hours = 24;
  Index days = 31;
  std::uint64_t seed = 2014;
  double mean_c = 8.0;
  double diurnal_amplitude = 3.0;
  double spatial_amplitude = 1.5;
  double daily_amplitude = 2.0;
  double noise_amplitude = 0.15;
};

/// Smooth seeded field: a diurnal cycle, a low-order spatial pattern over
/// random station positions, a day-to-day drift and small noise.
WeatherCube synth_cube(const SynthOptions& options);

}  // namespace gfrft

#endif  // GFRFT_DATAIO_HPP
