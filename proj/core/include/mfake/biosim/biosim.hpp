// Copyright 2026 The mfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mfake/lattice/lattice.hpp"
#include "mfake/rng.hpp"

namespace mfake::biosim {

// Isotropic Gaussian model: templates ~ N(0, inter_sigma^2 I), readings are
// template + N(0, noise_sigma^2 I).
struct SyntheticPopulation {
  std::size_t n = 0;
  double inter_identity_sigma = 1.0;
  double genuine_noise_sigma = 0.0;
  std::vector<std::vector<double>> templates;

  std::size_t num_identities() const { return templates.size(); }
};

struct RateReport {
  double d = 0;
  double fmr = 0;
  double fnmr = 0;
  std::size_t genuine_pairs = 0;
  std::size_t impostor_pairs = 0;
  friend bool operator==(const RateReport&, const RateReport&) = default;
};

struct SweepResult {
  std::vector<RateReport> reports;
  // Set when FNMR - FMR changes sign between adjacent grid points.
  std::optional<double> eer;
  std::optional<double> eer_d;
};

// noise_sigma may be 0; inter_sigma must be positive; num_identities >= 2.
SyntheticPopulation sample_population(std::size_t n, std::size_t num_identities,
                                      double inter_sigma, double noise_sigma, Rng& rng);

std::vector<double> sample_reading(const SyntheticPopulation& pop, std::size_t identity,
                                   Rng& rng);

RateReport evaluate_rates(const SyntheticPopulation& pop, double d, std::size_t genuine_pairs,
                          std::size_t impostor_pairs, Rng& rng);

// Same measurement against an existing basis (avoids rebuilding it).
RateReport evaluate_rates(const SyntheticPopulation& pop, const lattice::LatticeBasis& basis,
                          std::size_t genuine_pairs, std::size_t impostor_pairs, Rng& rng);

SweepResult sweep_eer(const SyntheticPopulation& pop, const std::vector<double>& d_grid,
                      std::size_t pairs_per_point, Rng& rng);

// Crossing of the linearly interpolated curves, if any.
void locate_eer(SweepResult& result);

// Evenly spaced grid, inclusive of both ends.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

struct LabeledFeature {
  std::string label;
  std::vector<double> values;
  friend bool operator==(const LabeledFeature&, const LabeledFeature&) = default;
};

// Rows `label,v1,...,vn`. Ragged rows and bad numbers throw DecodeError
// naming the line.
std::vector<LabeledFeature> load_features_csv(const std::filesystem::path& path);
std::vector<LabeledFeature> parse_features_csv(const std::string& text);
std::string format_features_csv(const std::vector<LabeledFeature>& rows);

// Header `d,fmr,fnmr,genuine_pairs,impostor_pairs`.
std::string format_sweep_csv(const std::vector<RateReport>& reports);
std::vector<RateReport> parse_sweep_csv(const std::string& text);

// Population whose templates are the first reading of each label; the
// remaining readings are used as genuine probes.
struct FeatureSet {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> enrolled;
  std::vector<std::pair<std::size_t, std::vector<double>>> probes;  // (identity, reading)
};
FeatureSet group_features(const std::vector<LabeledFeature>& rows);

// Rates over every (enrolled, probe) pair of a real feature set.
RateReport evaluate_feature_set(const FeatureSet& set, double d);

}  // namespace mfake::biosim
