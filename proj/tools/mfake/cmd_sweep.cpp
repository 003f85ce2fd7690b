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

#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "mfake/biosim/biosim.hpp"
#include "mfake/io.hpp"

namespace mfake::cli {

int cmd_rate_sweep(const GlobalOptions& g, const RateSweepOptions& o) {
  if (o.points == 0) throw ParameterError("--points must be positive");
  const auto grid = biosim::linear_grid(o.d_min, o.d_max, o.points);
  const RngSource rngs(g.seed);

  biosim::SweepResult result;
  if (!o.features.empty()) {
    const auto set = biosim::group_features(biosim::load_features_csv(o.features));
    for (double d : grid) result.reports.push_back(biosim::evaluate_feature_set(set, d));
    biosim::locate_eer(result);
  } else {
    auto pop_rng = rngs.make("population");
    const auto pop =
        biosim::sample_population(o.n, o.identities, o.inter_sigma, o.noise_sigma, *pop_rng);
    auto rng = rngs.make("sweep");
    result = biosim::sweep_eer(pop, grid, o.pairs, *rng);
  }

  const std::string csv = biosim::format_sweep_csv(result.reports);
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_file_atomic(o.out, as_bytes(csv));
  }
  // Summary goes to stderr so stdout stays a clean CSV.
  if (result.eer) {
    std::cerr << "eer=" << *result.eer << " at d=" << *result.eer_d << "\n";
  } else {
    std::cerr << "eer: curves do not cross on this grid\n";
  }
  return kExitOk;
}

}  // namespace mfake::cli
