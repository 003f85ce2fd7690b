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

#include "mfake/biosim/biosim.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "mfake/error.hpp"
#include "mfake/io.hpp"

namespace mfake::biosim {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DecodeError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& s, std::size_t line_no) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DecodeError("line " + std::to_string(line_no) + ": bad count '" + s + "'");
  }
  return v;
}

bool accepts(const lattice::LatticeBasis& basis, const std::vector<double>& a,
             const std::vector<double>& b) {
  return lattice::in_acceptance_region(basis, a, b);
}

}  // namespace

SyntheticPopulation sample_population(std::size_t n, std::size_t num_identities,
                                      double inter_sigma, double noise_sigma, Rng& rng) {
  if (n == 0) throw ParameterError("population dimension must be positive");
  if (num_identities < 2) throw ParameterError("need at least two identities");
  if (!(inter_sigma > 0)) throw ParameterError("inter-identity sigma must be positive");
  if (!(noise_sigma >= 0)) throw ParameterError("noise sigma must be non-negative");
  SyntheticPopulation pop;
  pop.n = n;
  pop.inter_identity_sigma = inter_sigma;
  pop.genuine_noise_sigma = noise_sigma;
  std::normal_distribution<double> g(0.0, inter_sigma);
  pop.templates.resize(num_identities, std::vector<double>(n));
  for (auto& t : pop.templates) {
    for (auto& v : t) v = g(rng);
  }
  return pop;
}

std::vector<double> sample_reading(const SyntheticPopulation& pop, std::size_t identity,
                                   Rng& rng) {
  if (identity >= pop.num_identities()) throw ParameterError("identity index out of range");
  std::vector<double> out = pop.templates[identity];
  if (pop.genuine_noise_sigma == 0) return out;
  std::normal_distribution<double> g(0.0, pop.genuine_noise_sigma);
  for (auto& v : out) v += g(rng);
  return out;
}

RateReport evaluate_rates(const SyntheticPopulation& pop, double d, std::size_t genuine_pairs,
                          std::size_t impostor_pairs, Rng& rng) {
  return evaluate_rates(pop, lattice::build_triangular_basis(pop.n, d), genuine_pairs,
                        impostor_pairs, rng);
}

RateReport evaluate_rates(const SyntheticPopulation& pop, const lattice::LatticeBasis& basis,
                          std::size_t genuine_pairs, std::size_t impostor_pairs, Rng& rng) {
  if (genuine_pairs == 0 || impostor_pairs == 0) throw ParameterError("pair counts must be positive");
  if (basis.n() != pop.n) throw DimensionError("evaluate_rates", pop.n, basis.n());
  const std::size_t m = pop.num_identities();
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::uniform_int_distribution<std::size_t> pick_other(0, m - 2);

  std::size_t rejected = 0;
  for (std::size_t i = 0; i < genuine_pairs; ++i) {
    const std::size_t id = pick(rng);
    rejected += !accepts(basis, pop.templates[id], sample_reading(pop, id, rng));
  }
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < impostor_pairs; ++i) {
    const std::size_t a = pick(rng);
    std::size_t b = pick_other(rng);
    if (b >= a) ++b;
    accepted += accepts(basis, pop.templates[a], sample_reading(pop, b, rng));
  }
  return {basis.d(), static_cast<double>(accepted) / static_cast<double>(impostor_pairs),
          static_cast<double>(rejected) / static_cast<double>(genuine_pairs), genuine_pairs,
          impostor_pairs};
}

void locate_eer(SweepResult& result) {
  result.eer.reset();
  result.eer_d.reset();
  const auto& r = result.reports;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double di = r[i].fnmr - r[i].fmr;
    if (di == 0) {
      result.eer = r[i].fmr;
      result.eer_d = r[i].d;
      return;
    }
    if (i + 1 == r.size()) break;
    const double dj = r[i + 1].fnmr - r[i + 1].fmr;
    if ((di > 0) != (dj > 0) && dj != 0) {
      const double t = di / (di - dj);
      result.eer = r[i].fmr + t * (r[i + 1].fmr - r[i].fmr);
      result.eer_d = r[i].d + t * (r[i + 1].d - r[i].d);
      return;
    }
  }
}

SweepResult sweep_eer(const SyntheticPopulation& pop, const std::vector<double>& d_grid,
                      std::size_t pairs_per_point, Rng& rng) {
  SweepResult out;
  out.reports.reserve(d_grid.size());
  for (double d : d_grid) {
    out.reports.push_back(evaluate_rates(pop, d, pairs_per_point, pairs_per_point, rng));
  }
  // A single point cannot bracket a crossing.
  if (out.reports.size() >= 2) locate_eer(out);
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0 || !(lo > 0) || !(hi >= lo)) throw ParameterError("invalid d grid");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return out;
}

std::vector<LabeledFeature> parse_features_csv(const std::string& text) {
  std::vector<LabeledFeature> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() < 2) throw DecodeError("line " + std::to_string(line_no) + ": no values");
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw DecodeError("line " + std::to_string(line_no) + ": ragged row (" +
                        std::to_string(fields.size() - 1) + " values, expected " +
                        std::to_string(width - 1) + ")");
    }
    LabeledFeature row{fields[0], {}};
    row.values.reserve(width - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) row.values.push_back(parse_double(fields[i], line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LabeledFeature> load_features_csv(const std::filesystem::path& path) {
  const auto raw = read_file(path);
  return parse_features_csv(std::string(raw.begin(), raw.end()));
}

std::string format_features_csv(const std::vector<LabeledFeature>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.label;
    for (double v : r.values) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string format_sweep_csv(const std::vector<RateReport>& reports) {
  std::string out = "d,fmr,fnmr,genuine_pairs,impostor_pairs\n";
  for (const auto& r : reports) {
    out += format_double(r.d) + "," + format_double(r.fmr) + "," + format_double(r.fnmr) + "," +
           std::to_string(r.genuine_pairs) + "," + std::to_string(r.impostor_pairs) + "\n";
  }
  return out;
}

std::vector<RateReport> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<RateReport> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (line_no == 1 && trim(line).rfind("d,", 0) == 0) continue;
    const auto f = split(line);
    if (f.size() != 5) throw DecodeError("line " + std::to_string(line_no) + ": expected 5 fields");
    out.push_back({parse_double(f[0], line_no), parse_double(f[1], line_no),
                   parse_double(f[2], line_no), parse_count(f[3], line_no),
                   parse_count(f[4], line_no)});
  }
  return out;
}

FeatureSet group_features(const std::vector<LabeledFeature>& rows) {
  FeatureSet set;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    auto [it, fresh] = index.try_emplace(r.label, set.labels.size());
    if (fresh) {
      set.labels.push_back(r.label);
      set.enrolled.push_back(r.values);
    } else {
      set.probes.emplace_back(it->second, r.values);
    }
  }
  return set;
}

RateReport evaluate_feature_set(const FeatureSet& set, double d) {
  if (set.enrolled.empty()) throw ParameterError("empty feature set");
  const std::size_t n = set.enrolled.front().size();
  const auto basis = lattice::build_triangular_basis(n, d);
  std::size_t genuine = 0, rejected = 0, impostor = 0, accepted = 0;
  for (const auto& [id, probe] : set.probes) {
    for (std::size_t e = 0; e < set.enrolled.size(); ++e) {
      const bool ok = accepts(basis, set.enrolled[e], probe);
      if (e == id) {
        ++genuine;
        rejected += !ok;
      } else {
        ++impostor;
        accepted += ok;
      }
    }
  }
  if (genuine == 0 || impostor == 0) {
    throw ParameterError("feature set needs repeated labels and at least two identities");
  }
  return {d, static_cast<double>(accepted) / static_cast<double>(impostor),
          static_cast<double>(rejected) / static_cast<double>(genuine), genuine, impostor};
}

}  // namespace mfake::biosim
