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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../support/lattice_oracle.hpp"
#include "mfake/biosim/biosim.hpp"
#include "mfake/harness/runner.hpp"
#include "mfake/lattice/lattice.hpp"
#include "mfake/mffe/mffe.hpp"
#include "mfake/pki/pki.hpp"

namespace {

using namespace mfake;
using G1 = group::Bls12381G1;
using Toy = group::ToyGroup101;
using Clock = std::chrono::steady_clock;

constexpr double kD = 0.254;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::vector<double> gaussian(std::size_t n, double sigma, Rng& rng) {
  std::normal_distribution<double> dist(0.0, sigma);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

// Uniform point of the Voronoi cell of 0: a wide uniform point minus its
// closest lattice point (the cell tiles space).
std::vector<double> cell_noise(const lattice::LatticeBasis& basis, Rng& rng) {
  std::uniform_real_distribution<double> wide(-100.0, 100.0);
  std::vector<double> y(basis.n());
  for (auto& v : y) v = wide(rng);
  const auto cv = lattice::closest_vector(basis, lattice::to_basis_coords(basis, y));
  const auto p = lattice::from_basis_coords(
      basis, lattice::BasisCoords{std::vector<double>(cv.coords.begin(), cv.coords.end())});
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= p[i];
  return y;
}

std::vector<double> add(std::vector<double> a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

Verdict cv_oracle() {
  const auto t0 = Clock::now();
  SeededRng rng(1, "acceptance/cv");
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::size_t points = 0, violations = 0;
  for (std::size_t n : {2, 3, 4}) {
    for (double d : {0.5, 1.0, 2.0}) {
      const auto basis = lattice::build_triangular_basis(n, d);
      for (int t = 0; t < 500; ++t) {
        std::vector<double> x(n);
        for (auto& v : x) v = coord(rng);
        const auto u = lattice::to_basis_coords(basis, x);
        const auto y = lattice::closest_vector(basis, u);
        const double got = oracle::distance_to(basis, u.coords, y.coords);
        const double best = oracle::brute_force_min_distance(basis, u.coords);
        if (got > best + 1e-9 * std::max(1.0, best)) ++violations;
        ++points;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 30.0, std::to_string(points) + " points, " +
                                              std::to_string(violations) + " violations, " +
                                              fmt(secs, 2) + " s (limit 30 s)"};
}

Verdict mffe_round_trip() {
  SeededRng rng(2, "acceptance/round-trip");
  std::ostringstream detail;
  bool pass = true;
  for (std::size_t n : {2, 16, 1024}) {
    const auto t0 = Clock::now();
    const auto pp = mffe::setup<G1>(n, kD);
    std::size_t ok = 0, outside = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      const auto binding = mffe::SecretBinding<G1>::random(rng);
      const auto x0 = gaussian(n, 1.0, rng);
      const auto gen = mffe::gen<G1>(pp, x0, binding.z, rng);
      const auto x1 = add(x0, cell_noise(pp.basis, rng));
      if (!lattice::in_acceptance_region(pp.basis, x0, x1)) ++outside;
      if (mffe::rep<G1>(pp, x1, binding.alpha, gen.sketch) == gen.key) ++ok;
    }
    const double secs = seconds_since(t0);
    pass = pass && ok == trials && outside == 0 && (n != 1024 || secs < 120.0);
    detail << "n=" << n << ": " << ok << "/" << trials << " (" << fmt(secs, 1) << " s)  ";
  }
  detail << "noise uniform over the acceptance region";
  return {pass, detail.str()};
}

Verdict wrong_factors() {
  SeededRng rng(3, "acceptance/wrong-factors");
  const std::size_t n = 16;
  const auto pp = mffe::setup<G1>(n, kD);
  std::size_t collisions = 0, trials = 0;
  for (int t = 0; t < 10000; ++t, ++trials) {
    const auto binding = mffe::SecretBinding<G1>::random(rng);
    const auto x0 = gaussian(n, 1.0, rng);
    const auto gen = mffe::gen<G1>(pp, x0, binding.z, rng);
    if (t % 2 == 0) {
      // Right biometric, wrong secret.
      auto alpha = G1::Scalar::random(rng);
      while (alpha == binding.alpha) alpha = G1::Scalar::random(rng);
      const auto x1 = add(x0, cell_noise(pp.basis, rng));
      collisions += mffe::rep<G1>(pp, x1, alpha, gen.sketch) == gen.key;
    } else {
      // Right secret, reading outside the acceptance region.
      auto x1 = gaussian(n, 1.0, rng);
      while (lattice::in_acceptance_region(pp.basis, x0, x1)) x1 = gaussian(n, 1.0, rng);
      collisions += mffe::rep<G1>(pp, x1, binding.alpha, gen.sketch) == gen.key;
    }
  }
  return {collisions == 0, std::to_string(trials) + " trials (half wrong alpha, half " +
                               "out-of-region reading), " + std::to_string(collisions) +
                               " key collisions"};
}

// A small deployment shared by the protocol criteria.
struct Deployment {
  explicit Deployment(std::size_t n, std::uint64_t seed)
      : rng(seed, "acceptance/deployment"),
        rc(pki::rc_setup<G1>(n, kD, rng)),
        x0(gaussian(n, 1.0, rng)),
        device(pki::enroll_user<G1>(rc, x0, rng)),
        secret(pki::enroll_sp<G1>(rc, rng)) {}

  SeededRng rng;
  pki::RcState<G1> rc;
  std::vector<double> x0;
  pki::UserDeviceRecord<G1> device;
  pki::SpSecret<G1> secret;
};

Verdict key_agreement() {
  Deployment dep(16, 4);
  SeededRng user_rng(4, "acceptance/user"), sp_rng(4, "acceptance/sp"), noise(4, "noise");
  std::size_t ok = 0;
  const int sessions = 500;
  for (int i = 0; i < sessions; ++i) {
    const harness::UserInputs<G1> user{dep.rc.params(), dep.device,
                                       add(dep.x0, cell_noise(dep.rc.params().mffe.basis, noise)),
                                       nullptr, user_rng};
    const harness::SpInputs<G1> sp{dep.rc.params(), dep.secret, nullptr, sp_rng};
    bool dh_ok = false;
    const auto out = harness::run_session<G1>(
        user, sp, nullptr,
        [&](const protocol::UserSession<G1>& u, const protocol::SpSession<G1>& s) {
          const auto expected = G1::generator().pow(u.nonce() * s.nonce());
          dh_ok = u.dh_value() == expected && s.dh_value() == expected;
        });
    if (out.keys_match() && out.user_key->size() == 32 && dh_ok) ++ok;
  }
  return {ok == sessions, std::to_string(ok) + "/" + std::to_string(sessions) +
                              " sessions accepted with identical 32-byte keys and "
                              "k_u = k_s = g^(r_u r_s)"};
}

Verdict tamper_robustness() {
  const auto t0 = Clock::now();
  Deployment dep(16, 5);
  using Sizes = harness::PayloadSize<G1>;
  const std::array<std::size_t, 4> sizes{Sizes::kMu1, Sizes::kMs1, Sizes::kMu2, Sizes::kMs2};
  const auto reading = add(dep.x0, cell_noise(dep.rc.params().mffe.basis, dep.rng));

  std::size_t runs = 0, good = 0;
  auto check = [&](const harness::Interceptor& icpt, Rng& user_rng, Rng& sp_rng) {
    const harness::UserInputs<G1> user{dep.rc.params(), dep.device, reading, nullptr, user_rng};
    const harness::SpInputs<G1> sp{dep.rc.params(), dep.secret, nullptr, sp_rng};
    const auto out = harness::run_session<G1>(user, sp, &icpt);
    ++runs;
    good += out.any_aborted() && !out.key_exposed();
  };

  // Exhaustive flips of one fixed session: identical seeds replay the same
  // honest frames, so each run differs from the baseline in exactly one byte.
  for (std::size_t frame = 0; frame < 4; ++frame) {
    for (std::size_t off = 0; off < sizes[frame]; ++off) {
      SeededRng user_rng(5, "acceptance/fixed-user"), sp_rng(5, "acceptance/fixed-sp");
      harness::Interceptor icpt;
      icpt.on(frame, harness::Action::flip(off, 0x01));
      check(icpt, user_rng, sp_rng);
    }
  }
  const std::size_t exhaustive = runs;

  SeededRng pick(5, "acceptance/positions");
  SeededRng user_rng(5, "acceptance/fresh-user"), sp_rng(5, "acceptance/fresh-sp");
  std::uniform_int_distribution<std::size_t> any(0, Sizes::kTotal - 1);
  std::uniform_int_distribution<int> mask(1, 255);
  for (int i = 0; i < 1000; ++i) {
    std::size_t at = any(pick), frame = 0;
    while (at >= sizes[frame]) at -= sizes[frame++];
    harness::Interceptor icpt;
    icpt.on(frame, harness::Action::flip(at, static_cast<std::uint8_t>(mask(pick))));
    check(icpt, user_rng, sp_rng);
  }
  const double secs = seconds_since(t0);
  return {good == runs && exhaustive == 448 && secs < 300.0,
          std::to_string(exhaustive) + " exhaustive + " + std::to_string(runs - exhaustive) +
              " random flips, " + std::to_string(good) + "/" + std::to_string(runs) +
              " aborted without key exposure, " + fmt(secs, 1) + " s (limit 300 s)"};
}

Verdict communication_size() {
  Deployment dep(4, 6);
  SeededRng rng(6, "acceptance/sizes");
  protocol::UserSession<G1> user(dep.rc.params(), dep.device);
  protocol::SpSession<G1> sp(dep.rc.params(), dep.secret);
  const auto mu1 = user.start();
  const auto ms1 = sp.on_mu1(mu1, nullptr, rng);
  const auto mu2 = ms1 ? user.on_ms1(*ms1, dep.x0, nullptr, rng) : std::nullopt;
  const auto ms2 = mu2 ? sp.on_mu2(*mu2) : std::nullopt;
  if (!ms2) return {false, "honest session did not reach MS2"};
  user.on_ms2(*ms2);

  using W = protocol::WireMessage<G1>;
  const std::size_t s1 = harness::encode_payload<G1>(W(mu1)).size();
  const std::size_t s2 = harness::encode_payload<G1>(W(*ms1)).size();
  const std::size_t s3 = harness::encode_payload<G1>(W(*mu2)).size();
  const std::size_t s4 = harness::encode_payload<G1>(W(*ms2)).size();
  const std::size_t total = s1 + s2 + s3 + s4;
  const std::size_t mutual = harness::mutual_auth_bytes();
  const std::size_t unilateral = harness::unilateral_auth_bytes();
  const bool pass = user.accepted() && s1 == 120 && s2 == 216 && s3 == 80 && s4 == 32 &&
                    total == 448 && mutual == 448 && unilateral == 344;
  return {pass, "payloads " + std::to_string(s1) + " + " + std::to_string(s2) + " + " +
                    std::to_string(s3) + " + " + std::to_string(s4) + " = " +
                    std::to_string(total) + "; accounting mutual " + std::to_string(mutual) +
                    ", unilateral " + std::to_string(unilateral)};
}

Verdict rate_tradeoff() {
  // n = 64, inter sigma 1, noise sigma 1, 1000 identities, d in [2, 14].
  // With much smaller noise the FNMR curve reaches 0 before FMR leaves 0 and
  // the crossing degenerates to EER = 0.
  SeededRng pop_rng(7, "acceptance/population"), rng(7, "acceptance/sweep");
  const auto pop = biosim::sample_population(64, 1000, 1.0, 1.0, pop_rng);
  const auto sweep = biosim::sweep_eer(pop, biosim::linear_grid(2.0, 14.0, 10), 10000, rng);
  auto sigma = [](double p, std::size_t n) { return std::sqrt(p * (1 - p) / double(n)); };
  std::size_t breaks = 0;
  for (std::size_t i = 1; i < sweep.reports.size(); ++i) {
    const auto& a = sweep.reports[i - 1];
    const auto& b = sweep.reports[i];
    const double sf = std::max(sigma(a.fmr, a.impostor_pairs), sigma(b.fmr, b.impostor_pairs));
    const double sn = std::max(sigma(a.fnmr, a.genuine_pairs), sigma(b.fnmr, b.genuine_pairs));
    breaks += b.fmr < a.fmr - 2 * sf;
    breaks += b.fnmr > a.fnmr + 2 * sn;
  }
  const bool interior = sweep.eer && *sweep.eer > 0 && *sweep.eer < 1;
  std::string detail = std::to_string(sweep.reports.size()) + "-point sweep, 10000 pairs/point, " +
                       std::to_string(breaks) + " monotonicity breaks; ";
  detail += sweep.eer ? "EER " + fmt(*sweep.eer, 4) + " at d=" + fmt(*sweep.eer_d, 2)
                      : std::string("no crossing");
  return {breaks == 0 && interior, detail};
}

Verdict hash_quality() {
  // n = 1: collision rate of the hash family over random seeds, measured on
  // 20 distinct inputs per seed.
  SeededRng rng(8, "acceptance/uh");
  const int seeds = 2000, inputs = 20;
  std::vector<double> rates;
  for (int s = 0; s < seeds; ++s) {
    const auto uh = mffe::UhSeed<Toy>::random(1, rng);
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::vector<std::uint64_t> outs;
    while (static_cast<int>(seen.size()) < inputs) {
      const auto a = Toy::Scalar::random(rng), b = Toy::Scalar::random(rng);
      const std::pair key(a.to_canonical()[0], b.to_canonical()[0]);
      if (!seen.insert(key).second) continue;
      const std::array c{a, b};
      outs.push_back(mffe::universal_hash<Toy>(uh, c).to_canonical()[0]);
    }
    std::size_t hits = 0, pairs = 0;
    for (int i = 0; i < inputs; ++i) {
      for (int j = i + 1; j < inputs; ++j, ++pairs) hits += outs[i] == outs[j];
    }
    rates.push_back(static_cast<double>(hits) / static_cast<double>(pairs));
  }
  double mean = 0, var = 0;
  for (double r : rates) mean += r;
  mean /= seeds;
  for (double r : rates) var += (r - mean) * (r - mean);
  var /= seeds - 1;
  const double bound = 1.0 / 101 + 3 * std::sqrt(var / seeds);

  // n = 2: distribution of Gen's key over 10^5 samples.
  const auto pp = mffe::setup<Toy>(2, 1.0);
  std::array<int, 101> hist{};
  const int samples = 100000;
  for (int t = 0; t < samples; ++t) {
    const auto binding = mffe::SecretBinding<Toy>::random(rng);
    const auto x = gaussian(2, 1000.0, rng);
    ++hist[mffe::gen<Toy>(pp, x, binding.z, rng).key.beta.to_canonical()[0]];
  }
  double sd = 0;
  for (int c : hist) sd += std::fabs(static_cast<double>(c) / samples - 1.0 / 101);
  sd /= 2;
  return {mean <= bound && sd <= 0.02,
          "n=1 collision rate " + fmt(mean, 5) + " (bound " + fmt(bound, 5) +
              "); n=2 statistical distance " + fmt(sd, 4) + " (limit 0.02)"};
}

Verdict timing_sanity() {
  Deployment dep(1024, 9);
  SeededRng user_rng(9, "acceptance/user"), sp_rng(9, "acceptance/sp");
  const harness::UserInputs<G1> user{dep.rc.params(), dep.device,
                                     add(dep.x0, cell_noise(dep.rc.params().mffe.basis, dep.rng)),
                                     nullptr, user_rng};
  const harness::SpInputs<G1> sp{dep.rc.params(), dep.secret, nullptr, sp_rng};
  const auto t0 = Clock::now();
  const auto out = harness::run_session<G1>(user, sp);
  const double secs = seconds_since(t0);
  return {out.keys_match() && secs < 10.0,
          "n=1024 AKE incl. Rep: " + fmt(secs, 4) + " s (user " + fmt(out.user_seconds, 4) +
              " s, sp " + fmt(out.sp_seconds, 4) + " s; ceiling 10 s)"};
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<Verdict()>>, 9> criteria{{
      {"CV oracle equivalence", cv_oracle},
      {"MFFE round trip", mffe_round_trip},
      {"wrong-factor divergence", wrong_factors},
      {"end-to-end key agreement", key_agreement},
      {"mutual-authentication robustness", tamper_robustness},
      {"communication size", communication_size},
      {"rate tradeoff", rate_tradeoff},
      {"universal-hash quality", hash_quality},
      {"timing sanity", timing_sanity},
  }};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
              << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
