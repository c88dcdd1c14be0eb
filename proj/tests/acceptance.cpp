// Copyright 2026 The cohdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cohdisc/cli.hpp"
#include "cohdisc/discrimination.hpp"
#include "cohdisc/errors.hpp"
#include "cohdisc/random.hpp"
#include "oracles.hpp"

namespace {

using namespace cohdisc;
using discrimination::DiscriminationPair;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// Primal value and dual bound of every coherent solve in criteria 1-3.
std::vector<std::pair<double, double>> g_duality_log;

discrimination::CohResult coh_logged(const DiscriminationPair& pair) {
  auto r = discrimination::solve_coh(pair);
  g_duality_log.emplace_back(r.value, r.dual.bound);
  return r;
}

DiscriminationPair random_pair(std::uint64_t seed, std::uint64_t index) {
  random::Rng rng = random::stream(seed, index);
  auto a = random::qubit_channel(rng);
  auto b = random::qubit_channel(rng);
  return {std::move(a), std::move(b)};
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome example_reproduction() {
  const auto t0 = Clock::now();
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const DiscriminationPair pair(channels::identity_channel(2), channels::unitary_channel(x));
  const double pc = coh_logged(pair).value;
  const double pi = discrimination::p_inc(pair);
  const double dt = seconds_since(t0);
  const bool ok = std::abs(pc - 1.0) <= 1e-6 && std::abs(pi - 1.0) <= 1e-6 && dt < 5.0;
  return {ok, fmt("p_coh=%.12g p_inc=%.12g time=%.2fs", pc, pi, dt)};
}

Outcome saturation() {
  double worst = 0.0;
  const auto g = channels::gad_channel({0.3, 0.2});
  worst = std::max(worst, std::abs(coh_logged({g, g}).value - 0.5));
  for (int t = 0; t < 20; ++t) {
    random::Rng rng = random::stream(2002, t);
    const auto ch = random::qubit_channel(rng);
    worst = std::max(worst, std::abs(coh_logged({ch, ch}).value - 0.5));
  }
  return {worst <= 1e-6, fmt("21 instances, max |p_coh - 0.5| = %.3g", worst)};
}

Outcome bound_chain() {
  const auto t0 = Clock::now();
  int violations = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto pair = random_pair(3003, t);
    const double pc = coh_logged(pair).value;
    const double pi = discrimination::p_inc(pair);
    const double excess = std::max({0.5 - pc, pc - pi, pi - std::sqrt(pc)});
    worst = std::max(worst, excess);
    if (excess > 1e-6) ++violations;
  }
  const double dt = seconds_since(t0);
  return {violations == 0 && dt < 600.0,
          fmt("100 pairs, violations=%.0f worst_excess=%.3g time=%.1fs", violations, worst, dt)};
}

Outcome duality() {
  double worst = 0.0;
  for (const auto& [primal, dual] : g_duality_log) worst = std::max(worst, std::abs(dual - primal));
  return {!g_duality_log.empty() && worst <= 1e-7,
          fmt("%.0f instances, max |lambda - p_coh| = %.3g", static_cast<double>(g_duality_log.size()), worst)};
}

Outcome gauge() {
  double worst = 0.0;
  int solves = 0;
  for (int t = 0; t < 3; ++t) {
    const auto pair = random_pair(5005, t);
    const double base = discrimination::p_coh(pair);
    random::Rng rng = random::stream(5006, t);
    for (int k = 0; k < 20; ++k) {
      const auto& c0 = pair.channel(0);
      const auto& c1 = pair.channel(1);
      const int r0 = static_cast<int>(c0.rank());
      const int r1 = static_cast<int>(c1.rank());
      const DiscriminationPair rotated(channels::kraus_rotate(c0, random::isometry(r0 + k % 2, r0, rng)),
                                       channels::kraus_rotate(c1, random::isometry(r1 + k % 3, r1, rng)));
      worst = std::max(worst, std::abs(discrimination::p_coh(rotated) - base));
      ++solves;
    }
  }
  return {worst <= 1e-7, fmt("%.0f rotations, max shift = %.3g", solves, worst)};
}

Outcome monotonicity() {
  int violations = 0;
  double worst = -1.0;
  const int mem = 2;
  for (int t = 0; t < 10; ++t) {
    const auto pair = random_pair(6006, t);
    const double before = discrimination::p_coh(pair);
    for (int k = 0; k < 5; ++k) {
      random::Rng rng = random::stream(6007, 5 * t + k);
      const auto pre = random::channel(2, 2 * mem, 1 + k % 3, rng);
      const auto post = random::channel(2 * mem, 2, 2 + (k + 1) % 3, rng);
      const DiscriminationPair mapped(channels::compose_superchannel(pre, pair.channel(0), post, mem),
                                      channels::compose_superchannel(pre, pair.channel(1), post, mem));
      const double after = discrimination::p_coh(mapped);
      worst = std::max(worst, after - before);
      if (after > before + 1e-6) ++violations;
    }
  }
  return {violations == 0, fmt("50 superchannels over 10 pairs, violations=%.0f max(after-before)=%.3g",
                               violations, worst)};
}

Outcome diamond_oracle() {
  double worst_gap = 0.0;
  double worst_below = 0.0;
  long min_points = -1;
  for (int t = 0; t < 20; ++t) {
    const auto pair = random_pair(7007, t);
    const double sdp = discrimination::solve_diamond(pair).half_distance;
    const auto grid = oracle::grid_half_diamond(pair.channel(0), pair.channel(1));
    min_points = min_points < 0 ? grid.points : std::min(min_points, grid.points);
    worst_gap = std::max(worst_gap, sdp - grid.value);
    worst_below = std::max(worst_below, grid.value - sdp);
  }
  const bool ok = worst_below <= 1e-9 && worst_gap <= 1e-3 && min_points >= 10000;
  return {ok, fmt("20 pairs, max(sdp-grid)=%.3g max(grid-sdp)=%.3g grid_points>=%.0f", worst_gap, worst_below,
                  static_cast<double>(min_points))};
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("missing fixture " + path);
  std::string line;
  std::getline(in, line);
  if (line != cli::kSweepHeader) throw InvalidInput("unexpected fixture header in " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> as_cells(const std::vector<cli::SweepRow>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.push_back({r.noise, r.p_inc, r.p_coh, r.p_coh_dual, r.seesaw_lb, r.p_inc_unc_lb, r.gap});
  return out;
}

Outcome figure_regeneration() {
  const std::string dir = COHDISC_FIXTURE_DIR;
  const auto fix_far = read_csv(dir + "/gad_sweep_0.1_0.9.csv");
  const auto fix_near = read_csv(dir + "/gad_sweep_0.2_0.3.csv");
  const auto new_far = as_cells(cli::sweep_gad(0.1, 0.9, 51));
  const auto new_near = as_cells(cli::sweep_gad(0.2, 0.3, 51));

  std::vector<std::string> problems;
  double worst_cell = 0.0;
  double worst_pair = 0.0;
  auto compare = [&](const auto& fix, const auto& fresh, const char* name) {
    if (fix.size() != fresh.size()) {
      problems.push_back(std::string(name) + " row count differs");
      return;
    }
    for (std::size_t i = 0; i < fix.size(); ++i) {
      if (fix[i].size() != 7) {
        problems.push_back(std::string(name) + " malformed row");
        return;
      }
      for (std::size_t c = 0; c < 7; ++c) worst_cell = std::max(worst_cell, std::abs(fix[i][c] - fresh[i][c]));
      const double pair_gap = std::abs(fix[i][3] - fix[i][4]);
      worst_pair = std::max(worst_pair, pair_gap);
      for (std::size_t c = 1; c <= 5; ++c) {
        if (fix[i][c] < 0.5 - 1e-6 || fix[i][c] > 1.0 + 1e-6) problems.push_back(std::string(name) + " value outside [1/2, 1]");
      }
      if (fix[i][2] > fix[i][1] + 1e-6) problems.push_back(std::string(name) + " p_coh > p_inc");
    }
  };
  compare(fix_far, new_far, "0.1/0.9");
  compare(fix_near, new_near, "0.2/0.3");
  if (worst_cell > 1e-4) problems.push_back("regenerated cells differ from fixtures");
  if (worst_pair > 1e-5) problems.push_back("see-saw and dual bound disagree");
  if (fix_far.size() == fix_near.size()) {
    for (std::size_t i = 0; i < fix_far.size(); ++i) {
      for (std::size_t c : {1, 2, 3, 4}) {
        if (std::abs(fix_near[i][c] - 0.5) > std::abs(fix_far[i][c] - 0.5) + 1e-9) {
          problems.push_back("(0.2, 0.3) curve farther from 1/2 than (0.1, 0.9) at N=" + cli::format_number(fix_near[i][0]));
        }
      }
    }
  }
  std::string detail = fmt("max cell diff=%.3g max |dual - seesaw|=%.3g", worst_cell, worst_pair);
  if (!problems.empty()) detail += "; " + problems.front();
  return {problems.empty(), detail};
}

Outcome simulation_dominance() {
  double worst = -1.0;
  double worst_opt = -1.0;
  int violations = 0;
  for (int t = 0; t < 10; ++t) {
    const auto pair = random_pair(9009, t);
    const double bound = discrimination::p_coh(pair);
    random::Rng rng = random::stream(9010, t);
    for (int k = 0; k < 200; ++k) {
      const int de = 1 + k % 4;
      const discrimination::Strategy s{random::unit_vector(4, rng), random::unitary(2 * 2 * de * 2, rng), 2, de};
      const double excess = discrimination::simulate_success(pair, s) - bound;
      worst = std::max(worst, excess);
      if (excess > 1e-7) ++violations;
    }
    // An optimized strategy probes the bound from close range.
    discrimination::SeesawOptions opts;
    opts.starts = 3;
    const auto ss = discrimination::seesaw_coh(pair, opts);
    const double excess = discrimination::simulate_success(pair, discrimination::seesaw_strategy(pair, ss)) - bound;
    worst_opt = std::max(worst_opt, excess);
    if (excess > 1e-7) ++violations;
  }
  return {violations == 0, fmt("10 pairs x 200 random strategies, violations=%.0f max(p - sdp)=%.3g", violations,
                               worst) +
                               fmt(" see-saw strategies max(p - sdp)=%.3g", worst_opt)};
}

Outcome seesaw_quality() {
  int within = 0;
  int over = 0;
  double worst_over = -1.0;
  double worst_short = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto pair = random_pair(10010, t);
    const auto coh = discrimination::solve_coh(pair);
    const double ss = discrimination::seesaw_coh(pair).value;
    if (coh.value - ss <= 1e-4) ++within;
    worst_short = std::max(worst_short, coh.value - ss);
    worst_over = std::max(worst_over, ss - coh.value);
    if (ss > coh.value + 1e-7) ++over;
  }
  return {within >= 95 && over == 0, fmt("within 1e-4 on %.0f/100, exceedances=%.0f, max(seesaw-sdp)=%.3g", within,
                                         over, worst_over) +
                                         fmt(" max(sdp-seesaw)=%.3g", worst_short)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"example reproduction", example_reproduction},
      {"identical channels saturate at 1/2", saturation},
      {"bound chain", bound_chain},
      {"primal/dual agreement", duality},
      {"Kraus gauge invariance", gauge},
      {"superchannel monotonicity", monotonicity},
      {"diamond SDP vs grid oracle", diamond_oracle},
      {"GAD sweep regeneration", figure_regeneration},
      {"simulation dominance", simulation_dominance},
      {"see-saw quality", seesaw_quality},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
