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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cohdisc/discrimination.hpp"

namespace cohdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitBoundViolation = 4;

/// One GAD sweep point: both channels share the noise N.
struct SweepRow {
  double noise;
  double p_inc;
  double p_coh;
  double p_coh_dual;
  double seesaw_lb;
  double p_inc_unc_lb;
  double gap;  // p_coh_dual - seesaw_lb
};

inline constexpr const char* kSweepHeader = "N,p_inc,p_coh,p_coh_dual,seesaw_lb,p_inc_unc_lb,gap";

/// N uniform on [0, 1] with `steps` points. Throws ParamOutOfRange for
/// gammas outside [0, 1] or fewer than two steps.
std::vector<SweepRow> sweep_gad(double gamma0, double gamma1, int steps,
                                const sdp::SolverOptions& solver = {},
                                const discrimination::SeesawOptions& seesaw = {});

/// Header plus one LF-terminated line per row, 12 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// "%.12g"
std::string format_number(double x);

struct BatteryReport {
  std::string name;
  int n;
  int violations;
  double worst;  // largest excess over the tolerance, 0 when clean
  std::string first_failure;
};

inline const std::vector<std::string>& battery_names() {
  static const std::vector<std::string> names{"zmap",       "projector", "duality", "gauge",
                                              "simulation", "seesaw",    "sandwich", "monotonicity"};
  return names;
}

/// Runs one named property battery on `n` seeded random instances.
BatteryReport run_battery(const std::string& name, int n, std::uint64_t seed,
                          const sdp::SolverOptions& solver = {},
                          const discrimination::SeesawOptions& seesaw = {});

/// Entry point behind the cohdisc executable. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohdisc::cli
