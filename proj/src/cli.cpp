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

#include "cohdisc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cohdisc/channel_io.hpp"
#include "cohdisc/errors.hpp"
#include "cohdisc/random.hpp"

namespace cohdisc::cli {

namespace dsc = discrimination;
using nlohmann::json;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<SweepRow> sweep_gad(double gamma0, double gamma1, int steps, const sdp::SolverOptions& solver,
                                const dsc::SeesawOptions& seesaw) {
  if (steps < 2) throw ParamOutOfRange("a sweep needs at least two steps");
  if (!(gamma0 >= 0.0 && gamma0 <= 1.0) || !(gamma1 >= 0.0 && gamma1 <= 1.0)) {
    throw ParamOutOfRange("GAD damping parameters must lie in [0, 1]");
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int j = 0; j < steps; ++j) {
    const double noise = static_cast<double>(j) / (steps - 1);
    const dsc::DiscriminationPair pair(channels::gad_channel({gamma0, noise}),
                                       channels::gad_channel({gamma1, noise}));
    const auto r = dsc::analyze(pair, solver, seesaw);
    rows.push_back({noise, r.p_inc, r.p_coh_primal, r.p_coh_dual, r.seesaw_lb, r.p_inc_unc_lb,
                    r.p_coh_dual - r.seesaw_lb});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string text = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    for (double v : {r.noise, r.p_inc, r.p_coh, r.p_coh_dual, r.seesaw_lb, r.p_inc_unc_lb}) {
      text += format_number(v) + ",";
    }
    text += format_number(r.gap) + "\n";
  }
  return text;
}

// ---------------------------------------------------------------------------
// Property batteries.

namespace {

dsc::DiscriminationPair random_pair(random::Rng& rng) {
  auto a = random::qubit_channel(rng);
  auto b = random::qubit_channel(rng);
  return {std::move(a), std::move(b)};
}

channels::KrausChannel random_rotation(const channels::KrausChannel& c, random::Rng& rng) {
  std::uniform_int_distribution<int> extra(0, 2);
  const int r = static_cast<int>(c.rank());
  return channels::kraus_rotate(c, random::isometry(r + extra(rng), r, rng));
}

class Tally {
 public:
  explicit Tally(BatteryReport& rep) : rep_(rep) {}

  // Records value <= limit.
  void at_most(double value, double limit, const std::string& what) {
    if (value <= limit) return;
    ++rep_.violations;
    rep_.worst = std::max(rep_.worst, value - limit);
    if (rep_.first_failure.empty()) {
      rep_.first_failure = what + " (" + format_number(value) + " > " + format_number(limit) + ")";
    }
  }

  void fail(const std::string& what) {
    ++rep_.violations;
    if (rep_.first_failure.empty()) rep_.first_failure = what;
  }

 private:
  BatteryReport& rep_;
};

}  // namespace

BatteryReport run_battery(const std::string& name, int n, std::uint64_t seed, const sdp::SolverOptions& solver,
                          const dsc::SeesawOptions& seesaw) {
  const auto& names = battery_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw InvalidInput("unknown battery " + name);
  }
  if (n < 1) throw ParamOutOfRange("battery size must be positive");
  BatteryReport rep{name, n, 0, 0.0, ""};
  Tally tally(rep);
  const std::uint64_t salt = std::hash<std::string>{}(name);

  for (int t = 0; t < n; ++t) {
    auto rng = random::stream(seed ^ salt, static_cast<std::uint64_t>(t));
    const dsc::DiscriminationPair pair = random_pair(rng);
    try {
      if (name == "zmap") {
        const dsc::CohPrimalProblem prob(pair);
        const double tr = prob.z_of(random::density(pair.dim_in(), rng)).trace().real();
        tally.at_most(std::abs(tr - 1.0), 1e-12, "Tr Z^rho = 1");
      } else if (name == "projector") {
        const dsc::CohPrimalProblem prob(pair);
        const ComplexMatrix& y = prob.y();
        tally.at_most(linalg::max_abs(y * y - y), 1e-10, "Y is idempotent");
        tally.at_most(linalg::max_abs(y - y.adjoint()), 1e-10, "Y is Hermitian");
      } else if (name == "duality") {
        const auto coh = dsc::solve_coh(pair, solver);
        tally.at_most(coh.gap, 1e-7, "dual bound minus primal value");
        tally.at_most(-coh.gap, 1e-9, "primal value minus dual bound");
        if (!dsc::verify_coh_dual(pair, coh.dual).valid) tally.fail("dual certificate fails its LMIs");
      } else if (name == "gauge") {
        const double base = dsc::p_coh(pair, solver);
        const dsc::DiscriminationPair rotated(random_rotation(pair.channel(0), rng),
                                              random_rotation(pair.channel(1), rng));
        tally.at_most(std::abs(dsc::p_coh(rotated, solver) - base), 1e-7, "p_coh under Kraus gauge");
      } else if (name == "simulation") {
        const double bound = dsc::p_coh(pair, solver);
        for (int s = 0; s < 10; ++s) {
          const int de = 1 << (s % 3);
          const dsc::Strategy strat{random::unit_vector(4, rng), random::unitary(8 * de, rng), 2, de};
          tally.at_most(dsc::simulate_success(pair, strat), bound + 1e-7, "simulated success vs p_coh");
        }
      } else if (name == "seesaw") {
        const double bound = dsc::p_coh(pair, solver);
        const auto ss = dsc::seesaw_coh(pair, seesaw);
        tally.at_most(ss.value, bound + 1e-7, "see-saw vs p_coh");
        for (std::size_t k = 1; k < ss.trajectory.size(); ++k) {
          tally.at_most(ss.trajectory[k - 1] - ss.trajectory[k], 1e-12, "see-saw monotone ascent");
        }
        const double sim = dsc::simulate_success(pair, dsc::seesaw_strategy(pair, ss));
        tally.at_most(std::abs(sim - ss.value), 1e-9, "see-saw strategy reproduces its value");
      } else if (name == "sandwich") {
        dsc::check_sandwich(pair, solver, seesaw);
      } else if (name == "monotonicity") {
        std::uniform_int_distribution<int> mem(1, 2), env(1, 3);
        const int m = mem(rng);
        const auto pre = random::channel(2, 2 * m, env(rng), rng);
        const auto post = random::channel(2 * m, 2, m + env(rng) - 1, rng);
        dsc::check_superchannel_monotonicity(pair, pre, post, m, solver);
      }
    } catch (const BoundViolation& e) {
      tally.fail(e.what());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Command-line front end.

namespace {

using Scalar = std::variant<double, std::string, bool, long long>;

// Flat key/value results plus optional structured extras (JSON only).
struct Report {
  std::vector<std::pair<std::string, Scalar>> scalars;
  json extras = json::object();

  void add(std::string key, Scalar v) { scalars.emplace_back(std::move(key), std::move(v)); }
};

double round12(double x) { return std::isfinite(x) ? std::strtod(format_number(x).c_str(), nullptr) : x; }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({round12(m(r, c).real()), round12(m(r, c).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string scalar_text(const Scalar& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else {
          return x;
        }
      },
      v);
}

std::string render(const Report& rep, const std::string& format) {
  if (format == "text") {
    std::string text;
    for (const auto& [k, v] : rep.scalars) text += k + ": " + scalar_text(v) + "\n";
    return text;
  }
  if (format == "csv") {
    std::string head, row;
    for (const auto& [k, v] : rep.scalars) {
      head += (head.empty() ? "" : ",") + k;
      row += (row.empty() ? "" : ",") + scalar_text(v);
    }
    return head + "\n" + row + "\n";
  }
  json doc = json::object();
  for (const auto& [k, v] : rep.scalars) {
    std::visit(
        [&doc, &k](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            doc[k] = round12(x);
          } else {
            doc[k] = x;
          }
        },
        v);
  }
  for (const auto& [k, v] : rep.extras.items()) doc[k] = v;
  return doc.dump(2) + "\n";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidInput("cannot open output file " + path);
  file << text;
  file.close();
  if (!file) {
    std::filesystem::remove(path);
    throw InvalidInput("failed writing output file " + path);
  }
}

struct Settings {
  double tol = 1e-9;
  int max_iter = 100;
  std::uint64_t seed = 1;
  int starts = 20;
  int iters = 2000;
  int env_prime = 0;
  std::string format = "json";
  std::string out_path;
  bool verbose = false;

  sdp::SolverOptions solver(std::ostream& log) const {
    sdp::SolverOptions o;
    o.gap_tol = tol;
    o.feas_tol = tol;
    o.max_iter = max_iter;
    if (verbose) o.log = &log;
    return o;
  }

  dsc::SeesawOptions seesaw() const {
    dsc::SeesawOptions o;
    o.starts = starts;
    o.iters = iters;
    o.seed = seed;
    o.dim_env_prime = env_prime;
    return o;
  }
};

void warn_small_env_prime(const Settings& s, int full, std::ostream& err) {
  if (s.env_prime > 0 && s.env_prime < full) {
    err << "warning: --env-prime " << s.env_prime << " is below " << full
        << "; see-saw values may fall short of the optimum\n";
  }
}

void add_pair(Report& rep, const std::string& cmd, const io::ChannelSpec& a, const io::ChannelSpec& b) {
  rep.add("command", cmd);
  rep.add("ch0", a.name);
  rep.add("ch1", b.name);
}

Report cmd_pcoh(const dsc::DiscriminationPair& pair, const Settings& s, std::ostream& log) {
  const auto coh = dsc::solve_coh(pair, s.solver(log));
  const auto check = dsc::verify_coh_dual(pair, coh.dual);
  Report rep;
  rep.add("p_coh", coh.value);
  rep.add("p_coh_dual", coh.dual.bound);
  rep.add("lambda", coh.dual.lambda);
  rep.add("gap", coh.gap);
  rep.add("certificate_valid", check.valid);
  rep.add("status", std::string(sdp::to_string(coh.solution.status)));
  rep.add("iterations", static_cast<long long>(coh.solution.iterations));
  rep.extras["rho"] = matrix_json(coh.rho);
  rep.extras["certificate"] = {{"lambda", round12(coh.dual.lambda)},
                               {"W", matrix_json(coh.dual.w)},
                               {"lmi_y_min_eig", round12(check.lmi_y_min_eig)},
                               {"lmi_lambda_min_eig", round12(check.lmi_lambda_min_eig)}};
  return rep;
}

Report cmd_pinc(const dsc::DiscriminationPair& pair, const Settings& s, std::ostream& log) {
  const auto inc = dsc::solve_diamond(pair, s.solver(log));
  Report rep;
  rep.add("p_inc", inc.p_inc);
  rep.add("half_diamond_distance", inc.half_distance);
  rep.add("mu", inc.mu);
  rep.add("gap", inc.gap);
  rep.add("status", std::string(sdp::to_string(inc.solution.status)));
  rep.add("iterations", static_cast<long long>(inc.solution.iterations));
  rep.extras["rho"] = matrix_json(inc.rho);
  rep.extras["certificate"] = {{"mu", round12(inc.mu)}, {"Z", matrix_json(inc.z)}};
  return rep;
}

Report cmd_pincunc(const dsc::DiscriminationPair& pair, const Settings& s) {
  const auto unc = dsc::p_inc_unc_seesaw(pair, s.seesaw());
  Report rep;
  rep.add("p_inc_unc_lb", unc.value);
  rep.add("starts", static_cast<long long>(s.starts));
  rep.add("sweeps", static_cast<long long>(unc.trajectory.size()));
  return rep;
}

Report cmd_bounds(const dsc::DiscriminationPair& pair, const Settings& s, std::ostream& log) {
  const auto sw = dsc::check_sandwich(pair, s.solver(log), s.seesaw());
  const auto ss = dsc::seesaw_coh(pair, s.seesaw());
  Report rep;
  rep.add("p_coh", sw.p_coh);
  rep.add("p_coh_dual", sw.p_coh_dual);
  rep.add("p_inc", sw.p_inc);
  rep.add("sqrt_p_coh", std::sqrt(sw.p_coh));
  rep.add("seesaw_lb", ss.value);
  rep.add("p_inc_unc_lb", sw.p_inc_unc_lb);
  rep.add("chain_ok", sw.violations.empty());
  rep.add("p_coh_le_p_inc_unc_lb", sw.coh_le_inc_unc_lb);
  return rep;
}

Report cmd_simulate(const dsc::DiscriminationPair& pair, const std::string& strategy, const Settings& s) {
  Report rep;
  rep.add("strategy", strategy);
  dsc::Strategy strat;
  if (strategy == "example") {
    strat = dsc::example_strategy(pair);
  } else if (strategy == "donothing") {
    strat = dsc::do_nothing_strategy(pair);
  } else {
    const auto ss = dsc::seesaw_coh(pair, s.seesaw());
    strat = dsc::seesaw_strategy(pair, ss);
    rep.add("seesaw_value", ss.value);
  }
  rep.add("p_success", dsc::simulate_success(pair, strat));
  rep.add("dim_env_prime", static_cast<long long>(strat.dim_env_prime));
  return rep;
}

int cmd_selftest(const std::string& battery, int n, const Settings& s, std::ostream& out, std::ostream& err) {
  std::vector<std::string> todo;
  if (battery == "all") {
    todo = battery_names();
  } else {
    todo.push_back(battery);
  }
  std::ostringstream summary;
  const BatteryReport* failed = nullptr;
  std::vector<BatteryReport> reports;
  reports.reserve(todo.size());
  for (const auto& name : todo) {
    const int size = n > 0 ? n : (name == "sandwich" || name == "monotonicity" || name == "seesaw" ? 5 : 20);
    reports.push_back(run_battery(name, size, s.seed, s.solver(err), s.seesaw()));
    const auto& r = reports.back();
    summary << "battery " << r.name << ": n=" << r.n << " violations=" << r.violations;
    if (r.violations > 0) summary << " worst_excess=" << format_number(r.worst);
    summary << "\n";
    if (r.violations > 0 && failed == nullptr) failed = &r;
  }
  emit(summary.str(), s.out_path, out);
  if (failed != nullptr) {
    err << "selftest failed in battery " << failed->name << ": " << failed->first_failure << "\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent and incoherent quantum channel discrimination", "cohdisc"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  app.add_option("--tol", s.tol, "SDP gap and feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", s.max_iter, "interior-point iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "seed for see-saw restarts and batteries");
  app.add_option("--starts", s.starts, "see-saw random restarts")->check(CLI::PositiveNumber);
  app.add_option("--iters", s.iters, "see-saw sweeps per restart")->check(CLI::NonNegativeNumber);
  app.add_option("--env-prime", s.env_prime, "see-saw memory dimension E' (default 2|A||B|^2)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--out", s.out_path, "write output to this file");
  app.add_flag("--verbose", s.verbose, "log solver iterations to stderr");

  std::string ch0, ch1;
  auto add_pair_cmd = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("ch0", ch0, "first channel (file or id, xflip, gad:<gamma>:<N>)")->required();
    sub->add_option("ch1", ch1, "second channel")->required();
    return sub;
  };
  auto* pcoh = add_pair_cmd("pcoh", "optimal coherent success probability with dual certificate");
  auto* pinc = add_pair_cmd("pinc", "optimal incoherent success probability (diamond SDP)");
  auto* pincunc = add_pair_cmd("pincunc", "see-saw lower bound for incoherent discrimination with uncomputing");
  auto* bounds = add_pair_cmd("bounds", "all quantities and the bound chain");
  auto* simulate = add_pair_cmd("simulate", "simulate a fixed prover strategy");
  std::string strategy = "example";
  simulate->add_option("--strategy", strategy, "prover strategy")
      ->check(CLI::IsMember({"example", "donothing", "seesaw"}));

  auto* sweep = app.add_subcommand("sweep-gad", "GAD pair sweep over the shared noise parameter");
  double gamma0 = 0.0, gamma1 = 0.0;
  int steps = 51;
  sweep->add_option("gamma0", gamma0, "damping of the first channel")->required();
  sweep->add_option("gamma1", gamma1, "damping of the second channel")->required();
  sweep->add_option("--steps", steps, "number of N values in [0, 1]");

  auto* selftest = app.add_subcommand("selftest", "run the property batteries");
  std::string battery = "all";
  int battery_n = 0;
  std::vector<std::string> battery_choices = battery_names();
  battery_choices.push_back("all");
  selftest->add_option("--battery", battery, "battery name or all")->check(CLI::IsMember(battery_choices));
  selftest->add_option("--n", battery_n, "instances per battery")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*sweep) {
      warn_small_env_prime(s, 2 * 2 * 2 * 2, err);
      const auto rows = sweep_gad(gamma0, gamma1, steps, s.solver(err), s.seesaw());
      emit(sweep_csv(rows), s.out_path, out);
      return kExitOk;
    }
    if (*selftest) return cmd_selftest(battery, battery_n, s, out, err);

    const io::ChannelSpec a = io::load_channel(ch0);
    const io::ChannelSpec b = io::load_channel(ch1);
    const dsc::DiscriminationPair pair(a.channel, b.channel);
    warn_small_env_prime(s, dsc::default_env_prime_dim(pair), err);
    Report rep;
    const CLI::App* used = app.get_subcommands().front();
    add_pair(rep, used->get_name(), a, b);
    Report body;
    if (used == pcoh) {
      body = cmd_pcoh(pair, s, err);
    } else if (used == pinc) {
      body = cmd_pinc(pair, s, err);
    } else if (used == pincunc) {
      body = cmd_pincunc(pair, s);
    } else if (used == bounds) {
      body = cmd_bounds(pair, s, err);
    } else {
      body = cmd_simulate(pair, strategy, s);
    }
    rep.scalars.insert(rep.scalars.end(), body.scalars.begin(), body.scalars.end());
    rep.extras = body.extras;
    emit(render(rep, s.format), s.out_path, out);
    return kExitOk;
  } catch (const InvalidInput& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const BoundViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitBoundViolation;
  } catch (const SolverFailure& e) {
    err << "error: solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const Error& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

}  // namespace cohdisc::cli
