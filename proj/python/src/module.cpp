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


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohdisc/channel_io.hpp"
#include "cohdisc/cli.hpp"
#include "cohdisc/discrimination.hpp"
#include "cohdisc/errors.hpp"

namespace py = pybind11;
using namespace cohdisc;
namespace dsc = cohdisc::discrimination;

namespace {

using KrausList = std::vector<ComplexMatrix>;

channels::KrausChannel to_channel(const KrausList& kraus) {
  if (kraus.empty()) throw InvalidInput("a channel needs at least one Kraus operator");
  return channels::KrausChannel(static_cast<int>(kraus.front().cols()), static_cast<int>(kraus.front().rows()),
                                kraus);
}

dsc::DiscriminationPair to_pair(const KrausList& k0, const KrausList& k1) {
  return {to_channel(k0), to_channel(k1)};
}

sdp::SolverOptions solver_options(double tol, int max_iter) {
  sdp::SolverOptions o;
  o.gap_tol = tol;
  o.feas_tol = tol;
  o.max_iter = max_iter;
  return o;
}

dsc::SeesawOptions seesaw_options(int starts, int iters, std::uint64_t seed) {
  dsc::SeesawOptions o;
  o.starts = starts;
  o.iters = iters;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_cohdisc, m) {
  m.doc() = "Coherent and incoherent discrimination of quantum channels";

  // Later registrations are tried first, so the base class goes first.
  auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<SolverFailure>(m, "SolverFailure", error.ptr());
  py::register_exception<BoundViolation>(m, "BoundViolation", error.ptr());

  m.def(
      "builtin_channel",
      [](const std::string& name) {
        auto ch = io::builtin_channel(name);
        if (!ch) throw InvalidInput("unknown built-in channel " + name);
        return ch->kraus();
      },
      py::arg("name"), "Kraus operators of id, xflip or gad:<gamma>:<N>.");

  m.def(
      "load_channel",
      [](const std::string& name_or_path) {
        auto spec = io::load_channel(name_or_path);
        return py::make_tuple(spec.name, spec.channel.kraus());
      },
      py::arg("name_or_path"), "Loads a ChannelSpec file or built-in name; returns (name, kraus).");

  m.def(
      "channel_to_json",
      [](const KrausList& kraus, const std::string& name) {
        return io::serialize_channel_spec(to_channel(kraus), name);
      },
      py::arg("kraus"), py::arg("name") = "");

  m.def(
      "choi",
      [](const KrausList& kraus) { return channels::choi_from_kraus(to_channel(kraus)).matrix; },
      py::arg("kraus"), "Unnormalized Choi operator with the reference factor first.");

  m.def(
      "p_inc",
      [](const KrausList& k0, const KrausList& k1, double tol, int max_iter) {
        return dsc::p_inc(to_pair(k0, k1), solver_options(tol, max_iter));
      },
      py::arg("k0"), py::arg("k1"), py::arg("tol") = 1e-9, py::arg("max_iter") = 100);

  m.def(
      "p_coh",
      [](const KrausList& k0, const KrausList& k1, double tol, int max_iter) {
        return dsc::p_coh(to_pair(k0, k1), solver_options(tol, max_iter));
      },
      py::arg("k0"), py::arg("k1"), py::arg("tol") = 1e-9, py::arg("max_iter") = 100);

  m.def(
      "solve_coh",
      [](const KrausList& k0, const KrausList& k1, double tol, int max_iter) {
        const auto pair = to_pair(k0, k1);
        const auto r = dsc::solve_coh(pair, solver_options(tol, max_iter));
        const auto check = dsc::verify_coh_dual(pair, r.dual);
        py::dict d;
        d["value"] = r.value;
        d["dual_bound"] = r.dual.bound;
        d["lambda"] = r.dual.lambda;
        d["w"] = r.dual.w;
        d["rho"] = r.rho;
        d["certificate_valid"] = check.valid;
        return d;
      },
      py::arg("k0"), py::arg("k1"), py::arg("tol") = 1e-9, py::arg("max_iter") = 100);

  m.def(
      "seesaw_coh",
      [](const KrausList& k0, const KrausList& k1, int starts, int iters, std::uint64_t seed) {
        const auto r = dsc::seesaw_coh(to_pair(k0, k1), seesaw_options(starts, iters, seed));
        py::dict d;
        d["value"] = r.value;
        d["start_values"] = r.start_values;
        d["trajectory"] = r.trajectory;
        return d;
      },
      py::arg("k0"), py::arg("k1"), py::arg("starts") = 20, py::arg("iters") = 2000, py::arg("seed") = 1);

  m.def(
      "p_inc_unc_lb",
      [](const KrausList& k0, const KrausList& k1, int starts, int iters, std::uint64_t seed) {
        return dsc::p_inc_unc_seesaw(to_pair(k0, k1), seesaw_options(starts, iters, seed)).value;
      },
      py::arg("k0"), py::arg("k1"), py::arg("starts") = 20, py::arg("iters") = 2000, py::arg("seed") = 1);

  m.def(
      "simulate_example",
      [](const KrausList& k0, const KrausList& k1) {
        const auto pair = to_pair(k0, k1);
        return dsc::simulate_success(pair, dsc::example_strategy(pair));
      },
      py::arg("k0"), py::arg("k1"));

  m.def(
      "sweep_gad",
      [](double gamma0, double gamma1, int steps, int starts, std::uint64_t seed) {
        return cli::sweep_csv(cli::sweep_gad(gamma0, gamma1, steps, {}, seesaw_options(starts, 2000, seed)));
      },
      py::arg("gamma0"), py::arg("gamma1"), py::arg("steps") = 51, py::arg("starts") = 20, py::arg("seed") = 1,
      "GAD sweep as CSV text.");
}
