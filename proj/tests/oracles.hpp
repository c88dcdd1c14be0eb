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

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cohdisc/channels.hpp"

// Brute-force lower bound on half the diamond distance of two qubit
// channels: maximize 1/2 ||(id (x) (N0 - N1))(|psi><psi|)||_1 over pure
// inputs on R (x) A with |R| = 2. Up to a unitary on R every pure input is
// (I (x) sqrt(rho)) sum_i |ii> for a density rho on A, so the search runs
// over the Bloch ball.
namespace cohdisc::oracle {

inline double half_trace_distance(const channels::KrausChannel& n0, const channels::KrausChannel& n1,
                                  const std::array<double, 3>& bloch) {
  using M = Eigen::MatrixXcd;
  const std::complex<double> i(0.0, 1.0);
  M rho(2, 2);
  rho << 1.0 + bloch[2], bloch[0] - i * bloch[1], bloch[0] + i * bloch[1], 1.0 - bloch[2];
  rho *= 0.5;
  Eigen::SelfAdjointEigenSolver<M> es(rho);
  const M root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<std::complex<double>>().asDiagonal() *
                 es.eigenvectors().adjoint();
  // psi_{r a} = sqrt(rho)_{a r}
  Eigen::VectorXcd psi(4);
  for (int r = 0; r < 2; ++r)
    for (int a = 0; a < 2; ++a) psi(2 * r + a) = root(a, r);

  auto output = [&psi](const channels::KrausChannel& c) {
    M out = M::Zero(4, 4);
    for (const auto& k : c.kraus()) {
      Eigen::VectorXcd v(4);
      for (int r = 0; r < 2; ++r) v.segment(2 * r, 2) = k * psi.segment(2 * r, 2);
      out += v * v.adjoint();
    }
    return out;
  };
  const M diff = output(n0) - output(n1);
  Eigen::SelfAdjointEigenSolver<M> ds(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * ds.eigenvalues().cwiseAbs().sum();
}

struct GridResult {
  double value;
  long points;
};

inline std::array<double, 3> clamp_to_ball(std::array<double, 3> v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n > 1.0) {
    for (double& x : v) x /= n;
  }
  return v;
}

/// Spherical grid over the Bloch ball followed by a compass search from the
/// best grid point. Every evaluated point is a feasible input, so the
/// result never exceeds the true value.
inline GridResult grid_half_diamond(const channels::KrausChannel& n0, const channels::KrausChannel& n1,
                                    int n_radius = 12, int n_theta = 30, int n_phi = 60) {
  const double pi = std::acos(-1.0);
  GridResult res{0.0, 0};
  std::array<double, 3> best{0.0, 0.0, 0.0};
  for (int ir = 0; ir < n_radius; ++ir) {
    const double r = static_cast<double>(ir) / (n_radius - 1);
    for (int it = 0; it < n_theta; ++it) {
      const double th = pi * it / (n_theta - 1);
      for (int ip = 0; ip < n_phi; ++ip) {
        const double ph = 2.0 * pi * ip / n_phi;
        const std::array<double, 3> v{r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
                                      r * std::cos(th)};
        const double f = half_trace_distance(n0, n1, v);
        ++res.points;
        if (f > res.value) {
          res.value = f;
          best = v;
        }
      }
    }
  }
  for (double step = 0.05; step > 1e-7; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {-1.0, 1.0}) {
          std::array<double, 3> v = best;
          v[axis] += sign * step;
          v = clamp_to_ball(v);
          const double f = half_trace_distance(n0, n1, v);
          ++res.points;
          if (f > res.value + 1e-15) {
            res.value = f;
            best = v;
            improved = true;
          }
        }
      }
    }
  }
  return res;
}

}  // namespace cohdisc::oracle
