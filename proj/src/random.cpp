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

#include "cohdisc/random.hpp"

#include <cmath>

#include "cohdisc/errors.hpp"

namespace cohdisc::random {

Rng stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x636f6864u};
  return Rng(seq);
}

ComplexMatrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix isometry(int rows, int cols, Rng& rng) {
  // Polar factor of a Ginibre matrix.
  return linalg::polar_isometry(gaussian(rows, cols, rng));
}

ComplexMatrix unitary(int dim, Rng& rng) { return isometry(dim, dim, rng); }

ComplexVector unit_vector(int dim, Rng& rng) {
  ComplexVector v = gaussian(dim, 1, rng);
  return v / v.norm();
}

ComplexMatrix hermitian(int dim, Rng& rng) { return linalg::hermitian_part(gaussian(dim, dim, rng)); }

ComplexMatrix density(int dim, Rng& rng) {
  const ComplexMatrix g = gaussian(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

channels::KrausChannel channel(int dim_in, int dim_out, int env_dim, Rng& rng) {
  if (dim_out * env_dim < dim_in) {
    throw ParamOutOfRange("a random channel needs dim_out * env_dim >= dim_in");
  }
  const ComplexMatrix u = isometry(dim_out * env_dim, dim_in, rng);
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < env_dim; ++k) {
    ComplexMatrix op(dim_out, dim_in);
    for (int b = 0; b < dim_out; ++b) op.row(b) = u.row(b * env_dim + k);
    ops.push_back(std::move(op));
  }
  return {dim_in, dim_out, std::move(ops)};
}

channels::KrausChannel qubit_channel(Rng& rng) {
  std::uniform_int_distribution<int> env(1, 4);
  const int e = env(rng);
  return channel(2, 2, e, rng);
}

}  // namespace cohdisc::random
