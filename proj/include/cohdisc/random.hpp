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
#include <random>

#include "cohdisc/channels.hpp"

// Seeded generators for random states, isometries and channels. Used by the
// property batteries and the see-saw restarts.
namespace cohdisc::random {

using Rng = std::mt19937_64;

/// Independent stream for item `index` of a battery seeded with `seed`, so
/// results do not depend on evaluation order.
Rng stream(std::uint64_t seed, std::uint64_t index);

ComplexMatrix gaussian(int rows, int cols, Rng& rng);
ComplexMatrix isometry(int rows, int cols, Rng& rng);
ComplexMatrix unitary(int dim, Rng& rng);
ComplexVector unit_vector(int dim, Rng& rng);
ComplexMatrix hermitian(int dim, Rng& rng);
ComplexMatrix density(int dim, Rng& rng);

/// Traces out an env_dim environment from a random isometry dim_in -> dim_out * env_dim.
channels::KrausChannel channel(int dim_in, int dim_out, int env_dim, Rng& rng);

/// Random qubit channel with a random environment size in [1, 4].
channels::KrausChannel qubit_channel(Rng& rng);

}  // namespace cohdisc::random
