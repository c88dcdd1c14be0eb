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

#include <vector>

#include "cohdisc/linalg.hpp"

namespace cohdisc::channels {

inline constexpr double kCptpTol = 1e-9;
inline constexpr double kChoiRankTol = 1e-10;

/// A channel from an input space of dimension dim_in to an output space of
/// dimension dim_out, stored as Kraus operators (each dim_out x dim_in).
/// Construction checks shapes only; completeness is checked by
/// validate_channel.
class KrausChannel {
 public:
  KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  std::size_t rank() const { return kraus_.size(); }

  /// Same channel with zero operators appended up to `count` operators.
  KrausChannel padded(std::size_t count) const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Unnormalized Choi operator sum_ij |i><j|_R (x) N(|i><j|) on R (x) B.
struct ChoiOperator {
  ComplexMatrix matrix;
  int dim_in;
  int dim_out;
};

/// U = sum_k K_k (x) |k>_E, output factors ordered (B, E).
struct IsometricExtension {
  ComplexMatrix matrix;
  int dim_out;
  int dim_env;
};

struct GadParams {
  double gamma;
  double noise;
};

struct Povm {
  std::vector<ComplexMatrix> elements;
};

double completeness_deviation(const KrausChannel& c);

/// Throws CompletenessViolation (carrying ||sum K^dagger K - I||_inf) or
/// DimensionMismatch.
void validate_channel(const KrausChannel& c, double tol = kCptpTol);

void validate_povm(const Povm& povm, double tol = kCptpTol);

ChoiOperator choi_from_kraus(const KrausChannel& c);

/// Canonical Kraus set from the nonzero eigenpairs of the Choi operator,
/// largest eigenvalue first.
KrausChannel kraus_from_choi(const ChoiOperator& choi, double rank_tol = kChoiRankTol);

IsometricExtension isometric_extension(const KrausChannel& c);

ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& rho);

/// Hilbert-Schmidt adjoint, sum_k K_k^dagger y K_k.
ComplexMatrix adjoint_apply(const KrausChannel& c, const ComplexMatrix& y);

/// Adjoint acting on an operator x : R (x) B -> R (x) B (x) E' with the
/// channel on the middle factor:
/// sum_k (I_R (x) K_k^dagger (x) I_E') x (I_R (x) K_k).
ComplexMatrix adjoint_apply_extended(const KrausChannel& c, const ComplexMatrix& x, int dim_ref,
                                     int dim_extra);

/// Generalized amplitude damping: four Kraus operators in the fixed order
/// sqrt(1-N)(|0><0| + sqrt(1-g)|1><1|), sqrt(g(1-N))|0><1|,
/// sqrt(N)(sqrt(1-g)|0><0| + |1><1|), sqrt(gN)|1><0|.
KrausChannel gad_channel(const GadParams& p);

KrausChannel identity_channel(int dim);
KrausChannel unitary_channel(const ComplexMatrix& u);

/// Superchannel realized as pre (C -> A M), the channel (A -> B) on A, and
/// post (B M -> D). Memory M is the second factor on both sides.
KrausChannel compose_superchannel(const KrausChannel& pre, const KrausChannel& mid,
                                  const KrausChannel& post, int mem_dim);

/// K'_j = sum_k u_{jk} K_k for an isometry u with |kraus| columns.
KrausChannel kraus_rotate(const KrausChannel& c, const ComplexMatrix& u);

/// Choi round trip, pruning Kraus rank.
KrausChannel canonicalize(const KrausChannel& c, double rank_tol = kChoiRankTol);

/// max |entry| of the difference of two Choi operators.
double choi_distance(const KrausChannel& a, const KrausChannel& b);

}  // namespace cohdisc::channels
