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
#include <string>
#include <vector>

#include "cohdisc/channels.hpp"
#include "cohdisc/sdp.hpp"

// Success probabilities for discriminating two channels N0, N1 : A -> B.
//
//  * incoherent: the verifier flips a coin, applies N_i, and the prover
//    guesses i by measuring R (x) B. Optimal value 1/2 (1 + ||N0 - N1||_dia / 2).
//  * coherent: the coin is |+>, the channels are applied as a controlled
//    isometry, the prover returns B plus a flag qubit F, the verifier
//    uncomputes and projects R1 F onto the Bell state |Phi>.
//  * incoherent with uncomputing: as coherent, but with a maximally mixed
//    control and a classical agreement test on R1 F.
//
// Subsystem labels: R reference (|R| = |A|), R1 control qubit, F flag qubit,
// E channel environment, E' prover memory.
namespace cohdisc::discrimination {

using channels::KrausChannel;

inline constexpr double kBoundSlack = 1e-6;

class DiscriminationPair {
 public:
  /// Validates both channels and requires identical (dim_in, dim_out).
  DiscriminationPair(KrausChannel ch0, KrausChannel ch1);

  const KrausChannel& channel(int i) const { return i == 0 ? ch0_ : ch1_; }
  int dim_in() const { return ch0_.dim_in(); }
  int dim_out() const { return ch0_.dim_out(); }

 private:
  KrausChannel ch0_;
  KrausChannel ch1_;
};

// ---------------------------------------------------------------------------
// Incoherent discrimination (diamond distance SDP).

struct DiamondResult {
  double half_distance;
  double p_inc;
  double mu;          // dual: mu I_R >= Tr_B Z
  ComplexMatrix z;    // dual: Z >= Gamma0 - Gamma1, Z >= 0, on R (x) B
  ComplexMatrix w;    // primal: 0 <= W <= rho (x) I_B
  ComplexMatrix rho;  // primal input state on R
  double gap;
  sdp::SdpSolution solution;
};

/// Primal: max Tr[(Gamma0 - Gamma1) W] s.t. W + T = rho (x) I_B, Tr rho = 1.
sdp::SdpProblem build_diamond_sdp(const DiscriminationPair& pair);

DiamondResult solve_diamond(const DiscriminationPair& pair, const sdp::SolverOptions& opts = {});

double p_inc(const DiscriminationPair& pair, const sdp::SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Coherent discrimination SDP.

/// Y on (R1, F, B, E), the map rho -> Z^rho on (R1, E), and the support of
/// the Z map used to restrict sigma to a face where the SDP is strictly
/// feasible. Both channels are zero padded to a common Kraus count so E has
/// a single dimension.
class CohPrimalProblem {
 public:
  explicit CohPrimalProblem(const DiscriminationPair& pair);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int env_dim() const { return env_dim_; }
  /// Dimension of the (R1, E) support that sigma can occupy.
  int support_dim() const { return static_cast<int>(support_.cols()); }

  linalg::TensorShape sigma_shape() const;  // (R1, F, B, E)
  const ComplexMatrix& y() const { return y_; }
  const ComplexMatrix& support() const { return support_; }
  /// Padded Kraus operators indexed by a = i * env_dim + k.
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix z_of(const ComplexMatrix& rho) const;

  /// The program exactly as stated: sigma on R1 F B E, rho on A, entrywise
  /// Tr_BF[sigma] = Z^rho and Tr rho = 1.
  sdp::SdpProblem full_sdp() const;

  /// Same program with sigma restricted to support (x) F (x) B. Blocks
  /// "sigma" (support, F, B) and "rho"; the trace row comes last.
  sdp::SdpProblem reduced_sdp() const;

  /// Maps a reduced sigma back to (R1, F, B, E).
  ComplexMatrix lift_sigma(const ComplexMatrix& reduced) const;

  /// Y permuted to (R1, E, F, B).
  ComplexMatrix y_r1e_first() const;

 private:
  struct RowTag {
    int c;
    int d;
    bool imaginary;
  };

  int dim_in_;
  int dim_out_;
  int env_dim_;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix y_;
  ComplexMatrix support_;     // (2 r) x s isometry
  ComplexMatrix complement_;  // (2 r) x (2 r - s)
  std::vector<RowTag> reduced_rows_;

  friend struct CohSolver;
};

CohPrimalProblem build_coh_primal(const DiscriminationPair& pair);

struct CohDualCertificate {
  double lambda;
  ComplexMatrix w;  // Hermitian on (R1, E)
  /// lambda plus any negative part of W (x) I - Y. Feasible sigma have unit
  /// trace, so this is an upper bound even if the LMI is violated by roundoff.
  double bound;
};

struct CohDualCheck {
  double lmi_y_min_eig;       // W (x) I_BF - Y, relative to its norm
  double lmi_lambda_min_eig;  // lambda I_A - 1/2 sum w N^dagger N, relative
  double lambda_required;     // lambda_max(1/2 sum w N^dagger N)
  bool valid;
};

/// Recomputes both dual LMIs from the channels alone.
CohDualCheck verify_coh_dual(const DiscriminationPair& pair, const CohDualCertificate& cert,
                             double psd_tol = 1e-12);

struct CohResult {
  double value;          // primal optimum
  ComplexMatrix sigma;   // on (R1, F, B, E)
  ComplexMatrix rho;     // on A
  CohDualCertificate dual;
  double gap;            // dual.bound - value
  sdp::SdpSolution solution;
};

CohResult solve_coh(const DiscriminationPair& pair, const sdp::SolverOptions& opts = {});

double p_coh(const DiscriminationPair& pair, const sdp::SolverOptions& opts = {});

CohDualCertificate solve_coh_dual(const DiscriminationPair& pair, const sdp::SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Prover strategies and direct simulation.

/// |psi> on R (x) A and a unitary V on R (x) B (x) E' (x) F, |F| = 2.
struct Strategy {
  ComplexVector psi;
  ComplexMatrix v;
  int dim_ref;
  int dim_env_prime;
};

/// P^0, P^1 : R (x) B -> R (x) B (x) E' with P0^dag P0 + P1^dag P1 = I.
struct KrausStrategy {
  ComplexMatrix p0;
  ComplexMatrix p1;
  int dim_ref;
  int dim_env_prime;

  const ComplexMatrix& p(int i) const { return i == 0 ? p0 : p1; }
};

/// 2 |A| |B|^2
int default_env_prime_dim(const DiscriminationPair& pair);

void validate_strategy(const DiscriminationPair& pair, const Strategy& s);
void validate_kraus_strategy(const DiscriminationPair& pair, const KrausStrategy& ks);

/// Success probability of a fixed strategy by explicit state-vector
/// evolution through the isometric extensions of both channels.
double simulate_success(const DiscriminationPair& pair, const Strategy& s);

/// 1/4 || sum_i N_i^dag(P^i) ||_inf^2, the value with the best input state.
double kraus_strategy_value(const DiscriminationPair& pair, const KrausStrategy& ks);

/// Input state attaining kraus_strategy_value.
ComplexVector best_input_state(const DiscriminationPair& pair, const KrausStrategy& ks);

/// P^i |x> = (I (x) <i|_F) V |x>|0>_E'|0>_F.
KrausStrategy kraus_strategy_of(const Strategy& s, int dim_out);

/// Completes {P^i} to a unitary V and pairs it with psi.
Strategy complete_strategy(const KrausStrategy& ks, const ComplexVector& psi, int dim_out);

/// P^i = sqrt(1/2) I (x) |0>_E'.
KrausStrategy do_nothing_kraus_strategy(const DiscriminationPair& pair, int dim_env_prime = 1);
Strategy do_nothing_strategy(const DiscriminationPair& pair);

/// P^i = sqrt(Lambda^i) (x) |0>_E' from a two-outcome POVM on R (x) B.
KrausStrategy kraus_strategy_from_povm(const channels::Povm& povm, int dim_ref, int dim_env_prime = 1);

/// Qubit fixture: psi = |0>_R |0>_A and V = CNOT from B to F (|E'| = 1).
Strategy example_strategy(const DiscriminationPair& pair);

// ---------------------------------------------------------------------------
// See-saw lower bounds.

struct SeesawOptions {
  int starts = 20;
  int iters = 2000;
  std::uint64_t seed = 1;
  int dim_env_prime = 0;  // 0 selects default_env_prime_dim
  double tol = 1e-13;     // stop once a sweep improves by less than this
};

struct SeesawResult {
  double value;
  KrausStrategy kraus;
  ComplexVector psi;
  std::vector<double> trajectory;  // objective per sweep for the best start
  std::vector<double> start_values;
};

/// Alternating maximization of 1/4 || sum_i N_i^dag(P^i) ||^2: top singular
/// vector for psi, polar factor for the stacked (P^0; P^1).
SeesawResult seesaw_coh(const DiscriminationPair& pair, const SeesawOptions& opts = {});

/// Strategy reproducing a see-saw value under simulate_success.
Strategy seesaw_strategy(const DiscriminationPair& pair, const SeesawResult& result);

/// 1/2 || sum_i N_i^dag(P^i)^dag N_i^dag(P^i) ||_inf for fixed {P^i}.
double kraus_strategy_value_inc_unc(const DiscriminationPair& pair, const KrausStrategy& ks);

/// Lower bound on the success probability of incoherent discrimination with
/// uncomputing, by linearize-and-polar ascent.
SeesawResult p_inc_unc_seesaw(const DiscriminationPair& pair, const SeesawOptions& opts = {});

// ---------------------------------------------------------------------------
// Bound checks.

struct SandwichReport {
  double p_coh;
  double p_coh_dual;
  double p_inc;
  double p_inc_unc_lb;
  bool coh_le_inc_unc_lb;  // reported only; the see-saw is a lower bound
  std::vector<std::string> violations;
};

/// Computes p_coh, p_inc and the see-saw bound on p_inc_unc and checks
/// 1/2 <= p_coh <= p_inc <= sqrt(p_coh) and p_inc_unc_lb <= p_inc.
/// Throws BoundViolation listing every failed link.
SandwichReport check_sandwich(const DiscriminationPair& pair, const sdp::SolverOptions& solver = {},
                              const SeesawOptions& seesaw = {}, double slack = kBoundSlack);

struct MonotonicityReport {
  double before;
  double after;
};

/// p_coh(Theta(N0), Theta(N1)) <= p_coh(N0, N1) for the superchannel built
/// from pre and post. Throws BoundViolation otherwise.
MonotonicityReport check_superchannel_monotonicity(const DiscriminationPair& pair,
                                                   const KrausChannel& pre, const KrausChannel& post,
                                                   int mem_dim, const sdp::SolverOptions& opts = {},
                                                   double slack = kBoundSlack);

struct DiscriminationResult {
  double p_inc;
  double p_coh_primal;
  double p_coh_dual;
  double seesaw_lb;
  double p_inc_unc_lb;
  double inc_gap;
  double coh_gap;
  sdp::Status inc_status;
  sdp::Status coh_status;
};

DiscriminationResult analyze(const DiscriminationPair& pair, const sdp::SolverOptions& solver = {},
                             const SeesawOptions& seesaw = {});

}  // namespace cohdisc::discrimination
