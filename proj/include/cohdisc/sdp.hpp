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

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohdisc/linalg.hpp"

// Small dense semi-definite programs over Hermitian PSD blocks:
//
//   maximize   sum_b <C_b, X_b>
//   subject to sum_b <A_jb, X_b> = b_j,   X_b >= 0,
//
// with <A, X> = Re Tr[A X]. The dual is
//
//   minimize   b . y
//   subject to S_b = sum_j y_j A_jb - C_b >= 0.
namespace cohdisc::sdp {

struct Block {
  std::string label;
  int dim;
};

struct Constraint {
  /// One entry per block; an empty matrix stands for a zero coefficient.
  std::vector<ComplexMatrix> coeffs;
  double rhs = 0.0;
};

class SdpProblem {
 public:
  std::size_t add_block(std::string label, int dim);
  void set_objective(std::size_t block, ComplexMatrix cost);
  void add_constraint(std::vector<std::pair<std::size_t, ComplexMatrix>> terms, double rhs);

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<ComplexMatrix>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t block_index(std::string_view label) const;

  /// Throws InvalidInput unless every coefficient is Hermitian and shaped
  /// like its block.
  void validate() const;

 private:
  std::vector<Block> blocks_;
  std::vector<ComplexMatrix> objective_;
  std::vector<Constraint> constraints_;
};

/// Coefficient matrices whose real inner products with x give Re and Im of
/// Tr[m x] for Hermitian x.
std::pair<ComplexMatrix, ComplexMatrix> re_im_functionals(const ComplexMatrix& m);

enum class Status { Optimal, MaxIterations, NumericalFailure, InfeasibleOrUnbounded };

std::string_view to_string(Status s);

struct SolverOptions {
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_iter = 100;
  double step_fraction = 0.98;
  double divergence_bound = 1e8;
  std::ostream* log = nullptr;
};

struct IterationRecord {
  int iteration;
  double primal_value;
  double dual_value;
  double rel_gap;
  double primal_infeas;
  double dual_infeas;
  double complementarity;
};

struct SdpSolution {
  std::vector<ComplexMatrix> primal_blocks;
  /// One multiplier per constraint of the original problem (rows removed by
  /// the rank filter get zero).
  RealVector dual_vector;
  std::vector<ComplexMatrix> dual_slack_blocks;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  Status status = Status::NumericalFailure;
  int iterations = 0;
  int dropped_constraints = 0;
  std::vector<IterationRecord> history;
};

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts = {});

struct VerificationReport {
  double primal_residual;      // max_j |sum_b <A_jb, X_b> - b_j|
  double primal_min_eig;       // min over blocks
  double dual_slack_min_eig;   // min over blocks of sum_j y_j A_jb - C_b
  double primal_value;
  double dual_value;
  double gap;
  bool primal_feasible;
  bool primal_psd;
  bool dual_feasible;
  bool gap_ok;

  bool passed() const { return primal_feasible && primal_psd && dual_feasible && gap_ok; }
};

/// Recomputes residuals, eigenvalue floors and the duality gap from the
/// problem data. PSD floors are relative to max(1, ||block||).
VerificationReport verify_solution(const SdpProblem& problem, const SdpSolution& solution,
                                   double feas_tol = 1e-8, double psd_tol = 1e-8,
                                   double gap_tol = 1e-7);

struct DualBound {
  double bound;              // b . y
  double slack_min_eig;      // min eigenvalue over the dual slack blocks
  bool valid;                // slack PSD within tolerance
};

/// Upper bound on the primal optimum certified by a dual vector alone.
DualBound certify_upper_bound(const SdpProblem& problem, const RealVector& y, double psd_tol = 1e-9);

}  // namespace cohdisc::sdp
