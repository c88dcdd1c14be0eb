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

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cohdisc/discrimination.hpp"
#include "cohdisc/errors.hpp"
#include "cohdisc/random.hpp"

namespace cohdisc::discrimination {

namespace {

using linalg::identity;
using linalg::kron;

constexpr std::uint64_t kIncUncSalt = 0x696e63756e63ULL;

// Applies I_R (x) M (x) I_E' to the columns of x, where x has rows ordered
// (R, X, E') with |X| = m.cols().
ComplexMatrix apply_middle(const ComplexMatrix& m, const ComplexMatrix& x, int dim_ref, int dim_env) {
  using Map = Eigen::Map<const ComplexMatrix>;
  using MutMap = Eigen::Map<ComplexMatrix>;
  const Eigen::Index in = m.cols();
  const Eigen::Index out_dim = m.rows();
  ComplexMatrix out(dim_ref * out_dim * dim_env, x.cols());
  const ComplexMatrix mt = m.transpose();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (int r = 0; r < dim_ref; ++r) {
      // Column-major (E' x X) view: entry (e, b) sits at row b * |E'| + e.
      Map block(x.col(c).data() + r * in * dim_env, dim_env, in);
      MutMap dest(out.col(c).data() + r * out_dim * dim_env, dim_env, out_dim);
      dest.noalias() = block * mt;
    }
  }
  return out;
}

class Problem {
 public:
  Problem(const DiscriminationPair& pair, int dim_env_prime)
      : dim_ref_(pair.dim_in()), dim_out_(pair.dim_out()), dim_env_prime_(dim_env_prime) {
    for (int i = 0; i < 2; ++i) {
      for (const auto& k : pair.channel(i).kraus()) {
        kraus_[i].push_back(k);
        right_[i].push_back(kron(identity(dim_ref_), k));
      }
    }
  }

  int rows() const { return dim_ref_ * dim_out_ * dim_env_prime_; }
  int cols() const { return dim_ref_ * dim_out_; }

  // N_i^dag(P) = sum_k (I_R (x) N_k^dag (x) I_E') P (I_R (x) N_k).
  ComplexMatrix adjoint(int i, const ComplexMatrix& p) const {
    ComplexMatrix out;
    for (std::size_t k = 0; k < kraus_[i].size(); ++k) {
      ComplexMatrix term = apply_middle(kraus_[i][k].adjoint(), p * right_[i][k], dim_ref_, dim_env_prime_);
      if (k == 0) {
        out = std::move(term);
      } else {
        out += term;
      }
    }
    return out;
  }

  // G = sum_k (I (x) N_k (x) I) phi [(I (x) N_k) psi]^dag, the gradient of
  // Re <phi, N_i^dag(P) psi> with respect to P.
  ComplexMatrix gradient(int i, const ComplexVector& phi, const ComplexVector& psi) const {
    ComplexMatrix g = ComplexMatrix::Zero(rows(), cols());
    for (std::size_t k = 0; k < kraus_[i].size(); ++k) {
      g += apply_middle(kraus_[i][k], phi, dim_ref_, dim_env_prime_) * (right_[i][k] * psi).adjoint();
    }
    return g;
  }

  KrausStrategy split(const ComplexMatrix& stacked) const {
    return {stacked.topRows(rows()), stacked.bottomRows(rows()), dim_ref_, dim_env_prime_};
  }

  ComplexMatrix do_nothing() const {
    ComplexMatrix p = kron(identity(cols()), linalg::ket(dim_env_prime_, 0)) / std::sqrt(2.0);
    ComplexMatrix stacked(2 * rows(), cols());
    stacked << p, p;
    return stacked;
  }

 private:
  int dim_ref_;
  int dim_out_;
  int dim_env_prime_;
  std::vector<ComplexMatrix> kraus_[2];
  std::vector<ComplexMatrix> right_[2];
};

struct Run {
  double value = -std::numeric_limits<double>::infinity();
  ComplexMatrix stacked;
  ComplexVector psi;
  std::vector<double> trajectory;
};

// One start of the coherent see-saw. Each sweep cannot decrease the value:
// psi is the top right singular vector of A(P), and the polar factor
// maximizes the linear functional Re <phi, A(P) psi> that equals the
// current value at the old P.
Run ascend_coh(const Problem& prob, ComplexMatrix stacked, const SeesawOptions& opts) {
  Run run;
  const int rows = prob.rows();
  for (int it = 0; it <= opts.iters; ++it) {
    const ComplexMatrix p0 = stacked.topRows(rows);
    const ComplexMatrix p1 = stacked.bottomRows(rows);
    const ComplexMatrix a = prob.adjoint(0, p0) + prob.adjoint(1, p1);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double sigma = svd.singularValues()(0);
    const double value = 0.25 * sigma * sigma;
    const bool stalled = it > 0 && value - run.value < opts.tol;
    run.trajectory.push_back(value);
    if (value >= run.value) {
      run.value = value;
      run.stacked = stacked;
      run.psi = svd.matrixV().col(0);
    }
    if (stalled || it == opts.iters || sigma == 0.0) break;

    const ComplexVector psi = svd.matrixV().col(0);
    const ComplexVector phi = svd.matrixU().col(0);
    ComplexMatrix g(2 * rows, prob.cols());
    g << prob.gradient(0, phi, psi), prob.gradient(1, phi, psi);
    stacked = linalg::polar_isometry(g);
  }
  return run;
}

// One start of the uncomputing see-saw on 1/2 sum_i ||B_i psi||^2. The
// objective is convex in P for fixed psi, so moving to the polar factor of
// its gradient cannot decrease it.
Run ascend_inc_unc(const Problem& prob, ComplexMatrix stacked, const SeesawOptions& opts) {
  Run run;
  const int rows = prob.rows();
  for (int it = 0; it <= opts.iters; ++it) {
    const ComplexMatrix b0 = prob.adjoint(0, stacked.topRows(rows));
    const ComplexMatrix b1 = prob.adjoint(1, stacked.bottomRows(rows));
    const ComplexMatrix m = linalg::hermitian_part(b0.adjoint() * b0 + b1.adjoint() * b1);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m);
    const Eigen::Index top = m.rows() - 1;
    const double value = 0.5 * eig.eigenvalues()(top);
    const ComplexVector psi = eig.eigenvectors().col(top);
    const bool stalled = it > 0 && value - run.value < opts.tol;
    run.trajectory.push_back(value);
    if (value >= run.value) {
      run.value = value;
      run.stacked = stacked;
      run.psi = psi;
    }
    if (stalled || it == opts.iters) break;

    ComplexMatrix g(2 * rows, prob.cols());
    g << prob.gradient(0, b0 * psi, psi), prob.gradient(1, b1 * psi, psi);
    stacked = linalg::polar_isometry(g);
  }
  return run;
}

template <typename Ascend>
SeesawResult run_starts(const DiscriminationPair& pair, const SeesawOptions& opts, std::uint64_t salt,
                        Ascend ascend) {
  if (opts.starts < 1 || opts.iters < 0) throw ParamOutOfRange("see-saw needs at least one start");
  const int de = opts.dim_env_prime > 0 ? opts.dim_env_prime : default_env_prime_dim(pair);
  const Problem prob(pair, de);

  SeesawResult result;
  result.value = -std::numeric_limits<double>::infinity();
  // Start 0 is the do-nothing strategy, worth exactly 1/2 for every pair.
  for (int start = 0; start <= opts.starts; ++start) {
    ComplexMatrix init;
    if (start == 0) {
      init = prob.do_nothing();
    } else {
      auto rng = random::stream(opts.seed ^ salt, static_cast<std::uint64_t>(start));
      init = random::isometry(2 * prob.rows(), prob.cols(), rng);
    }
    Run run = ascend(prob, std::move(init), opts);
    result.start_values.push_back(run.value);
    if (run.value > result.value) {
      result.value = run.value;
      result.kraus = prob.split(run.stacked);
      result.psi = run.psi;
      result.trajectory = std::move(run.trajectory);
    }
  }
  return result;
}

}  // namespace

SeesawResult seesaw_coh(const DiscriminationPair& pair, const SeesawOptions& opts) {
  return run_starts(pair, opts, 0, ascend_coh);
}

Strategy seesaw_strategy(const DiscriminationPair& pair, const SeesawResult& result) {
  return complete_strategy(result.kraus, result.psi, pair.dim_out());
}

SeesawResult p_inc_unc_seesaw(const DiscriminationPair& pair, const SeesawOptions& opts) {
  return run_starts(pair, opts, kIncUncSalt, ascend_inc_unc);
}

}  // namespace cohdisc::discrimination
