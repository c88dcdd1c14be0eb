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

#include "cohdisc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "cohdisc/errors.hpp"

namespace cohdisc::discrimination {

using linalg::identity;
using linalg::ket;
using linalg::ketbra;
using linalg::kron;
using linalg::TensorShape;

namespace {

constexpr double kSupportTol = 1e-10;
constexpr double kKernelShift = 1e-8;
constexpr double kIsometryTol = 1e-9;

void require_optimal(const sdp::SdpSolution& sol, const char* what) {
  if (sol.status == sdp::Status::Optimal) return;
  std::ostringstream os;
  os << what << ": solver stopped with status " << sdp::to_string(sol.status) << " after "
     << sol.iterations << " iterations (gap " << sol.gap << ")";
  throw SolverFailure(os.str());
}

ComplexMatrix top_right_singular_vector(const ComplexMatrix& a, double* sigma) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinV);
  if (sigma != nullptr) *sigma = svd.singularValues()(0);
  return svd.matrixV().col(0);
}

}  // namespace

DiscriminationPair::DiscriminationPair(KrausChannel ch0, KrausChannel ch1)
    : ch0_(std::move(ch0)), ch1_(std::move(ch1)) {
  if (ch0_.dim_in() != ch1_.dim_in() || ch0_.dim_out() != ch1_.dim_out()) {
    std::ostringstream os;
    os << "channels act on different spaces: " << ch0_.dim_in() << "->" << ch0_.dim_out() << " vs "
       << ch1_.dim_in() << "->" << ch1_.dim_out();
    throw DimensionMismatch(os.str());
  }
  channels::validate_channel(ch0_);
  channels::validate_channel(ch1_);
}

// ---------------------------------------------------------------------------

sdp::SdpProblem build_diamond_sdp(const DiscriminationPair& pair) {
  const int da = pair.dim_in();
  const int db = pair.dim_out();
  const int n = da * db;
  const ComplexMatrix gamma = channels::choi_from_kraus(pair.channel(0)).matrix -
                              channels::choi_from_kraus(pair.channel(1)).matrix;
  const TensorShape rb{{"R", da}, {"B", db}};

  sdp::SdpProblem prob;
  const auto w = prob.add_block("W", n);
  const auto t = prob.add_block("T", n);
  const auto rho = prob.add_block("rho", da);
  prob.set_objective(w, gamma);
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      const ComplexMatrix e = ketbra(n, q, p);
      const auto [re, im] = sdp::re_im_functionals(e);
      const auto [rho_re, rho_im] = sdp::re_im_functionals(linalg::partial_trace(e, rb, {"B"}));
      prob.add_constraint({{w, re}, {t, re}, {rho, -rho_re}}, 0.0);
      if (p != q) prob.add_constraint({{w, im}, {t, im}, {rho, -rho_im}}, 0.0);
    }
  }
  prob.add_constraint({{rho, identity(da)}}, 1.0);
  return prob;
}

DiamondResult solve_diamond(const DiscriminationPair& pair, const sdp::SolverOptions& opts) {
  const sdp::SdpProblem prob = build_diamond_sdp(pair);
  sdp::SdpSolution sol = sdp::solve(prob, opts);
  require_optimal(sol, "diamond SDP");
  DiamondResult r;
  // The distance is the infimum over (mu, Z), i.e. the dual objective.
  r.mu = sol.dual_vector(sol.dual_vector.size() - 1);
  r.half_distance = r.mu;
  r.p_inc = 0.5 * (1.0 + r.mu);
  r.z = sol.dual_slack_blocks[1];
  r.w = sol.primal_blocks[0];
  r.rho = sol.primal_blocks[2];
  r.gap = sol.dual_value - sol.primal_value;
  r.solution = std::move(sol);
  return r;
}

double p_inc(const DiscriminationPair& pair, const sdp::SolverOptions& opts) {
  return solve_diamond(pair, opts).p_inc;
}

// ---------------------------------------------------------------------------

CohPrimalProblem::CohPrimalProblem(const DiscriminationPair& pair)
    : dim_in_(pair.dim_in()), dim_out_(pair.dim_out()) {
  env_dim_ = static_cast<int>(std::max(pair.channel(0).rank(), pair.channel(1).rank()));
  const int r = env_dim_;
  for (int i = 0; i < 2; ++i) {
    const KrausChannel padded = pair.channel(i).padded(static_cast<std::size_t>(r));
    for (const auto& k : padded.kraus()) kraus_.push_back(k);
  }

  ComplexMatrix omega = ComplexMatrix::Zero(4 * dim_out_ * r, dim_in_);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < r; ++k) {
      omega += kron({ket(2, i), ket(2, i), kraus_[i * r + k], ket(r, k)});
    }
  }
  omega /= std::sqrt(2.0);
  y_ = omega * omega.adjoint();

  const auto eig = linalg::hermitian_eig(z_of(identity(dim_in_)));
  const double floor = kSupportTol * std::max(1.0, eig.eigenvalues.maxCoeff());
  std::vector<int> keep, drop;
  for (int j = 0; j < eig.eigenvalues.size(); ++j) {
    (eig.eigenvalues(j) > floor ? keep : drop).push_back(j);
  }
  support_.resize(2 * r, static_cast<Eigen::Index>(keep.size()));
  complement_.resize(2 * r, static_cast<Eigen::Index>(drop.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) support_.col(j) = eig.eigenvectors.col(keep[j]);
  for (std::size_t j = 0; j < drop.size(); ++j) complement_.col(j) = eig.eigenvectors.col(drop[j]);

  const int s = support_dim();
  for (int c = 0; c < s; ++c) {
    for (int d = c; d < s; ++d) {
      reduced_rows_.push_back({c, d, false});
      if (c != d) reduced_rows_.push_back({c, d, true});
    }
  }
}

TensorShape CohPrimalProblem::sigma_shape() const {
  return {{"R1", 2}, {"F", 2}, {"B", dim_out_}, {"E", env_dim_}};
}

ComplexMatrix CohPrimalProblem::z_of(const ComplexMatrix& rho) const {
  const int n = 2 * env_dim_;
  ComplexMatrix z(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      z(a, b) = 0.5 * (kraus_[b].adjoint() * kraus_[a] * rho).trace();
    }
  }
  return z;
}

sdp::SdpProblem CohPrimalProblem::full_sdp() const {
  const int r = env_dim_;
  const int n = 2 * r;
  sdp::SdpProblem prob;
  const auto sigma = prob.add_block("sigma", 4 * dim_out_ * r);
  const auto rho = prob.add_block("rho", dim_in_);
  prob.set_objective(sigma, y_);
  const ComplexMatrix id_fb = identity(2 * dim_out_);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const ComplexMatrix op = kron({ketbra(2, b / r, a / r), id_fb, ketbra(r, b % r, a % r)});
      const ComplexMatrix m = 0.5 * kraus_[b].adjoint() * kraus_[a];
      const auto [op_re, op_im] = sdp::re_im_functionals(op);
      const auto [m_re, m_im] = sdp::re_im_functionals(m);
      prob.add_constraint({{sigma, op_re}, {rho, -m_re}}, 0.0);
      if (a != b) prob.add_constraint({{sigma, op_im}, {rho, -m_im}}, 0.0);
    }
  }
  prob.add_constraint({{rho, identity(dim_in_)}}, 1.0);
  return prob;
}

ComplexMatrix CohPrimalProblem::y_r1e_first() const {
  return linalg::permute(y_, sigma_shape(), {"R1", "E", "F", "B"});
}

sdp::SdpProblem CohPrimalProblem::reduced_sdp() const {
  const int s = support_dim();
  const int fb = 2 * dim_out_;
  const ComplexMatrix id_fb = identity(fb);
  const ComplexMatrix lift = kron(support_, id_fb);

  // N~_c = sum_a conj(Q_ac) N_a, so that (Q^dag Z^rho Q)_cd = 1/2 Tr[N~_d^dag N~_c rho].
  std::vector<ComplexMatrix> mixed(s, ComplexMatrix::Zero(dim_out_, dim_in_));
  for (int c = 0; c < s; ++c) {
    for (std::size_t a = 0; a < kraus_.size(); ++a) mixed[c] += std::conj(support_(a, c)) * kraus_[a];
  }

  sdp::SdpProblem prob;
  const auto sigma = prob.add_block("sigma", s * fb);
  const auto rho = prob.add_block("rho", dim_in_);
  prob.set_objective(sigma, linalg::hermitian_part(lift.adjoint() * y_r1e_first() * lift));
  for (const auto& row : reduced_rows_) {
    const auto [op_re, op_im] = sdp::re_im_functionals(kron(ketbra(s, row.d, row.c), id_fb));
    const auto [m_re, m_im] = sdp::re_im_functionals(0.5 * mixed[row.d].adjoint() * mixed[row.c]);
    if (row.imaginary) {
      prob.add_constraint({{sigma, op_im}, {rho, -m_im}}, 0.0);
    } else {
      prob.add_constraint({{sigma, op_re}, {rho, -m_re}}, 0.0);
    }
  }
  prob.add_constraint({{rho, identity(dim_in_)}}, 1.0);
  return prob;
}

ComplexMatrix CohPrimalProblem::lift_sigma(const ComplexMatrix& reduced) const {
  const ComplexMatrix lift = kron(support_, identity(2 * dim_out_));
  const ComplexMatrix r1e_first = lift * reduced * lift.adjoint();
  const TensorShape shape{{"R1", 2}, {"E", env_dim_}, {"F", 2}, {"B", dim_out_}};
  return linalg::permute(r1e_first, shape, {"R1", "F", "B", "E"});
}

CohPrimalProblem build_coh_primal(const DiscriminationPair& pair) { return CohPrimalProblem(pair); }

namespace {

double coh_lambda_required(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& w) {
  const Eigen::Index n = w.rows();
  ComplexMatrix op = ComplexMatrix::Zero(kraus[0].cols(), kraus[0].cols());
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (w(a, b) == Complex(0.0)) continue;
      op += 0.5 * w(a, b) * kraus[a].adjoint() * kraus[b];
    }
  }
  return linalg::max_eigenvalue(op);
}

// W (x) I_FB - Y with (R1, E) first.
ComplexMatrix coh_y_slack(const CohPrimalProblem& prob, const ComplexMatrix& w) {
  return kron(w, identity(2 * prob.dim_out())) - prob.y_r1e_first();
}

}  // namespace

struct CohSolver {
  static CohResult run(const DiscriminationPair& pair, const sdp::SolverOptions& opts) {
    const CohPrimalProblem prob(pair);
    const sdp::SdpProblem reduced = prob.reduced_sdp();
    sdp::SdpSolution sol = sdp::solve(reduced, opts);
    require_optimal(sol, "coherent SDP");

    CohResult res;
    res.value = sol.primal_value;
    res.sigma = prob.lift_sigma(sol.primal_blocks[0]);
    res.rho = sol.primal_blocks[1];

    const int s = prob.support_dim();
    const int fb = 2 * prob.dim_out();
    ComplexMatrix w_red = ComplexMatrix::Zero(s, s);
    for (std::size_t j = 0; j < prob.reduced_rows_.size(); ++j) {
      const auto& row = prob.reduced_rows_[j];
      const auto [re, im] = sdp::re_im_functionals(ketbra(s, row.d, row.c));
      w_red += sol.dual_vector(static_cast<Eigen::Index>(j)) * (row.imaginary ? im : re);
    }
    w_red = linalg::hermitian_part(w_red);
    res.dual.w = linalg::hermitian_part(lift_dual(prob, w_red, fb));
    res.dual.lambda = coh_lambda_required(prob.kraus(), res.dual.w);
    const double y_floor = linalg::min_eigenvalue(coh_y_slack(prob, res.dual.w));
    res.dual.bound = res.dual.lambda + std::max(0.0, -y_floor);
    res.gap = res.dual.bound - res.value;
    res.solution = std::move(sol);
    return res;
  }

  // Extends a reduced dual W' to all of (R1, E). On the support W' is
  // shifted until W' (x) I - Y' is positive definite; the complement gets a
  // multiple of the identity large enough for the Schur complement.
  static ComplexMatrix lift_dual(const CohPrimalProblem& prob, const ComplexMatrix& w_red, int fb) {
    const ComplexMatrix& q = prob.support_;
    const ComplexMatrix& k = prob.complement_;
    const ComplexMatrix yp = prob.y_r1e_first();
    const ComplexMatrix id_fb = identity(fb);
    const ComplexMatrix lq = kron(q, id_fb);
    const ComplexMatrix y_qq = linalg::hermitian_part(lq.adjoint() * yp * lq);
    const ComplexMatrix base = kron(w_red, id_fb) - y_qq;
    const Eigen::Index s = q.cols();

    if (k.cols() == 0) {
      const double shift = std::max(0.0, -linalg::min_eigenvalue(base));
      return q * (w_red + shift * identity(static_cast<int>(s))) * q.adjoint();
    }

    const ComplexMatrix lk = kron(k, id_fb);
    const ComplexMatrix y_kk = linalg::hermitian_part(lk.adjoint() * yp * lk);
    const ComplexMatrix y_kq = lk.adjoint() * yp * lq;
    double eps = std::max(0.0, -linalg::min_eigenvalue(base)) + kKernelShift;
    for (int attempt = 0; attempt < 60; ++attempt, eps *= 2.0) {
      const ComplexMatrix a = base + eps * identity(static_cast<int>(base.rows()));
      Eigen::LLT<ComplexMatrix> llt(a);
      if (llt.info() != Eigen::Success) continue;
      const ComplexMatrix schur = y_kk + y_kq * llt.solve(ComplexMatrix(y_kq.adjoint()));
      const double t = linalg::max_eigenvalue(schur) * (1.0 + 1e-6) + kKernelShift;
      return q * (w_red + eps * identity(static_cast<int>(s))) * q.adjoint() + t * k * k.adjoint();
    }
    throw SolverFailure("coherent SDP: could not extend the dual solution off the support");
  }
};

CohResult solve_coh(const DiscriminationPair& pair, const sdp::SolverOptions& opts) {
  return CohSolver::run(pair, opts);
}

double p_coh(const DiscriminationPair& pair, const sdp::SolverOptions& opts) {
  return solve_coh(pair, opts).value;
}

CohDualCertificate solve_coh_dual(const DiscriminationPair& pair, const sdp::SolverOptions& opts) {
  return solve_coh(pair, opts).dual;
}

CohDualCheck verify_coh_dual(const DiscriminationPair& pair, const CohDualCertificate& cert,
                             double psd_tol) {
  const CohPrimalProblem prob(pair);
  const int n = 2 * prob.env_dim();
  if (cert.w.rows() != n || cert.w.cols() != n) {
    throw DimensionMismatch("dual certificate W must act on the control qubit and environment");
  }
  if (!linalg::is_hermitian(cert.w)) throw NotHermitian("dual certificate W is not Hermitian");
  CohDualCheck check;
  const ComplexMatrix w = linalg::hermitian_part(cert.w);
  const double scale = std::max(1.0, linalg::operator_norm(w));
  check.lmi_y_min_eig = linalg::min_eigenvalue(coh_y_slack(prob, w)) / scale;
  check.lambda_required = coh_lambda_required(prob.kraus(), w);
  check.lmi_lambda_min_eig = (cert.lambda - check.lambda_required) / std::max(1.0, std::abs(cert.lambda));
  check.valid = check.lmi_y_min_eig >= -psd_tol && check.lmi_lambda_min_eig >= -psd_tol;
  return check;
}

// ---------------------------------------------------------------------------

int default_env_prime_dim(const DiscriminationPair& pair) {
  return 2 * pair.dim_in() * pair.dim_out() * pair.dim_out();
}

void validate_kraus_strategy(const DiscriminationPair& pair, const KrausStrategy& ks) {
  const int n = ks.dim_ref * pair.dim_out();
  for (int i = 0; i < 2; ++i) {
    if (ks.p(i).cols() != n || ks.p(i).rows() != n * ks.dim_env_prime) {
      throw DimensionMismatch("strategy operators must map R (x) B to R (x) B (x) E'");
    }
    linalg::require_finite(ks.p(i), "strategy operator");
  }
  const ComplexMatrix gram = ks.p0.adjoint() * ks.p0 + ks.p1.adjoint() * ks.p1;
  const double dev = linalg::max_abs(gram - identity(n));
  if (dev > kIsometryTol) {
    std::ostringstream os;
    os << "strategy operators are not a complete Kraus pair (deviation " << dev << ")";
    throw ConstraintViolation(os.str());
  }
}

void validate_strategy(const DiscriminationPair& pair, const Strategy& s) {
  if (s.dim_ref < 1 || s.dim_env_prime < 1) throw ParamOutOfRange("strategy dimensions must be positive");
  if (s.psi.size() != s.dim_ref * pair.dim_in()) {
    throw DimensionMismatch("input state must live on R (x) A");
  }
  const int dv = s.dim_ref * pair.dim_out() * s.dim_env_prime * 2;
  if (s.v.rows() != dv || s.v.cols() != dv) {
    throw DimensionMismatch("prover unitary must act on R (x) B (x) E' (x) F");
  }
  linalg::require_finite(s.psi, "input state");
  linalg::require_finite(s.v, "prover unitary");
  if (std::abs(s.psi.norm() - 1.0) > kIsometryTol) throw ConstraintViolation("input state is not normalized");
  const double dev = linalg::max_abs(s.v.adjoint() * s.v - identity(dv));
  if (dev > kIsometryTol) {
    std::ostringstream os;
    os << "prover operation is not unitary (deviation " << dev << ")";
    throw NotIsometry(os.str());
  }
}

double simulate_success(const DiscriminationPair& pair, const Strategy& s) {
  validate_strategy(pair, s);
  const int dr = s.dim_ref;
  const int da = pair.dim_in();
  const int db = pair.dim_out();
  const int de = s.dim_env_prime;

  const TensorShape start{{"R", dr}, {"A", da}, {"Ep", de}, {"F", 2}};
  const ComplexVector state = kron({ComplexMatrix(s.psi), ket(de, 0), ket(2, 0)});
  ComplexVector total = ComplexVector::Zero(dr * da * de);
  for (int i = 0; i < 2; ++i) {
    const auto ext = channels::isometric_extension(pair.channel(i));
    const auto [s1, sh1] = linalg::apply_to_factors(state, start, {"A"}, ext.matrix,
                                                    {{"B", db}, {"E", ext.dim_env}});
    const auto [s2, sh2] = linalg::apply_to_factors(s1, sh1, {"R", "B", "Ep", "F"}, s.v,
                                                    {{"R", dr}, {"B", db}, {"Ep", de}, {"F", 2}});
    const auto [s3, sh3] =
        linalg::apply_to_factors(s2, sh2, {"B", "E"}, ext.matrix.adjoint(), {{"A", da}});
    const ComplexVector ordered = linalg::permute(s3, sh3, {"R", "A", "Ep", "F"});
    for (Eigen::Index j = 0; j < total.size(); ++j) total(j) += ordered(2 * j + i);
  }
  return 0.25 * total.squaredNorm();
}

namespace {

std::pair<ComplexMatrix, ComplexMatrix> adjoint_pair(const DiscriminationPair& pair, const KrausStrategy& ks) {
  return {channels::adjoint_apply_extended(pair.channel(0), ks.p0, ks.dim_ref, ks.dim_env_prime),
          channels::adjoint_apply_extended(pair.channel(1), ks.p1, ks.dim_ref, ks.dim_env_prime)};
}

}  // namespace

double kraus_strategy_value(const DiscriminationPair& pair, const KrausStrategy& ks) {
  validate_kraus_strategy(pair, ks);
  const auto [b0, b1] = adjoint_pair(pair, ks);
  const double norm = linalg::operator_norm(b0 + b1);
  return 0.25 * norm * norm;
}

ComplexVector best_input_state(const DiscriminationPair& pair, const KrausStrategy& ks) {
  validate_kraus_strategy(pair, ks);
  const auto [b0, b1] = adjoint_pair(pair, ks);
  return top_right_singular_vector(b0 + b1, nullptr);
}

double kraus_strategy_value_inc_unc(const DiscriminationPair& pair, const KrausStrategy& ks) {
  validate_kraus_strategy(pair, ks);
  const auto [b0, b1] = adjoint_pair(pair, ks);
  return 0.5 * linalg::max_eigenvalue(b0.adjoint() * b0 + b1.adjoint() * b1);
}

KrausStrategy kraus_strategy_of(const Strategy& s, int dim_out) {
  const int n = s.dim_ref * dim_out;
  const int de = s.dim_env_prime;
  if (s.v.rows() != n * de * 2 || s.v.cols() != n * de * 2) {
    throw DimensionMismatch("prover unitary must act on R (x) B (x) E' (x) F");
  }
  KrausStrategy ks{ComplexMatrix(n * de, n), ComplexMatrix(n * de, n), s.dim_ref, de};
  for (int x = 0; x < n; ++x) {
    for (int row = 0; row < n * de; ++row) {
      ks.p0(row, x) = s.v(2 * row, x * de * 2);
      ks.p1(row, x) = s.v(2 * row + 1, x * de * 2);
    }
  }
  return ks;
}

Strategy complete_strategy(const KrausStrategy& ks, const ComplexVector& psi, int dim_out) {
  const int n = ks.dim_ref * dim_out;
  const int de = ks.dim_env_prime;
  const int dv = n * de * 2;
  if (ks.p0.rows() != n * de || ks.p0.cols() != n || ks.p1.rows() != n * de || ks.p1.cols() != n) {
    throw DimensionMismatch("strategy operators must map R (x) B to R (x) B (x) E'");
  }
  ComplexMatrix columns(dv, n);
  for (int x = 0; x < n; ++x) {
    for (int row = 0; row < n * de; ++row) {
      columns(2 * row, x) = ks.p0(row, x);
      columns(2 * row + 1, x) = ks.p1(row, x);
    }
  }
  const ComplexMatrix u = linalg::complete_to_unitary(columns);
  ComplexMatrix v(dv, dv);
  int next = n;
  for (int col = 0; col < dv; ++col) {
    if (col % (de * 2) == 0) {
      v.col(col) = u.col(col / (de * 2));
    } else {
      v.col(col) = u.col(next++);
    }
  }
  return {psi, v, ks.dim_ref, de};
}

KrausStrategy do_nothing_kraus_strategy(const DiscriminationPair& pair, int dim_env_prime) {
  const int n = pair.dim_in() * pair.dim_out();
  const ComplexMatrix p = kron(identity(n), ket(dim_env_prime, 0)) / std::sqrt(2.0);
  return {p, p, pair.dim_in(), dim_env_prime};
}

Strategy do_nothing_strategy(const DiscriminationPair& pair) {
  const int da = pair.dim_in();
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  ComplexVector psi = ComplexVector::Zero(da * da);
  for (int i = 0; i < da; ++i) psi(i * da + i) = 1.0 / std::sqrt(static_cast<double>(da));
  return {psi, kron(identity(da * pair.dim_out()), h), da, 1};
}

KrausStrategy kraus_strategy_from_povm(const channels::Povm& povm, int dim_ref, int dim_env_prime) {
  channels::validate_povm(povm);
  if (povm.elements.size() != 2) throw DimensionMismatch("a strategy needs a two-outcome POVM");
  const ComplexMatrix e0 = ket(dim_env_prime, 0);
  return {kron(linalg::psd_sqrt(povm.elements[0]), e0), kron(linalg::psd_sqrt(povm.elements[1]), e0),
          dim_ref, dim_env_prime};
}

Strategy example_strategy(const DiscriminationPair& pair) {
  if (pair.dim_in() != 2 || pair.dim_out() != 2) {
    throw DimensionMismatch("the CNOT strategy is defined for qubit channels only");
  }
  ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const ComplexVector psi = kron(ket(2, 0), ket(2, 0));
  return {psi, kron(identity(2), cnot), 2, 1};
}

// ---------------------------------------------------------------------------

SandwichReport check_sandwich(const DiscriminationPair& pair, const sdp::SolverOptions& solver,
                              const SeesawOptions& seesaw, double slack) {
  const CohResult coh = solve_coh(pair, solver);
  const DiamondResult inc = solve_diamond(pair, solver);
  const SeesawResult unc = p_inc_unc_seesaw(pair, seesaw);

  SandwichReport rep;
  rep.p_coh = coh.value;
  rep.p_coh_dual = coh.dual.bound;
  rep.p_inc = inc.p_inc;
  rep.p_inc_unc_lb = unc.value;
  rep.coh_le_inc_unc_lb = rep.p_coh <= rep.p_inc_unc_lb + slack;

  auto fail = [&rep](const std::string& what, double lhs, double rhs) {
    std::ostringstream os;
    os.precision(12);
    os << what << " (" << lhs << " vs " << rhs << ")";
    rep.violations.push_back(os.str());
  };
  if (rep.p_coh < 0.5 - slack) fail("p_coh below 1/2", rep.p_coh, 0.5);
  if (rep.p_coh > 1.0 + slack) fail("p_coh above 1", rep.p_coh, 1.0);
  if (rep.p_coh > rep.p_inc + slack) fail("p_coh exceeds p_inc", rep.p_coh, rep.p_inc);
  if (rep.p_inc > std::sqrt(std::max(0.0, rep.p_coh)) + slack) {
    fail("p_inc exceeds sqrt(p_coh)", rep.p_inc, std::sqrt(rep.p_coh));
  }
  if (rep.p_inc_unc_lb > rep.p_inc + slack) fail("p_inc_unc lower bound exceeds p_inc", rep.p_inc_unc_lb, rep.p_inc);
  if (rep.p_coh_dual < rep.p_coh - slack) fail("coherent dual below primal", rep.p_coh_dual, rep.p_coh);

  if (!rep.violations.empty()) {
    std::string msg = "bound violation:";
    for (const auto& v : rep.violations) msg += " " + v + ";";
    throw BoundViolation(msg);
  }
  return rep;
}

MonotonicityReport check_superchannel_monotonicity(const DiscriminationPair& pair,
                                                   const KrausChannel& pre, const KrausChannel& post,
                                                   int mem_dim, const sdp::SolverOptions& opts,
                                                   double slack) {
  const DiscriminationPair mapped(channels::compose_superchannel(pre, pair.channel(0), post, mem_dim),
                                  channels::compose_superchannel(pre, pair.channel(1), post, mem_dim));
  MonotonicityReport rep{p_coh(pair, opts), p_coh(mapped, opts)};
  if (rep.after > rep.before + slack) {
    std::ostringstream os;
    os.precision(12);
    os << "superchannel increased p_coh from " << rep.before << " to " << rep.after;
    throw BoundViolation(os.str());
  }
  return rep;
}

DiscriminationResult analyze(const DiscriminationPair& pair, const sdp::SolverOptions& solver,
                             const SeesawOptions& seesaw) {
  const DiamondResult inc = solve_diamond(pair, solver);
  const CohResult coh = solve_coh(pair, solver);
  DiscriminationResult r;
  r.p_inc = inc.p_inc;
  r.p_coh_primal = coh.value;
  r.p_coh_dual = coh.dual.bound;
  r.seesaw_lb = seesaw_coh(pair, seesaw).value;
  r.p_inc_unc_lb = p_inc_unc_seesaw(pair, seesaw).value;
  r.inc_gap = inc.gap;
  r.coh_gap = coh.gap;
  r.inc_status = inc.solution.status;
  r.coh_status = coh.solution.status;
  return r;
}

}  // namespace cohdisc::discrimination
