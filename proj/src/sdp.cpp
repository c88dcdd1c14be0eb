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

#include "cohdisc/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace cohdisc::sdp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::size_t SdpProblem::add_block(std::string label, int dim) {
  if (dim <= 0) throw DimensionMismatch("SDP block '" + label + "' must have positive dimension");
  blocks_.push_back({std::move(label), dim});
  objective_.emplace_back();
  for (auto& c : constraints_) c.coeffs.emplace_back();
  return blocks_.size() - 1;
}

void SdpProblem::set_objective(std::size_t block, ComplexMatrix cost) {
  objective_.at(block) = std::move(cost);
}

void SdpProblem::add_constraint(std::vector<std::pair<std::size_t, ComplexMatrix>> terms, double rhs) {
  Constraint c;
  c.coeffs.resize(blocks_.size());
  c.rhs = rhs;
  for (auto& [block, m] : terms) {
    auto& slot = c.coeffs.at(block);
    if (slot.size() == 0) {
      slot = std::move(m);
    } else {
      slot += m;
    }
  }
  constraints_.push_back(std::move(c));
}

std::size_t SdpProblem::block_index(std::string_view label) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].label == label) return b;
  }
  throw InvalidInput("no SDP block named '" + std::string(label) + "'");
}

void SdpProblem::validate() const {
  auto check = [&](const ComplexMatrix& m, std::size_t b, const char* what) {
    if (m.size() == 0) return;
    if (m.rows() != blocks_[b].dim || m.cols() != blocks_[b].dim) {
      throw DimensionMismatch(std::string(what) + " for block '" + blocks_[b].label + "' has the wrong shape");
    }
    linalg::require_finite(m, what);
    if (!linalg::is_hermitian(m)) {
      throw NotHermitian(std::string(what) + " for block '" + blocks_[b].label + "' is not Hermitian");
    }
  };
  for (std::size_t b = 0; b < blocks_.size(); ++b) check(objective_[b], b, "objective");
  for (const auto& c : constraints_) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) check(c.coeffs[b], b, "constraint");
  }
}

std::pair<ComplexMatrix, ComplexMatrix> re_im_functionals(const ComplexMatrix& m) {
  const Complex i(0.0, 1.0);
  ComplexMatrix re = 0.5 * (m + m.adjoint());
  ComplexMatrix im = 0.5 * (-i * m + i * m.adjoint());
  return {std::move(re), std::move(im)};
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "Optimal";
    case Status::MaxIterations:
      return "MaxIterations";
    case Status::NumericalFailure:
      return "NumericalFailure";
    case Status::InfeasibleOrUnbounded:
      return "InfeasibleOrUnbounded";
  }
  return "Unknown";
}

namespace {

// Hermitian n x n -> real symmetric 2n x 2n, [[Re, -Im], [Im, Re]], halved so
// that <embed(A), embed(X)> = Re Tr[A X].
MatrixXd embed(const ComplexMatrix& h, double scale) {
  const auto n = h.rows();
  MatrixXd out(2 * n, 2 * n);
  const MatrixXd re = h.real();
  const MatrixXd im = h.imag();
  out.topLeftCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  out.bottomRightCorner(n, n) = re;
  return scale * out;
}

// Inverse of embed(., 1) projected onto the structured subspace.
ComplexMatrix unembed(const MatrixXd& x) {
  const auto n = x.rows() / 2;
  const MatrixXd re = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  const MatrixXd im = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  ComplexMatrix out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

double dot(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Real symmetric problem in minimization form: min <c, x> s.t. A(x) = b.
// Constraint rows are orthonormal; `basis` maps them back to the caller's
// rows: row_k = sum_i basis(k, i) * original_i.
struct RealProblem {
  std::vector<int> dims;
  std::vector<MatrixXd> c;
  std::vector<std::vector<MatrixXd>> a;  // a[k][b], empty when zero
  VectorXd b;
  MatrixXd basis;
  int dropped = 0;
  bool inconsistent = false;
};

double row_dot(const std::vector<MatrixXd>& u, const std::vector<MatrixXd>& v) {
  double s = 0.0;
  for (std::size_t b = 0; b < u.size(); ++b) {
    if (u[b].size() != 0 && v[b].size() != 0) s += dot(u[b], v[b]);
  }
  return s;
}

void axpy_row(double alpha, const std::vector<MatrixXd>& x, std::vector<MatrixXd>& y) {
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (x[b].size() == 0) continue;
    if (y[b].size() == 0) {
      y[b] = alpha * x[b];
    } else {
      y[b] += alpha * x[b];
    }
  }
}

RealProblem to_real(const SdpProblem& p) {
  RealProblem rp;
  const auto nb = p.blocks().size();
  for (const auto& blk : p.blocks()) rp.dims.push_back(2 * blk.dim);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& obj = p.objective()[b];
    rp.c.push_back(obj.size() == 0 ? MatrixXd::Zero(rp.dims[b], rp.dims[b]) : MatrixXd(-embed(obj, 0.5)));
  }

  const auto m = static_cast<Eigen::Index>(p.constraints().size());
  std::vector<std::vector<MatrixXd>> rows;
  std::vector<double> rhs;
  std::vector<VectorXd> coeffs;  // orthonormal row k in terms of original rows
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& con = p.constraints()[i];
    std::vector<MatrixXd> row(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      if (con.coeffs[b].size() != 0) row[b] = embed(con.coeffs[b], 0.5);
    }
    VectorXd coeff = VectorXd::Zero(m);
    coeff(i) = 1.0;
    double value = con.rhs;
    const double original_norm = std::sqrt(row_dot(row, row));
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const double proj = row_dot(rows[k], row);
        if (proj == 0.0) continue;
        axpy_row(-proj, rows[k], row);
        coeff -= proj * coeffs[k];
        value -= proj * rhs[k];
      }
    }
    const double norm = std::sqrt(row_dot(row, row));
    if (norm <= std::max(1e-12, 1e-10 * original_norm)) {
      ++rp.dropped;
      if (std::abs(value) > 1e-8 * (1.0 + std::abs(con.rhs))) rp.inconsistent = true;
      continue;
    }
    for (auto& blk : row) {
      if (blk.size() != 0) blk /= norm;
    }
    rows.push_back(std::move(row));
    coeffs.push_back(coeff / norm);
    rhs.push_back(value / norm);
  }
  rp.a = std::move(rows);
  rp.b = Eigen::Map<VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  rp.basis = MatrixXd::Zero(static_cast<Eigen::Index>(coeffs.size()), m);
  for (std::size_t k = 0; k < coeffs.size(); ++k) rp.basis.row(static_cast<Eigen::Index>(k)) = coeffs[k];
  return rp;
}

using Blocks = std::vector<MatrixXd>;

VectorXd apply_a(const RealProblem& rp, const Blocks& x) {
  VectorXd out(rp.a.size());
  for (std::size_t k = 0; k < rp.a.size(); ++k) out(static_cast<Eigen::Index>(k)) = row_dot(rp.a[k], x);
  return out;
}

Blocks apply_at(const RealProblem& rp, const VectorXd& y) {
  Blocks out;
  for (int d : rp.dims) out.push_back(MatrixXd::Zero(d, d));
  for (std::size_t k = 0; k < rp.a.size(); ++k) {
    for (std::size_t b = 0; b < rp.dims.size(); ++b) {
      if (rp.a[k][b].size() != 0) out[b] += y(static_cast<Eigen::Index>(k)) * rp.a[k][b];
    }
  }
  return out;
}

double blocks_dot(const Blocks& u, const Blocks& v) {
  double s = 0.0;
  for (std::size_t b = 0; b < u.size(); ++b) s += dot(u[b], v[b]);
  return s;
}

double blocks_norm(const Blocks& u) { return std::sqrt(blocks_dot(u, u)); }

// Largest alpha with x + alpha * dx PSD (infinity when dx keeps x PSD).
double max_step(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd linv_dx = llt.matrixL().solve(dx);
  const MatrixXd scaled = llt.matrixL().solve(linv_dx.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym(scaled), Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < x.size(); ++b) alpha = std::min(alpha, max_step(x[b], dx[b]));
  return alpha;
}

struct Direction {
  Blocks dx;
  VectorXd dy;
  Blocks ds;
};

class InteriorPoint {
 public:
  InteriorPoint(const RealProblem& rp, const SolverOptions& opts) : rp_(rp), opts_(opts) {}

  struct Iterate {
    Blocks x;
    VectorXd y;
    Blocks s;
  };

  Status run(Iterate& best, std::vector<IterationRecord>& history, int& iterations) {
    const auto m = static_cast<Eigen::Index>(rp_.a.size());
    Iterate it = initial_point();
    best = it;
    double best_merit = std::numeric_limits<double>::infinity();
    const double b_norm = rp_.b.norm();
    const double c_norm = blocks_norm(rp_.c);
    int total_dim = 0;
    for (int d : rp_.dims) total_dim += d;

    for (int iter = 0;; ++iter) {
      iterations = iter;
      const VectorXd rp = rp_.b - apply_a(rp_, it.x);
      Blocks rd = rp_.c;
      const Blocks aty = apply_at(rp_, it.y);
      for (std::size_t b = 0; b < rd.size(); ++b) rd[b] -= it.s[b] + aty[b];

      const double complementarity = blocks_dot(it.x, it.s);
      const double mu = complementarity / total_dim;
      // Reported in maximization form.
      const double primal_value = -blocks_dot(rp_.c, it.x);
      const double dual_value = -rp_.b.dot(it.y);
      const double rel_gap = (dual_value - primal_value) / (1.0 + std::abs(primal_value) + std::abs(dual_value));
      const double pinf = rp.norm() / (1.0 + b_norm);
      const double dinf = blocks_norm(rd) / (1.0 + c_norm);
      history.push_back({iter, primal_value, dual_value, rel_gap, pinf, dinf, complementarity});
      if (opts_.log != nullptr) {
        *opts_.log << std::setw(4) << iter << std::scientific << std::setprecision(6) << "  pobj "
                   << primal_value << "  dobj " << dual_value << "  gap " << rel_gap << "  pinf " << pinf
                   << "  dinf " << dinf << '\n'
                   << std::defaultfloat;
      }
      if (!std::isfinite(mu) || !std::isfinite(primal_value) || !std::isfinite(dual_value)) {
        return Status::NumericalFailure;
      }
      const double merit = std::max({std::abs(rel_gap), pinf, dinf});
      if (merit < best_merit) {
        best_merit = merit;
        best = it;
      }
      if (std::abs(rel_gap) <= opts_.gap_tol && pinf <= opts_.feas_tol && dinf <= opts_.feas_tol) {
        return Status::Optimal;
      }
      if (iter >= opts_.max_iter) return Status::MaxIterations;
      const double size = std::max(blocks_norm(it.x), std::max(blocks_norm(it.s), it.y.norm()));
      if (size > opts_.divergence_bound && merit > 1e-6) return Status::InfeasibleOrUnbounded;

      Blocks sinv;
      for (const auto& s : it.s) {
        Eigen::LLT<MatrixXd> llt(s);
        if (llt.info() != Eigen::Success) return Status::NumericalFailure;
        sinv.push_back(llt.solve(MatrixXd::Identity(s.rows(), s.cols())));
      }
      MatrixXd schur = MatrixXd::Zero(m, m);
      for (Eigen::Index j = 0; j < m; ++j) {
        std::vector<MatrixXd> g(rp_.dims.size());
        for (std::size_t b = 0; b < rp_.dims.size(); ++b) {
          if (rp_.a[j][b].size() != 0) g[b] = it.x[b] * rp_.a[j][b] * sinv[b];
        }
        for (Eigen::Index i = 0; i <= j; ++i) {
          schur(i, j) = row_dot(rp_.a[i], g);
          schur(j, i) = schur(i, j);
        }
      }
      Eigen::LLT<MatrixXd> schur_llt(schur);
      if (schur_llt.info() != Eigen::Success) {
        const double shift = 1e-14 * std::max(1.0, schur.diagonal().maxCoeff());
        schur_llt.compute(schur + shift * MatrixXd::Identity(m, m));
        if (schur_llt.info() != Eigen::Success) return Status::NumericalFailure;
      }

      auto direction = [&](const Blocks& k) {
        Blocks h(k.size());
        for (std::size_t b = 0; b < k.size(); ++b) h[b] = k[b] - it.x[b] * rd[b] * sinv[b];
        const VectorXd rhs = rp - apply_a(rp_, h);
        Direction d;
        d.dy = schur_llt.solve(rhs);
        d.ds = rd;
        const Blocks atdy = apply_at(rp_, d.dy);
        for (std::size_t b = 0; b < k.size(); ++b) {
          d.ds[b] -= atdy[b];
          d.dx.push_back(sym(k[b] - it.x[b] * d.ds[b] * sinv[b]));
        }
        return d;
      };

      // Predictor (affine scaling).
      Blocks k_aff;
      for (const auto& x : it.x) k_aff.push_back(-x);
      const Direction aff = direction(k_aff);
      const double ap_aff = std::min(1.0, max_step(it.x, aff.dx));
      const double ad_aff = std::min(1.0, max_step(it.s, aff.ds));
      double mu_aff = 0.0;
      for (std::size_t b = 0; b < it.x.size(); ++b) {
        mu_aff += dot(it.x[b] + ap_aff * aff.dx[b], it.s[b] + ad_aff * aff.ds[b]);
      }
      mu_aff /= total_dim;
      const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

      // Corrector.
      Blocks k_cor;
      for (std::size_t b = 0; b < it.x.size(); ++b) {
        k_cor.push_back(sigma * mu * sinv[b] - it.x[b] - aff.dx[b] * aff.ds[b] * sinv[b]);
      }
      const Direction d = direction(k_cor);
      const double ap = std::min(1.0, opts_.step_fraction * max_step(it.x, d.dx));
      const double ad = std::min(1.0, opts_.step_fraction * max_step(it.s, d.ds));
      if (!(ap > 0.0) || !(ad > 0.0)) return Status::NumericalFailure;
      for (std::size_t b = 0; b < it.x.size(); ++b) {
        it.x[b] += ap * d.dx[b];
        it.s[b] += ad * d.ds[b];
      }
      it.y += ad * d.dy;
    }
  }

 private:
  Iterate initial_point() const {
    double n_total = 0.0;
    for (int d : rp_.dims) n_total += d;
    double xi = std::max(10.0, std::sqrt(n_total));
    for (Eigen::Index k = 0; k < rp_.b.size(); ++k) xi = std::max(xi, (1.0 + std::abs(rp_.b(k))) / 2.0);
    const double eta = std::max({10.0, std::sqrt(n_total), blocks_norm(rp_.c)});
    Iterate it;
    for (int d : rp_.dims) {
      it.x.push_back(xi * MatrixXd::Identity(d, d));
      it.s.push_back(eta * MatrixXd::Identity(d, d));
    }
    it.y = VectorXd::Zero(static_cast<Eigen::Index>(rp_.a.size()));
    return it;
  }

  const RealProblem& rp_;
  const SolverOptions& opts_;
};

double constraint_value(const SdpProblem& p, const Constraint& c, const std::vector<ComplexMatrix>& x) {
  double s = 0.0;
  for (std::size_t b = 0; b < p.blocks().size(); ++b) {
    if (c.coeffs[b].size() != 0) s += (c.coeffs[b] * x[b]).trace().real();
  }
  return s;
}

std::vector<ComplexMatrix> dual_slack(const SdpProblem& p, const RealVector& y) {
  std::vector<ComplexMatrix> slack;
  for (std::size_t b = 0; b < p.blocks().size(); ++b) {
    const int n = p.blocks()[b].dim;
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    if (p.objective()[b].size() != 0) s -= p.objective()[b];
    for (std::size_t j = 0; j < p.constraints().size(); ++j) {
      const auto& a = p.constraints()[j].coeffs[b];
      if (a.size() != 0) s += y(static_cast<Eigen::Index>(j)) * a;
    }
    slack.push_back(linalg::hermitian_part(s));
  }
  return slack;
}

double objective_value(const SdpProblem& p, const std::vector<ComplexMatrix>& x) {
  double s = 0.0;
  for (std::size_t b = 0; b < p.blocks().size(); ++b) {
    if (p.objective()[b].size() != 0) s += (p.objective()[b] * x[b]).trace().real();
  }
  return s;
}

double rhs_dot(const SdpProblem& p, const RealVector& y) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.constraints().size(); ++j) {
    s += p.constraints()[j].rhs * y(static_cast<Eigen::Index>(j));
  }
  return s;
}

double relative_min_eig(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return linalg::min_eigenvalue(m) / std::max(1.0, linalg::operator_norm(m));
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts) {
  problem.validate();
  const RealProblem rp = to_real(problem);
  SdpSolution sol;
  sol.dropped_constraints = rp.dropped;
  if (rp.inconsistent) {
    sol.status = Status::InfeasibleOrUnbounded;
    return sol;
  }

  InteriorPoint ipm(rp, opts);
  InteriorPoint::Iterate best;
  sol.status = ipm.run(best, sol.history, sol.iterations);

  for (const auto& x : best.x) sol.primal_blocks.push_back(unembed(x));
  // Minimization multipliers y_min relate to ours by y = -basis^T y_min.
  sol.dual_vector = -(rp.basis.transpose() * best.y);
  sol.dual_slack_blocks = dual_slack(problem, sol.dual_vector);
  sol.primal_value = objective_value(problem, sol.primal_blocks);
  sol.dual_value = rhs_dot(problem, sol.dual_vector);
  sol.gap = sol.dual_value - sol.primal_value;
  return sol;
}

VerificationReport verify_solution(const SdpProblem& problem, const SdpSolution& solution,
                                   double feas_tol, double psd_tol, double gap_tol) {
  VerificationReport r{};
  const auto nb = problem.blocks().size();
  if (solution.primal_blocks.size() != nb ||
      solution.dual_vector.size() != static_cast<Eigen::Index>(problem.constraints().size())) {
    throw DimensionMismatch("verify_solution: solution does not match the problem shape");
  }
  r.primal_residual = 0.0;
  for (const auto& c : problem.constraints()) {
    r.primal_residual = std::max(r.primal_residual, std::abs(constraint_value(problem, c, solution.primal_blocks) - c.rhs));
  }
  r.primal_min_eig = std::numeric_limits<double>::infinity();
  for (const auto& x : solution.primal_blocks) r.primal_min_eig = std::min(r.primal_min_eig, relative_min_eig(x));
  r.dual_slack_min_eig = std::numeric_limits<double>::infinity();
  for (const auto& s : dual_slack(problem, solution.dual_vector)) {
    r.dual_slack_min_eig = std::min(r.dual_slack_min_eig, relative_min_eig(s));
  }
  r.primal_value = objective_value(problem, solution.primal_blocks);
  r.dual_value = rhs_dot(problem, solution.dual_vector);
  r.gap = r.dual_value - r.primal_value;
  r.primal_feasible = r.primal_residual <= feas_tol;
  r.primal_psd = r.primal_min_eig >= -psd_tol;
  r.dual_feasible = r.dual_slack_min_eig >= -psd_tol;
  r.gap_ok = r.gap >= -gap_tol && r.gap <= gap_tol * (1.0 + std::abs(r.primal_value));
  return r;
}

DualBound certify_upper_bound(const SdpProblem& problem, const RealVector& y, double psd_tol) {
  if (y.size() != static_cast<Eigen::Index>(problem.constraints().size())) {
    throw DimensionMismatch("certify_upper_bound: one multiplier per constraint expected");
  }
  DualBound out{};
  out.bound = rhs_dot(problem, y);
  out.slack_min_eig = std::numeric_limits<double>::infinity();
  for (const auto& s : dual_slack(problem, y)) out.slack_min_eig = std::min(out.slack_min_eig, relative_min_eig(s));
  out.valid = out.slack_min_eig >= -psd_tol;
  return out;
}

}  // namespace cohdisc::sdp
