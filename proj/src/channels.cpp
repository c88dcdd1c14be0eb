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

#include "cohdisc/channels.hpp"

#include <cmath>
#include <sstream>

namespace cohdisc::channels {

using linalg::identity;
using linalg::kron;

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in <= 0 || dim_out <= 0) throw DimensionMismatch("channel dimensions must be positive");
  if (kraus_.empty()) throw DimensionMismatch("a channel needs at least one Kraus operator");
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    if (kraus_[k].rows() != dim_out || kraus_[k].cols() != dim_in) {
      std::ostringstream os;
      os << "Kraus operator " << k << " is " << kraus_[k].rows() << "x" << kraus_[k].cols()
         << ", expected " << dim_out << "x" << dim_in;
      throw DimensionMismatch(os.str());
    }
    linalg::require_finite(kraus_[k], "Kraus operator");
  }
}

KrausChannel KrausChannel::padded(std::size_t count) const {
  auto ops = kraus_;
  while (ops.size() < count) ops.push_back(ComplexMatrix::Zero(dim_out_, dim_in_));
  return {dim_in_, dim_out_, std::move(ops)};
}

double completeness_deviation(const KrausChannel& c) {
  ComplexMatrix sum = ComplexMatrix::Zero(c.dim_in(), c.dim_in());
  for (const auto& k : c.kraus()) sum += k.adjoint() * k;
  return linalg::operator_norm(sum - identity(c.dim_in()));
}

void validate_channel(const KrausChannel& c, double tol) {
  const double dev = completeness_deviation(c);
  if (dev > tol) {
    std::ostringstream os;
    os << "Kraus operators violate completeness: ||sum K^dagger K - I||_inf = " << dev;
    throw CompletenessViolation(os.str(), dev);
  }
}

void validate_povm(const Povm& povm, double tol) {
  if (povm.elements.empty()) throw InvalidInput("POVM has no elements");
  const auto n = povm.elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& e : povm.elements) {
    if (e.rows() != n || e.cols() != n) throw DimensionMismatch("POVM elements differ in shape");
    if (!linalg::is_hermitian(e)) throw NotHermitian("POVM element is not Hermitian");
    if (linalg::min_eigenvalue(e) < -tol) throw NotPsd("POVM element is not positive semi-definite");
    sum += e;
  }
  if (linalg::operator_norm(sum - identity(static_cast<int>(n))) > tol) {
    throw ConstraintViolation("POVM elements do not sum to the identity");
  }
}

ChoiOperator choi_from_kraus(const KrausChannel& c) {
  const int din = c.dim_in();
  const int dout = c.dim_out();
  ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
  for (const auto& k : c.kraus()) {
    // (I (x) K)|Gamma> has entry K(b, i) at index (i, b).
    ComplexVector v(din * dout);
    for (int i = 0; i < din; ++i) {
      for (int b = 0; b < dout; ++b) v(i * dout + b) = k(b, i);
    }
    choi += v * v.adjoint();
  }
  return {choi, din, dout};
}

KrausChannel kraus_from_choi(const ChoiOperator& choi, double rank_tol) {
  const int din = choi.dim_in;
  const int dout = choi.dim_out;
  if (choi.matrix.rows() != din * dout || choi.matrix.cols() != din * dout) {
    throw DimensionMismatch("Choi matrix shape does not match its dimensions");
  }
  const auto eig = linalg::hermitian_eig(choi.matrix, 1e-9);
  const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
  if (eig.eigenvalues.minCoeff() < -1e-9 * scale) {
    std::ostringstream os;
    os << "Choi operator is not positive semi-definite (min eigenvalue " << eig.eigenvalues.minCoeff()
       << ")";
    throw NotPsd(os.str());
  }
  const linalg::TensorShape shape{{"R", din}, {"B", dout}};
  const ComplexMatrix reduced = linalg::partial_trace(choi.matrix, shape, {"B"});
  if (linalg::operator_norm(reduced - identity(din)) > kCptpTol) {
    throw NotTracePreserving("Choi operator does not reduce to the identity on the input");
  }

  std::vector<ComplexMatrix> ops;
  for (Eigen::Index n = eig.eigenvalues.size(); n-- > 0;) {
    const double lambda = eig.eigenvalues(n);
    if (lambda <= rank_tol * scale) break;
    ComplexMatrix k(dout, din);
    for (int i = 0; i < din; ++i) {
      for (int b = 0; b < dout; ++b) k(b, i) = std::sqrt(lambda) * eig.eigenvectors(i * dout + b, n);
    }
    ops.push_back(std::move(k));
  }
  if (ops.empty()) throw NotTracePreserving("Choi operator is numerically zero");
  return {din, dout, std::move(ops)};
}

IsometricExtension isometric_extension(const KrausChannel& c) {
  const int dout = c.dim_out();
  const int denv = static_cast<int>(c.rank());
  ComplexMatrix u = ComplexMatrix::Zero(dout * denv, c.dim_in());
  for (int k = 0; k < denv; ++k) {
    for (int b = 0; b < dout; ++b) u.row(b * denv + k) = c.kraus()[k].row(b);
  }
  return {u, dout, denv};
}

ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& rho) {
  if (rho.rows() != c.dim_in() || rho.cols() != c.dim_in()) {
    throw DimensionMismatch("apply: input operator does not match the channel input dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(c.dim_out(), c.dim_out());
  for (const auto& k : c.kraus()) out += k * rho * k.adjoint();
  return out;
}

ComplexMatrix adjoint_apply(const KrausChannel& c, const ComplexMatrix& y) {
  if (y.rows() != c.dim_out() || y.cols() != c.dim_out()) {
    throw DimensionMismatch("adjoint_apply: operator does not match the channel output dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(c.dim_in(), c.dim_in());
  for (const auto& k : c.kraus()) out += k.adjoint() * y * k;
  return out;
}

ComplexMatrix adjoint_apply_extended(const KrausChannel& c, const ComplexMatrix& x, int dim_ref,
                                     int dim_extra) {
  if (x.cols() != dim_ref * c.dim_out() || x.rows() != dim_ref * c.dim_out() * dim_extra) {
    throw DimensionMismatch("adjoint_apply_extended: operator shape does not match R (x) B (x) E'");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_ref * c.dim_in() * dim_extra, dim_ref * c.dim_in());
  const ComplexMatrix id_ref = identity(dim_ref);
  const ComplexMatrix id_extra = identity(dim_extra);
  for (const auto& k : c.kraus()) {
    out += kron({id_ref, ComplexMatrix(k.adjoint()), id_extra}) * x * kron(id_ref, k);
  }
  return out;
}

KrausChannel gad_channel(const GadParams& p) {
  if (!(p.gamma >= 0.0 && p.gamma <= 1.0) || !(p.noise >= 0.0 && p.noise <= 1.0)) {
    std::ostringstream os;
    os << "GAD parameters must lie in [0,1], got gamma=" << p.gamma << " N=" << p.noise;
    throw ParamOutOfRange(os.str());
  }
  const double g = p.gamma;
  const double n = p.noise;
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = k0, k2 = k0, k3 = k0;
  k0(0, 0) = std::sqrt(1 - n);
  k0(1, 1) = std::sqrt(1 - n) * std::sqrt(1 - g);
  k1(0, 1) = std::sqrt(g * (1 - n));
  k2(0, 0) = std::sqrt(n) * std::sqrt(1 - g);
  k2(1, 1) = std::sqrt(n);
  k3(1, 0) = std::sqrt(g * n);
  return {2, 2, {k0, k1, k2, k3}};
}

KrausChannel identity_channel(int dim) { return {dim, dim, {identity(dim)}}; }

KrausChannel unitary_channel(const ComplexMatrix& u) {
  return {static_cast<int>(u.cols()), static_cast<int>(u.rows()), {u}};
}

KrausChannel compose_superchannel(const KrausChannel& pre, const KrausChannel& mid,
                                  const KrausChannel& post, int mem_dim) {
  if (mem_dim <= 0) throw DimensionMismatch("memory dimension must be positive");
  if (pre.dim_out() != mid.dim_in() * mem_dim) {
    throw DimensionMismatch("pre-processing output must be |A| * mem_dim");
  }
  if (post.dim_in() != mid.dim_out() * mem_dim) {
    throw DimensionMismatch("post-processing input must be |B| * mem_dim");
  }
  const ComplexMatrix id_mem = identity(mem_dim);
  std::vector<ComplexMatrix> ops;
  for (const auto& d : post.kraus()) {
    for (const auto& n : mid.kraus()) {
      const ComplexMatrix dn = d * kron(n, id_mem);
      for (const auto& e : pre.kraus()) ops.push_back(dn * e);
    }
  }
  return canonicalize(KrausChannel(pre.dim_in(), post.dim_out(), std::move(ops)));
}

KrausChannel kraus_rotate(const KrausChannel& c, const ComplexMatrix& u) {
  const auto r = static_cast<Eigen::Index>(c.rank());
  if (u.cols() != r || u.rows() < r) {
    throw NotIsometry("kraus_rotate: isometry must have one column per Kraus operator");
  }
  if (linalg::operator_norm(u.adjoint() * u - identity(static_cast<int>(r))) > 1e-10) {
    throw NotIsometry("kraus_rotate: u^dagger u differs from the identity");
  }
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    ComplexMatrix k = ComplexMatrix::Zero(c.dim_out(), c.dim_in());
    for (Eigen::Index l = 0; l < r; ++l) k += u(j, l) * c.kraus()[l];
    ops.push_back(std::move(k));
  }
  return {c.dim_in(), c.dim_out(), std::move(ops)};
}

KrausChannel canonicalize(const KrausChannel& c, double rank_tol) {
  return kraus_from_choi(choi_from_kraus(c), rank_tol);
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionMismatch("choi_distance: channel dimensions differ");
  }
  return linalg::max_abs(choi_from_kraus(a).matrix - choi_from_kraus(b).matrix);
}

}  // namespace cohdisc::channels
