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

#include "cohdisc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace cohdisc::linalg {

TensorShape::TensorShape(std::initializer_list<Factor> factors)
    : TensorShape(std::vector<Factor>(factors)) {}

TensorShape::TensorShape(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim <= 0) {
      throw DimensionMismatch("tensor factor '" + f.label + "' has non-positive dimension");
    }
    if (!seen.insert(f.label).second) {
      throw InvalidInput("duplicate tensor factor label '" + f.label + "'");
    }
  }
}

int TensorShape::total_dim() const {
  int total = 1;
  for (const auto& f : factors_) total *= f.dim;
  return total;
}

std::size_t TensorShape::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw InvalidInput("unknown tensor factor label '" + label + "'");
}

int TensorShape::dim(const std::string& label) const { return factors_[index_of(label)].dim; }

bool TensorShape::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix ket(int dim, int index) {
  ComplexMatrix v = ComplexMatrix::Zero(dim, 1);
  v(index, 0) = 1.0;
  return v;
}

ComplexMatrix ketbra(int dim, int row, int col) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > kMaxDim || cols > kMaxDim) {
    std::ostringstream os;
    os << "kron result " << rows << "x" << cols << " exceeds the maximum dimension " << kMaxDim;
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

namespace {

// Mixed-radix digits of `index` for the given dims (most significant first).
void digits_of(int index, const std::vector<int>& dims, std::vector<int>& out) {
  out.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
}

int index_of_digits(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

std::vector<int> dims_of(const TensorShape& shape) {
  std::vector<int> dims;
  for (const auto& f : shape.factors()) dims.push_back(f.dim);
  return dims;
}

// perm[new_index] = old_index for reordering factors to `order`.
std::vector<int> permutation_indices(const TensorShape& shape, const std::vector<std::string>& order) {
  if (order.size() != shape.size()) {
    throw InvalidInput("permutation must list every tensor factor exactly once");
  }
  std::vector<std::size_t> src;
  std::set<std::string> seen;
  for (const auto& label : order) {
    if (!seen.insert(label).second) throw InvalidInput("permutation repeats label '" + label + "'");
    src.push_back(shape.index_of(label));
  }
  const auto old_dims = dims_of(shape);
  std::vector<int> new_dims;
  for (auto s : src) new_dims.push_back(old_dims[s]);

  const int total = shape.total_dim();
  std::vector<int> perm(total);
  std::vector<int> new_digits, old_digits(old_dims.size());
  for (int n = 0; n < total; ++n) {
    digits_of(n, new_dims, new_digits);
    for (std::size_t k = 0; k < src.size(); ++k) old_digits[src[k]] = new_digits[k];
    perm[n] = index_of_digits(old_digits, old_dims);
  }
  return perm;
}

}  // namespace

TensorShape permuted_shape(const TensorShape& shape, const std::vector<std::string>& order) {
  std::vector<TensorShape::Factor> factors;
  for (const auto& label : order) factors.push_back({label, shape.dim(label)});
  return TensorShape(std::move(factors));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorShape& shape,
                            const std::vector<std::string>& traced) {
  if (m.rows() != m.cols()) throw DimensionMismatch("partial_trace needs a square operator");
  if (m.rows() != shape.total_dim()) {
    throw DimensionMismatch("partial_trace: operator dimension does not match tensor shape");
  }
  std::vector<bool> is_traced(shape.size(), false);
  for (const auto& label : traced) is_traced[shape.index_of(label)] = true;

  const auto dims = dims_of(shape);
  std::vector<int> kept_dims, traced_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) (is_traced[k] ? traced_dims : kept_dims).push_back(dims[k]);

  const int total = shape.total_dim();
  const int kept_total = std::accumulate(kept_dims.begin(), kept_dims.end(), 1, std::multiplies<>());
  std::vector<int> kept_index(total), traced_index(total);
  std::vector<int> digits, kd, td;
  for (int n = 0; n < total; ++n) {
    digits_of(n, dims, digits);
    kd.clear();
    td.clear();
    for (std::size_t k = 0; k < dims.size(); ++k) (is_traced[k] ? td : kd).push_back(digits[k]);
    kept_index[n] = index_of_digits(kd, kept_dims);
    traced_index[n] = index_of_digits(td, traced_dims);
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_total, kept_total);
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return out;
}

ComplexMatrix permute(const ComplexMatrix& m, const TensorShape& shape,
                      const std::vector<std::string>& order) {
  const auto perm = permutation_indices(shape, order);
  const int n = shape.total_dim();
  if (m.rows() != n) throw DimensionMismatch("permute: operator dimension does not match tensor shape");
  if (m.cols() == 1) {
    ComplexMatrix out(n, 1);
    for (int a = 0; a < n; ++a) out(a, 0) = m(perm[a], 0);
    return out;
  }
  if (m.cols() != n) throw DimensionMismatch("permute needs a square operator or a column vector");
  ComplexMatrix out(n, n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) out(a, b) = m(perm[a], perm[b]);
  }
  return out;
}

std::pair<ComplexVector, TensorShape> apply_to_factors(
    const ComplexVector& state, const TensorShape& shape, const std::vector<std::string>& in_labels,
    const ComplexMatrix& op, const std::vector<TensorShape::Factor>& out_factors) {
  if (state.size() != shape.total_dim()) {
    throw DimensionMismatch("apply_to_factors: state dimension does not match tensor shape");
  }
  std::vector<std::string> order;
  std::vector<TensorShape::Factor> result_factors;
  for (const auto& f : shape.factors()) {
    if (std::find(in_labels.begin(), in_labels.end(), f.label) == in_labels.end()) {
      order.push_back(f.label);
      result_factors.push_back(f);
    }
  }
  int in_dim = 1;
  for (const auto& label : in_labels) {
    order.push_back(label);
    in_dim *= shape.dim(label);
  }
  int out_dim = 1;
  for (const auto& f : out_factors) {
    out_dim *= f.dim;
    result_factors.push_back(f);
  }
  if (op.cols() != in_dim || op.rows() != out_dim) {
    throw DimensionMismatch("apply_to_factors: operator shape does not match the listed factors");
  }
  const ComplexMatrix arranged = permute(state, shape, order);
  const Eigen::Index kept_dim = arranged.rows() / in_dim;

  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> as_matrix(arranged.data(), kept_dim, in_dim);
  RowMajor result = as_matrix * op.transpose();
  ComplexVector flat = Eigen::Map<const ComplexVector>(result.data(), kept_dim * out_dim);
  return {std::move(flat), TensorShape(std::move(result_factors))};
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidInput(std::string(what) + " contains NaN or Inf entries");
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianEig hermitian_eig(const ComplexMatrix& m, double herm_tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_eig needs a square matrix");
  if (!is_hermitian(m, herm_tol)) {
    std::ostringstream os;
    os << "hermitian_eig: input deviates from Hermitian by " << max_abs(m - m.adjoint());
    throw NotHermitian(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(hermitian_part(m), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

double max_eigenvalue(const ComplexMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(hermitian_part(m), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .maxCoeff();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix polar_isometry(const ComplexMatrix& g) {
  if (g.rows() < g.cols()) throw DimensionMismatch("polar_isometry needs rows >= cols");
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix polar_unitary(const ComplexMatrix& g) {
  if (g.rows() != g.cols()) throw DimensionMismatch("polar_unitary needs a square matrix");
  return polar_isometry(g);
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& v) {
  const Eigen::Index n = v.rows();
  const Eigen::Index k = v.cols();
  if (k > n) throw DimensionMismatch("complete_to_unitary: more columns than rows");
  if (max_abs(v.adjoint() * v - identity(static_cast<int>(k))) > 1e-9) {
    throw NotIsometry("complete_to_unitary: columns are not orthonormal");
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(v);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix out(n, n);
  out.leftCols(k) = v;
  out.rightCols(n - k) = q.rightCols(n - k);
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  const RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace cohdisc::linalg
