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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cohdisc/errors.hpp"

namespace cohdisc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Largest matrix dimension any operation will build. Everything in this
/// library lives on a handful of qubits; anything bigger is a bug upstream.
inline constexpr std::size_t kMaxDim = 4096;

inline constexpr double kHermTol = 1e-10;

/// Ordered list of labelled tensor factors annotating a matrix or vector
/// index. Row-major convention: the first factor is the most significant.
class TensorShape {
 public:
  struct Factor {
    std::string label;
    int dim;
  };

  TensorShape() = default;
  TensorShape(std::initializer_list<Factor> factors);
  explicit TensorShape(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  int total_dim() const;
  int dim(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

 private:
  std::vector<Factor> factors_;
};

struct HermitianEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // columns, orthonormal
};

ComplexMatrix identity(int n);
ComplexMatrix ket(int dim, int index);
ComplexMatrix ketbra(int dim, int row, int col);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);

/// Reduced operator on the factors not listed in `traced`, kept factors in
/// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorShape& shape,
                            const std::vector<std::string>& traced);

/// Reorders the tensor factors of a square operator (or a column vector) to
/// `order`, which must be a permutation of the labels in `shape`.
ComplexMatrix permute(const ComplexMatrix& m, const TensorShape& shape,
                      const std::vector<std::string>& order);

TensorShape permuted_shape(const TensorShape& shape, const std::vector<std::string>& order);

/// Applies `op` (mapping the listed input factors to `out_factors`) to a
/// state vector. The result keeps the untouched factors first, in their
/// original order, followed by `out_factors`.
std::pair<ComplexVector, TensorShape> apply_to_factors(
    const ComplexVector& state, const TensorShape& shape, const std::vector<std::string>& in_labels,
    const ComplexMatrix& op, const std::vector<TensorShape::Factor>& out_factors);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermTol);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Throws NotHermitian when ||m - m^dagger||_max exceeds herm_tol. The input
/// is symmetrized before decomposition.
HermitianEig hermitian_eig(const ComplexMatrix& m, double herm_tol = kHermTol);

double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);

double operator_norm(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);

/// Unitary U maximizing Re Tr[U^dagger g] for square g.
ComplexMatrix polar_unitary(const ComplexMatrix& g);

/// Isometry P (same shape as a tall g) maximizing Re Tr[P^dagger g].
ComplexMatrix polar_isometry(const ComplexMatrix& g);

/// Unitary whose leading columns are the orthonormal columns of `v`.
ComplexMatrix complete_to_unitary(const ComplexMatrix& v);

/// Principal square root of a PSD operator (negative eigenvalues clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, const char* what);

}  // namespace linalg
}  // namespace cohdisc
