// Copyright 2026 The qledger Authors
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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qledger/errors.hpp"

namespace qledger {

using complex = std::complex<double>;

// Hard cap on any matrix dimension handled by the dense kernels.  Keeps the
// library honest about its desk-scale design point (up to 14 qubits).
inline constexpr std::size_t kDimLimit = std::size_t{1} << 14;

// Tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-10;   // Hermiticity of inputs
inline constexpr double kUnitaryTol = 1e-9;      // unitarity of gates
inline constexpr double kNormTol = 1e-10;        // state norm / trace
inline constexpr double kPsdTol = 1e-9;          // worst allowed negative eigenvalue
inline constexpr double kEigClampTol = 1e-12;    // eigenvalues clamped to zero below this

// Dense row-major complex matrix.  Deliberately minimal: the simulator needs
// exact, reviewable kernels more than it needs a full linear-algebra API.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, complex{0.0, 0.0}) {
    if (rows == 0 || cols == 0) {
      throw ValidationError("matrix dimensions must be at least 1x1");
    }
    if (rows > kDimLimit || cols > kDimLimit) {
      throw DimensionError("matrix dimension exceeds the 2^14 budget");
    }
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw ValidationError("matrix dimensions must be at least 1x1");
    }
    if (rows > kDimLimit || cols > kDimLimit) {
      throw DimensionError("matrix dimension exceeds the 2^14 budget");
    }
    if (entries_.size() != rows * cols) {
      throw DimensionError("entry count does not match matrix shape");
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::vector<complex>& entries() { return entries_; }
  const std::vector<complex>& entries() const { return entries_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> entries_;
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix addition requires equal shapes");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    out.entries()[i] = a.entries()[i] + b.entries()[i];
  }
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix subtraction requires equal shapes");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    out.entries()[i] = a.entries()[i] - b.entries()[i];
  }
  return out;
}

inline ComplexMatrix operator*(const complex& s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i) out.entries()[i] = s * a.entries()[i];
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product shape mismatch");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const complex aik = a(i, k);
      if (aik == complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(j, i) = std::conj(m(i, j));
    }
  }
  return out;
}

inline complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace requires a square matrix");
  complex t{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Kronecker product, with the row-major bit convention: the left factor
// owns the most significant index bits.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() * b.rows() > kDimLimit || a.cols() * b.cols() > kDimLimit) {
    throw DimensionError("kron result exceeds the 2^14 dimension budget");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const complex f = a(ia, ja);
      if (f == complex{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
      }
    }
  }
  return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff requires equal shapes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

inline double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity check requires a square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol) {
  if (!u.is_square()) return false;
  const ComplexMatrix probe = dagger(u) * u;
  return max_abs_diff(probe, ComplexMatrix::identity(u.rows())) <= tol;
}

struct EigResult {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Hermitian eigendecomposition.  The input is validated against the
// Hermiticity tolerance and then explicitly symmetrised so the solver sees
// an exactly Hermitian operator; eigenvalues are returned in descending
// order with matching eigenvector columns.
inline EigResult hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eig requires a square matrix");
  if (hermiticity_defect(m) > kHermitianTol) {
    throw ValidationError("hermitian_eig input is not Hermitian within 1e-10");
  }
  const std::size_t n = m.rows();
  Eigen::MatrixXcd h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          0.5 * (m(i, j) + std::conj(m(j, i)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian eigensolver failed to converge");
  }
  EigResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  // Eigen reports ascending order; flip to descending.
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Index src = static_cast<Eigen::Index>(n - 1 - k);
    out.eigenvalues[k] = solver.eigenvalues()(src);
    for (std::size_t i = 0; i < n; ++i) {
      out.eigenvectors(i, k) = solver.eigenvectors()(static_cast<Eigen::Index>(i), src);
    }
  }
  return out;
}

// Principal square root of a positive semidefinite matrix.  Eigenvalues in
// [-kPsdTol, 0) are clamped to zero; anything lower is rejected.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  const EigResult eig = hermitian_eig(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = eig.eigenvalues[k];
    if (lam < -kPsdTol) {
      throw ValidationError("sqrt_psd input has a significantly negative eigenvalue");
    }
    lam = std::max(lam, 0.0);
    const double root = std::sqrt(lam);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vi = eig.eigenvectors(i, k);
      if (vi == complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += root * vi * std::conj(eig.eigenvectors(j, k));
      }
    }
  }
  return out;
}

// Expand a k-qubit gate to an n-qubit operator acting on the listed target
// positions (qubit 0 owns the most significant index bit).
inline ComplexMatrix embed_gate(const ComplexMatrix& u, std::size_t n_qubits,
                                std::span<const std::size_t> targets) {
  if (!u.is_square()) throw DimensionError("gate matrix must be square");
  const std::size_t k = targets.size();
  if (k == 0) throw ValidationError("embed_gate needs at least one target");
  if ((std::size_t{1} << k) != u.rows()) {
    throw DimensionError("gate dimension does not match target count");
  }
  if (n_qubits == 0 || (std::size_t{1} << n_qubits) > kDimLimit) {
    throw DimensionError("embed_gate register size outside the supported range");
  }
  std::vector<bool> seen(n_qubits, false);
  for (std::size_t t : targets) {
    if (t >= n_qubits) throw ValidationError("embed_gate target out of range");
    if (seen[t]) throw ValidationError("embed_gate targets must be distinct");
    seen[t] = true;
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  // Shift of each target bit inside a basis index.
  std::vector<std::size_t> shift(k);
  std::size_t mask = 0;
  for (std::size_t j = 0; j < k; ++j) {
    shift[j] = n_qubits - 1 - targets[j];
    mask |= std::size_t{1} << shift[j];
  }
  auto spread = [&](std::size_t g) {
    std::size_t bits = 0;
    for (std::size_t j = 0; j < k; ++j) {
      bits |= ((g >> (k - 1 - j)) & 1u) << shift[j];
    }
    return bits;
  };
  ComplexMatrix out(dim, dim);
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base & mask) != 0) continue;
    for (std::size_t gr = 0; gr < u.rows(); ++gr) {
      for (std::size_t gc = 0; gc < u.cols(); ++gc) {
        const complex v = u(gr, gc);
        if (v == complex{0.0, 0.0}) continue;
        out(base | spread(gr), base | spread(gc)) = v;
      }
    }
  }
  return out;
}

// Common fixed gates.
namespace gates {

inline ComplexMatrix pauli_x() {
  return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
}

inline ComplexMatrix pauli_y() {
  return ComplexMatrix(2, 2, {0.0, complex{0.0, -1.0}, complex{0.0, 1.0}, 0.0});
}

inline ComplexMatrix pauli_z() {
  return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
}

inline ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, 2, {s, s, s, -s});
}

// C-NOT with the first listed qubit as control and the second as target.
inline ComplexMatrix cnot() {
  ComplexMatrix m(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

}  // namespace gates

namespace detail {

// In-place action of a k-qubit gate on one tensor index of an array.  The
// logical index runs over 2^n_qubits values stored at data[offset + i*stride];
// `shift[j]` locates target j's bit inside the logical index.  When
// `conjugate` is set the entrywise conjugate of `u` is applied (used for the
// right factor of a density-matrix conjugation).
inline void apply_gate_indexed(complex* data, std::size_t n_qubits,
                               std::size_t offset, std::size_t stride,
                               const ComplexMatrix& u,
                               const std::vector<std::size_t>& shift,
                               bool conjugate) {
  const std::size_t k = shift.size();
  const std::size_t block = std::size_t{1} << k;
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::size_t mask = 0;
  for (std::size_t s : shift) mask |= std::size_t{1} << s;
  std::vector<std::size_t> pos(block);
  std::vector<complex> in(block), out(block);
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base & mask) != 0) continue;
    for (std::size_t g = 0; g < block; ++g) {
      std::size_t bits = base;
      for (std::size_t j = 0; j < k; ++j) {
        bits |= ((g >> (k - 1 - j)) & 1u) << shift[j];
      }
      pos[g] = offset + bits * stride;
      in[g] = data[pos[g]];
    }
    for (std::size_t r = 0; r < block; ++r) {
      complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < block; ++c) {
        const complex f = conjugate ? std::conj(u(r, c)) : u(r, c);
        acc += f * in[c];
      }
      out[r] = acc;
    }
    for (std::size_t g = 0; g < block; ++g) data[pos[g]] = out[g];
  }
}

}  // namespace detail

}  // namespace qledger
