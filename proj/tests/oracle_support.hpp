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

// Test-only reference computations.  These deliberately avoid the library's
// own algorithms: the partial trace is a direct double sum over global basis
// indices, and the concurrence oracle extracts spin-flip eigenvalues through
// a characteristic polynomial and a root finder instead of a Hermitian
// eigensolver.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qledger/linalg.hpp"

namespace oracle {

using qledger::complex;
using qledger::ComplexMatrix;

// Bits of `idx` at the given positions (0 = most significant), packed in
// the order the positions are listed.
inline std::size_t gather_bits(std::size_t idx, std::size_t n_qubits,
                               const std::vector<std::size_t>& positions) {
  std::size_t out = 0;
  for (std::size_t p : positions) {
    out = (out << 1) | ((idx >> (n_qubits - 1 - p)) & 1u);
  }
  return out;
}

// Reduced density matrix of a pure state by brute force: accumulate every
// pair of global indices whose traced-out bits agree.
inline ComplexMatrix reduced_density_brute(const std::vector<complex>& amps,
                                           std::size_t n_qubits,
                                           std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> env;
  for (std::size_t p = 0; p < n_qubits; ++p) {
    if (!std::binary_search(keep.begin(), keep.end(), p)) env.push_back(p);
  }
  const std::size_t dk = std::size_t{1} << keep.size();
  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (std::size_t j = 0; j < amps.size(); ++j) {
      if (gather_bits(i, n_qubits, env) != gather_bits(j, n_qubits, env)) continue;
      out(gather_bits(i, n_qubits, keep), gather_bits(j, n_qubits, keep)) +=
          amps[i] * std::conj(amps[j]);
    }
  }
  return out;
}

// Same, for a density-matrix input.
inline ComplexMatrix reduced_density_brute(const ComplexMatrix& rho,
                                           std::size_t n_qubits,
                                           std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> env;
  for (std::size_t p = 0; p < n_qubits; ++p) {
    if (!std::binary_search(keep.begin(), keep.end(), p)) env.push_back(p);
  }
  const std::size_t dk = std::size_t{1} << keep.size();
  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < rho.rows(); ++i) {
    for (std::size_t j = 0; j < rho.cols(); ++j) {
      if (gather_bits(i, n_qubits, env) != gather_bits(j, n_qubits, env)) continue;
      out(gather_bits(i, n_qubits, keep), gather_bits(j, n_qubits, keep)) +=
          rho(i, j);
    }
  }
  return out;
}

// Coefficients (c3, c2, c1, c0) of det(xI - M) = x^4 + c3 x^3 + ... + c0 for
// a 4x4 matrix, via the Faddeev-LeVerrier recursion.
inline std::array<complex, 4> char_poly_quartic(const ComplexMatrix& m) {
  auto tr = [](const ComplexMatrix& a) {
    complex t{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
  };
  const ComplexMatrix eye = ComplexMatrix::identity(4);
  std::array<complex, 4> c{};
  ComplexMatrix mk = m;
  c[0] = -tr(mk);                                   // c3
  mk = m * (mk + c[0] * eye);
  c[1] = -tr(mk) / complex{2.0, 0.0};               // c2
  mk = m * (mk + c[1] * eye);
  c[2] = -tr(mk) / complex{3.0, 0.0};               // c1
  mk = m * (mk + c[2] * eye);
  c[3] = -tr(mk) / complex{4.0, 0.0};               // c0
  return c;
}

// All four roots of x^4 + c3 x^3 + c2 x^2 + c1 x + c0 by the Durand-Kerner
// simultaneous iteration.
inline std::array<complex, 4> quartic_roots(const std::array<complex, 4>& c) {
  auto eval = [&](complex x) {
    return (((x + c[0]) * x + c[1]) * x + c[2]) * x + c[3];
  };
  std::array<complex, 4> r;
  const complex seed{0.4, 0.9};
  r[0] = complex{1.0, 0.0};
  for (int k = 1; k < 4; ++k) r[k] = r[k - 1] * seed;
  for (int iter = 0; iter < 800; ++iter) {
    for (int i = 0; i < 4; ++i) {
      complex denom{1.0, 0.0};
      for (int j = 0; j < 4; ++j) {
        if (j != i) denom *= r[i] - r[j];
      }
      r[i] -= eval(r[i]) / denom;
    }
  }
  return r;
}

// Concurrence through the raw (non-Hermitian) spin-flip product: the
// eigenvalue magnitudes of rho * (Y(x)Y) conj(rho) (Y(x)Y) are extracted
// from the characteristic polynomial.
inline double concurrence_oracle(const ComplexMatrix& rho) {
  const ComplexMatrix yy =
      qledger::kron(qledger::gates::pauli_y(), qledger::gates::pauli_y());
  ComplexMatrix conj_rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      conj_rho(i, j) = std::conj(rho(i, j));
    }
  }
  const ComplexMatrix r = rho * (yy * conj_rho * yy);
  const std::array<complex, 4> roots = quartic_roots(char_poly_quartic(r));
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::abs(roots[i]));
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

// Binary entropy and the concurrence -> formation curve, written directly.
inline double formation_from_concurrence(double c) {
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  double h = 0.0;
  if (x > 0.0 && x < 1.0) {
    h = -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
  }
  return h;
}

}  // namespace oracle
