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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qledger/errors.hpp"
#include "qledger/linalg.hpp"
#include "qledger/qstate.hpp"

namespace qledger {

// h(p) = -p log2 p - (1-p) log2 (1-p), clamped at the endpoints.
inline double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw ValidationError("binary entropy argument outside [0, 1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// Entropy of entanglement of a globally pure state across the Alice/Bob cut:
// the entropy of either reduced side.
inline double entropy_of_entanglement(const LabeledState& s) {
  if (!s.is_pure_form() && s.purity() < 1.0 - kPsdTol) {
    throw UnsupportedError("entropy of entanglement needs a pure state");
  }
  const std::vector<std::string> alice = s.layout().party_labels(Party::Alice);
  const std::vector<std::string> bob = s.layout().party_labels(Party::Bob);
  if (alice.empty() || bob.empty()) return 0.0;
  const std::vector<std::string>& side =
      alice.size() <= bob.size() ? alice : bob;
  return entropy_of_density(partial_trace(s, side).density_matrix());
}

namespace detail {

inline void require_two_qubit_density(const ComplexMatrix& rho,
                                      const char* what) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError(std::string(what) + " requires a 4x4 density matrix");
  }
  if (hermiticity_defect(rho) > kHermitianTol) {
    throw ValidationError(std::string(what) + " input is not Hermitian");
  }
  if (std::abs(trace(rho) - complex{1.0, 0.0}) > 1e-9) {
    throw ValidationError(std::string(what) + " input trace differs from 1");
  }
}

// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)
inline ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  const ComplexMatrix yy = kron(gates::pauli_y(), gates::pauli_y());
  ComplexMatrix conj_rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      conj_rho(i, j) = std::conj(rho(i, j));
    }
  }
  return yy * conj_rho * yy;
}

}  // namespace detail

// Two-qubit concurrence.  Evaluated through the Hermitian form: the
// eigenvalues of sqrt(rho) rho~ sqrt(rho) are the squared singular values of
// the spin-flip overlap, which keeps the computation inside well-conditioned
// Hermitian solvers.
inline double concurrence(const ComplexMatrix& rho) {
  detail::require_two_qubit_density(rho, "concurrence");
  const ComplexMatrix flipped = detail::spin_flip(rho);
  const ComplexMatrix sq = sqrt_psd(rho);
  const EigResult eig = hermitian_eig(sq * flipped * sq);
  double lams[4];
  for (std::size_t i = 0; i < 4; ++i) {
    lams[i] = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
  }
  // hermitian_eig reports descending order already.
  return std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
}

// Entanglement of formation of a two-qubit state, exact via concurrence:
// E_F = h( (1 + sqrt(1 - C^2)) / 2 ).
inline double entanglement_of_formation(const ComplexMatrix& rho) {
  const double c = concurrence(rho);
  const double x = std::sqrt(std::max(0.0, 1.0 - c * c));
  return binary_entropy(0.5 * (1.0 + x));
}

// Partial transpose over the listed qubit positions of an n-qubit density
// matrix (qubit 0 owns the most significant index bit).
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                       std::size_t n_qubits,
                                       std::span<const std::size_t> transposed) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("partial transpose dimension mismatch");
  }
  std::size_t mask = 0;
  for (std::size_t q : transposed) {
    if (q >= n_qubits) throw ValidationError("partial transpose qubit out of range");
    mask |= std::size_t{1} << (n_qubits - 1 - q);
  }
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      // Swap the masked bits between row and column indices.
      const std::size_t ii = (i & ~mask) | (j & mask);
      const std::size_t jj = (j & ~mask) | (i & mask);
      out(ii, jj) = rho(i, j);
    }
  }
  return out;
}

// Negativity across the Alice/Bob cut: sum of |negative eigenvalues| of the
// partial transpose over one side.
inline double negativity(const LabeledState& s) {
  const ComplexMatrix rho = s.to_density();
  std::vector<std::size_t> alice_pos;
  for (std::size_t p = 0; p < s.num_qubits(); ++p) {
    if (s.layout().qubits()[p].party == Party::Alice) alice_pos.push_back(p);
  }
  const ComplexMatrix pt = partial_transpose(rho, s.num_qubits(), alice_pos);
  const EigResult eig = hermitian_eig(pt);
  double neg = 0.0;
  for (double lam : eig.eigenvalues) {
    if (lam < 0.0) neg -= lam;
  }
  return neg;
}

// Positive partial transpose test.  PPT states contain no distillable
// entanglement under the recurrence protocols used here.
inline bool is_ppt(const LabeledState& s, double tol = kPsdTol) {
  const ComplexMatrix rho = s.to_density();
  std::vector<std::size_t> alice_pos;
  for (std::size_t p = 0; p < s.num_qubits(); ++p) {
    if (s.layout().qubits()[p].party == Party::Alice) alice_pos.push_back(p);
  }
  const ComplexMatrix pt = partial_transpose(rho, s.num_qubits(), alice_pos);
  const EigResult eig = hermitian_eig(pt);
  return eig.eigenvalues.empty() || eig.eigenvalues.back() >= -tol;
}

// One-way hashing yield for a two-qubit state: max(0, 1 - S(rho)).  The rate
// is a valid distillation lower bound for Bell-diagonal states, so callers
// should project to the Bell-diagonal frame first.
inline double hashing_lower_bound(const ComplexMatrix& rho) {
  detail::require_two_qubit_density(rho, "hashing bound");
  return std::max(0.0, 1.0 - entropy_of_density(rho));
}

// Coarse classification used in the free/bound energy reports.
enum class EntanglementClass {
  Pure,                 // globally pure input
  FreeMixed,            // mixed with a negative partial transpose
  PptSeparableOrBound,  // PPT in dimensions where bound entanglement exists
  Separable             // PPT two-qubit state (PPT is conclusive at 2x2)
};

inline const char* to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Pure: return "pure";
    case EntanglementClass::FreeMixed: return "free_mixed";
    case EntanglementClass::PptSeparableOrBound: return "ppt_separable_or_bound";
    default: return "separable";
  }
}

// Free/bound split of the entanglement held in a state, in analogy with the
// Gibbs-Helmholtz decomposition of thermodynamic energy:
//   E_F = E_bound + E_D.
// E_D is not computable exactly for mixed states, so the record carries
// brackets: a constructive lower estimate from recurrence+hashing and an
// upper bound from the logarithmic negativity.
struct GibbsHelmholtzRecord {
  double e_f = 0.0;             // total (formation) entanglement per copy
  double e_d_lower = 0.0;       // achieved distillation rate
  double e_d_upper = 0.0;       // negativity-based ceiling, capped by e_f
  double e_bound_lower = 0.0;   // e_f - e_d_upper, clamped at 0
  double e_bound_upper = 0.0;   // e_f - e_d_lower, clamped at 0
  EntanglementClass classification = EntanglementClass::Pure;
};

}  // namespace qledger
