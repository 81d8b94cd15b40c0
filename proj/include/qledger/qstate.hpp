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
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qledger/errors.hpp"
#include "qledger/linalg.hpp"

namespace qledger {

// ---------------------------------------------------------------------------
// Parties, roles, and qubit layouts
// ---------------------------------------------------------------------------

enum class Party { Alice, Bob };

inline Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

inline const char* to_string(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

inline Party party_from_string(const std::string& s) {
  if (s == "Alice") return Party::Alice;
  if (s == "Bob") return Party::Bob;
  throw ValidationError("unknown party name: " + s);
}

// Role of a qubit within its party's laboratory:
//   System      -- carries the signal state proper
//   Measure     -- pointer degree of freedom of a measuring device
//   Environment -- reservoir qubit that decoheres a pointer
enum class Role { System, Measure, Environment };

inline const char* to_string(Role r) {
  switch (r) {
    case Role::System: return "S";
    case Role::Measure: return "M";
    default: return "R";
  }
}

inline Role role_from_string(const std::string& s) {
  if (s == "S") return Role::System;
  if (s == "M") return Role::Measure;
  if (s == "R") return Role::Environment;
  throw ValidationError("unknown role name: " + s);
}

struct QubitSpec {
  std::string label;
  Party party = Party::Alice;
  Role role = Role::System;

  friend bool operator==(const QubitSpec&, const QubitSpec&) = default;
};

// Ordered list of labelled qubits.  Position 0 owns the most significant bit
// of every basis index, so the amplitude vector reads in layout order.
class PartyLayout {
 public:
  PartyLayout() = default;

  explicit PartyLayout(std::vector<QubitSpec> qubits) : qubits_(std::move(qubits)) {
    if (qubits_.size() >= 64 || (std::size_t{1} << qubits_.size()) > kDimLimit) {
      throw DimensionError("layout exceeds the supported qubit budget");
    }
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
      if (qubits_[i].label.empty()) {
        throw ValidationError("qubit labels must be non-empty");
      }
      auto [it, fresh] = index_.emplace(qubits_[i].label, i);
      if (!fresh) {
        throw ValidationError("duplicate qubit label: " + qubits_[i].label);
      }
    }
  }

  std::size_t size() const { return qubits_.size(); }
  std::size_t dim() const { return std::size_t{1} << qubits_.size(); }
  const std::vector<QubitSpec>& qubits() const { return qubits_; }

  bool has_label(const std::string& label) const { return index_.count(label) != 0; }

  std::size_t position(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw ValidationError("unknown qubit label: " + label);
    return it->second;
  }

  std::vector<std::size_t> positions(std::span<const std::string> labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    std::vector<bool> used(qubits_.size(), false);
    for (const auto& l : labels) {
      const std::size_t p = position(l);
      if (used[p]) throw ValidationError("repeated qubit label: " + l);
      used[p] = true;
      out.push_back(p);
    }
    return out;
  }

  std::vector<std::string> party_labels(Party p) const {
    std::vector<std::string> out;
    for (const auto& q : qubits_) {
      if (q.party == p) out.push_back(q.label);
    }
    return out;
  }

  std::size_t party_count(Party p) const {
    std::size_t n = 0;
    for (const auto& q : qubits_) n += (q.party == p) ? 1 : 0;
    return n;
  }

  std::size_t role_count(Party p, Role r) const {
    std::size_t n = 0;
    for (const auto& q : qubits_) n += (q.party == p && q.role == r) ? 1 : 0;
    return n;
  }

  friend bool operator==(const PartyLayout& a, const PartyLayout& b) {
    return a.qubits_ == b.qubits_;
  }

 private:
  std::vector<QubitSpec> qubits_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Labelled quantum states
// ---------------------------------------------------------------------------

// A quantum state bound to a layout, stored either as an amplitude vector
// (pure form) or a density matrix.  Construction performs the cheap sanity
// checks (norm, trace, Hermiticity); positivity is enforced wherever a
// spectral decomposition is taken anyway.
class LabeledState {
 public:
  enum class Form { Pure, Density };

  static LabeledState pure(PartyLayout layout, std::vector<complex> amplitudes) {
    if (amplitudes.size() != layout.dim()) {
      throw DimensionError("amplitude count does not match layout dimension");
    }
    double norm2 = 0.0;
    for (const complex& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kNormTol) {
      throw ValidationError("pure state is not normalised within 1e-10");
    }
    LabeledState s;
    s.form_ = Form::Pure;
    s.layout_ = std::move(layout);
    s.amplitudes_ = std::move(amplitudes);
    return s;
  }

  static LabeledState density(PartyLayout layout, ComplexMatrix rho) {
    if (rho.rows() != layout.dim() || rho.cols() != layout.dim()) {
      throw DimensionError("density matrix does not match layout dimension");
    }
    if (hermiticity_defect(rho) > kHermitianTol) {
      throw ValidationError("density matrix is not Hermitian within 1e-10");
    }
    if (std::abs(trace(rho) - complex{1.0, 0.0}) > kNormTol) {
      throw ValidationError("density matrix trace differs from 1 beyond 1e-10");
    }
    LabeledState s;
    s.form_ = Form::Density;
    s.layout_ = std::move(layout);
    s.rho_ = std::move(rho);
    return s;
  }

  Form form() const { return form_; }
  bool is_pure_form() const { return form_ == Form::Pure; }
  const PartyLayout& layout() const { return layout_; }
  std::size_t num_qubits() const { return layout_.size(); }
  std::size_t dim() const { return layout_.dim(); }

  const std::vector<complex>& amplitudes() const {
    if (form_ != Form::Pure) throw ValidationError("state is not in pure form");
    return amplitudes_;
  }

  const ComplexMatrix& density_matrix() const {
    if (form_ != Form::Density) throw ValidationError("state is not in density form");
    return rho_;
  }

  ComplexMatrix to_density() const {
    if (form_ == Form::Density) return rho_;
    const std::size_t d = dim();
    ComplexMatrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (amplitudes_[i] == complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < d; ++j) {
        rho(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
      }
    }
    return rho;
  }

  // Tr(rho^2); equals 1 for pure states.
  double purity() const {
    if (form_ == Form::Pure) return 1.0;
    double p = 0.0;
    for (std::size_t i = 0; i < rho_.rows(); ++i) {
      for (std::size_t j = 0; j < rho_.cols(); ++j) {
        p += std::norm(rho_(i, j));
      }
    }
    return p;
  }

  // Full validation including positivity; used by tests and serializers.
  void validate() const {
    if (form_ == Form::Pure) {
      double norm2 = 0.0;
      for (const complex& a : amplitudes_) norm2 += std::norm(a);
      if (std::abs(norm2 - 1.0) > kNormTol) {
        throw ValidationError("pure state is not normalised within 1e-10");
      }
      return;
    }
    const EigResult eig = hermitian_eig(rho_);
    if (!eig.eigenvalues.empty() && eig.eigenvalues.back() < -kPsdTol) {
      throw ValidationError("density matrix has an eigenvalue below -1e-9");
    }
  }

 private:
  LabeledState() = default;

  Form form_ = Form::Pure;
  PartyLayout layout_;
  std::vector<complex> amplitudes_;
  ComplexMatrix rho_;
};

// ---------------------------------------------------------------------------
// State construction helpers
// ---------------------------------------------------------------------------

// |bits> on an n-qubit register, bits given as an integer basis index.
inline std::vector<complex> basis_amplitudes(std::size_t n_qubits, std::size_t index) {
  const std::size_t d = std::size_t{1} << n_qubits;
  if (index >= d) throw ValidationError("basis index out of range");
  std::vector<complex> amps(d, complex{0.0, 0.0});
  amps[index] = 1.0;
  return amps;
}

// (|01> - |10>)/sqrt(2)
inline std::vector<complex> singlet_amplitudes() {
  const double s = 1.0 / std::sqrt(2.0);
  return {complex{0.0, 0.0}, complex{s, 0.0}, complex{-s, 0.0}, complex{0.0, 0.0}};
}

// (|00> + |11>)/sqrt(2)
inline std::vector<complex> phi_plus_amplitudes() {
  const double s = 1.0 / std::sqrt(2.0);
  return {complex{s, 0.0}, complex{0.0, 0.0}, complex{0.0, 0.0}, complex{s, 0.0}};
}

// Two-qubit mixture F |psi-><psi-| + (1-F)/3 (I - |psi-><psi-|).
inline ComplexMatrix werner_density(double fidelity) {
  if (fidelity < 0.0 || fidelity > 1.0) {
    throw ValidationError("werner fidelity must lie in [0, 1]");
  }
  const std::vector<complex> psi = singlet_amplitudes();
  ComplexMatrix rho(4, 4);
  const double rest = (1.0 - fidelity) / 3.0;
  for (std::size_t i = 0; i < 4; ++i) rho(i, i) = rest;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      rho(i, j) += (fidelity - rest) * psi[i] * std::conj(psi[j]);
    }
  }
  return rho;
}

// Tensor product of two labelled states; label sets must be disjoint.
inline LabeledState tensor(const LabeledState& a, const LabeledState& b) {
  std::vector<QubitSpec> qubits = a.layout().qubits();
  for (const auto& q : b.layout().qubits()) {
    if (a.layout().has_label(q.label)) {
      throw ValidationError("tensor operands share the label: " + q.label);
    }
    qubits.push_back(q);
  }
  PartyLayout layout(std::move(qubits));
  if (a.is_pure_form() && b.is_pure_form()) {
    std::vector<complex> amps;
    amps.reserve(a.dim() * b.dim());
    for (const complex& x : a.amplitudes()) {
      for (const complex& y : b.amplitudes()) {
        amps.push_back(x * y);
      }
    }
    return LabeledState::pure(std::move(layout), std::move(amps));
  }
  return LabeledState::density(std::move(layout), kron(a.to_density(), b.to_density()));
}

// Append fresh qubits in |0> at the end of the layout.
inline LabeledState extend_with_ancillas(const LabeledState& s,
                                         const std::vector<QubitSpec>& fresh) {
  if (fresh.empty()) return s;
  std::vector<QubitSpec> qubits = s.layout().qubits();
  for (const auto& q : fresh) {
    if (s.layout().has_label(q.label)) {
      throw ValidationError("ancilla label already present: " + q.label);
    }
    qubits.push_back(q);
  }
  PartyLayout layout(std::move(qubits));
  const std::size_t extra = std::size_t{1} << fresh.size();
  if (s.is_pure_form()) {
    std::vector<complex> amps(s.dim() * extra, complex{0.0, 0.0});
    for (std::size_t i = 0; i < s.dim(); ++i) amps[i * extra] = s.amplitudes()[i];
    return LabeledState::pure(std::move(layout), std::move(amps));
  }
  ComplexMatrix zero(extra, extra);
  zero(0, 0) = 1.0;
  return LabeledState::density(std::move(layout), kron(s.density_matrix(), zero));
}

// Reassign ownership of the listed qubits.  Amplitudes are untouched:
// transmission changes who holds a qubit, not the global state.
inline LabeledState relabel_party(const LabeledState& s,
                                  std::span<const std::string> labels, Party to) {
  std::vector<QubitSpec> qubits = s.layout().qubits();
  for (const auto& l : labels) {
    qubits[s.layout().position(l)].party = to;
  }
  PartyLayout layout(std::move(qubits));
  if (s.is_pure_form()) {
    return LabeledState::pure(std::move(layout), s.amplitudes());
  }
  return LabeledState::density(std::move(layout), s.density_matrix());
}

// ---------------------------------------------------------------------------
// Unitary evolution
// ---------------------------------------------------------------------------

// Apply a k-qubit unitary to the named qubits; gate row/column bits follow
// the order of `target_labels`.  Works in either representation.
inline LabeledState apply_unitary(const LabeledState& s, const ComplexMatrix& u,
                                  std::span<const std::string> target_labels) {
  if (!u.is_square()) throw DimensionError("gate matrix must be square");
  const std::size_t k = target_labels.size();
  if (k == 0) throw ValidationError("apply_unitary needs at least one target");
  if ((std::size_t{1} << k) != u.rows()) {
    throw DimensionError("gate dimension does not match target count");
  }
  if (!is_unitary(u)) {
    throw ValidationError("gate matrix is not unitary within 1e-9");
  }
  const std::vector<std::size_t> pos = s.layout().positions(target_labels);
  const std::size_t n = s.num_qubits();
  std::vector<std::size_t> shift(k);
  for (std::size_t j = 0; j < k; ++j) shift[j] = n - 1 - pos[j];

  if (s.is_pure_form()) {
    std::vector<complex> amps = s.amplitudes();
    detail::apply_gate_indexed(amps.data(), n, 0, 1, u, shift, false);
    return LabeledState::pure(s.layout(), std::move(amps));
  }
  ComplexMatrix rho = s.density_matrix();
  const std::size_t d = s.dim();
  // rho -> U rho U^dagger: transform the row index with U, then the column
  // index with conj(U).
  for (std::size_t c = 0; c < d; ++c) {
    detail::apply_gate_indexed(rho.entries().data(), n, c, d, u, shift, false);
  }
  for (std::size_t r = 0; r < d; ++r) {
    detail::apply_gate_indexed(rho.entries().data(), n, r * d, 1, u, shift, true);
  }
  return LabeledState::density(s.layout(), std::move(rho));
}

// ---------------------------------------------------------------------------
// Partial trace, entropies, purification, fidelity
// ---------------------------------------------------------------------------

// Trace out everything except `keep`.  The kept qubits appear in their
// original relative order regardless of how `keep` is listed.
inline LabeledState partial_trace(const LabeledState& s,
                                  std::span<const std::string> keep) {
  if (keep.empty()) throw ValidationError("partial_trace must keep at least one qubit");
  std::vector<std::size_t> keep_pos = s.layout().positions(keep);
  std::sort(keep_pos.begin(), keep_pos.end());
  const std::size_t n = s.num_qubits();
  const std::size_t nk = keep_pos.size();
  std::vector<std::size_t> env_pos;
  {
    std::vector<bool> kept(n, false);
    for (std::size_t p : keep_pos) kept[p] = true;
    for (std::size_t p = 0; p < n; ++p) {
      if (!kept[p]) env_pos.push_back(p);
    }
  }
  const std::size_t ne = env_pos.size();
  auto compose = [&](std::size_t kbits, std::size_t ebits) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < nk; ++j) {
      idx |= ((kbits >> (nk - 1 - j)) & 1u) << (n - 1 - keep_pos[j]);
    }
    for (std::size_t j = 0; j < ne; ++j) {
      idx |= ((ebits >> (ne - 1 - j)) & 1u) << (n - 1 - env_pos[j]);
    }
    return idx;
  };

  const std::size_t dk = std::size_t{1} << nk;
  const std::size_t de = std::size_t{1} << ne;
  ComplexMatrix out(dk, dk);
  if (s.is_pure_form()) {
    const std::vector<complex>& amps = s.amplitudes();
    for (std::size_t e = 0; e < de; ++e) {
      for (std::size_t i = 0; i < dk; ++i) {
        const complex ai = amps[compose(i, e)];
        if (ai == complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < dk; ++j) {
          out(i, j) += ai * std::conj(amps[compose(j, e)]);
        }
      }
    }
  } else {
    const ComplexMatrix& rho = s.density_matrix();
    for (std::size_t e = 0; e < de; ++e) {
      for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = 0; j < dk; ++j) {
          out(i, j) += rho(compose(i, e), compose(j, e));
        }
      }
    }
  }
  std::vector<QubitSpec> qubits;
  qubits.reserve(nk);
  for (std::size_t p : keep_pos) qubits.push_back(s.layout().qubits()[p]);
  return LabeledState::density(PartyLayout(std::move(qubits)), std::move(out));
}

// Base-2 von Neumann entropy of a density matrix.  Eigenvalues inside
// [-1e-9, 0) are clamped to zero; lower values are rejected.
inline double entropy_of_density(const ComplexMatrix& rho) {
  const EigResult eig = hermitian_eig(rho);
  double s = 0.0;
  for (double lam : eig.eigenvalues) {
    if (lam < -kPsdTol) {
      throw ValidationError("density matrix has an eigenvalue below -1e-9");
    }
    if (lam <= kEigClampTol) continue;
    s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

inline double von_neumann_entropy(const LabeledState& s) {
  if (s.is_pure_form()) return 0.0;
  return entropy_of_density(s.density_matrix());
}

// Smallest pure dilation of a density state: ancilla register sized to the
// eigenvalue rank, appended at the end of the layout with Environment role.
inline LabeledState purify(const LabeledState& s, Party ancilla_party = Party::Alice,
                           const std::string& label_prefix = "purif") {
  if (s.is_pure_form()) {
    throw ValidationError("purify expects a density-form state");
  }
  const EigResult eig = hermitian_eig(s.density_matrix());
  std::size_t rank = 0;
  for (double lam : eig.eigenvalues) {
    if (lam < -kPsdTol) {
      throw ValidationError("density matrix has an eigenvalue below -1e-9");
    }
    if (lam > kEigClampTol) ++rank;
  }
  if (rank == 0) throw NumericError("cannot purify a zero-rank operator");
  std::size_t anc = 0;
  while ((std::size_t{1} << anc) < rank) ++anc;
  anc = std::max<std::size_t>(anc, 1);

  std::vector<QubitSpec> qubits = s.layout().qubits();
  for (std::size_t j = 0; j < anc; ++j) {
    std::string label = label_prefix + std::to_string(j);
    while (std::any_of(qubits.begin(), qubits.end(),
                       [&](const QubitSpec& q) { return q.label == label; })) {
      label += "_";
    }
    qubits.push_back({label, ancilla_party, Role::Environment});
  }
  const std::size_t d = s.dim();
  const std::size_t da = std::size_t{1} << anc;
  std::vector<complex> amps(d * da, complex{0.0, 0.0});
  for (std::size_t kcol = 0; kcol < rank; ++kcol) {
    const double root = std::sqrt(std::max(eig.eigenvalues[kcol], 0.0));
    for (std::size_t i = 0; i < d; ++i) {
      amps[i * da + kcol] += root * eig.eigenvectors(i, kcol);
    }
  }
  // Renormalise away the rounding of clamped eigenvalues.
  double norm2 = 0.0;
  for (const complex& a : amps) norm2 += std::norm(a);
  const double inv = 1.0 / std::sqrt(norm2);
  for (complex& a : amps) a *= inv;
  return LabeledState::pure(PartyLayout(std::move(qubits)), std::move(amps));
}

// Fidelity between two states of equal dimension.  Pure/pure reduces to the
// squared overlap, pure/mixed to an expectation value, and mixed/mixed to the
// squared Uhlmann fidelity.
inline double fidelity(const LabeledState& a, const LabeledState& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity requires equal dimensions");
  if (a.is_pure_form() && b.is_pure_form()) {
    complex ov{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      ov += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return std::min(std::norm(ov), 1.0);
  }
  if (a.is_pure_form() || b.is_pure_form()) {
    const LabeledState& p = a.is_pure_form() ? a : b;
    const LabeledState& m = a.is_pure_form() ? b : a;
    const ComplexMatrix& rho = m.density_matrix();
    complex val{0.0, 0.0};
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (p.amplitudes()[i] == complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < p.dim(); ++j) {
        val += std::conj(p.amplitudes()[i]) * rho(i, j) * p.amplitudes()[j];
      }
    }
    return std::clamp(val.real(), 0.0, 1.0);
  }
  const ComplexMatrix sq = sqrt_psd(a.density_matrix());
  const ComplexMatrix inner = sq * b.density_matrix() * sq;
  const EigResult eig = hermitian_eig(inner);
  double root_sum = 0.0;
  for (double lam : eig.eigenvalues) root_sum += std::sqrt(std::max(lam, 0.0));
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Seeded random states and unitaries
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<complex> gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complex> v(n);
  for (auto& x : v) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x = complex{re, im};
  }
  return v;
}

}  // namespace detail

// Haar-random pure state via a normalised complex Gaussian vector.
inline std::vector<complex> random_state_amplitudes(std::size_t n_qubits,
                                                    std::mt19937_64& rng) {
  const std::size_t d = std::size_t{1} << n_qubits;
  std::vector<complex> v = detail::gaussian_vector(d, rng);
  double norm2 = 0.0;
  for (const complex& a : v) norm2 += std::norm(a);
  const double inv = 1.0 / std::sqrt(norm2);
  for (complex& a : v) a *= inv;
  return v;
}

inline std::vector<complex> random_state_amplitudes(std::size_t n_qubits,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_state_amplitudes(n_qubits, rng);
}

// Haar-random unitary: QR of a complex Ginibre matrix via two-pass modified
// Gram-Schmidt.  Forcing positive diagonal R makes Q exactly Haar.
inline ComplexMatrix random_unitary(std::size_t n_qubits, std::mt19937_64& rng) {
  const std::size_t d = std::size_t{1} << n_qubits;
  ComplexMatrix g(d, d);
  {
    std::vector<complex> raw = detail::gaussian_vector(d * d, rng);
    g.entries() = std::move(raw);
  }
  ComplexMatrix q(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<complex> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        complex proj{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, p)) * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= proj * q(i, p);
      }
    }
    double norm2 = 0.0;
    for (const complex& x : v) norm2 += std::norm(x);
    if (norm2 <= 0.0) throw NumericError("degenerate Ginibre sample");
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < d; ++i) q(i, j) = v[i] * inv;
  }
  return q;
}

inline ComplexMatrix random_unitary(std::size_t n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(n_qubits, rng);
}

}  // namespace qledger
