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
#include <string>
#include <vector>

#include "qledger/errors.hpp"
#include "qledger/measures.hpp"
#include "qledger/protocols.hpp"
#include "qledger/qstate.hpp"

namespace qledger {

// Parameters of the constructive distillation estimator.
struct DistillationStrategy {
  int max_rounds = 8;        // recurrence depth to search
  double w_p_per_pair = 1.0; // transmission cost booked per distributed pair
  bool twirl = true;         // twirl before each recurrence round
};

// Result of the estimator: an achieved rate (ebits per input pair), the
// recurrence depth that achieved it, and the surviving pair fraction at
// that depth.
struct DistillableEstimate {
  double rate = 0.0;
  int rounds = 0;
  double yield = 1.0;
};

namespace detail {

// Overlaps of rho with the four Bell states (phi+, phi-, psi+, psi-).
inline std::array<double, 4> bell_overlaps(const ComplexMatrix& rho) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::array<std::array<complex, 4>, 4> bell = {{
      {complex{s, 0}, complex{0, 0}, complex{0, 0}, complex{s, 0}},
      {complex{s, 0}, complex{0, 0}, complex{0, 0}, complex{-s, 0}},
      {complex{0, 0}, complex{s, 0}, complex{s, 0}, complex{0, 0}},
      {complex{0, 0}, complex{s, 0}, complex{-s, 0}, complex{0, 0}},
  }};
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    complex w{0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        w += std::conj(bell[k][i]) * rho(i, j) * bell[k][j];
      }
    }
    out[k] = w.real();
  }
  return out;
}

// Rotate the dominant Bell component onto the singlet with a single
// one-party operation, so the recurrence convention applies to states that
// arrive aligned with any of the four Bell states.
inline ComplexMatrix align_to_singlet(const ComplexMatrix& rho) {
  const std::array<double, 4> overlaps = bell_overlaps(rho);
  std::size_t best = 0;
  for (std::size_t k = 1; k < 4; ++k) {
    if (overlaps[k] > overlaps[best]) best = k;
  }
  if (best == 3) return rho;  // already singlet-dominant
  ComplexMatrix u(2, 2);
  switch (best) {
    case 0:  // phi+ -> psi- via the inverse of the psi- -> phi+ rotation
      u = dagger(singlet_to_phi_plus());
      break;
    case 1:  // phi- -> psi-
      u = gates::pauli_x();
      break;
    default:  // psi+ -> psi-
      u = gates::pauli_z();
      break;
  }
  const ComplexMatrix full = kron(u, ComplexMatrix::identity(2));
  return full * rho * dagger(full);
}

}  // namespace detail

// Lower-bound estimate of the distillable entanglement of a two-qubit state:
// search over "r recurrence rounds, then one-way hashing" for r up to
// max_rounds.  The hashing stage always acts on the Bell-diagonal projection
// of the current pair, where its rate is valid; the projection is exactly
// the bilateral-Pauli twirl, so it never increases what is claimed.
// PPT inputs are reported as zero immediately.
inline DistillableEstimate estimate_distillable(const ComplexMatrix& rho,
                                                const DistillationStrategy& strategy = {}) {
  detail::require_two_qubit_density(rho, "distillable estimate");
  if (strategy.max_rounds < 0) {
    throw ValidationError("max_rounds must be nonnegative");
  }
  const LabeledState wrapped = LabeledState::density(
      PartyLayout({{"A", Party::Alice, Role::System},
                   {"B", Party::Bob, Role::System}}),
      rho);
  if (is_ppt(wrapped)) return {0.0, 0, 1.0};

  const ComplexMatrix aligned = detail::align_to_singlet(rho);
  DistillableEstimate best;
  best.rate = hashing_lower_bound(bell_diagonal_projection(aligned));
  best.rounds = 0;
  best.yield = 1.0;

  // The recurrence only helps above singlet fidelity 1/2.
  if (singlet_fidelity(aligned) <= 0.5) return best;

  RecurrenceOptions opts;
  opts.twirl = strategy.twirl;
  ComplexMatrix cur = aligned;
  double yield = 1.0;
  for (int r = 1; r <= strategy.max_rounds; ++r) {
    const RecurrenceStepResult step = bbpssw_step(cur, opts);
    yield *= step.p_keep / 2.0;
    cur = step.rho_next;
    const double rate =
        yield * hashing_lower_bound(bell_diagonal_projection(cur));
    if (rate > best.rate) {
      best.rate = rate;
      best.rounds = r;
      best.yield = yield;
    }
    if (singlet_fidelity(cur) <= 0.5) break;  // no further improvement possible
  }
  return best;
}

// Accounting row for a distillation run on one species of input pair,
// splitting the formation cost into a distillable part and a bound part:
//   E_F = E_bound + E_D.
// `delta` carries the disorder (entropy) of the input pair, the quantity
// that separates the regimes: zero for pure inputs, positive otherwise.
struct DistillationLedger {
  double input_fidelity = 0.0;   // singlet fidelity of the input
  double e_f = 0.0;              // formation cost per pair
  double delta = 0.0;            // von Neumann entropy of the input pair
  double e_d_estimate = 0.0;     // achieved distillation rate
  double e_bound_estimate = 0.0; // e_f - e_d_estimate, clamped at zero
  int rounds = 0;                // recurrence depth behind the estimate
  double yield = 1.0;            // surviving fraction at that depth
  double w_p_per_pair = 1.0;     // booked transmission cost per pair
  char regime = 'b';             // 'a' pure, 'b' mixed free, 'c' undistillable
};

inline DistillationLedger distillation_report(const ComplexMatrix& rho,
                                              const DistillationStrategy& strategy = {}) {
  detail::require_two_qubit_density(rho, "distillation report");
  DistillationLedger ledger;
  ledger.input_fidelity = singlet_fidelity(rho);
  ledger.e_f = entanglement_of_formation(rho);
  ledger.delta = entropy_of_density(rho);
  ledger.w_p_per_pair = strategy.w_p_per_pair;

  double purity = 0.0;
  for (const complex& x : rho.entries()) purity += std::norm(x);
  if (purity >= 1.0 - kPsdTol) {
    // Pure pair: every unit of formation cost is recoverable.
    ledger.e_d_estimate = ledger.e_f;
    ledger.e_bound_estimate = 0.0;
    ledger.regime = 'a';
    return ledger;
  }
  const DistillableEstimate est = estimate_distillable(rho, strategy);
  ledger.e_d_estimate = est.rate;
  ledger.e_bound_estimate = std::max(0.0, ledger.e_f - est.rate);
  ledger.rounds = est.rounds;
  ledger.yield = est.yield;
  if (ledger.e_f <= 1e-9) {
    ledger.regime = 'b';  // nothing to split
  } else if (est.rate <= 1e-12) {
    ledger.regime = 'c';  // entangled, but nothing distilled here
  } else {
    ledger.regime = 'b';
  }
  return ledger;
}

// Free/bound decomposition of the entanglement in a state, with brackets
// where the distillable part is not exactly computable.  Pure states are
// exact: E_D = E_F = entropy of entanglement.  Mixed inputs are supported
// on one-qubit-per-side cuts, where the formation cost is exact, the lower
// E_D bracket is the constructive estimate above, and the upper bracket is
// the logarithmic negativity ceiling.
inline GibbsHelmholtzRecord gibbs_helmholtz(const LabeledState& s,
                                            const DistillationStrategy& strategy = {}) {
  GibbsHelmholtzRecord rec;
  if (s.is_pure_form() || s.purity() >= 1.0 - kPsdTol) {
    const double e = entropy_of_entanglement(s);
    rec.e_f = e;
    rec.e_d_lower = e;
    rec.e_d_upper = e;
    rec.e_bound_lower = 0.0;
    rec.e_bound_upper = 0.0;
    rec.classification = EntanglementClass::Pure;
    return rec;
  }
  if (s.num_qubits() != 2 || s.layout().party_count(Party::Alice) != 1) {
    throw UnsupportedError(
        "mixed-state decomposition supports one qubit per side only");
  }
  const ComplexMatrix& rho = s.density_matrix();
  rec.e_f = entanglement_of_formation(rho);
  const DistillableEstimate est = estimate_distillable(rho, strategy);
  const double neg = negativity(s);
  const double ceiling = std::log2(2.0 * neg + 1.0);
  rec.e_d_upper = std::min(rec.e_f, ceiling);
  rec.e_d_lower = std::min(est.rate, rec.e_d_upper);
  rec.e_bound_lower = std::max(0.0, rec.e_f - rec.e_d_upper);
  rec.e_bound_upper = std::max(0.0, rec.e_f - rec.e_d_lower);
  if (is_ppt(s)) {
    // At one qubit per side the PPT test is conclusive; on larger cuts a
    // PPT state could still hold bound entanglement.
    rec.classification = s.dim() == 4 ? EntanglementClass::Separable
                                      : EntanglementClass::PptSeparableOrBound;
  } else {
    rec.classification = EntanglementClass::FreeMixed;
  }
  return rec;
}

}  // namespace qledger
