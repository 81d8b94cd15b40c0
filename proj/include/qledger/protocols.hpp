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

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qledger/errors.hpp"
#include "qledger/ledger.hpp"
#include "qledger/qstate.hpp"
#include "qledger/transcript.hpp"

namespace qledger {

// ---------------------------------------------------------------------------
// Measurement as entanglement
// ---------------------------------------------------------------------------

// Model an ideal von Neumann measurement unitarily: copy each measured qubit
// onto its pointer with a C-NOT, then optionally couple each pointer to
// freshly created environment qubits (classicalising the record).  No state
// collapse ever happens; outcomes live in the correlations.
struct MeasurementOptions {
  std::size_t env_per_pointer = 1;
  std::string env_prefix = "R";
};

inline LabeledState measure_as_entanglement(const LabeledState& s,
                                            std::span<const std::string> measured,
                                            std::span<const std::string> pointers,
                                            const MeasurementOptions& opts = {}) {
  if (measured.empty() || measured.size() != pointers.size()) {
    throw ValidationError("measured and pointer label lists must match and be non-empty");
  }
  // Every pointer must be present and start in |0>.
  for (const auto& p : pointers) {
    const std::vector<std::string> keep = {p};
    const LabeledState red = partial_trace(s, keep);
    if (std::abs(red.density_matrix()(1, 1)) > kPsdTol) {
      throw ValidationError("pointer qubit is not prepared in |0>: " + p);
    }
  }
  LabeledState out = s;
  const ComplexMatrix cx = gates::cnot();
  for (std::size_t i = 0; i < measured.size(); ++i) {
    if (measured[i] == pointers[i]) {
      throw ValidationError("a qubit cannot point at itself: " + measured[i]);
    }
    const std::vector<std::string> pair = {measured[i], pointers[i]};
    out = apply_unitary(out, cx, pair);
  }
  if (opts.env_per_pointer > 0) {
    DecohereStep step;
    step.pointers.assign(pointers.begin(), pointers.end());
    for (const auto& p : pointers) {
      for (std::size_t j = 0; j < opts.env_per_pointer; ++j) {
        std::string label = opts.env_prefix + "_" + p;
        if (opts.env_per_pointer > 1) label += "_" + std::to_string(j);
        while (out.layout().has_label(label)) label += "_";
        step.environment.push_back(label);
      }
    }
    out = apply_step(out, step);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Teleportation
// ---------------------------------------------------------------------------

namespace detail {

// Basis rotation mapping the four Bell states of two qubits to the
// computational basis: C-NOT (first -> second) followed by Hadamard on the
// first.  The resulting bit pair is (phase, parity).
inline ComplexMatrix bell_to_computational() {
  const std::size_t targets_h[] = {0};
  const std::size_t targets_cx[] = {0, 1};
  return embed_gate(gates::hadamard(), 2, targets_h) *
         embed_gate(gates::cnot(), 2, targets_cx);
}

// Bell measurement as one unitary on four qubits (pair, pointer pair):
// rotate the pair to the computational basis, copy both bits onto the
// pointers, rotate back.  Bell states of the measured pair are preserved
// while the pointers record which one was present.
inline ComplexMatrix bell_measurement_unitary() {
  const std::size_t pair_pos[] = {0, 1};
  const ComplexMatrix rot = embed_gate(bell_to_computational(), 4, pair_pos);
  const std::size_t copy1[] = {0, 2};
  const std::size_t copy2[] = {1, 3};
  const ComplexMatrix copy =
      embed_gate(gates::cnot(), 4, copy1) * embed_gate(gates::cnot(), 4, copy2);
  return dagger(rot) * copy * rot;
}

// Receiver-side correction, conditioned unitarily on the two pointer qubits
// (order: pointer1, pointer2, target).  Each block maps the branch state of
// the target back to the transported input.
inline ComplexMatrix conditional_correction() {
  ComplexMatrix u(8, 8);
  // Pointer 00: branch holds alpha|1> - beta|0>.
  u(0, 1) = 1.0;
  u(1, 0) = -1.0;
  // Pointer 01: branch holds -alpha|0> + beta|1>.
  u(2, 2) = -1.0;
  u(3, 3) = 1.0;
  // Pointer 10: branch holds alpha|1> + beta|0>.
  u(4, 5) = 1.0;
  u(5, 4) = 1.0;
  // Pointer 11: branch holds -(alpha|0> + beta|1>).
  u(6, 6) = -1.0;
  u(7, 7) = -1.0;
  return u;
}

}  // namespace detail

struct TeleportOptions {
  // Couple the pointer qubits to fresh environment qubits after the Bell
  // measurement (pointer record becomes classical before it travels).
  bool decohere_pointers = false;
};

// Teleport one unknown qubit from Alice to Bob through a shared singlet and
// two transmitted pointer qubits, entirely as unitary evolution.  Qubits:
//   S_in (Alice, signal)  -- the unknown input
//   S_a  (Alice, signal)  -- Alice's half of the pair
//   S_b  (Bob,   signal)  -- Bob's half of the pair
//   M_1, M_2 (Alice, pointers) -- Bell measurement record, later transmitted
inline ProtocolTranscript teleport(const std::vector<complex>& input_amplitudes,
                                   const TeleportOptions& opts = {}) {
  if (input_amplitudes.size() != 2) {
    throw DimensionError("teleport input must be a single-qubit amplitude pair");
  }
  const LabeledState input = LabeledState::pure(
      PartyLayout({{"S_in", Party::Alice, Role::System}}), input_amplitudes);
  const LabeledState pair = LabeledState::pure(
      PartyLayout({{"S_a", Party::Alice, Role::System},
                   {"S_b", Party::Bob, Role::System}}),
      singlet_amplitudes());
  const LabeledState pointers = LabeledState::pure(
      PartyLayout({{"M_1", Party::Alice, Role::Measure},
                   {"M_2", Party::Alice, Role::Measure}}),
      basis_amplitudes(2, 0));
  const LabeledState initial = tensor(tensor(input, pair), pointers);

  std::vector<Step> steps;
  steps.push_back(UnitaryStep{"bell_measurement", detail::bell_measurement_unitary(),
                              {"S_in", "S_a", "M_1", "M_2"}});
  if (opts.decohere_pointers) {
    steps.push_back(DecohereStep{{"M_1", "M_2"}, {"R_M_1", "R_M_2"}});
  }
  steps.push_back(TransmitStep{{"M_1", "M_2"}, Party::Alice, Party::Bob});
  steps.push_back(UnitaryStep{"conditional_correction",
                              detail::conditional_correction(),
                              {"M_1", "M_2", "S_b"}});

  TranscriptOptions topts;
  topts.receiver = Party::Bob;
  ChannelSpec channel;
  channel.input_labels = {"S_in"};
  channel.output_labels = {"S_b"};
  channel.context_amplitudes = tensor(pair, pointers).amplitudes();
  topts.channel = std::move(channel);
  return execute_steps(initial, std::move(steps), std::move(topts));
}

// ---------------------------------------------------------------------------
// Direct qubit transmission
// ---------------------------------------------------------------------------

enum class SendMode {
  Unentangled,    // send a lone signal qubit
  EntangledHalf,  // send one member of a fresh singlet
};

inline SendMode send_mode_from_string(const std::string& s) {
  if (s == "unentangled") return SendMode::Unentangled;
  if (s == "entangled_half" || s == "entangled-half") return SendMode::EntangledHalf;
  throw ValidationError("unknown send mode: " + s);
}

// One-qubit transmission from Alice to Bob.  In Unentangled mode the qubit
// carries an arbitrary input state and the move shows up as logical work;
// in EntangledHalf mode the same physical action spends its work creating
// one ebit of shared entanglement instead.
inline ProtocolTranscript send_qubit(SendMode mode,
                                     const std::vector<complex>& input_amplitudes = {}) {
  if (mode == SendMode::Unentangled) {
    std::vector<complex> amps = input_amplitudes;
    if (amps.empty()) amps = basis_amplitudes(1, 0);
    if (amps.size() != 2) {
      throw DimensionError("unentangled send takes a single-qubit amplitude pair");
    }
    const LabeledState initial = LabeledState::pure(
        PartyLayout({{"Q", Party::Alice, Role::System}}), amps);
    std::vector<Step> steps = {TransmitStep{{"Q"}, Party::Alice, Party::Bob}};
    TranscriptOptions topts;
    topts.receiver = Party::Bob;
    ChannelSpec channel;
    channel.input_labels = {"Q"};
    channel.output_labels = {"Q"};
    channel.context_amplitudes = {complex{1.0, 0.0}};  // no context register
    topts.channel = std::move(channel);
    return execute_steps(initial, std::move(steps), std::move(topts));
  }
  if (!input_amplitudes.empty()) {
    throw ValidationError("entangled-half send prepares its own pair state");
  }
  const LabeledState initial = LabeledState::pure(
      PartyLayout({{"P_a", Party::Alice, Role::System},
                   {"P_b", Party::Alice, Role::System}}),
      singlet_amplitudes());
  std::vector<Step> steps = {TransmitStep{{"P_b"}, Party::Alice, Party::Bob}};
  TranscriptOptions topts;
  topts.receiver = Party::Bob;
  return execute_steps(initial, std::move(steps), std::move(topts));
}

// ---------------------------------------------------------------------------
// Twirling
// ---------------------------------------------------------------------------

namespace detail {

// Twelve single-qubit rotations whose bilateral application averages any
// two-qubit state into Werner form: the identity, the three pi rotations
// about the coordinate axes, and the eight +-2pi/3 rotations about the
// body diagonals.  (They realise the rotation group of the tetrahedron,
// which is a unitary 2-design.)
inline const std::array<ComplexMatrix, 12>& werner_twirl_set() {
  static const std::array<ComplexMatrix, 12> set = [] {
    auto rot = [](double nx, double ny, double nz, double angle) {
      const double c = std::cos(angle / 2.0);
      const double s = std::sin(angle / 2.0);
      // cos(a/2) I - i sin(a/2) (n . sigma)
      return ComplexMatrix(
          2, 2,
          {complex{c, -s * nz}, complex{-s * ny, -s * nx},
           complex{s * ny, -s * nx}, complex{c, s * nz}});
    };
    const double pi = 3.14159265358979323846;
    const double r3 = 1.0 / std::sqrt(3.0);
    std::array<ComplexMatrix, 12> out = {
        ComplexMatrix::identity(2),
        rot(1, 0, 0, pi),
        rot(0, 1, 0, pi),
        rot(0, 0, 1, pi),
        rot(r3, r3, r3, 2.0 * pi / 3.0),
        rot(r3, r3, r3, -2.0 * pi / 3.0),
        rot(r3, -r3, -r3, 2.0 * pi / 3.0),
        rot(r3, -r3, -r3, -2.0 * pi / 3.0),
        rot(-r3, r3, -r3, 2.0 * pi / 3.0),
        rot(-r3, r3, -r3, -2.0 * pi / 3.0),
        rot(-r3, -r3, r3, 2.0 * pi / 3.0),
        rot(-r3, -r3, r3, -2.0 * pi / 3.0),
    };
    return out;
  }();
  return set;
}

}  // namespace detail

// Bilateral twirl of a two-qubit density matrix into Werner form.  The
// singlet fidelity is preserved exactly; everything else is symmetrised
// away.  Both parties apply the same rotation, so the operation is local.
inline ComplexMatrix twirl_to_werner(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("twirl requires a 4x4 density matrix");
  }
  ComplexMatrix acc(4, 4);
  for (const ComplexMatrix& u : detail::werner_twirl_set()) {
    const ComplexMatrix uu = kron(u, u);
    acc = acc + uu * rho * dagger(uu);
  }
  return complex{1.0 / 12.0, 0.0} * acc;
}

// Project a two-qubit density matrix onto the Bell-diagonal frame (the
// average over bilateral Pauli rotations): off-diagonal terms between Bell
// states vanish, diagonal Bell weights are kept exactly.
inline ComplexMatrix bell_diagonal_projection(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("bell projection requires a 4x4 density matrix");
  }
  const double s = 1.0 / std::sqrt(2.0);
  const std::array<std::array<complex, 4>, 4> bell = {{
      {complex{s, 0}, complex{0, 0}, complex{0, 0}, complex{s, 0}},    // phi+
      {complex{s, 0}, complex{0, 0}, complex{0, 0}, complex{-s, 0}},   // phi-
      {complex{0, 0}, complex{s, 0}, complex{s, 0}, complex{0, 0}},    // psi+
      {complex{0, 0}, complex{s, 0}, complex{-s, 0}, complex{0, 0}},   // psi-
  }};
  ComplexMatrix out(4, 4);
  for (const auto& b : bell) {
    complex weight{0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        weight += std::conj(b[i]) * rho(i, j) * b[j];
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        out(i, j) += weight.real() * b[i] * std::conj(b[j]);
      }
    }
  }
  return out;
}

// Singlet fidelity <psi-|rho|psi->.
inline double singlet_fidelity(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("singlet fidelity requires a 4x4 density matrix");
  }
  const std::vector<complex> psi = singlet_amplitudes();
  complex f{0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      f += std::conj(psi[i]) * rho(i, j) * psi[j];
    }
  }
  return f.real();
}

// ---------------------------------------------------------------------------
// Recurrence distillation (single step and iteration)
// ---------------------------------------------------------------------------

struct RecurrenceOptions {
  bool twirl = true;  // twirl the input pair into Werner form first
};

struct RecurrenceStepResult {
  double p_keep = 0.0;       // probability that the pointer records agree
  ComplexMatrix rho_next;    // surviving pair, conditioned on agreement
  LabeledState closed_view;  // pure closed-system state after the circuit
};

namespace detail {

// Local rotation taking |psi-> to |phi+> (up to phase) when applied to
// Alice's qubit: the recurrence C-NOTs are phrased in the phi+ convention.
inline ComplexMatrix singlet_to_phi_plus() {
  return ComplexMatrix(2, 2, {0.0, 1.0, -1.0, 0.0});
}

}  // namespace detail

// One recurrence round on two identical copies of a two-qubit state.  The
// whole round is executed as a closed-system circuit: the two copies enter
// as purifications, both parties apply C-NOTs between their members, and the
// target pair is "measured" by entangling it with pointer and environment
// qubits.  Post-selection on agreeing pointers is then pure conditioning.
inline RecurrenceStepResult bbpssw_step(const ComplexMatrix& rho,
                                        const RecurrenceOptions& opts = {}) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("recurrence step requires a 4x4 density matrix");
  }
  const ComplexMatrix work = opts.twirl ? twirl_to_werner(rho) : rho;

  // Purify each copy so the round can run as pure unitary evolution.
  const LabeledState copy1 = purify(
      LabeledState::density(PartyLayout({{"A1", Party::Alice, Role::System},
                                         {"B1", Party::Bob, Role::System}}),
                            work),
      Party::Alice, "anc1_");
  const LabeledState copy2 = purify(
      LabeledState::density(PartyLayout({{"A2", Party::Alice, Role::System},
                                         {"B2", Party::Bob, Role::System}}),
                            work),
      Party::Alice, "anc2_");
  LabeledState s = tensor(copy1, copy2);

  // Align the dominant Bell component with phi+ on both copies.
  const ComplexMatrix v = detail::singlet_to_phi_plus();
  for (const char* a : {"A1", "A2"}) {
    const std::vector<std::string> t = {a};
    s = apply_unitary(s, v, t);
  }
  // Bilateral C-NOTs: source pair controls, target pair receives.
  const ComplexMatrix cx = gates::cnot();
  {
    const std::vector<std::string> ta = {"A1", "A2"};
    const std::vector<std::string> tb = {"B1", "B2"};
    s = apply_unitary(s, cx, ta);
    s = apply_unitary(s, cx, tb);
  }
  // Both parties measure their target-pair member.
  s = extend_with_ancillas(s, {{"M_A", Party::Alice, Role::Measure},
                               {"M_B", Party::Bob, Role::Measure}});
  {
    const std::vector<std::string> measured = {"A2", "B2"};
    const std::vector<std::string> pointers = {"M_A", "M_B"};
    s = measure_as_entanglement(s, measured, pointers);
  }

  // Keep-branch statistics from the pointer bits.
  const std::size_t n = s.num_qubits();
  const std::size_t sh_a = n - 1 - s.layout().position("M_A");
  const std::size_t sh_b = n - 1 - s.layout().position("M_B");
  const std::vector<complex>& amps = s.amplitudes();
  double p_keep = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i >> sh_a) & 1u) == ((i >> sh_b) & 1u)) p_keep += std::norm(amps[i]);
  }
  if (p_keep < 1e-12) {
    throw NumericError("recurrence keep-branch has vanishing probability");
  }

  // Condition on agreement and reduce to the surviving pair.
  std::vector<complex> kept(amps.size(), complex{0.0, 0.0});
  const double inv = 1.0 / std::sqrt(p_keep);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i >> sh_a) & 1u) == ((i >> sh_b) & 1u)) kept[i] = amps[i] * inv;
  }
  LabeledState branch = LabeledState::pure(s.layout(), std::move(kept));
  const std::vector<std::string> keep = {"A1", "B1"};
  LabeledState pair = partial_trace(branch, keep);
  // Undo the phi+ alignment so the result reads in the singlet convention.
  {
    const std::vector<std::string> t = {"A1"};
    pair = apply_unitary(pair, dagger(v), t);
  }

  return RecurrenceStepResult{p_keep, pair.density_matrix(), std::move(s)};
}

// Closed-form recurrence map for Werner inputs: success probability and
// output fidelity as functions of the input singlet fidelity.
struct RecurrencePoint {
  double p_keep = 0.0;
  double fidelity_next = 0.0;
};

inline RecurrencePoint werner_recurrence(double f) {
  if (f < 0.0 || f > 1.0) {
    throw ValidationError("werner fidelity must lie in [0, 1]");
  }
  const double q = (1.0 - f) / 3.0;
  RecurrencePoint out;
  out.p_keep = f * f + 2.0 * f * q + 5.0 * q * q;
  out.fidelity_next = (f * f + q * q) / out.p_keep;
  return out;
}

// One row of a distillation trajectory.
struct DistillationRound {
  int round = 0;
  double fidelity = 0.0;  // singlet fidelity after this round
  double p_keep = 1.0;    // success probability of this round
  double yield = 1.0;     // expected surviving pairs per input pair
};

// Iterate the recurrence circuit on Werner pairs of initial fidelity f0.
// Row 0 reports the input; each later row halves the pair count and scales
// by that round's success probability.
inline std::vector<DistillationRound> bbpssw_iterate(double f0, int rounds,
                                                     const RecurrenceOptions& opts = {}) {
  if (!(f0 > 0.25) || f0 > 1.0) {
    throw ValidationError("initial fidelity must lie in (0.25, 1]");
  }
  if (rounds < 1) throw ValidationError("at least one round is required");
  std::vector<DistillationRound> rows;
  rows.push_back({0, f0, 1.0, 1.0});
  ComplexMatrix rho = werner_density(f0);
  double surviving = 1.0;
  for (int r = 1; r <= rounds; ++r) {
    const RecurrenceStepResult res = bbpssw_step(rho, opts);
    surviving *= res.p_keep / 2.0;
    rho = res.rho_next;
    rows.push_back({r, singlet_fidelity(rho), res.p_keep, surviving});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Random transcripts for the balance property sweeps
// ---------------------------------------------------------------------------

struct RandomTranscriptOptions {
  std::size_t max_qubits_per_side = 3;  // 1..4
  std::size_t max_steps = 6;
  bool allow_decohere = true;  // sender-side pointer decoherence steps
};

// Generate and execute a random one-way protocol: a Haar-random pure state
// shared between the parties, followed by random local unitaries,
// Alice-to-Bob transmissions and (optionally) Alice-side decoherence events.
// Every transcript this produces satisfies the balance identity, so the
// interesting assertion is that the evaluated ledger agrees to tolerance.
inline ProtocolTranscript make_random_transcript(std::uint64_t seed,
                                                 const RandomTranscriptOptions& opts = {}) {
  if (opts.max_qubits_per_side < 1 || opts.max_qubits_per_side > 4) {
    throw ValidationError("random transcripts support 1..4 qubits per side");
  }
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> d(lo, hi);
    return d(rng);
  };

  const std::size_t n_a = pick(1, opts.max_qubits_per_side);
  const std::size_t n_b = pick(1, opts.max_qubits_per_side);
  std::vector<QubitSpec> qubits;
  std::vector<std::string> alice_owned, bob_owned;
  for (std::size_t i = 0; i < n_a; ++i) {
    qubits.push_back({"A" + std::to_string(i), Party::Alice, Role::System});
    alice_owned.push_back(qubits.back().label);
  }
  for (std::size_t i = 0; i < n_b; ++i) {
    qubits.push_back({"B" + std::to_string(i), Party::Bob, Role::System});
    bob_owned.push_back(qubits.back().label);
  }
  const LabeledState initial = LabeledState::pure(
      PartyLayout(qubits), random_state_amplitudes(n_a + n_b, rng));

  std::size_t total_qubits = n_a + n_b;
  std::size_t decohere_count = 0;
  std::vector<Step> steps;
  const std::size_t n_steps = pick(1, opts.max_steps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const std::size_t kind = pick(0, 3);
    if (kind <= 1) {
      // Local unitary on a random subset of one party's qubits.
      std::vector<std::string>& side =
          (pick(0, 1) == 0 && !alice_owned.empty()) || bob_owned.empty()
              ? alice_owned
              : bob_owned;
      if (side.empty()) continue;
      const std::size_t width = pick(1, std::min<std::size_t>(side.size(), 3));
      std::vector<std::string> targets = side;
      // Partial Fisher-Yates draw of `width` labels.
      for (std::size_t i = 0; i < width; ++i) {
        std::swap(targets[i], targets[pick(i, targets.size() - 1)]);
      }
      targets.resize(width);
      steps.push_back(UnitaryStep{"local_unitary", random_unitary(width, rng), targets});
    } else if (kind == 2 && !alice_owned.empty()) {
      // Transmit one or two of Alice's qubits to Bob.
      const std::size_t count = pick(1, std::min<std::size_t>(alice_owned.size(), 2));
      std::vector<std::string> moved;
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = pick(0, alice_owned.size() - 1);
        moved.push_back(alice_owned[j]);
        alice_owned.erase(alice_owned.begin() +
                          static_cast<std::ptrdiff_t>(j));
      }
      bob_owned.insert(bob_owned.end(), moved.begin(), moved.end());
      steps.push_back(TransmitStep{std::move(moved), Party::Alice, Party::Bob});
    } else if (opts.allow_decohere && !alice_owned.empty() && total_qubits < 9) {
      // Decohere one Alice-held qubit into a fresh sender-side environment.
      const std::string pointer = alice_owned[pick(0, alice_owned.size() - 1)];
      const std::string env = "E" + std::to_string(decohere_count++);
      steps.push_back(DecohereStep{{pointer}, {env}});
      alice_owned.push_back(env);
      ++total_qubits;
    }
  }
  if (steps.empty()) {
    steps.push_back(UnitaryStep{"local_unitary", random_unitary(1, rng),
                                {qubits.front().label}});
  }
  TranscriptOptions topts;
  topts.receiver = Party::Bob;
  return execute_steps(initial, std::move(steps), std::move(topts));
}

}  // namespace qledger
