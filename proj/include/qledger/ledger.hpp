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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qledger/errors.hpp"
#include "qledger/qstate.hpp"
#include "qledger/transcript.hpp"

namespace qledger {

// Tolerance used when asserting the balance laws.
inline constexpr double kBalanceTol = 1e-8;

// ---------------------------------------------------------------------------
// Accounting primitives
// ---------------------------------------------------------------------------

// Informational content of one party's side: the number of qubits the party
// holds minus the von Neumann entropy of its reduced state.  An empty side
// carries zero content.
inline double informational_content(const LabeledState& s, Party party) {
  const std::vector<std::string> labels = s.layout().party_labels(party);
  if (labels.empty()) return 0.0;
  const double n = static_cast<double>(labels.size());
  if (labels.size() == s.num_qubits()) {
    // The party holds everything; the reduced state is the global state.
    return n - von_neumann_entropy(s);
  }
  const LabeledState reduced = partial_trace(s, labels);
  return n - entropy_of_density(reduced.density_matrix());
}

// Entanglement across the Alice/Bob cut of a globally pure state, measured
// as the entropy of either reduced side.  Both sides are computed and must
// agree; mixed global states are outside this accounting model.
inline double cut_entanglement(const LabeledState& s) {
  if (!s.is_pure_form() && s.purity() < 1.0 - kPsdTol) {
    throw UnsupportedError(
        "cut entanglement is defined here only for globally pure states");
  }
  const std::vector<std::string> alice = s.layout().party_labels(Party::Alice);
  const std::vector<std::string> bob = s.layout().party_labels(Party::Bob);
  if (alice.empty() || bob.empty()) return 0.0;
  const double s_a =
      entropy_of_density(partial_trace(s, alice).density_matrix());
  const double s_b = entropy_of_density(partial_trace(s, bob).density_matrix());
  if (std::abs(s_a - s_b) > kBalanceTol) {
    throw NumericError("reduced entropies of a pure state disagree across the cut");
  }
  return 0.5 * (s_a + s_b);
}

// I_Alice + I_Bob + 2E; for an n-qubit globally pure state this total is
// invariant under local actions and transmissions (and equals n).
inline double conservation_total(const LabeledState& s) {
  return informational_content(s, Party::Alice) +
         informational_content(s, Party::Bob) + 2.0 * cut_entanglement(s);
}

// Logical work received: the change of the receiver's informational content.
inline double logical_work(const LabeledState& before, const LabeledState& after,
                           Party receiver) {
  return informational_content(after, receiver) -
         informational_content(before, receiver);
}

// Physical work of one transmission: one unit per qubit sent.  Validates that
// the sender actually owns each listed qubit in the pre-step state.
inline double physical_work(const LabeledState& before, const TransmitStep& step) {
  for (const auto& l : step.labels) {
    const QubitSpec& q = before.layout().qubits()[before.layout().position(l)];
    if (q.party != step.from) {
      throw ValidationError("transmit source does not own qubit: " + l);
    }
  }
  return static_cast<double>(step.labels.size());
}

// Total physical work recorded in a transcript.
inline double physical_work(const ProtocolTranscript& t) {
  double w = 0.0;
  for (const Step& step : t.steps) {
    if (const auto* tr = std::get_if<TransmitStep>(&step)) {
      w += static_cast<double>(tr->labels.size());
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Transcript execution
// ---------------------------------------------------------------------------

struct TranscriptOptions {
  std::optional<Party> receiver;
  std::optional<ChannelSpec> channel;
};

inline BalanceSnapshot take_snapshot(const LabeledState& s, std::string label,
                                     double w_p_cumulative) {
  BalanceSnapshot snap;
  snap.label = std::move(label);
  snap.i_alice = informational_content(s, Party::Alice);
  snap.i_bob = informational_content(s, Party::Bob);
  snap.entanglement = cut_entanglement(s);
  snap.conservation = snap.i_alice + snap.i_bob + 2.0 * snap.entanglement;
  snap.w_p_cumulative = w_p_cumulative;
  return snap;
}

// Run the steps from a pure initial state, recording a snapshot after every
// step.  All protocols in this library are closed-system: measurement and
// decoherence appear as unitaries onto pointer/environment qubits, so the
// global state stays pure throughout.
inline ProtocolTranscript execute_steps(const LabeledState& initial,
                                        std::vector<Step> steps,
                                        TranscriptOptions opts = {}) {
  if (!initial.is_pure_form()) {
    throw UnsupportedError("transcripts require a pure initial state");
  }
  ProtocolTranscript t;
  t.initial = initial;
  t.receiver = opts.receiver;
  t.channel = std::move(opts.channel);
  LabeledState s = initial;
  double w_p = 0.0;
  t.snapshots.push_back(take_snapshot(s, "initial", w_p));
  for (Step& step : steps) {
    if (const auto* tr = std::get_if<TransmitStep>(&step)) {
      w_p += physical_work(s, *tr);
    }
    s = apply_step(s, step);
    t.snapshots.push_back(take_snapshot(s, step_label(step), w_p));
  }
  t.final_state = s;
  t.steps = std::move(steps);
  return t;
}

// ---------------------------------------------------------------------------
// Useful work certification
// ---------------------------------------------------------------------------

namespace detail {

// Reorder amplitudes given over `labels` (in list order) into the layout
// order that partial_trace produces (ascending positions).
inline std::vector<complex> reorder_to_layout(const std::vector<complex>& amps,
                                              const std::vector<std::size_t>& positions) {
  const std::size_t k = positions.size();
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return positions[a] < positions[b];
  });
  // rank[j]: bit slot of list-order label j inside the sorted (layout) index.
  std::vector<std::size_t> rank(k);
  for (std::size_t slot = 0; slot < k; ++slot) rank[order[slot]] = slot;
  std::vector<complex> out(amps.size(), complex{0.0, 0.0});
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t b = 0; b < k; ++b) {
      j |= ((i >> (k - 1 - b)) & 1u) << (k - 1 - rank[b]);
    }
    out[j] = amps[i];
  }
  return out;
}

}  // namespace detail

// Certify that the transcript's channel carries an arbitrary state of a
// subspace faithfully.  The first `subspace_dim` basis states of the input
// register, plus `trials` seeded Haar superpositions within that subspace,
// are replayed through the recorded steps; if every output matches its input
// with infidelity at most `epsilon`, the channel is certified for
// log2(subspace_dim) qubits of useful work.  Otherwise the result is zero:
// transporting a single known basis state proves nothing about transporting
// quantum information.
inline double useful_work(const ProtocolTranscript& t, std::size_t subspace_dim,
                          std::size_t trials = 64, double epsilon = 1e-6,
                          std::uint64_t seed = 0x71ed9e5u) {
  if (!t.complete()) throw ValidationError("transcript is incomplete");
  if (!t.channel.has_value()) {
    throw ValidationError("useful work requires a channel specification");
  }
  const ChannelSpec& ch = t.channel.value();
  if (ch.input_labels.size() != ch.output_labels.size()) {
    throw ValidationError("channel input and output widths differ");
  }
  const std::size_t width = ch.input_labels.size();
  const std::size_t in_dim = std::size_t{1} << width;
  if (subspace_dim == 0 || (subspace_dim & (subspace_dim - 1)) != 0 ||
      subspace_dim > in_dim) {
    throw ValidationError("subspace dimension must be a power of two within the input register");
  }
  if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");

  const LabeledState& final_state =
      t.final_state.value();  // layout of the completed run
  const std::vector<std::size_t> out_pos =
      final_state.layout().positions(ch.output_labels);

  std::mt19937_64 rng(seed);
  auto probe = [&](const std::vector<complex>& sub_amps) {
    std::vector<complex> in_amps(in_dim, complex{0.0, 0.0});
    for (std::size_t i = 0; i < sub_amps.size(); ++i) in_amps[i] = sub_amps[i];
    const LabeledState out = replay_with_input(t, in_amps);
    const LabeledState reduced = partial_trace(out, ch.output_labels);
    const std::vector<complex> ref =
        detail::reorder_to_layout(in_amps, out_pos);
    const LabeledState target = LabeledState::pure(reduced.layout(), ref);
    return fidelity(target, reduced) >= 1.0 - epsilon;
  };

  for (std::size_t i = 0; i < subspace_dim; ++i) {
    std::vector<complex> sub(subspace_dim, complex{0.0, 0.0});
    sub[i] = 1.0;
    if (!probe(sub)) return 0.0;
  }
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<complex> sub = detail::gaussian_vector(subspace_dim, rng);
    double norm2 = 0.0;
    for (const complex& a : sub) norm2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm2);
    for (complex& a : sub) a *= inv;
    if (!probe(sub)) return 0.0;
  }
  return std::log2(static_cast<double>(subspace_dim));
}

// ---------------------------------------------------------------------------
// Balance ledger
// ---------------------------------------------------------------------------

// Before/after accounting of one protocol run.  The central identity is
//   E_in + W_p = E_out + W_l
// and the transmission bound (no entanglement gain beyond qubits sent) is
//   E_out - E_in <= W_p.
struct BalanceLedger {
  double i_alice_in = 0.0;
  double i_alice_out = 0.0;
  double i_bob_in = 0.0;
  double i_bob_out = 0.0;
  double e_in = 0.0;
  double e_out = 0.0;
  double w_p = 0.0;
  double w_l = 0.0;
  double w_u = 0.0;
  double conservation_in = 0.0;
  double conservation_out = 0.0;
  Party receiver = Party::Bob;

  double balance_residual() const { return (e_in + w_p) - (e_out + w_l); }
  bool balance_ok(double tol = kBalanceTol) const {
    return std::abs(balance_residual()) <= tol;
  }
  bool transmission_bound_ok(double tol = kBalanceTol) const {
    return e_out - e_in <= w_p + tol;
  }
  bool conservation_ok(double tol = kBalanceTol) const {
    return std::abs(conservation_out - conservation_in) <= tol;
  }
};

struct UsefulWorkOptions {
  std::size_t trials = 64;
  double epsilon = 1e-6;
  std::uint64_t seed = 0x71ed9e5u;
};

// Evaluate the ledger of a completed transcript.  The receiver defaults to
// the destination of the first transmission; useful work is certified only
// when the transcript declares a channel specification.
inline BalanceLedger check_balance(const ProtocolTranscript& t,
                                   const UsefulWorkOptions& wu = {}) {
  if (!t.complete()) throw ValidationError("transcript is incomplete");
  const LabeledState& before = t.initial.value();
  const LabeledState& after = t.final_state.value();

  Party receiver = Party::Bob;
  if (t.receiver.has_value()) {
    receiver = t.receiver.value();
  } else {
    for (const Step& step : t.steps) {
      if (const auto* tr = std::get_if<TransmitStep>(&step)) {
        receiver = tr->to;
        break;
      }
    }
  }

  BalanceLedger ledger;
  ledger.receiver = receiver;
  ledger.i_alice_in = informational_content(before, Party::Alice);
  ledger.i_alice_out = informational_content(after, Party::Alice);
  ledger.i_bob_in = informational_content(before, Party::Bob);
  ledger.i_bob_out = informational_content(after, Party::Bob);
  ledger.e_in = cut_entanglement(before);
  ledger.e_out = cut_entanglement(after);
  ledger.w_p = physical_work(t);
  ledger.w_l = (receiver == Party::Alice)
                   ? ledger.i_alice_out - ledger.i_alice_in
                   : ledger.i_bob_out - ledger.i_bob_in;
  ledger.conservation_in =
      ledger.i_alice_in + ledger.i_bob_in + 2.0 * ledger.e_in;
  ledger.conservation_out =
      ledger.i_alice_out + ledger.i_bob_out + 2.0 * ledger.e_out;
  if (t.channel.has_value()) {
    const std::size_t in_dim = std::size_t{1}
                               << t.channel->input_labels.size();
    ledger.w_u = useful_work(t, in_dim, wu.trials, wu.epsilon, wu.seed);
  }
  return ledger;
}

}  // namespace qledger
