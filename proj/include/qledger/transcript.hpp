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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qledger/errors.hpp"
#include "qledger/qstate.hpp"

namespace qledger {

// One unitary acting on named qubits.  `name` is purely descriptive and
// carried into reports.
struct UnitaryStep {
  std::string name;
  ComplexMatrix matrix;
  std::vector<std::string> targets;
};

// Hand the listed qubits from one party to the other.  This is the only step
// that does physical work in the accounting sense; the global state vector is
// unchanged, only ownership moves.
struct TransmitStep {
  std::vector<std::string> labels;
  Party from = Party::Alice;
  Party to = Party::Bob;
};

// Couple existing pointer qubits to freshly created environment qubits
// (one C-NOT per pointer/environment pair, pointer as control).  Environment
// labels must be new; each pointer gets the same number of fresh qubits.
struct DecohereStep {
  std::vector<std::string> pointers;
  std::vector<std::string> environment;  // size = pointers.size() * per_pointer
};

using Step = std::variant<UnitaryStep, TransmitStep, DecohereStep>;

// Accounting quantities captured after each step of a protocol run.
struct BalanceSnapshot {
  std::string label;
  double i_alice = 0.0;        // informational content of Alice's side
  double i_bob = 0.0;          // informational content of Bob's side
  double entanglement = 0.0;   // entanglement across the Alice/Bob cut
  double conservation = 0.0;   // I_A + I_B + 2E
  double w_p_cumulative = 0.0; // qubits transmitted so far
};

// Declares which qubits a protocol treats as channel input and output, plus
// the fixed state of every other qubit.  Used to replay the protocol on
// alternative inputs when certifying useful work.
struct ChannelSpec {
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  // Pure state over all non-input qubits, in their layout order.  May have
  // zero qubits when the protocol uses no context register.
  std::vector<complex> context_amplitudes;
};

// Full record of a closed-system protocol run: initial state, every step,
// the reached final state, and per-step accounting snapshots.
struct ProtocolTranscript {
  std::optional<LabeledState> initial;
  std::vector<Step> steps;
  std::optional<LabeledState> final_state;
  std::vector<BalanceSnapshot> snapshots;
  std::optional<Party> receiver;
  std::optional<ChannelSpec> channel;

  bool complete() const { return initial.has_value() && final_state.has_value(); }
};

// ---------------------------------------------------------------------------
// Step application
// ---------------------------------------------------------------------------

inline LabeledState apply_step(const LabeledState& s, const UnitaryStep& step) {
  return apply_unitary(s, step.matrix, step.targets);
}

inline LabeledState apply_step(const LabeledState& s, const TransmitStep& step) {
  if (step.labels.empty()) throw ValidationError("transmit step lists no qubits");
  if (step.from == step.to) throw ValidationError("transmit endpoints must differ");
  for (const auto& l : step.labels) {
    const QubitSpec& q = s.layout().qubits()[s.layout().position(l)];
    if (q.party != step.from) {
      throw ValidationError("transmit source does not own qubit: " + l);
    }
  }
  return relabel_party(s, step.labels, step.to);
}

inline LabeledState apply_step(const LabeledState& s, const DecohereStep& step) {
  if (step.pointers.empty()) throw ValidationError("decohere step lists no pointers");
  if (step.environment.empty() || step.environment.size() % step.pointers.size() != 0) {
    throw ValidationError("environment count must be a positive multiple of pointer count");
  }
  const std::size_t per = step.environment.size() / step.pointers.size();
  std::vector<QubitSpec> fresh;
  fresh.reserve(step.environment.size());
  for (std::size_t i = 0; i < step.pointers.size(); ++i) {
    const QubitSpec& p = s.layout().qubits()[s.layout().position(step.pointers[i])];
    for (std::size_t j = 0; j < per; ++j) {
      fresh.push_back({step.environment[i * per + j], p.party, Role::Environment});
    }
  }
  LabeledState out = extend_with_ancillas(s, fresh);
  const ComplexMatrix cx = gates::cnot();
  for (std::size_t i = 0; i < step.pointers.size(); ++i) {
    for (std::size_t j = 0; j < per; ++j) {
      const std::vector<std::string> pair = {step.pointers[i],
                                             step.environment[i * per + j]};
      out = apply_unitary(out, cx, pair);
    }
  }
  return out;
}

inline LabeledState apply_step(const LabeledState& s, const Step& step) {
  return std::visit([&](const auto& concrete) { return apply_step(s, concrete); }, step);
}

inline std::string step_label(const Step& step) {
  if (const auto* u = std::get_if<UnitaryStep>(&step)) return u->name;
  if (const auto* t = std::get_if<TransmitStep>(&step)) {
    std::string out = "transmit";
    for (const auto& l : t->labels) out += " " + l;
    return out;
  }
  const auto& d = std::get<DecohereStep>(step);
  std::string out = "decohere";
  for (const auto& l : d.pointers) out += " " + l;
  return out;
}

// Re-run the recorded steps from the recorded initial state.
inline LabeledState replay(const ProtocolTranscript& t) {
  if (!t.initial.has_value()) {
    throw ValidationError("transcript has no initial state to replay");
  }
  LabeledState s = *t.initial;
  for (const Step& step : t.steps) s = apply_step(s, step);
  return s;
}

// Re-run the recorded steps with the channel input register replaced by the
// given amplitudes (over the input labels, in channel order); every other
// qubit starts in the recorded context state.
inline LabeledState replay_with_input(const ProtocolTranscript& t,
                                      const std::vector<complex>& input_amplitudes) {
  if (!t.initial.has_value()) {
    throw ValidationError("transcript has no initial state to replay");
  }
  if (!t.channel.has_value()) {
    throw ValidationError("transcript declares no channel specification");
  }
  const LabeledState& proto = *t.initial;
  const ChannelSpec& ch = t.channel.value();
  const std::size_t n = proto.num_qubits();
  const std::vector<std::size_t> in_pos = proto.layout().positions(ch.input_labels);
  const std::size_t ni = in_pos.size();
  if (input_amplitudes.size() != (std::size_t{1} << ni)) {
    throw DimensionError("input amplitude count does not match channel input width");
  }
  std::vector<std::size_t> ctx_pos;
  {
    std::vector<bool> is_input(n, false);
    for (std::size_t p : in_pos) is_input[p] = true;
    for (std::size_t p = 0; p < n; ++p) {
      if (!is_input[p]) ctx_pos.push_back(p);
    }
  }
  const std::size_t nc = ctx_pos.size();
  if (ch.context_amplitudes.size() != (std::size_t{1} << nc)) {
    throw DimensionError("context amplitude count does not match non-input width");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<complex> amps(dim, complex{0.0, 0.0});
  const std::size_t di = std::size_t{1} << ni;
  const std::size_t dc = std::size_t{1} << nc;
  for (std::size_t i = 0; i < di; ++i) {
    if (input_amplitudes[i] == complex{0.0, 0.0}) continue;
    for (std::size_t c = 0; c < dc; ++c) {
      if (ch.context_amplitudes[c] == complex{0.0, 0.0}) continue;
      std::size_t idx = 0;
      for (std::size_t j = 0; j < ni; ++j) {
        idx |= ((i >> (ni - 1 - j)) & 1u) << (n - 1 - in_pos[j]);
      }
      for (std::size_t j = 0; j < nc; ++j) {
        idx |= ((c >> (nc - 1 - j)) & 1u) << (n - 1 - ctx_pos[j]);
      }
      amps[idx] = input_amplitudes[i] * ch.context_amplitudes[c];
    }
  }
  LabeledState s = LabeledState::pure(proto.layout(), std::move(amps));
  for (const Step& step : t.steps) s = apply_step(s, step);
  return s;
}

}  // namespace qledger
