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

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "qledger/distill.hpp"
#include "qledger/errors.hpp"
#include "qledger/ledger.hpp"
#include "qledger/measures.hpp"
#include "qledger/protocols.hpp"
#include "qledger/qstate.hpp"

namespace qledger {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

// Normalise negative zero so equal values always serialise identically.
inline double clean_double(double v) { return v == 0.0 ? 0.0 : v; }

// 12 significant digits, trailing zeros trimmed; used for CSV and tables.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", clean_double(v));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

inline ordered_json to_json(const PartyLayout& layout) {
  ordered_json arr = ordered_json::array();
  for (const QubitSpec& q : layout.qubits()) {
    ordered_json item;
    item["label"] = q.label;
    item["party"] = to_string(q.party);
    item["role"] = to_string(q.role);
    arr.push_back(std::move(item));
  }
  return arr;
}

inline ordered_json to_json(const LabeledState& s) {
  ordered_json out;
  out["layout"] = to_json(s.layout());
  if (s.is_pure_form()) {
    out["form"] = "pure";
    ordered_json amps = ordered_json::array();
    for (const complex& a : s.amplitudes()) {
      amps.push_back({clean_double(a.real()), clean_double(a.imag())});
    }
    out["amplitudes"] = std::move(amps);
  } else {
    out["form"] = "density";
    const ComplexMatrix& rho = s.density_matrix();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < rho.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < rho.cols(); ++j) {
        row.push_back({clean_double(rho(i, j).real()), clean_double(rho(i, j).imag())});
      }
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
  }
  return out;
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ValidationError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

inline complex complex_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(where + " entries must be [re, im] number pairs");
  }
  return complex{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline LabeledState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("state document must be an object");
  detail::reject_unknown_keys(j, {"layout", "form", "amplitudes", "matrix"}, "state");
  if (!j.contains("layout") || !j["layout"].is_array()) {
    throw ValidationError("state document needs a layout array");
  }
  std::vector<QubitSpec> qubits;
  for (const auto& item : j["layout"]) {
    if (!item.is_object()) throw ValidationError("layout entries must be objects");
    detail::reject_unknown_keys(item, {"label", "party", "role"}, "layout entry");
    QubitSpec q;
    q.label = item.at("label").get<std::string>();
    q.party = party_from_string(item.at("party").get<std::string>());
    q.role = role_from_string(item.at("role").get<std::string>());
    qubits.push_back(std::move(q));
  }
  PartyLayout layout(std::move(qubits));
  const std::string form = j.value("form", std::string("pure"));
  if (form == "pure") {
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
      throw ValidationError("pure state document needs an amplitudes array");
    }
    std::vector<complex> amps;
    for (const auto& a : j["amplitudes"]) {
      amps.push_back(detail::complex_from_json(a, "amplitudes"));
    }
    return LabeledState::pure(std::move(layout), std::move(amps));
  }
  if (form != "density") throw ValidationError("state form must be pure or density");
  if (!j.contains("matrix") || !j["matrix"].is_array()) {
    throw ValidationError("density state document needs a matrix array");
  }
  const auto& rows = j["matrix"];
  ComplexMatrix rho(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != rows.size()) {
      throw ValidationError("density matrix rows must be square");
    }
    for (std::size_t jj = 0; jj < rows.size(); ++jj) {
      rho(i, jj) = detail::complex_from_json(rows[i][jj], "matrix");
    }
  }
  return LabeledState::density(std::move(layout), std::move(rho));
}

// ---------------------------------------------------------------------------
// Ledgers, snapshots, trajectories, reports
// ---------------------------------------------------------------------------

inline ordered_json to_json(const BalanceSnapshot& snap) {
  ordered_json out;
  out["step"] = snap.label;
  out["i_alice"] = clean_double(snap.i_alice);
  out["i_bob"] = clean_double(snap.i_bob);
  out["entanglement"] = clean_double(snap.entanglement);
  out["conservation"] = clean_double(snap.conservation);
  out["w_p_cumulative"] = clean_double(snap.w_p_cumulative);
  return out;
}

inline ordered_json to_json(const BalanceLedger& l) {
  ordered_json out;
  out["receiver"] = to_string(l.receiver);
  out["i_alice_in"] = clean_double(l.i_alice_in);
  out["i_alice_out"] = clean_double(l.i_alice_out);
  out["i_bob_in"] = clean_double(l.i_bob_in);
  out["i_bob_out"] = clean_double(l.i_bob_out);
  out["e_in"] = clean_double(l.e_in);
  out["e_out"] = clean_double(l.e_out);
  out["w_p"] = clean_double(l.w_p);
  out["w_l"] = clean_double(l.w_l);
  out["w_u"] = clean_double(l.w_u);
  out["conservation_in"] = clean_double(l.conservation_in);
  out["conservation_out"] = clean_double(l.conservation_out);
  out["balance_residual"] = clean_double(l.balance_residual());
  out["balance_ok"] = l.balance_ok();
  out["transmission_bound_ok"] = l.transmission_bound_ok();
  return out;
}

inline std::string ledger_csv_header() {
  return "receiver,i_alice_in,i_alice_out,i_bob_in,i_bob_out,e_in,e_out,"
         "w_p,w_l,w_u,conservation_in,conservation_out,balance_residual";
}

inline std::string ledger_csv_row(const BalanceLedger& l) {
  std::string out = to_string(l.receiver);
  for (double v : {l.i_alice_in, l.i_alice_out, l.i_bob_in, l.i_bob_out, l.e_in,
                   l.e_out, l.w_p, l.w_l, l.w_u, l.conservation_in,
                   l.conservation_out, l.balance_residual()}) {
    out += "," + format_double(v);
  }
  return out;
}

namespace detail {

inline std::string table_row(const std::string& key, const std::string& value) {
  std::string out = key;
  if (out.size() < 24) out.append(24 - out.size(), ' ');
  out += value;
  out += "\n";
  return out;
}

inline std::string table_row(const std::string& key, double value) {
  return table_row(key, format_double(value));
}

}  // namespace detail

inline std::string render_table(const BalanceLedger& l) {
  std::string out;
  out += detail::table_row("receiver", std::string(to_string(l.receiver)));
  out += detail::table_row("I_Alice (in -> out)", format_double(l.i_alice_in) +
                                                      " -> " +
                                                      format_double(l.i_alice_out));
  out += detail::table_row("I_Bob (in -> out)", format_double(l.i_bob_in) +
                                                    " -> " +
                                                    format_double(l.i_bob_out));
  out += detail::table_row("E (in -> out)",
                           format_double(l.e_in) + " -> " + format_double(l.e_out));
  out += detail::table_row("W_p", l.w_p);
  out += detail::table_row("W_l", l.w_l);
  out += detail::table_row("W_u", l.w_u);
  out += detail::table_row("conservation (in -> out)",
                           format_double(l.conservation_in) + " -> " +
                               format_double(l.conservation_out));
  out += detail::table_row("balance residual", l.balance_residual());
  out += detail::table_row("balance ok", std::string(l.balance_ok() ? "yes" : "no"));
  out += detail::table_row("transmission bound ok",
                           std::string(l.transmission_bound_ok() ? "yes" : "no"));
  return out;
}

inline std::string render_snapshot_table(const std::vector<BalanceSnapshot>& snaps) {
  std::string out = "step                          I_A        I_B        E          total      W_p\n";
  for (const BalanceSnapshot& s : snaps) {
    std::string line = s.label;
    if (line.size() < 30) line.append(30 - line.size(), ' ');
    for (double v : {s.i_alice, s.i_bob, s.entanglement, s.conservation,
                     s.w_p_cumulative}) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%-11.6g", clean_double(v));
      line += buf;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

inline ordered_json to_json(const DistillationRound& r) {
  ordered_json out;
  out["round"] = r.round;
  out["fidelity"] = clean_double(r.fidelity);
  out["p_keep"] = clean_double(r.p_keep);
  out["yield"] = clean_double(r.yield);
  return out;
}

inline std::string trajectory_csv(const std::vector<DistillationRound>& rows) {
  std::string out = "round,fidelity,p_keep,yield\n";
  for (const DistillationRound& r : rows) {
    out += std::to_string(r.round) + "," + format_double(r.fidelity) + "," +
           format_double(r.p_keep) + "," + format_double(r.yield) + "\n";
  }
  return out;
}

inline std::string render_table(const std::vector<DistillationRound>& rows) {
  std::string out = "round  fidelity          p_keep            yield\n";
  for (const DistillationRound& r : rows) {
    char head[16];
    std::snprintf(head, sizeof(head), "%-7d", r.round);
    std::string line = head;
    for (double v : {r.fidelity, r.p_keep, r.yield}) {
      std::string cell = format_double(v);
      if (cell.size() < 18) cell.append(18 - cell.size(), ' ');
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

inline ordered_json to_json(const DistillationLedger& l) {
  ordered_json out;
  out["input_fidelity"] = clean_double(l.input_fidelity);
  out["e_f"] = clean_double(l.e_f);
  out["delta"] = clean_double(l.delta);
  out["e_d_estimate"] = clean_double(l.e_d_estimate);
  out["e_bound_estimate"] = clean_double(l.e_bound_estimate);
  out["rounds"] = l.rounds;
  out["yield"] = clean_double(l.yield);
  out["w_p_per_pair"] = clean_double(l.w_p_per_pair);
  out["regime"] = std::string(1, l.regime);
  return out;
}

inline std::string distillation_csv_header() {
  return "input_fidelity,e_f,delta,e_d_estimate,e_bound_estimate,rounds,yield,"
         "w_p_per_pair,regime";
}

inline std::string distillation_csv_row(const DistillationLedger& l) {
  std::string out;
  for (double v : {l.input_fidelity, l.e_f, l.delta, l.e_d_estimate,
                   l.e_bound_estimate}) {
    out += format_double(v) + ",";
  }
  out += std::to_string(l.rounds) + "," + format_double(l.yield) + "," +
         format_double(l.w_p_per_pair) + "," + std::string(1, l.regime);
  return out;
}

namespace detail {

inline std::string bar(double value, double scale_max, std::size_t width = 40) {
  std::size_t filled = 0;
  if (scale_max > 0.0 && value > 0.0) {
    const double frac = value / scale_max;
    filled = static_cast<std::size_t>(frac * static_cast<double>(width) + 0.5);
    filled = std::min(filled, width);
  }
  std::string out = "|";
  out.append(filled, '#');
  out.append(width - filled, ' ');
  out += "|";
  return out;
}

}  // namespace detail

inline std::string render_table(const DistillationLedger& l) {
  const double m = std::max({l.e_f, l.e_d_estimate, l.e_bound_estimate, 1e-300});
  std::string out;
  out += detail::table_row("regime", std::string(1, l.regime));
  out += detail::table_row("input fidelity", l.input_fidelity);
  out += detail::table_row("delta (entropy)", l.delta);
  auto bar_row = [&](const std::string& name, double v) {
    std::string val = format_double(v);
    if (val.size() < 18) val.append(18 - val.size(), ' ');
    std::string key = name;
    if (key.size() < 10) key.append(10 - key.size(), ' ');
    return key + val + detail::bar(v, m) + "\n";
  };
  out += bar_row("E_F", l.e_f);
  out += bar_row("E_D est", l.e_d_estimate);
  out += bar_row("E_bound", l.e_bound_estimate);
  out += detail::table_row("rounds", std::to_string(l.rounds));
  out += detail::table_row("yield", l.yield);
  out += detail::table_row("w_p per pair", l.w_p_per_pair);
  return out;
}

inline ordered_json to_json(const GibbsHelmholtzRecord& r) {
  ordered_json out;
  out["e_f_single_copy"] = clean_double(r.e_f);
  out["e_d_lower"] = clean_double(r.e_d_lower);
  out["e_d_upper"] = clean_double(r.e_d_upper);
  out["e_bound_lower"] = clean_double(r.e_bound_lower);
  out["e_bound_upper"] = clean_double(r.e_bound_upper);
  out["classification"] = to_string(r.classification);
  return out;
}

inline std::string gibbs_csv_header() {
  return "e_f_single_copy,e_d_lower,e_d_upper,e_bound_lower,e_bound_upper,"
         "classification";
}

inline std::string gibbs_csv_row(const GibbsHelmholtzRecord& r) {
  std::string out;
  for (double v : {r.e_f, r.e_d_lower, r.e_d_upper, r.e_bound_lower,
                   r.e_bound_upper}) {
    out += format_double(v) + ",";
  }
  out += to_string(r.classification);
  return out;
}

inline std::string render_table(const GibbsHelmholtzRecord& r) {
  std::string out;
  out += detail::table_row("classification", std::string(to_string(r.classification)));
  out += detail::table_row("E_F (single copy)", r.e_f);
  out += detail::table_row("E_D", "[" + format_double(r.e_d_lower) + ", " +
                                      format_double(r.e_d_upper) + "]");
  out += detail::table_row("E_bound", "[" + format_double(r.e_bound_lower) + ", " +
                                          format_double(r.e_bound_upper) + "]");
  return out;
}

}  // namespace qledger
