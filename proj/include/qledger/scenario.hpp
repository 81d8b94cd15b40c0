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
#include <string>
#include <vector>

#include "json.hpp"
#include "qledger/distill.hpp"
#include "qledger/errors.hpp"
#include "qledger/ledger.hpp"
#include "qledger/protocols.hpp"
#include "qledger/serialize.hpp"

namespace qledger {

enum class OutputFormat { Table, Json, Csv };

inline OutputFormat format_from_string(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ValidationError("unknown output format: " + s);
}

// A declarative run request: which protocol, its parameters, the seed for
// anything random, and the output format.
struct ScenarioSpec {
  std::string protocol;
  ordered_json params = ordered_json::object();
  std::uint64_t seed = 0;
  OutputFormat output = OutputFormat::Table;
};

// Exit codes: 0 success, 1 invalid input (reported via exceptions), 2 a
// checked balance law failed during the run.
struct RunResult {
  int exit_code = 0;
  std::string output;
};

inline ScenarioSpec scenario_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("scenario document must be an object");
  detail::reject_unknown_keys(j, {"protocol", "params", "seed", "output"}, "scenario");
  ScenarioSpec spec;
  if (!j.contains("protocol") || !j["protocol"].is_string()) {
    throw ValidationError("scenario needs a protocol string");
  }
  spec.protocol = j["protocol"].get<std::string>();
  static const char* known[] = {"teleport", "send", "bbpssw", "distill_report",
                                "balance_sweep"};
  bool ok = false;
  for (const char* k : known) {
    if (spec.protocol == k) ok = true;
  }
  if (!ok) throw ValidationError("unknown protocol: " + spec.protocol);
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ValidationError("params must be an object");
    spec.params = j["params"];
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned()) {
      throw ValidationError("seed must be a nonnegative integer");
    }
    if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0) {
      throw ValidationError("seed must be a nonnegative integer");
    }
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ValidationError("output must be a string");
    spec.output = format_from_string(j["output"].get<std::string>());
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Parameter extraction helpers (strict: unknown keys are rejected)
// ---------------------------------------------------------------------------

namespace detail {

inline double require_number(const ordered_json& p, const char* key) {
  if (!p.contains(key) || !p[key].is_number()) {
    throw ValidationError(std::string("missing or non-numeric parameter: ") + key);
  }
  return p[key].get<double>();
}

inline double number_param(const ordered_json& p, const char* key, double def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_number()) {
    throw ValidationError(std::string("parameter must be numeric: ") + key);
  }
  return p[key].get<double>();
}

inline int int_param(const ordered_json& p, const char* key, int def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_number_integer() && !p[key].is_number_unsigned()) {
    throw ValidationError(std::string("parameter must be an integer: ") + key);
  }
  return p[key].get<int>();
}

inline bool bool_param(const ordered_json& p, const char* key, bool def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_boolean()) {
    throw ValidationError(std::string("parameter must be a boolean: ") + key);
  }
  return p[key].get<bool>();
}

inline std::vector<complex> qubit_amplitudes_param(const ordered_json& p,
                                                   const char* key) {
  const auto& arr = p[key];
  if (!arr.is_array() || arr.size() != 2) {
    throw ValidationError("state parameter must list two [re, im] pairs");
  }
  std::vector<complex> amps;
  for (const auto& a : arr) amps.push_back(complex_from_json(a, "state"));
  return amps;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Protocol runners
// ---------------------------------------------------------------------------

namespace detail {

struct BbpsswParams {
  double fidelity = 0.0;
  int rounds = 1;
  bool twirl = true;
};

inline BbpsswParams parse_bbpssw_params(const ordered_json& p) {
  reject_unknown_keys(p, {"fidelity", "rounds", "twirl"}, "bbpssw params");
  BbpsswParams out;
  out.fidelity = require_number(p, "fidelity");
  out.rounds = int_param(p, "rounds", 1);
  out.twirl = bool_param(p, "twirl", true);
  return out;
}

struct DistillParams {
  ComplexMatrix rho;
  DistillationStrategy strategy;
};

inline DistillParams parse_distill_params(const ordered_json& p) {
  reject_unknown_keys(p, {"fidelity", "matrix", "max_rounds", "w_p_per_pair", "twirl"},
                      "distill_report params");
  DistillParams out;
  const bool has_f = p.contains("fidelity");
  const bool has_m = p.contains("matrix");
  if (has_f == has_m) {
    throw ValidationError("distill_report takes exactly one of fidelity or matrix");
  }
  if (has_f) {
    out.rho = werner_density(require_number(p, "fidelity"));
  } else {
    const auto& rows = p["matrix"];
    if (!rows.is_array() || rows.size() != 4) {
      throw ValidationError("matrix parameter must be a 4x4 array of [re, im] pairs");
    }
    out.rho = ComplexMatrix(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 4) {
        throw ValidationError("matrix parameter must be a 4x4 array of [re, im] pairs");
      }
      for (std::size_t j = 0; j < 4; ++j) {
        out.rho(i, j) = complex_from_json(rows[i][j], "matrix");
      }
    }
  }
  out.strategy.max_rounds = int_param(p, "max_rounds", 8);
  out.strategy.w_p_per_pair = number_param(p, "w_p_per_pair", 1.0);
  out.strategy.twirl = bool_param(p, "twirl", true);
  return out;
}

// Shared rendering for the transmission protocols (teleport / send).
inline RunResult render_transport(const ScenarioSpec& spec, const char* protocol,
                                  const ordered_json& extra_fields,
                                  const BalanceLedger& ledger,
                                  const std::vector<BalanceSnapshot>& snapshots,
                                  bool have_fidelity, double out_fidelity) {
  const int code =
      (ledger.balance_ok() && ledger.transmission_bound_ok()) ? 0 : 2;
  switch (spec.output) {
    case OutputFormat::Json: {
      ordered_json out;
      out["protocol"] = protocol;
      out["seed"] = spec.seed;
      for (auto it = extra_fields.begin(); it != extra_fields.end(); ++it) {
        out[it.key()] = it.value();
      }
      if (have_fidelity) out["output_fidelity"] = clean_double(out_fidelity);
      out["ledger"] = to_json(ledger);
      ordered_json snaps = ordered_json::array();
      for (const BalanceSnapshot& s : snapshots) snaps.push_back(to_json(s));
      out["snapshots"] = std::move(snaps);
      return {code, out.dump(2) + "\n"};
    }
    case OutputFormat::Csv: {
      std::string header = ledger_csv_header();
      std::string row = ledger_csv_row(ledger);
      if (have_fidelity) {
        header += ",output_fidelity";
        row += "," + format_double(out_fidelity);
      }
      return {code, header + "\n" + row + "\n"};
    }
    default: {
      std::string out = table_row("protocol", std::string(protocol));
      out += render_table(ledger);
      if (have_fidelity) out += table_row("output fidelity", out_fidelity);
      out += "\n" + render_snapshot_table(snapshots);
      return {code, out};
    }
  }
}

inline RunResult run_teleport_scenario(const ScenarioSpec& spec) {
  reject_unknown_keys(spec.params, {"decohere", "state"}, "teleport params");
  TeleportOptions opts;
  opts.decohere_pointers = bool_param(spec.params, "decohere", false);
  std::vector<complex> amps;
  if (spec.params.contains("state")) {
    amps = qubit_amplitudes_param(spec.params, "state");
  } else {
    amps = random_state_amplitudes(1, spec.seed);
  }
  const ProtocolTranscript t = teleport(amps, opts);
  const BalanceLedger ledger = check_balance(t);
  const std::vector<std::string> out_lbl = {"S_b"};
  const LabeledState reduced = partial_trace(t.final_state.value(), out_lbl);
  const double f = fidelity(LabeledState::pure(reduced.layout(), amps), reduced);
  ordered_json extra;
  extra["decohere"] = opts.decohere_pointers;
  return render_transport(spec, "teleport", extra, ledger, t.snapshots, true, f);
}

inline RunResult run_send_scenario(const ScenarioSpec& spec) {
  reject_unknown_keys(spec.params, {"mode", "state"}, "send params");
  if (!spec.params.contains("mode") || !spec.params["mode"].is_string()) {
    throw ValidationError("send requires a mode string");
  }
  const SendMode mode = send_mode_from_string(spec.params["mode"].get<std::string>());
  std::vector<complex> amps;
  if (mode == SendMode::Unentangled) {
    amps = spec.params.contains("state")
               ? qubit_amplitudes_param(spec.params, "state")
               : random_state_amplitudes(1, spec.seed);
  } else if (spec.params.contains("state")) {
    throw ValidationError("entangled-half send prepares its own pair state");
  }
  const ProtocolTranscript t = send_qubit(mode, amps);
  const BalanceLedger ledger = check_balance(t);
  bool have_fidelity = false;
  double f = 0.0;
  if (mode == SendMode::Unentangled) {
    const std::vector<std::string> out_lbl = {"Q"};
    const LabeledState reduced = partial_trace(t.final_state.value(), out_lbl);
    f = fidelity(LabeledState::pure(reduced.layout(), amps), reduced);
    have_fidelity = true;
  }
  ordered_json extra;
  extra["mode"] =
      mode == SendMode::Unentangled ? "unentangled" : "entangled_half";
  return render_transport(spec, "send", extra, ledger, t.snapshots,
                          have_fidelity, f);
}

inline RunResult run_bbpssw_scenario(const ScenarioSpec& spec) {
  const BbpsswParams p = parse_bbpssw_params(spec.params);
  RecurrenceOptions opts;
  opts.twirl = p.twirl;
  const std::vector<DistillationRound> rows =
      bbpssw_iterate(p.fidelity, p.rounds, opts);
  switch (spec.output) {
    case OutputFormat::Json: {
      ordered_json out;
      out["protocol"] = "bbpssw";
      out["seed"] = spec.seed;
      out["fidelity"] = clean_double(p.fidelity);
      out["rounds"] = p.rounds;
      out["twirl"] = p.twirl;
      ordered_json arr = ordered_json::array();
      for (const DistillationRound& r : rows) arr.push_back(to_json(r));
      out["trajectory"] = std::move(arr);
      return {0, out.dump(2) + "\n"};
    }
    case OutputFormat::Csv:
      return {0, trajectory_csv(rows)};
    default:
      return {0, render_table(rows)};
  }
}

inline RunResult run_distill_scenario(const ScenarioSpec& spec) {
  const DistillParams p = parse_distill_params(spec.params);
  const DistillationLedger ledger = distillation_report(p.rho, p.strategy);
  switch (spec.output) {
    case OutputFormat::Json: {
      ordered_json out;
      out["protocol"] = "distill_report";
      out["seed"] = spec.seed;
      out["max_rounds"] = p.strategy.max_rounds;
      out["twirl"] = p.strategy.twirl;
      out["ledger"] = to_json(ledger);
      return {0, out.dump(2) + "\n"};
    }
    case OutputFormat::Csv:
      return {0, distillation_csv_header() + "\n" + distillation_csv_row(ledger) + "\n"};
    default:
      return {0, render_table(ledger)};
  }
}

inline RunResult run_balance_sweep_scenario(const ScenarioSpec& spec) {
  reject_unknown_keys(spec.params,
                      {"trials", "max_qubits_per_side", "allow_decohere"},
                      "balance_sweep params");
  const int trials = int_param(spec.params, "trials", 100);
  if (trials < 1) throw ValidationError("trials must be at least 1");
  RandomTranscriptOptions opts;
  opts.max_qubits_per_side = static_cast<std::size_t>(
      int_param(spec.params, "max_qubits_per_side", 3));
  opts.allow_decohere = bool_param(spec.params, "allow_decohere", true);

  double max_abs_residual = 0.0;
  int balance_violations = 0;
  int bound_violations = 0;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed =
        spec.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1);
    const ProtocolTranscript t = make_random_transcript(trial_seed, opts);
    const BalanceLedger ledger = check_balance(t);
    max_abs_residual =
        std::max(max_abs_residual, std::abs(ledger.balance_residual()));
    if (!ledger.balance_ok()) ++balance_violations;
    if (!ledger.transmission_bound_ok()) ++bound_violations;
  }
  const int code = (balance_violations == 0 && bound_violations == 0) ? 0 : 2;
  switch (spec.output) {
    case OutputFormat::Json: {
      ordered_json out;
      out["protocol"] = "balance_sweep";
      out["seed"] = spec.seed;
      out["trials"] = trials;
      out["max_qubits_per_side"] = static_cast<int>(opts.max_qubits_per_side);
      out["allow_decohere"] = opts.allow_decohere;
      out["max_abs_residual"] = clean_double(max_abs_residual);
      out["balance_violations"] = balance_violations;
      out["transmission_bound_violations"] = bound_violations;
      return {code, out.dump(2) + "\n"};
    }
    case OutputFormat::Csv: {
      std::string out =
          "trials,max_abs_residual,balance_violations,transmission_bound_violations\n";
      out += std::to_string(trials) + "," + format_double(max_abs_residual) + "," +
             std::to_string(balance_violations) + "," +
             std::to_string(bound_violations) + "\n";
      return {code, out};
    }
    default: {
      std::string out;
      out += table_row("trials", std::to_string(trials));
      out += table_row("max |residual|", max_abs_residual);
      out += table_row("balance violations", std::to_string(balance_violations));
      out += table_row("transmission bound violations",
                       std::to_string(bound_violations));
      return {code, out};
    }
  }
}

}  // namespace detail

inline RunResult run_scenario(const ScenarioSpec& spec) {
  if (spec.protocol == "teleport") return detail::run_teleport_scenario(spec);
  if (spec.protocol == "send") return detail::run_send_scenario(spec);
  if (spec.protocol == "bbpssw") return detail::run_bbpssw_scenario(spec);
  if (spec.protocol == "distill_report") return detail::run_distill_scenario(spec);
  if (spec.protocol == "balance_sweep") {
    return detail::run_balance_sweep_scenario(spec);
  }
  throw ValidationError("unknown protocol: " + spec.protocol);
}

// ---------------------------------------------------------------------------
// Measures report (used by the CLI `measures` command)
// ---------------------------------------------------------------------------

inline RunResult run_measures(const LabeledState& state,
                              const DistillationStrategy& strategy,
                              OutputFormat format) {
  const GibbsHelmholtzRecord rec = gibbs_helmholtz(state, strategy);
  const bool two_qubit = state.num_qubits() == 2;
  double conc = 0.0, neg = 0.0, hashing = 0.0;
  bool ppt = false;
  if (two_qubit) {
    const ComplexMatrix rho = state.to_density();
    conc = concurrence(rho);
    neg = negativity(state);
    ppt = is_ppt(state);
    hashing = hashing_lower_bound(bell_diagonal_projection(rho));
  }
  switch (format) {
    case OutputFormat::Json: {
      ordered_json out;
      out["record"] = to_json(rec);
      if (two_qubit) {
        out["concurrence"] = clean_double(conc);
        out["negativity"] = clean_double(neg);
        out["ppt"] = ppt;
        out["hashing_bell_frame"] = clean_double(hashing);
      }
      return {0, out.dump(2) + "\n"};
    }
    case OutputFormat::Csv: {
      std::string header = gibbs_csv_header();
      std::string row = gibbs_csv_row(rec);
      if (two_qubit) {
        header += ",concurrence,negativity,ppt,hashing_bell_frame";
        row += "," + format_double(conc) + "," + format_double(neg) + "," +
               (ppt ? "true" : "false") + "," + format_double(hashing);
      }
      return {0, header + "\n" + row + "\n"};
    }
    default: {
      std::string out = render_table(rec);
      if (two_qubit) {
        out += detail::table_row("concurrence", conc);
        out += detail::table_row("negativity", neg);
        out += detail::table_row("ppt", std::string(ppt ? "yes" : "no"));
        out += detail::table_row("hashing (Bell frame)", hashing);
      }
      return {0, out};
    }
  }
}

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

// Run one protocol over a grid of values for one numeric parameter and
// report a summary row per grid point.  Output is CSV (as a JSON array of
// rows when the base format asks for JSON).
inline RunResult run_sweep(const std::string& protocol, const std::string& param,
                           const std::vector<double>& grid,
                           const ScenarioSpec& base) {
  if (grid.empty()) throw ValidationError("sweep grid is empty");
  auto require_integral = [&](double v) {
    if (std::floor(v) != v) {
      throw ValidationError("parameter " + param + " takes integer values");
    }
  };

  if (protocol == "bbpssw") {
    if (param != "fidelity" && param != "rounds") {
      throw ValidationError("'" + param + "' is not a numeric bbpssw parameter");
    }
    std::string csv = "value,rounds,fidelity_out,p_keep_last,yield\n";
    ordered_json rows = ordered_json::array();
    for (double v : grid) {
      ordered_json params = base.params;
      if (param == "rounds") {
        require_integral(v);
        params[param] = static_cast<int>(v);
      } else {
        params[param] = v;
      }
      const detail::BbpsswParams p = detail::parse_bbpssw_params(params);
      RecurrenceOptions opts;
      opts.twirl = p.twirl;
      const std::vector<DistillationRound> traj =
          bbpssw_iterate(p.fidelity, p.rounds, opts);
      const DistillationRound& last = traj.back();
      csv += format_double(v) + "," + std::to_string(last.round) + "," +
             format_double(last.fidelity) + "," + format_double(last.p_keep) +
             "," + format_double(last.yield) + "\n";
      ordered_json row;
      row["value"] = clean_double(v);
      row["rounds"] = last.round;
      row["fidelity_out"] = clean_double(last.fidelity);
      row["p_keep_last"] = clean_double(last.p_keep);
      row["yield"] = clean_double(last.yield);
      rows.push_back(std::move(row));
    }
    if (base.output == OutputFormat::Json) return {0, rows.dump(2) + "\n"};
    return {0, csv};
  }

  if (protocol == "distill_report") {
    if (param != "fidelity" && param != "max_rounds" && param != "w_p_per_pair") {
      throw ValidationError("'" + param +
                            "' is not a numeric distill_report parameter");
    }
    std::string csv = "value," + distillation_csv_header() + "\n";
    ordered_json rows = ordered_json::array();
    for (double v : grid) {
      ordered_json params = base.params;
      if (param == "max_rounds") {
        require_integral(v);
        params[param] = static_cast<int>(v);
      } else {
        params[param] = v;
      }
      const detail::DistillParams p = detail::parse_distill_params(params);
      const DistillationLedger ledger = distillation_report(p.rho, p.strategy);
      csv += format_double(v) + "," + distillation_csv_row(ledger) + "\n";
      ordered_json row = to_json(ledger);
      ordered_json keyed;
      keyed["value"] = clean_double(v);
      for (auto it = row.begin(); it != row.end(); ++it) keyed[it.key()] = it.value();
      rows.push_back(std::move(keyed));
    }
    if (base.output == OutputFormat::Json) return {0, rows.dump(2) + "\n"};
    return {0, csv};
  }

  throw ValidationError("sweep supports the bbpssw and distill_report protocols");
}

}  // namespace qledger
