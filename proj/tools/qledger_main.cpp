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

// Command-line front end: run the bundled protocols, evaluate their
// information-balance ledgers, and print the result as a table, JSON or CSV.
//
// Exit codes: 0 success, 1 invalid input, 2 a balance law failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qledger/qledger.hpp"

namespace {

qledger::ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qledger::ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return qledger::ordered_json::parse(buf.str());
}

std::vector<double> build_grid(const std::vector<double>& values, double from,
                               double to, double step, bool have_range) {
  if (!values.empty()) return values;
  if (!have_range) {
    throw qledger::ValidationError("sweep needs --values or --from/--to/--step");
  }
  if (step <= 0.0) throw qledger::ValidationError("sweep step must be positive");
  std::vector<double> grid;
  for (double v = from; v <= to + 1e-12; v += step) grid.push_back(v);
  if (grid.empty()) throw qledger::ValidationError("sweep grid is empty");
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information balance ledgers for closed bipartite protocols"};
  app.require_subcommand(0, 1);

  std::uint64_t seed = 0;
  std::string format = "table";
  std::string scenario_path;
  app.add_option("--seed", seed, "seed for random inputs (default 0)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--scenario", scenario_path, "run a scenario JSON file");

  // teleport
  auto* teleport_cmd =
      app.add_subcommand("teleport", "teleport a random qubit through a singlet");
  bool decohere = false;
  teleport_cmd->add_flag("--decohere", decohere,
                         "decohere the pointer record before transmission");

  // send
  auto* send_cmd = app.add_subcommand("send", "transmit one qubit directly");
  std::string mode = "unentangled";
  send_cmd->add_option("--mode", mode, "unentangled | entangled_half");

  // bbpssw
  auto* bbpssw_cmd =
      app.add_subcommand("bbpssw", "iterate recurrence distillation on Werner pairs");
  double fidelity = 0.8;
  int rounds = 1;
  bool no_twirl = false;
  bbpssw_cmd->add_option("--fidelity", fidelity, "input singlet fidelity")
      ->required();
  bbpssw_cmd->add_option("--rounds", rounds, "number of recurrence rounds");
  bbpssw_cmd->add_flag("--no-twirl", no_twirl, "skip the Werner twirl each round");

  // distill
  auto* distill_cmd =
      app.add_subcommand("distill", "free/bound split of a Werner pair's entanglement");
  double distill_fidelity = 0.8;
  int max_rounds = 8;
  double w_p_per_pair = 1.0;
  bool distill_no_twirl = false;
  distill_cmd->add_option("--fidelity", distill_fidelity, "input singlet fidelity")
      ->required();
  distill_cmd->add_option("--max-rounds", max_rounds, "recurrence depth to search");
  distill_cmd->add_option("--wp", w_p_per_pair, "transmission cost booked per pair");
  distill_cmd->add_flag("--no-twirl", distill_no_twirl,
                        "skip the Werner twirl each round");

  // measures
  auto* measures_cmd =
      app.add_subcommand("measures", "entanglement measures of a two-qubit state");
  double measures_fidelity = -1.0;
  std::string state_file;
  measures_cmd->add_option("--fidelity", measures_fidelity,
                           "Werner state singlet fidelity");
  measures_cmd->add_option("--state-file", state_file,
                           "JSON file holding a labelled state");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one numeric parameter");
  std::string sweep_protocol, sweep_param;
  std::vector<double> sweep_values;
  double sweep_from = 0.0, sweep_to = 0.0, sweep_step = 0.0;
  sweep_cmd->add_option("--protocol", sweep_protocol, "bbpssw | distill_report")
      ->required();
  sweep_cmd->add_option("--param", sweep_param, "parameter to sweep")->required();
  sweep_cmd->add_option("--values", sweep_values, "explicit grid values");
  auto* opt_from = sweep_cmd->add_option("--from", sweep_from, "grid start");
  sweep_cmd->add_option("--to", sweep_to, "grid end");
  sweep_cmd->add_option("--step", sweep_step, "grid step");

  CLI11_PARSE(app, argc, argv);

  try {
    const qledger::OutputFormat out_format = qledger::format_from_string(format);
    qledger::RunResult result;

    if (teleport_cmd->parsed()) {
      qledger::ScenarioSpec spec;
      spec.protocol = "teleport";
      spec.seed = seed;
      spec.output = out_format;
      spec.params["decohere"] = decohere;
      result = qledger::run_scenario(spec);
    } else if (send_cmd->parsed()) {
      qledger::ScenarioSpec spec;
      spec.protocol = "send";
      spec.seed = seed;
      spec.output = out_format;
      spec.params["mode"] = (mode == "entangled-half") ? "entangled_half" : mode;
      result = qledger::run_scenario(spec);
    } else if (bbpssw_cmd->parsed()) {
      qledger::ScenarioSpec spec;
      spec.protocol = "bbpssw";
      spec.seed = seed;
      spec.output = out_format;
      spec.params["fidelity"] = fidelity;
      spec.params["rounds"] = rounds;
      spec.params["twirl"] = !no_twirl;
      result = qledger::run_scenario(spec);
    } else if (distill_cmd->parsed()) {
      qledger::ScenarioSpec spec;
      spec.protocol = "distill_report";
      spec.seed = seed;
      spec.output = out_format;
      spec.params["fidelity"] = distill_fidelity;
      spec.params["max_rounds"] = max_rounds;
      spec.params["w_p_per_pair"] = w_p_per_pair;
      spec.params["twirl"] = !distill_no_twirl;
      result = qledger::run_scenario(spec);
    } else if (measures_cmd->parsed()) {
      if ((measures_fidelity >= 0.0) == !state_file.empty()) {
        throw qledger::ValidationError(
            "measures takes exactly one of --fidelity or --state-file");
      }
      qledger::LabeledState state = [&] {
        if (!state_file.empty()) {
          return qledger::state_from_json(load_json_file(state_file));
        }
        return qledger::LabeledState::density(
            qledger::PartyLayout(
                {{"A", qledger::Party::Alice, qledger::Role::System},
                 {"B", qledger::Party::Bob, qledger::Role::System}}),
            qledger::werner_density(measures_fidelity));
      }();
      result = qledger::run_measures(state, {}, out_format);
    } else if (sweep_cmd->parsed()) {
      const bool have_range = opt_from->count() > 0;
      const std::vector<double> grid =
          build_grid(sweep_values, sweep_from, sweep_to, sweep_step, have_range);
      qledger::ScenarioSpec base;
      base.protocol = sweep_protocol;
      base.seed = seed;
      base.output = out_format;
      result = qledger::run_sweep(sweep_protocol, sweep_param, grid, base);
    } else if (!scenario_path.empty()) {
      qledger::ScenarioSpec spec =
          qledger::scenario_from_json(load_json_file(scenario_path));
      result = qledger::run_scenario(spec);
    } else {
      std::cerr << app.help() << std::endl;
      return 1;
    }

    std::cout << result.output;
    return result.exit_code;
  } catch (const qledger::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
