// Copyright 2026 The oamqc Authors
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

#include "oamqc/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "oamqc/compiler.hpp"
#include "oamqc/error.hpp"
#include "oamqc/extraction.hpp"
#include "oamqc/json_io.hpp"
#include "oamqc/readout.hpp"

namespace oamqc::cli {

namespace {

using io::Json;

struct Options {
  std::string input;
  std::string netlist;
  std::string output;
  std::string report;
  std::string state;
  std::string spec_n = "ideal";
  std::uint64_t seed = 0;
  std::int64_t monte_carlo = 0;
  bool expand = false;
  double tolerance = kCompileGuard;
  // zeno-sweep
  OamIndex m = 0;
  std::optional<OamIndex> ell;
  std::vector<int> stages = {1, 3, 10, 100, 1000};
  // readout
  std::string strategy = "sorter";
  std::optional<int> n;
  int mode = 0;
  std::string bit_order = "lsb";
  std::int64_t arm_budget = kDefaultArmBudget;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_atomic(path, text);
  }
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

int cmd_compile(const Options& opt, std::ostream& out) {
  const ComplexMatrix u = io::unitary_from_json(io::read_json_file(opt.input));
  const Stages stages = io::parse_stages(opt.spec_n);
  std::optional<PhotonState> input;
  if (!opt.state.empty()) {
    input = io::state_from_json(io::read_json_file(opt.state));
  }
  CompileResult result = compile_unitary(u, stages, input);
  const Netlist& netlist =
      opt.expand ? expand_macros(result.netlist) : result.netlist;

  Json report = io::report_to_json(result.report);
  report["parity_ok"] = check_reflection_parity(netlist).all_even;
  report["expanded"] = opt.expand;
  if (!opt.output.empty()) {
    io::write_text_atomic(opt.output, io::dump(io::netlist_to_json(netlist)));
  } else {
    report["netlist"] = io::netlist_to_json(netlist);
  }
  emit(opt.report, io::dump(report), out);
  if (!stages && !(result.report.verification_residual < kCompileGuard)) {
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const Netlist netlist = io::netlist_from_json(io::read_json_file(opt.netlist));
  const PhotonState state = io::state_from_json(io::read_json_file(opt.input));
  const PhotonState final_state = run_netlist(state, netlist);

  Json summary{{"survival", survival_probability(final_state)},
               {"seed", opt.seed}};
  if (opt.monte_carlo > 0) {
    summary["monte_carlo"] = io::monte_carlo_to_json(
        monte_carlo_run(state, netlist, opt.monte_carlo, opt.seed));
  }
  if (opt.output.empty()) {
    summary["state"] = io::state_to_json(final_state);
  } else {
    io::write_text_atomic(opt.output,
                          io::dump(io::state_to_json(final_state)));
  }
  emit(opt.report, io::dump(summary), out);
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const Netlist netlist = io::netlist_from_json(io::read_json_file(opt.netlist));
  const ComplexMatrix u = io::unitary_from_json(io::read_json_file(opt.input));
  const double residual = unitarity_residual(u);
  if (!(residual <= kUnitaryTolerance)) {
    throw ValidationError("target matrix is not unitary");
  }
  const double verification = reconstruct_and_verify(netlist, u);
  const ReflectionParityReport parity = check_reflection_parity(netlist);
  const bool ok = verification < opt.tolerance && parity.all_even;
  Json doc{{"residual", verification},
           {"tolerance", opt.tolerance},
           {"parity", io::parity_to_json(parity)},
           {"ok", ok}};
  emit(opt.output, io::dump(doc), out);
  return ok ? kExitOk : kExitValidation;
}

int cmd_zeno_sweep(const Options& opt, std::ostream& out) {
  const OamIndex ell = opt.ell.value_or(opt.m + 1);
  const auto rows = zeno_sweep(opt.m, ell, opt.stages);
  std::ostringstream csv;
  csv << "N,analytic_survival,simulated_survival,bound_1_minus_pi2_over_4N\n";
  for (const ZenoSweepRow& row : rows) {
    csv << row.stages << ',' << format_double(row.analytic_survival) << ','
        << format_double(row.simulated_survival) << ','
        << format_double(row.estimate) << '\n';
  }
  emit(opt.output, csv.str(), out);
  return kExitOk;
}

int cmd_readout(const Options& opt, std::ostream& out) {
  std::optional<PhotonState> state;
  if (!opt.input.empty()) {
    state = io::state_from_json(io::read_json_file(opt.input));
  }
  if (!state && !opt.n) {
    throw ValidationError("readout needs --input or --n");
  }
  const int n = state ? state->width() : *opt.n;
  Json doc{{"strategy", opt.strategy}, {"n", n}, {"seed", opt.seed}};
  Json warnings = Json::array();

  if (opt.strategy == "sorter") {
    const SorterPlan plan = plan_sorter(n, opt.arm_budget);
    doc["cost"] = io::cost_to_json(plan.cost);
    if (plan.exceeds_budget) {
      warnings.push_back("sorter needs " + std::to_string(plan.cost.arms) +
                         " arms, above the budget of " +
                         std::to_string(opt.arm_budget) +
                         " (exponential growth in n)");
    }
    if (state) {
      const OamIndex ell = sample_full_measurement(*state, opt.mode, opt.seed);
      doc["result"] = Json{{"l", ell}};
      if (ell >= 0 && ell < state->dimension()) {
        doc["result"]["bits"] = to_bit_string(ell, n);
      } else {
        warnings.push_back("measured OAM outside the computational range");
      }
    }
  } else if (opt.strategy == "repeat") {
    if (!state) throw ValidationError("repeat readout needs --input");
    BitOrder order;
    if (opt.bit_order == "lsb") {
      order = BitOrder::kLsbFirst;
    } else if (opt.bit_order == "msb") {
      order = BitOrder::kMsbFirst;
    } else {
      throw ValidationError("--bit-order must be lsb or msb");
    }
    const auto result = repeated_run_readout([&] { return *state; }, opt.mode,
                                             n, opt.seed, order);
    doc["cost"] = io::cost_to_json(result.cost);
    doc["result"] = Json{{"bits", result.bits}, {"bit_order", opt.bit_order}};
  } else if (opt.strategy == "demux") {
    if (state) {
      const DemuxResult result = demux(*state, opt.mode);
      doc["cost"] = io::cost_to_json(result.cost);
      doc["result"] = io::path_state_to_json(result.path);
    } else {
      doc["cost"] = io::cost_to_json(demux_cost(n));
    }
  } else {
    throw ValidationError("unknown readout strategy '" + opt.strategy + "'");
  }
  doc["warnings"] = std::move(warnings);
  emit(opt.output, io::dump(doc), out);
  return kExitOk;
}

void report_error(std::ostream& err, const char* kind,
                  const std::string& message, int code) {
  Json doc{{"error", {{"kind", kind}, {"message", message}}},
           {"exit_code", code}};
  err << doc.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Compiler and simulator for single-photon OAM quantum circuits",
               "oamqc"};
  app.require_subcommand(1);
  Options opt;

  auto* compile = app.add_subcommand("compile", "Compile a unitary to a netlist");
  compile->add_option("--input", opt.input, "Unitary JSON")->required();
  compile->add_option("--output", opt.output, "Netlist JSON to write");
  compile->add_option("--report", opt.report, "Compile report JSON to write");
  compile->add_option("--spec-n", opt.spec_n, "Zeno stages: integer or ideal");
  compile->add_option("--state", opt.state,
                      "Input state used for the survival figures");
  compile->add_flag("--expand", opt.expand,
                    "Write finite-stage macros as primitive elements");

  auto* simulate = app.add_subcommand("simulate", "Run a netlist on a state");
  simulate->add_option("--netlist", opt.netlist, "Netlist JSON")->required();
  simulate->add_option("--input", opt.input, "State JSON")->required();
  simulate->add_option("--output", opt.output, "Final state JSON to write");
  simulate->add_option("--report", opt.report, "Summary JSON to write");
  simulate->add_option("--seed", opt.seed, "Seed for Monte Carlo sampling");
  simulate->add_option("--monte-carlo", opt.monte_carlo,
                       "Number of sampled runs")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Check a netlist against a unitary");
  verify->add_option("--netlist", opt.netlist, "Netlist JSON")->required();
  verify->add_option("--input", opt.input, "Unitary JSON")->required();
  verify->add_option("--output", opt.output, "Verification JSON to write");
  verify->add_option("--tolerance", opt.tolerance, "Frobenius tolerance");

  auto* sweep = app.add_subcommand("zeno-sweep", "Extraction survival versus N");
  sweep->add_option("--m", opt.m, "Extracted OAM index");
  sweep->add_option("--ell", opt.ell, "Probe component (default m + 1)");
  sweep->add_option("--stages", opt.stages, "Stage counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep->add_option("--output", opt.output, "CSV to write");

  auto* readout = app.add_subcommand("readout", "Plan or simulate readout");
  readout->add_option("--input", opt.input, "State JSON");
  readout->add_option("--strategy", opt.strategy, "sorter, repeat or demux")
      ->check(CLI::IsMember({"sorter", "repeat", "demux"}));
  readout->add_option("--n", opt.n, "Register width when no state is given")
      ->check(CLI::Range(1, 62));
  readout->add_option("--mode", opt.mode, "Spatial mode holding the register");
  readout->add_option("--seed", opt.seed, "Sampling seed");
  readout->add_option("--bit-order", opt.bit_order, "lsb or msb");
  readout->add_option("--arm-budget", opt.arm_budget,
                      "Sorter arm count above which a warning is raised");
  readout->add_option("--output", opt.output, "Report JSON to write");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    report_error(err, "usage", e.what(), kExitValidation);
    return kExitValidation;
  }

  try {
    if (compile->parsed()) return cmd_compile(opt, out);
    if (simulate->parsed()) return cmd_simulate(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (sweep->parsed()) return cmd_zeno_sweep(opt, out);
    if (readout->parsed()) return cmd_readout(opt, out);
  } catch (const IoError& e) {
    report_error(err, "io", e.what(), kExitIo);
    return kExitIo;
  } catch (const std::exception& e) {
    report_error(err, "validation", e.what(), kExitValidation);
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace oamqc::cli
