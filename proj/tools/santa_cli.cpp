// Copyright 2026 The Authors.
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

// santa: generate, solve, optstar, gap, verify.
//
// Exit codes: 0 success / valid witness, 1 operational error, 2 stuck with a
// valid witness, 3 invalid witness, 4 internal inconsistency.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "santa/generator.hpp"
#include "santa/report.hpp"

namespace {

using nlohmann::json;
using santa::Rational;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kStuck = 2;
constexpr int kInvalidWitness = 3;
constexpr int kInternal = 4;

struct Common {
  std::uint64_t seed = 0;
  std::string mode = "enum";
  std::string out;
  std::size_t guard_configs = santa::Limits{}.max_configurations;

  santa::Limits limits() const {
    santa::Limits l;
    l.max_configurations = guard_configs;
    return l;
  }
  santa::SolveMode solve_mode() const {
    return mode == "colgen" ? santa::SolveMode::kColumnGeneration : santa::SolveMode::kEnumeration;
  }
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void emit(const Common& c, const json& report) { write_text(c.out, report.dump(2) + "\n"); }

json counters_json(const santa::LpCounters& k) {
  return {{"configurations", k.configurations},
          {"lp_solves", k.lp_solves},
          {"lp_pivots", k.pivots},
          {"priced_columns", k.priced_columns},
          {"feasibility_checks", k.feasibility_checks}};
}

void add_spec_options(CLI::App* cmd, santa::GeneratorSpec& spec) {
  cmd->add_option("--players", spec.players, "number of players")->capture_default_str();
  cmd->add_option("--resources", spec.resources, "number of resources")->capture_default_str();
  cmd->add_option("--density", spec.density, "probability a player desires a resource, in (0,1]")
      ->capture_default_str();
  cmd->add_option("--grid", spec.grid, "values are drawn from {1/D, ..., D/D}")->capture_default_str();
}

int cmd_generate(const Common& c, santa::GeneratorSpec spec) {
  spec.seed = c.seed;
  write_text(c.out, santa::format_instance(santa::generate_instance(spec)) + "\n");
  return kOk;
}

int cmd_solve(const Common& c, const std::string& path, const std::string& threshold,
              const std::string& trace_path, const std::string& witness_path) {
  Stopwatch clock;
  const santa::Instance inst = santa::load_instance(path);
  const santa::Limits limits = c.limits();
  santa::LpCounters lp;

  json report{{"command", "solve"}, {"fingerprint", santa::fingerprint(inst)}};
  json params{{"instance", path}, {"threshold", threshold}, {"mode", c.mode}};
  Rational t;
  if (threshold == "auto") {
    const Rational opt = santa::opt_star(inst, c.solve_mode(), limits, &lp);
    params["opt_star"] = opt.str();
    if (opt.sign() == 0) throw std::runtime_error("opt* is 0, so the automatic threshold would be 0");
    t = opt / santa::alpha();
  } else {
    t = Rational::parse(threshold);
    if (t.sign() <= 0) throw std::runtime_error("threshold must be positive");
  }
  params["t"] = t.str();
  report["parameters"] = params;

  std::ofstream trace_file;
  std::optional<santa::TraceWriter> trace;
  if (!trace_path.empty()) {
    if (trace_path == "-") {
      trace.emplace(std::cerr, inst);
    } else {
      trace_file.open(trace_path);
      if (!trace_file) throw std::runtime_error("cannot write '" + trace_path + "'");
      trace.emplace(trace_file, inst);
    }
  }
  santa::SearchOptions options;
  options.check_invariants = true;
  options.observer = trace ? &*trace : nullptr;
  const santa::SolveResult r = santa::solve(inst, t, options);

  json calls = json::array();
  std::size_t main_total = 0, inner_total = 0;
  for (const auto& call : r.calls) {
    calls.push_back({{"player", inst.player_id(call.player)},
                     {"matching_size", call.matching_size},
                     {"main_iterations", call.main_iterations},
                     {"inner_iterations", call.inner_iterations}});
    main_total += call.main_iterations;
    inner_total += call.inner_iterations;
  }
  json counters = counters_json(lp);
  counters["main_iterations"] = main_total;
  counters["inner_iterations"] = inner_total;
  counters["calls"] = calls;

  int code = kOk;
  if (r.ok()) {
    report["outcome"] = {{"status", "allocation"},
                         {"value", santa::allocation_value(inst, *r.allocation).str()},
                         {"allocation", santa::allocation_to_json(inst, *r.allocation)}};
  } else {
    const santa::SearchState& st = *r.stuck;
    const santa::DualWitness w = santa::build_certificate(inst, st);
    const santa::WitnessCheck check = santa::verify_unbounded_dual(inst, w, limits);
    const santa::StuckAudit audit = santa::audit_stuck_state(inst, st, w);
    report["outcome"] = {{"status", "stuck"},
                         {"root", inst.player_id(st.root)},
                         {"matching", santa::allocation_to_json(inst, st.matching.to_allocation())},
                         {"witness", santa::witness_to_json(inst, w)},
                         {"witness_check", santa::witness_check_to_json(inst, check)},
                         {"audit", santa::audit_to_json(inst, audit)}};
    if (!witness_path.empty()) write_text(witness_path, santa::witness_to_json(inst, w).dump(2) + "\n");
    code = check.ok && audit.ok() ? kStuck : kInternal;
  }
  counters["wall_ms"] = clock.ms();
  report["counters"] = counters;
  emit(c, report);
  return code;
}

int cmd_optstar(const Common& c, const std::string& path) {
  Stopwatch clock;
  const santa::Instance inst = santa::load_instance(path);
  json report{{"command", "optstar"}, {"fingerprint", santa::fingerprint(inst)}};
  report["parameters"] = {{"instance", path}, {"mode", c.mode}};
  std::vector<santa::SolveMode> modes;
  if (c.mode == "enum" || c.mode == "both") modes.push_back(santa::SolveMode::kEnumeration);
  if (c.mode == "colgen" || c.mode == "both") modes.push_back(santa::SolveMode::kColumnGeneration);

  json per_mode = json::object();
  std::optional<Rational> first;
  bool agree = true;
  for (const auto m : modes) {
    santa::LpCounters k;
    const Rational v = santa::opt_star(inst, m, c.limits(), &k);
    per_mode[santa::to_string(m)] = {{"opt_star", v.str()}, {"counters", counters_json(k)}};
    if (first && *first != v) agree = false;
    if (!first) first = v;
  }
  report["outcome"] = {{"opt_star", first->str()}, {"modes", per_mode}, {"agree", agree}};
  report["counters"] = {{"wall_ms", clock.ms()}};
  emit(c, report);
  if (!agree) {
    std::cerr << "error: enumeration and column generation disagree\n";
    return kInternal;
  }
  return kOk;
}

int cmd_gap(const Common& c, santa::GeneratorSpec spec, std::size_t count, const std::string& worst_path) {
  Stopwatch clock;
  spec.validate();
  std::map<Rational, std::size_t> histogram;
  std::optional<santa::oracle::GapReport> worst;
  std::optional<santa::Instance> worst_instance;
  std::size_t guarded = 0, anomalies = 0, done = 0;
  for (std::size_t k = 0; k < count; ++k) {
    spec.seed = santa::campaign_seed(c.seed, k);
    const santa::Instance inst = santa::generate_instance(spec);
    santa::oracle::GapReport g;
    try {
      g = santa::oracle::integrality_gap(inst);
    } catch (const santa::oracle::OracleGuardExceeded&) {
      ++guarded;
      continue;
    }
    ++done;
    if (g.anomaly) ++anomalies;
    ++histogram[g.gap];
    if (!worst || g.gap > worst->gap) {
      worst = g;
      worst_instance = inst;
    }
  }
  json hist = json::array();
  for (const auto& [gap, n] : histogram) hist.push_back({{"gap", gap.str()}, {"count", n}});
  const bool bounded = !worst || worst->gap <= santa::alpha();
  json report{{"command", "gap"}};
  report["parameters"] = {{"players", spec.players}, {"resources", spec.resources}, {"density", spec.density},
                          {"grid", spec.grid},       {"seed", c.seed},           {"count", count}};
  report["outcome"] = {{"evaluated", done},
                       {"guard_exceeded", guarded},
                       {"anomalies", anomalies},
                       {"max_gap", worst ? worst->gap.str() : "none"},
                       {"bound", santa::alpha().str()},
                       {"within_bound", bounded},
                       {"histogram", hist}};
  if (worst) {
    report["outcome"]["worst"] = santa::gap_report_to_json(*worst_instance, *worst);
    if (!worst_path.empty()) write_text(worst_path, santa::format_instance(*worst_instance) + "\n");
  }
  report["counters"] = {{"wall_ms", clock.ms()}};
  emit(c, report);
  return bounded && anomalies == 0 ? kOk : kInternal;
}

int cmd_verify(const Common& c, const std::string& instance_path, const std::string& witness_path) {
  const santa::Instance inst = santa::load_instance(instance_path);
  const std::string text = santa::read_file(witness_path);
  const std::string fp = santa::fingerprint(inst);
  // Checked before ids are resolved so a mismatched pair is named as such.
  const json doc = json::parse(text, nullptr, false);
  const std::string claimed = doc.is_object() ? doc.value("fingerprint", std::string{}) : std::string{};
  if (!doc.is_discarded() && claimed != fp)
    throw std::runtime_error("witness fingerprint '" + claimed + "' does not match instance " + fp);
  const santa::ParsedWitness pw = santa::parse_witness(text, inst);
  const santa::WitnessCheck check = santa::verify_unbounded_dual(inst, pw.witness, c.limits());
  std::ostringstream out;
  out << "tau " << pw.witness.tau.str() << "\n";
  out << "nonnegative " << (check.nonnegative ? "yes" : "no") << "\n";
  out << "objective sum_y=" << check.sum_y.str() << " sum_z=" << check.sum_z.str() << " "
      << (check.objective_positive ? "ok" : "FAILS") << "\n";
  out << "constraints " << (check.constraints_hold ? "ok" : "FAIL") << "\n";
  if (check.violated) {
    out << "violated " << inst.player_id(check.violated->player) << " {";
    for (std::size_t k = 0; k < check.violated->resources.size(); ++k)
      out << (k ? "," : "") << inst.resource_id(check.violated->resources[k]);
    out << "}\n";
  }
  out << (check.ok ? "valid: opt* < " + pw.witness.tau.str() : "invalid: " + check.reason) << "\n";
  write_text(c.out, out.str());
  return check.ok ? kOk : kInvalidWitness;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact configuration-LP and local-search toolkit for restricted max-min allocation"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "output path (default stdout)");
    cmd->add_option("--guard-configs", common.guard_configs, "cap on enumerated configurations")
        ->capture_default_str();
  };

  santa::GeneratorSpec spec;
  auto* gen = app.add_subcommand("generate", "write a random instance");
  add_spec_options(gen, spec);
  gen->add_option("--seed", common.seed, "64-bit seed")->capture_default_str();
  add_common(gen);

  std::string instance, threshold = "auto", trace, witness_out, witness;
  auto* solve = app.add_subcommand("solve", "run the local search at a threshold");
  solve->add_option("instance", instance, "instance file")->required();
  solve->add_option("--threshold", threshold, "rational threshold p/q or 'auto' (opt*/alpha)")
      ->capture_default_str();
  solve->add_option("--mode", common.mode, "LP mode for 'auto'")
      ->check(CLI::IsMember({"enum", "colgen"}))
      ->capture_default_str();
  solve->add_option("--trace", trace, "write the search event log here ('-' for stderr)");
  solve->add_option("--witness-out", witness_out, "write the dual witness here when stuck");
  add_common(solve);

  auto* optstar = app.add_subcommand("optstar", "compute opt* exactly");
  optstar->add_option("instance", instance, "instance file")->required();
  optstar->add_option("--mode", common.mode, "enum, colgen or both")
      ->check(CLI::IsMember({"enum", "colgen", "both"}))
      ->capture_default_str();
  add_common(optstar);

  std::size_t count = 100;
  std::string worst;
  auto* gap = app.add_subcommand("gap", "integrality-gap campaign over generated instances");
  add_spec_options(gap, spec);
  gap->add_option("--seed", common.seed, "campaign seed")->capture_default_str();
  gap->add_option("--count", count, "number of instances")->capture_default_str();
  gap->add_option("--worst", worst, "write the worst instance here");
  add_common(gap);

  auto* verify = app.add_subcommand("verify", "check a dual witness against an instance");
  verify->add_option("instance", instance, "instance file")->required();
  verify->add_option("witness", witness, "witness file")->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*gen) return cmd_generate(common, spec);
    if (*solve) return cmd_solve(common, instance, threshold, trace, witness_out);
    if (*optstar) return cmd_optstar(common, instance);
    if (*gap) return cmd_gap(common, spec, count, worst);
    if (*verify) return cmd_verify(common, instance, witness);
  } catch (const santa::SearchInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
