#pragma once

// Command-line front end. Exit status: 0 conforms / all pass,
// 1 non-conformance or failing test, 2 usage or input error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ioconf/conformance.hpp"
#include "ioconf/iolts.hpp"
#include "ioconf/modelgen.hpp"
#include "ioconf/regex.hpp"
#include "ioconf/suite_io.hpp"
#include "ioconf/testgen.hpp"
#include "ioconf/testrun.hpp"

namespace ioconf {

enum ExitStatus : int { kExitOk = 0, kExitFault = 1, kExitError = 2 };

// Models on the command line may be quiescence-completed already.
inline constexpr ParseOptions kUserModel{.allow_reserved = false, .allow_delta = true};

namespace cli_detail {

// Writes `json` to FILE, or to `out` for "-".
inline void emit_json(const std::string& target, const nlohmann::json& json,
                      std::ostream& out) {
  if (target.empty()) return;
  if (target == "-")
    out << json.dump(2) << "\n";
  else
    write_file(target, json.dump(2) + "\n");
}

inline void emit_model(const std::string& target, const Iolts& m, std::ostream& out) {
  if (target.empty() || target == "-")
    out << serialize_model(m);
  else
    write_file(target, serialize_model(m));
}

inline WitnessStrategy parse_strategy(const std::string& s) {
  return s == "cover" ? WitnessStrategy::cover : WitnessStrategy::single;
}

inline void print_verdict(std::ostream& human, std::string_view relation,
                          const Verdict& v) {
  human << relation << ": " << (v.conforms ? "conforms" : "does not conform") << "\n";
  for (const auto& w : v.witnesses) human << "witness: " << format_word(w) << "\n";
}

inline std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace cli_detail

/// Runs the command line `args` (program name first).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Conformance checking and test generation for IOLTS models", "ioconf"};
  app.require_subcommand(1);

  std::string spec_path, iut_path, model_path, desirable, forbidden, json_target,
      output, suite_dir, witness = "single", mode;
  std::size_t m_bound = 0, limit = kDefaultTpLimit, states = 0, n_inputs = 0,
              n_outputs = 0, grow = 0;
  unsigned parallel = 1;
  bool fail_fast = false, nondeterministic = false, partial = false;
  double density = 0.5, tau = 0.0, rate = 0.0, keep = 1.0;
  std::uint64_t seed = 0;
  std::string input_names, output_names;

  auto* ioco = app.add_subcommand("check-ioco", "Check I ioco S");
  ioco->add_option("--spec", spec_path, "Specification model")->required();
  ioco->add_option("--iut", iut_path, "Implementation model")->required();
  ioco->add_option("--witness", witness, "Witness strategy")
      ->check(CLI::IsMember({"single", "cover"}));
  ioco->add_option("--json", json_target, "Write the verdict as JSON (- for stdout)");

  auto* lang = app.add_subcommand("check-lang", "Check I conf_{D,F} S");
  lang->add_option("--spec", spec_path, "Specification model")->required();
  lang->add_option("--iut", iut_path, "Implementation model")->required();
  lang->add_option("--desirable", desirable, "Language file for D (absent: empty)");
  lang->add_option("--forbidden", forbidden, "Language file for F (absent: empty)");
  lang->add_option("--witness", witness, "Witness strategy")
      ->check(CLI::IsMember({"single", "cover"}));
  lang->add_option("--json", json_target, "Write the verdict as JSON (- for stdout)");

  auto* gen_suite = app.add_subcommand("gen-suite", "Generate a fault model of test purposes");
  gen_suite->add_option("--spec", spec_path, "Deterministic specification")->required();
  gen_suite->add_option("-m", m_bound, "Bound on IUT states")->required();
  gen_suite->add_option("--limit", limit, "Maximum number of test purposes");
  gen_suite->add_option("-o,--output", suite_dir, "Output directory")->required();

  auto* run_suite = app.add_subcommand("run-suite", "Run a fault model against an IUT");
  run_suite->add_option("--iut", iut_path, "Implementation model")->required();
  run_suite->add_option("--suite", suite_dir, "Fault-model directory")->required();
  run_suite->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  run_suite->add_flag("--fail-fast", fail_fast, "Stop at the first failing test purpose");
  run_suite->add_option("--json", json_target, "Write the run report as JSON (- for stdout)");

  auto* gen_model = app.add_subcommand("gen-model", "Generate a random model");
  gen_model->add_option("--states", states, "Number of states")->required();
  gen_model->add_option("--inputs", n_inputs, "Number of inputs (named i0, i1, ...)");
  gen_model->add_option("--outputs", n_outputs, "Number of outputs (named o0, o1, ...)");
  gen_model->add_option("--input-names", input_names, "Comma-separated input names");
  gen_model->add_option("--output-names", output_names, "Comma-separated output names");
  gen_model->add_flag("--nondeterministic", nondeterministic, "Allow nondeterminism");
  gen_model->add_flag("--partial", partial, "Do not force input-enabledness");
  gen_model->add_option("--density", density, "Probability of optional transitions");
  gen_model->add_option("--tau", tau, "Per-state tau probability (nondeterministic only)");
  gen_model->add_option("--seed", seed, "PRNG seed")->required();
  gen_model->add_option("-o,--output", output, "Output file (default stdout)");

  auto* mut = app.add_subcommand("mutate", "Seed faults into a model");
  mut->add_option("--model", model_path, "Model to mutate")->required();
  mut->add_option("--rate", rate, "Fraction of transitions to edit")->required();
  mut->add_option("--seed", seed, "PRNG seed")->required();
  mut->add_option("--grow", grow, "Extra states to append");
  mut->add_option("-o,--output", output, "Output file (default stdout)");

  auto* sub = app.add_subcommand("submachine", "Derive a conforming submachine");
  sub->add_option("--model", model_path, "Specification model")->required();
  sub->add_option("--keep", keep, "Probability of keeping each output transition");
  sub->add_option("--seed", seed, "PRNG seed")->required();
  sub->add_option("-o,--output", output, "Output file (default stdout)");

  auto* comp = app.add_subcommand("complete", "Complete a model");
  comp->add_option("--model", model_path, "Model to complete")->required();
  comp->add_option("--mode", mode, "quiescence or input-enable")
      ->required()
      ->check(CLI::IsMember({"quiescence", "input-enable"}));
  comp->add_option("-o,--output", output, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  // Human-readable text goes to `err` when JSON claims stdout.
  std::ostream& human = json_target == "-" ? err : out;
  try {
    if (ioco->parsed()) {
      const auto spec = load_model(spec_path, kUserModel);
      const auto iut = load_model(iut_path, kUserModel);
      const auto v = check_ioco(spec, iut, parse_strategy(witness));
      print_verdict(human, "ioco", v);
      emit_json(json_target, verdict_json("ioco", v), out);
      return v.conforms ? kExitOk : kExitFault;
    }
    if (lang->parsed()) {
      const auto spec = ensure_quiescence(load_model(spec_path, kUserModel));
      const auto iut = load_model(iut_path, kUserModel);
      const auto alphabet = spec.observable_alphabet();
      auto language = [&](const std::string& path) {
        return path.empty() ? empty_language(alphabet)
                            : compile_language_file(read_file(path), alphabet);
      };
      const auto v = check_lang(spec, iut, language(desirable), language(forbidden),
                                parse_strategy(witness));
      print_verdict(human, "lang", v);
      human << "suite states: " << v.stats.suite_states << " (bound "
            << v.stats.suite_bound << ", "
            << (v.stats.suite_states <= v.stats.suite_bound ? "within" : "EXCEEDED")
            << "), n_S=" << v.stats.spec_states << " n_I=" << v.stats.iut_states
            << " n_D=" << v.stats.desirable_states << " n_F=" << v.stats.forbidden_states
            << " n_L=" << v.stats.alphabet_size << "\n";
      emit_json(json_target, verdict_json("lang", v), out);
      return v.conforms ? kExitOk : kExitFault;
    }
    if (gen_suite->parsed()) {
      const auto spec = load_model(spec_path, kUserModel);
      const auto fm = generate_fault_model(spec, m_bound, limit);
      write_fault_model(fm, suite_dir);
      out << "levels: " << fm.levels << "\n"
          << "test purposes: " << fm.tps.size() << " of " << fm.total_paths
          << " fault paths\n";
      if (fm.truncated)
        err << "warning: fault model truncated at " << fm.limit
            << " test purposes; m-completeness is not guaranteed\n";
      return kExitOk;
    }
    if (run_suite->parsed()) {
      const auto iut = load_model(iut_path, kUserModel);
      const auto fm = read_fault_model(suite_dir);
      const auto report = run_fault_model(iut, fm, {fail_fast, parallel});
      std::size_t failed = 0, incomplete = 0;
      for (const auto& r : report.tps) {
        if (r.verdict == TpVerdict::fail) {
          ++failed;
          human << "tp " << r.id << ": fail, witness: " << format_word(r.witness) << "\n";
        }
        if (r.incomplete) ++incomplete;
      }
      human << (report.passed ? "pass" : "fail") << " (" << report.tps.size()
            << " run, " << failed << " failed, " << incomplete << " incomplete)\n";
      emit_json(json_target, run_report_json(report), out);
      return report.passed ? kExitOk : kExitFault;
    }
    if (gen_model->parsed()) {
      GenParams p;
      p.states = states;
      p.inputs = input_names.empty() ? numbered_names("i", n_inputs) : split_names(input_names);
      p.outputs = output_names.empty() ? numbered_names("o", n_outputs)
                                       : split_names(output_names);
      p.deterministic = !nondeterministic;
      p.input_enabled = !partial;
      p.density = density;
      p.tau_probability = tau;
      p.seed = seed;
      emit_model(output, random_iolts(p), out);
      return kExitOk;
    }
    if (mut->parsed()) {
      const auto mutation = mutate(load_model(model_path, kUserModel), rate, seed, grow);
      emit_model(output, mutation.model, out);
      return kExitOk;
    }
    if (sub->parsed()) {
      emit_model(output, submachine(load_model(model_path, kUserModel), keep, seed), out);
      return kExitOk;
    }
    if (comp->parsed()) {
      const auto model = load_model(model_path, kUserModel);
      emit_model(output,
                 mode == "quiescence" ? complete_quiescence(model)
                                      : angelic_input_enable(model),
                 out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ioconf
