// pubo-forge: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 enumeration
// cap exceeded, 70 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pubo_forge.hpp"

namespace fs = std::filesystem;
using namespace pubo_forge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 70;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path);
}

// Integers that fit go out as JSON numbers, larger ones as strings.
nlohmann::json json_int(const Coeff& c) {
  if (auto v = detail::to_i64(c)) return *v;
  return c.str();
}

std::string bits(const std::vector<std::uint8_t>& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ' ';
    s += x[i] ? '1' : '0';
  }
  return s;
}

void print_report(std::ostream& os, const VerificationReport& rep) {
  os << "pointwise: " << (rep.pointwise_ok ? "pass" : "fail") << "\n";
  os << "ground_state: " << (rep.ground_state_ok ? "pass" : "fail") << "\n";
  os << "ancilla_consistent: " << (rep.ancilla_consistent ? "pass" : "fail") << "\n";
  os << "ancilla: " << rep.ancilla_count << "\n";
  os << "enumeration_width: " << rep.enumeration_width << "\n";
  os << "precision: " << rep.precision_before.control_precision << " -> " << rep.precision_after.control_precision
     << "\n";
  if (rep.counterexample) {
    os << "counterexample (" << rep.failed_check << "): x = " << bits(*rep.counterexample) << " expected " << rep.expected_value
       << " reduced_min " << rep.reduced_value << "\n";
  }
}

struct CompileArgs {
  std::string input;
  std::string output;
  std::string strategy = "min-ancilla";
  std::string gadget = "single";
  std::string emit = "qubo";
  std::string emit_lp;
  std::string emit_wcnf;
  std::string wmaxsat_model;
  std::uint64_t ilp_budget = kDefaultNodeBudget;
  std::uint64_t seed = 1;
  int verify_cap = kDefaultEnumerationCap;
  bool verify = false;
  bool json = false;
  bool ignore_offset = false;
};

GadgetMode gadget_of(const std::string& s) { return detail::parse_gadget(s); }

int cmd_compile(const CompileArgs& a) {
  const Polynomial poly = parse_polynomial(read_file(a.input));
  CompileOptions opts;
  opts.strategy = parse_strategy(a.strategy);
  opts.gadget = gadget_of(a.gadget);
  opts.ilp_budget = a.ilp_budget;
  opts.seed = a.seed;
  opts.verify = a.verify;
  opts.verify_cap = a.verify_cap;
  opts.precision.include_offset = !a.ignore_offset;
  if (!a.wmaxsat_model.empty()) {
    if (poly.degree() != 4) throw InputError("--wmaxsat-model applies to degree-4 input only");
    const std::size_t nvars = build_wmaxsat(poly).vars.size();
    opts.wmaxsat_model = parse_wmaxsat_model(read_file(a.wmaxsat_model), nvars);
  }

  const CompileResult r = compile(poly, opts);

  auto lp_text = [&] {
    if (!r.cover) throw InputError("LP output needs a cubic input");
    return emit_lp(*r.cover);
  };
  auto wcnf_text = [&] {
    if (!r.wmaxsat) throw InputError("WCNF output needs a degree-4 input");
    return emit_wcnf(*r.wmaxsat);
  };
  std::string primary;
  if (a.emit == "qubo") primary = emit_qubo(r.reduced);
  else if (a.emit == "lp") primary = lp_text();
  else primary = wcnf_text();

  std::string out_path = a.output;
  if (out_path.empty()) out_path = fs::path(a.input).replace_extension(a.emit).string();
  write_output(out_path, primary);
  if (!a.emit_lp.empty()) write_output(a.emit_lp, lp_text());
  if (!a.emit_wcnf.empty()) write_output(a.emit_wcnf, wcnf_text());

  std::ostream& info = out_path == "-" ? std::cerr : std::cout;
  const bool failed = r.verification && !r.verification->ok();
  if (a.json) {
    nlohmann::json j;
    j["input"] = a.input;
    j["output"] = out_path;
    j["method"] = r.method;
    j["gadget"] = to_string(opts.gadget);
    j["ancilla"] = r.ancilla_count();
    j["precision_before"] = json_int(r.precision_before.control_precision);
    j["precision_after"] = json_int(r.precision_after.control_precision);
    j["optimal"] = r.proven_optimal;
    if (r.verification) j["verified"] = r.verification->ok();
    info << j.dump() << "\n";
  } else {
    info << "strategy: " << r.method << "  gadget: " << to_string(opts.gadget) << "  ancilla: " << r.ancilla_count()
         << "  precision: " << r.precision_before.control_precision << " -> "
         << r.precision_after.control_precision << "  optimal: " << (r.proven_optimal ? "yes" : "no");
    if (r.verification) info << "  verify: " << (r.verification->ok() ? "pass" : "FAIL");
    info << "\n";
  }
  if (failed) {
    print_report(std::cerr, *r.verification);
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_verify(const std::string& pubo, const std::string& qubo, int cap, bool json) {
  const Polynomial original = parse_polynomial(read_file(pubo));
  const ReducedInstance reduced = parse_qubo(read_file(qubo));
  const VerificationReport rep = verify_reduction(original, reduced, cap);
  if (json) {
    nlohmann::json j;
    j["pointwise_ok"] = rep.pointwise_ok;
    j["ground_state_ok"] = rep.ground_state_ok;
    j["ancilla_consistent"] = rep.ancilla_consistent;
    j["ancilla"] = rep.ancilla_count;
    j["precision_before"] = json_int(rep.precision_before.control_precision);
    j["precision_after"] = json_int(rep.precision_after.control_precision);
    if (rep.counterexample) {
      j["counterexample"] = bits(*rep.counterexample);
      j["failed_check"] = rep.failed_check;
    }
    std::cout << j.dump() << "\n";
  } else {
    print_report(std::cout, rep);
  }
  return rep.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_emit_wcnf(const std::string& input, const std::string& output) {
  const Polynomial poly = parse_polynomial(read_file(input));
  if (poly.degree() != 4) throw InputError("WCNF output needs a degree-4 input");
  write_output(output.empty() ? "-" : output, emit_wcnf(build_wmaxsat(poly)));
  return kExitOk;
}

int cmd_stats(const std::string& input, bool json) {
  const Polynomial poly = parse_polynomial(read_file(input));
  std::array<std::size_t, 5> by_degree{};
  for (const auto& [m, c] : poly.terms()) ++by_degree[m.degree()];
  const PrecisionReport pr = detail::precision_or_zero(poly, {});
  std::optional<std::size_t> reduce_min;
  if (poly.degree() == 3) reduce_min = reduce_min_greedy(poly).K.size();
  if (json) {
    nlohmann::json j;
    j["n"] = poly.num_vars();
    j["terms"] = poly.size();
    j["degree"] = poly.degree();
    for (int d = 0; d <= 4; ++d) j["terms_degree_" + std::to_string(d)] = by_degree[d];
    j["max_abs_coeff"] = json_int(pr.max_abs_coeff);
    j["gcd"] = json_int(pr.gcd_all);
    j["control_precision"] = json_int(pr.control_precision);
    if (reduce_min) j["reduce_min_ancilla"] = *reduce_min;
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
  std::cout << "variables: " << poly.num_vars() << "\n";
  std::cout << "terms: " << poly.size() << " (degree 0..4: " << by_degree[0] << " " << by_degree[1] << " "
            << by_degree[2] << " " << by_degree[3] << " " << by_degree[4] << ")\n";
  std::cout << "degree: " << poly.degree() << "\n";
  std::cout << "control_precision: " << pr.control_precision << " (max " << pr.max_abs_coeff << ", gcd "
            << pr.gcd_all << ")\n";
  if (reduce_min) std::cout << "reduce_min_ancilla: " << *reduce_min << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pubo-forge: compile higher-order binary polynomials to QUBO with exact gadgets"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile_cmd = app.add_subcommand("compile", "reduce a .pubo file to .qubo");
  compile_cmd->add_option("input", ca.input, "input .pubo file")->required();
  compile_cmd->add_option("-o,--output", ca.output, "output path ('-' for stdout; default: input with new extension)");
  compile_cmd->add_option("--strategy", ca.strategy, "collapse-pair selection")
      ->check(CLI::IsMember({"min-ancilla", "min-precision", "reduce-min", "arbitrary"}));
  compile_cmd->add_option("--gadget", ca.gadget, "cubic gadget")->check(CLI::IsMember({"single", "triple"}));
  compile_cmd->add_option("--emit", ca.emit, "format of the main output")->check(CLI::IsMember({"qubo", "lp", "wcnf"}));
  compile_cmd->add_option("--emit-lp", ca.emit_lp, "also write the covering ILP (cubic input)");
  compile_cmd->add_option("--emit-wcnf", ca.emit_wcnf, "also write the WMAXSAT instance (degree-4 input)");
  compile_cmd->add_option("--wmaxsat-model", ca.wmaxsat_model, "use an external MaxSAT model (signed literals)");
  compile_cmd->add_option("--ilp-budget", ca.ilp_budget, "branch-and-bound node budget");
  compile_cmd->add_option("--seed", ca.seed, "seed for the arbitrary strategy");
  compile_cmd->add_flag("--verify", ca.verify, "check the result exhaustively");
  compile_cmd->add_option("--verify-cap", ca.verify_cap, "largest joint enumeration width");
  compile_cmd->add_flag("--json", ca.json, "print the summary as JSON");
  compile_cmd->add_flag("--precision-ignore-offset", ca.ignore_offset, "leave the constant out of control precision");

  std::string v_pubo, v_qubo;
  int v_cap = kDefaultEnumerationCap;
  bool v_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "check a .qubo against its source .pubo");
  verify_cmd->add_option("pubo", v_pubo, "source .pubo")->required();
  verify_cmd->add_option("qubo", v_qubo, "reduced .qubo")->required();
  verify_cmd->add_option("--cap", v_cap, "largest joint enumeration width");
  verify_cmd->add_flag("--json", v_json, "print the report as JSON");

  BenchConfig bc;
  std::string b_experiment, b_config, b_out, b_lambdas, b_strategies, b_gadgets;
  int b_fig = 0;
  bool b_full = false;
  auto* bench_cmd = app.add_subcommand("bench", "run a random-instance experiment and write CSV");
  bench_cmd->add_option("--paper-fig", b_fig, "preset: 1 = ancilla scaling, 3 = precision growth")
      ->check(CLI::IsMember({1, 3}));
  bench_cmd->add_option("--config", b_config, "key=value settings file");
  bench_cmd->add_option("--experiment", b_experiment)->check(CLI::IsMember({"ancilla", "precision"}));
  auto* o_n = bench_cmd->add_option("--n", bc.n, "variable count");
  auto* o_lambda = bench_cmd->add_option("--lambda", bc.lambda, "cubic term count");
  bench_cmd->add_option("--lambdas", b_lambdas, "comma-separated lambda grid");
  bench_cmd->add_flag("--full-sweep", b_full, "every lambda from 1 to C(n,3)");
  auto* o_quad = bench_cmd->add_flag("--quadratic-layer", bc.include_quadratic_layer, "add all C(n,2) quadratic terms");
  auto* o_cmin = bench_cmd->add_option("--coeff-min", bc.coeff_min);
  auto* o_cmax = bench_cmd->add_option("--coeff-max", bc.coeff_max);
  auto* o_inst = bench_cmd->add_option("--instances", bc.instances);
  auto* o_seed = bench_cmd->add_option("--seed", bc.seed);
  bench_cmd->add_option("--strategies", b_strategies, "comma-separated: ilp, reduce-min, greedy, arbitrary");
  bench_cmd->add_option("--gadgets", b_gadgets, "comma-separated: single, triple");
  auto* o_budget = bench_cmd->add_option("--ilp-budget", bc.ilp_budget);
  auto* o_vf = bench_cmd->add_option("--verify-fraction", bc.verify_fraction);
  auto* o_timing = bench_cmd->add_flag("--timing", bc.timing, "record wall time (output no longer reproducible)");
  auto* o_threads = bench_cmd->add_option("--threads", bc.threads);
  bench_cmd->add_option("-o,--output", b_out, "CSV path (default stdout)");

  std::string w_in, w_out;
  auto* wcnf_cmd = app.add_subcommand("emit-wcnf", "write the WMAXSAT instance of a degree-4 .pubo");
  wcnf_cmd->add_option("input", w_in)->required();
  wcnf_cmd->add_option("-o,--output", w_out);

  std::string s_in;
  bool s_json = false;
  auto* stats_cmd = app.add_subcommand("stats", "summarize a .pubo file");
  stats_cmd->add_option("input", s_in)->required();
  stats_cmd->add_flag("--json", s_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*compile_cmd) return cmd_compile(ca);
    if (*verify_cmd) return cmd_verify(v_pubo, v_qubo, v_cap, v_json);
    if (*wcnf_cmd) return cmd_emit_wcnf(w_in, w_out);
    if (*stats_cmd) return cmd_stats(s_in, s_json);
    if (*bench_cmd) {
      // Preset, then config file, then explicit flags.
      BenchConfig cfg;
      if (b_fig == 1) cfg = preset_ancilla_scaling();
      if (b_fig == 3) cfg = preset_precision_growth();
      if (!b_config.empty()) load_config_text(cfg, read_file(b_config));
      if (!b_experiment.empty()) apply_setting(cfg, "experiment", b_experiment);
      if (*o_n) cfg.n = bc.n;
      if (*o_lambda) {
        cfg.lambda = bc.lambda;
        cfg.lambda_grid.clear();
      }
      if (!b_lambdas.empty()) apply_setting(cfg, "lambdas", b_lambdas);
      if (*o_quad) cfg.include_quadratic_layer = bc.include_quadratic_layer;
      if (*o_cmin) cfg.coeff_min = bc.coeff_min;
      if (*o_cmax) cfg.coeff_max = bc.coeff_max;
      if (*o_inst) cfg.instances = bc.instances;
      if (*o_seed) cfg.seed = bc.seed;
      if (!b_strategies.empty()) apply_setting(cfg, "strategies", b_strategies);
      if (!b_gadgets.empty()) apply_setting(cfg, "gadgets", b_gadgets);
      if (*o_budget) cfg.ilp_budget = bc.ilp_budget;
      if (*o_vf) cfg.verify_fraction = bc.verify_fraction;
      if (*o_timing) cfg.timing = bc.timing;
      if (*o_threads) cfg.threads = bc.threads;
      if (b_full) cfg.lambda_grid = full_lambda_grid(cfg.n);
      const std::string csv =
          cfg.experiment == Experiment::Ancilla ? run_ancilla_experiment(cfg) : run_precision_experiment(cfg);
      write_output(b_out.empty() ? "-" : b_out, csv);
      if (!b_out.empty()) std::cout << b_out << "\n";
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
