// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xnfsat/xnfsat.hpp"

// Command-line front end. Exit codes follow the SAT-competition
// convention on `solve`: 10 = satisfying assignment found (printed as a
// DIMACS "v" line), 20 = iteration budget exhausted, 1 = any error. The
// other subcommands exit 0 on success, 1 on error. All randomness flows
// from --seed (or the XNFSAT_SEED environment variable when the flag is
// absent); nothing reads the wall clock except the per-trial wall_ns
// column in bench output.

namespace {

using namespace xnf;

enum class Backend { Reference, CrossbarIdeal, CrossbarNonideal };

const std::map<std::string, Backend> kBackendNames = {
    {"reference", Backend::Reference},
    {"crossbar-ideal", Backend::CrossbarIdeal},
    {"crossbar-nonideal", Backend::CrossbarNonideal},
};

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Reference: return "reference";
    case Backend::CrossbarIdeal: return "crossbar-ideal";
    case Backend::CrossbarNonideal: return "crossbar-nonideal";
  }
  return "?";
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("XNFSAT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw Error("XNFSAT_SEED is not an unsigned integer");
    return v;
  }
  return 1;
}

struct LoadedInstance {
  Formula formula;
  std::string representation;  // "cnf" | "xnf" from the file dialect
};

LoadedInstance load_instance(const std::string& path) {
  ParseResult res = parse_dimacs_file(path);
  for (const ParseWarning& w : res.report.warnings)
    std::cerr << path << ":" << w.line << ": warning: " << w.message << '\n';
  return {std::move(res.formula),
          res.report.format == DimacsFormat::Xnf ? "xnf" : "cnf"};
}

DeviceModel load_device(Backend backend, const std::string& path) {
  if (backend == Backend::CrossbarNonideal && path.empty())
    throw Error("backend crossbar-nonideal requires --device-model");
  DeviceModel d;
  if (!path.empty()) d = DeviceModel::from_file(path);
  if (backend == Backend::CrossbarIdeal) d.g_sigma_us = 0.0;  // ideal array by definition
  return d;
}

EnergyCoefficients load_coeffs(const std::string& path) {
  return path.empty() ? EnergyCoefficients{} : EnergyCoefficients::from_file(path);
}

TrialResult dispatch_solve(Backend backend, const Formula& f, const DeviceModel& dev,
                           const SolverParams& p, std::uint64_t device_seed) {
  if (backend == Backend::Reference) return solve(f, p);
  return solve_crossbar(f, dev, p, device_seed);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

// ---------------------------------------------------------------- solve

struct SolveConfig {
  std::string input;
  Backend backend = Backend::Reference;
  double sigma = 0.0;
  std::uint64_t max_iter = 100000;
  std::optional<std::uint64_t> seed;
  std::string device_model;
  std::string dump_crossbar;
};

int cmd_solve(const SolveConfig& cfg) {
  const LoadedInstance inst = load_instance(cfg.input);
  const std::uint64_t seed = resolve_seed(cfg.seed);
  const DeviceModel dev = load_device(cfg.backend, cfg.device_model);

  if (!cfg.dump_crossbar.empty()) {
    std::ofstream out = open_out(cfg.dump_crossbar);
    write_pbm(out, program_crossbar(inst.formula));
  }

  SolverParams params;
  params.sigma = cfg.sigma;
  params.max_iter = cfg.max_iter;
  params.seed = seed;
  const TrialResult r = dispatch_solve(cfg.backend, inst.formula, dev, params, seed);

  std::cout << "c " << cfg.input << " vars " << inst.formula.num_vars() << " clauses "
            << inst.formula.num_clauses() << " (" << inst.formula.xor_count() << " xor)\n";
  std::cout << "c backend " << backend_name(cfg.backend) << " sigma "
            << detail::format_double(cfg.sigma) << " seed " << seed << '\n';
  std::cout << "c iterations " << r.iterations << '\n';
  if (!r.solved) {
    std::cout << "s UNKNOWN\n";
    return 20;
  }
  std::cout << "s SATISFIABLE\n";
  std::cout << "v";
  for (Var v = 0; v < inst.formula.num_vars(); ++v)
    std::cout << ' ' << (r.final_assignment[v] ? 1 : -1) * (static_cast<long long>(v) + 1);
  std::cout << " 0\n";
  return 10;
}

// -------------------------------------------------------------- convert

struct ConvertConfig {
  std::string input;
  std::string to;  // "cnf" | "xnf"
  std::string out;
  std::uint32_t width = 5;
  std::uint32_t k_max = 6;
};

int cmd_convert(const ConvertConfig& cfg) {
  const LoadedInstance inst = load_instance(cfg.input);
  Formula converted;
  CompressionStats stats;
  WriteStyle style = WriteStyle::XPrefixed;
  if (cfg.to == "xnf") {
    ExtractResult res = extract_xors(inst.formula, cfg.k_max);
    converted = std::move(res.formula);
    stats = res.stats;
  } else {
    converted = xnf_to_cnf(inst.formula, cfg.width);
    stats = compression_stats(inst.formula, converted);
    style = WriteStyle::PureCnf;
  }
  if (cfg.out.empty()) {
    write_dimacs(std::cout, converted, style);
  } else {
    write_dimacs_file(cfg.out, converted, style);
  }
  std::cerr << "vars " << stats.vars_before << " -> " << stats.vars_after << " (ratio "
            << detail::format_double(stats.var_ratio()) << ")\n"
            << "clauses " << stats.clauses_before << " -> " << stats.clauses_after << " (ratio "
            << detail::format_double(stats.clause_ratio()) << ")\n"
            << "xor fraction " << detail::format_double(stats.xor_fraction_after) << '\n';
  return 0;
}

// ------------------------------------------------------------------ gen

struct GenConfig {
  std::string out;
  std::string witness_out;
  std::optional<std::uint64_t> seed;
  // mdp
  std::uint32_t rows = 8, vars = 8, bound = 1, flips = 1;
  // xorsat / ksat / xnf
  std::uint32_t clauses = 20, arity = 3;
  std::uint32_t cnf_clauses = 40, xor_clauses = 10, cnf_arity = 3, xor_arity = 4;
};

int emit_instance(const GenConfig& cfg, const Formula& f, const Assignment* witness) {
  const WriteStyle style = f.xor_count() > 0 ? WriteStyle::XPrefixed : WriteStyle::PureCnf;
  if (cfg.out.empty()) {
    write_dimacs(std::cout, f, style);
  } else {
    write_dimacs_file(cfg.out, f, style);
  }
  std::string wpath = cfg.witness_out;
  if (wpath.empty() && !cfg.out.empty() && witness) wpath = cfg.out + ".witness";
  if (!wpath.empty()) {
    if (!witness) throw Error("this instance type carries no witness");
    std::ofstream wout = open_out(wpath);
    wout << "v";
    for (Var v = 0; v < f.num_vars(); ++v)
      wout << ' ' << ((*witness)[v] ? 1 : -1) * (static_cast<long long>(v) + 1);
    wout << " 0\n";
  }
  std::cerr << "vars " << f.num_vars() << " clauses " << f.num_clauses() << " ("
            << f.xor_count() << " xor)\n";
  return 0;
}

int cmd_gen_mdp(const GenConfig& cfg) {
  MdpSpec spec;
  spec.m = cfg.rows;
  spec.n = cfg.vars;
  spec.k = cfg.bound;
  spec.flip_count = cfg.flips;
  spec.seed = resolve_seed(cfg.seed);
  const GeneratedInstance inst = gen_mdp(spec);
  const bool planted_is_model = formula_satisfied(inst.formula, inst.witness);
  if (!planted_is_model)
    std::cerr << "note: flips exceed the bound; the planted point is not a model\n";
  return emit_instance(cfg, inst.formula, planted_is_model ? &inst.witness : nullptr);
}

int cmd_gen_xorsat(const GenConfig& cfg) {
  const GeneratedInstance inst =
      gen_planted_xorsat(cfg.vars, cfg.clauses, cfg.arity, resolve_seed(cfg.seed));
  return emit_instance(cfg, inst.formula, &inst.witness);
}

int cmd_gen_ksat(const GenConfig& cfg) {
  const Formula f = gen_random_ksat(cfg.vars, cfg.clauses, cfg.arity, resolve_seed(cfg.seed));
  return emit_instance(cfg, f, nullptr);
}

int cmd_gen_xnf(const GenConfig& cfg) {
  const GeneratedInstance inst = gen_random_xnf(cfg.vars, cfg.cnf_clauses, cfg.xor_clauses,
                                                cfg.cnf_arity, cfg.xor_arity,
                                                resolve_seed(cfg.seed));
  return emit_instance(cfg, inst.formula, &inst.witness);
}

// ---------------------------------------------------------------- bench

struct BenchConfig {
  std::vector<std::string> inputs;
  Backend backend = Backend::Reference;
  std::vector<double> sigmas;
  std::size_t trials = 100;
  std::uint64_t max_iter = 1000000000;  // flip cap
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string device_model;
  std::string coeffs;
  std::string out;
  std::string format = "csv";
};

int cmd_bench(const BenchConfig& cfg) {
  const std::uint64_t seed_base = resolve_seed(cfg.seed);
  const DeviceModel dev = load_device(cfg.backend, cfg.device_model);
  const EnergyCoefficients coeffs = load_coeffs(cfg.coeffs);
  const std::vector<double> sigmas = cfg.sigmas.empty() ? std::vector<double>{1.0} : cfg.sigmas;

  std::vector<ResultRow> rows;
  for (const std::string& path : cfg.inputs) {
    const LoadedInstance inst = load_instance(path);
    for (double sigma : sigmas) {
      SolverParams base;
      base.sigma = sigma;
      base.max_iter = cfg.max_iter;
      base.seed = seed_base;
      std::vector<double> wall_ns(cfg.trials, 0.0);
      const std::vector<TrialResult> trials =
          run_trials_with(cfg.trials, cfg.jobs, [&](std::size_t i) {
            SolverParams p = base;
            p.seed = base.seed + i;
            const auto t0 = std::chrono::steady_clock::now();
            TrialResult r = dispatch_solve(cfg.backend, inst.formula, dev, p, seed_base);
            const auto t1 = std::chrono::steady_clock::now();
            wall_ns[i] = static_cast<double>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
            return r;
          });

      EnergyLedger ledger(coeffs);
      std::size_t solved = 0;
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const TrialResult& t = trials[i];
        EnergyLedger trial_ledger(coeffs);
        trial_ledger.accumulate(t.activity);
        ResultRow r;
        r.instance = path;
        r.representation = inst.representation;
        r.backend = backend_name(cfg.backend);
        r.seed = static_cast<std::int64_t>(seed_base + i);
        r.sigma = sigma;
        r.solved = t.solved ? 1 : 0;
        r.iterations = static_cast<double>(t.iterations);
        r.wall_ns = wall_ns[i];
        r.energy_pj = trial_ledger.energy_pj();
        rows.push_back(std::move(r));
        solved += t.solved ? 1 : 0;
        ledger.accumulate(t.activity);
      }

      ResultRow agg;
      agg.instance = path;
      agg.representation = inst.representation;
      agg.backend = backend_name(cfg.backend);
      agg.seed = -1;
      agg.sigma = sigma;
      agg.solved = static_cast<double>(solved);
      const std::optional<ItsEstimate> est = its99_opt(trials);
      if (est) {
        agg.iterations = est->its99_opt;
        agg.wall_ns = est->its99_opt * coeffs.t_iter_ns;  // TTS in nanoseconds
        agg.energy_pj = est->its99_opt == 0.0
                            ? 0.0
                            : est->its99_opt * ledger.energy_per_iteration_pj();  // ETS
      } else {
        agg.iterations = std::nan("");
        agg.wall_ns = std::nan("");
        agg.energy_pj = std::nan("");
      }
      rows.push_back(std::move(agg));
    }
  }

  const ResultFormat fmt = cfg.format == "jsonl" ? ResultFormat::JsonLines : ResultFormat::Csv;
  if (cfg.out.empty()) {
    write_results(std::cout, rows, fmt);
  } else {
    std::ofstream out = open_out(cfg.out);
    write_results(out, rows, fmt);
  }
  return 0;
}

// -------------------------------------------------------- energy-report

struct EnergyReportConfig {
  std::string input;
  Backend backend = Backend::Reference;
  double sigma = 1.0;
  std::size_t trials = 20;
  std::uint64_t max_iter = 100000;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string device_model;
  std::string coeffs;
};

int cmd_energy_report(const EnergyReportConfig& cfg) {
  const LoadedInstance inst = load_instance(cfg.input);
  const std::uint64_t seed_base = resolve_seed(cfg.seed);
  const DeviceModel dev = load_device(cfg.backend, cfg.device_model);
  const EnergyCoefficients coeffs = load_coeffs(cfg.coeffs);

  SolverParams base;
  base.sigma = cfg.sigma;
  base.max_iter = cfg.max_iter;
  base.seed = seed_base;
  const std::vector<TrialResult> trials =
      run_trials_with(cfg.trials, cfg.jobs, [&](std::size_t i) {
        SolverParams p = base;
        p.seed = base.seed + i;
        return dispatch_solve(cfg.backend, inst.formula, dev, p, seed_base);
      });

  EnergyLedger ledger(coeffs);
  for (const TrialResult& t : trials) ledger.accumulate(t.activity);
  const double total = ledger.energy_pj();
  if (total == 0.0) std::cerr << "warning: total energy is zero under these coefficients\n";

  std::cout << "instance " << cfg.input << " backend " << backend_name(cfg.backend) << " sigma "
            << detail::format_double(cfg.sigma) << " trials " << cfg.trials << '\n';
  char share[32];
  for (const auto& [name, pj] : ledger.breakdown()) {
    std::snprintf(share, sizeof share, "%.2f",
                  total == 0.0 ? 0.0 : 100.0 * pj / total);
    std::cout << name << ' ' << detail::format_double(pj) << " pJ " << share << "%\n";
  }
  std::cout << "total " << detail::format_double(total) << " pJ\n";
  std::cout << "iterations " << ledger.iterations() << '\n';
  if (ledger.iterations() > 0)
    std::cout << "energy_per_iteration "
              << detail::format_double(ledger.energy_per_iteration_pj()) << " pJ\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid CNF/XOR stochastic local search with an in-memory-computing backend"};
  app.require_subcommand(1);

  SolveConfig solve_cfg;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance");
  solve_cmd->add_option("input", solve_cfg.input, "DIMACS cnf/xnf file")->required();
  solve_cmd->add_option("--backend", solve_cfg.backend, "solver backend")
      ->transform(CLI::CheckedTransformer(kBackendNames, CLI::ignore_case));
  solve_cmd->add_option("--sigma", solve_cfg.sigma, "gain noise scale");
  solve_cmd->add_option("--max-iter", solve_cfg.max_iter, "flip budget");
  solve_cmd->add_option("--seed", solve_cfg.seed, "RNG seed (default: XNFSAT_SEED or 1)");
  solve_cmd->add_option("--device-model", solve_cfg.device_model, "device model file");
  solve_cmd->add_option("--dump-crossbar", solve_cfg.dump_crossbar,
                        "write the programmed crossbar as a PBM image");

  ConvertConfig conv_cfg;
  CLI::App* conv_cmd = app.add_subcommand("convert", "convert between cnf and xnf");
  conv_cmd->add_option("input", conv_cfg.input, "DIMACS cnf/xnf file")->required();
  conv_cmd->add_option("--to", conv_cfg.to, "target representation")
      ->check(CLI::IsMember({"cnf", "xnf"}))
      ->required();
  conv_cmd->add_option("--out", conv_cfg.out, "output file (default: stdout)");
  conv_cmd->add_option("--width", conv_cfg.width, "max XOR arity kept when cutting to cnf");
  conv_cmd->add_option("--k-max", conv_cfg.k_max, "max group arity scanned when extracting XORs");

  GenConfig gen_cfg;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate benchmark instances");
  gen_cmd->require_subcommand(1);
  const auto add_common_gen = [&](CLI::App* sub) {
    sub->add_option("--out", gen_cfg.out, "output file (default: stdout)");
    sub->add_option("--witness-out", gen_cfg.witness_out, "witness sidecar file");
    sub->add_option("--seed", gen_cfg.seed, "RNG seed (default: XNFSAT_SEED or 1)");
  };
  CLI::App* gen_mdp_cmd = gen_cmd->add_subcommand("mdp", "minimal disagreement parity");
  gen_mdp_cmd->add_option("--rows", gen_cfg.rows, "sample rows m");
  gen_mdp_cmd->add_option("--vars", gen_cfg.vars, "parity vector length n");
  gen_mdp_cmd->add_option("--bound", gen_cfg.bound, "disagreement bound k");
  gen_mdp_cmd->add_option("--flips", gen_cfg.flips, "planted disagreements");
  add_common_gen(gen_mdp_cmd);
  CLI::App* gen_xorsat_cmd = gen_cmd->add_subcommand("xorsat", "planted random XORSAT");
  gen_xorsat_cmd->add_option("--vars", gen_cfg.vars, "variables");
  gen_xorsat_cmd->add_option("--clauses", gen_cfg.clauses, "XOR clauses");
  gen_xorsat_cmd->add_option("--arity", gen_cfg.arity, "XOR arity");
  add_common_gen(gen_xorsat_cmd);
  CLI::App* gen_ksat_cmd = gen_cmd->add_subcommand("ksat", "uniform random k-SAT (no plant)");
  gen_ksat_cmd->add_option("--vars", gen_cfg.vars, "variables");
  gen_ksat_cmd->add_option("--clauses", gen_cfg.clauses, "CNF clauses");
  gen_ksat_cmd->add_option("--arity", gen_cfg.arity, "clause arity");
  add_common_gen(gen_ksat_cmd);
  CLI::App* gen_xnf_cmd = gen_cmd->add_subcommand("xnf", "planted XOR core with CNF padding");
  gen_xnf_cmd->add_option("--vars", gen_cfg.vars, "variables");
  gen_xnf_cmd->add_option("--cnf-clauses", gen_cfg.cnf_clauses, "CNF clauses");
  gen_xnf_cmd->add_option("--xor-clauses", gen_cfg.xor_clauses, "XOR clauses");
  gen_xnf_cmd->add_option("--cnf-arity", gen_cfg.cnf_arity, "CNF arity");
  gen_xnf_cmd->add_option("--xor-arity", gen_cfg.xor_arity, "XOR arity");
  add_common_gen(gen_xnf_cmd);

  BenchConfig bench_cfg;
  CLI::App* bench_cmd = app.add_subcommand("bench", "trial campaigns with aggregate metrics");
  bench_cmd->add_option("inputs", bench_cfg.inputs, "DIMACS cnf/xnf files")->required();
  bench_cmd->add_option("--backend", bench_cfg.backend, "solver backend")
      ->transform(CLI::CheckedTransformer(kBackendNames, CLI::ignore_case));
  bench_cmd->add_option("--sigma", bench_cfg.sigmas, "noise levels (repeatable)");
  bench_cmd->add_option("--trials", bench_cfg.trials, "trials per instance per sigma");
  bench_cmd->add_option("--max-iter", bench_cfg.max_iter, "flip cap per trial");
  bench_cmd->add_option("--seed", bench_cfg.seed, "base seed; trial i uses seed + i");
  bench_cmd->add_option("--jobs", bench_cfg.jobs, "worker threads");
  bench_cmd->add_option("--device-model", bench_cfg.device_model, "device model file");
  bench_cmd->add_option("--coeffs", bench_cfg.coeffs, "energy coefficient file");
  bench_cmd->add_option("--out", bench_cfg.out, "results file (default: stdout)");
  bench_cmd->add_option("--format", bench_cfg.format, "results encoding")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  EnergyReportConfig er_cfg;
  CLI::App* er_cmd = app.add_subcommand("energy-report", "per-component energy breakdown");
  er_cmd->add_option("input", er_cfg.input, "DIMACS cnf/xnf file")->required();
  er_cmd->add_option("--backend", er_cfg.backend, "solver backend")
      ->transform(CLI::CheckedTransformer(kBackendNames, CLI::ignore_case));
  er_cmd->add_option("--sigma", er_cfg.sigma, "gain noise scale");
  er_cmd->add_option("--trials", er_cfg.trials, "trials to accumulate");
  er_cmd->add_option("--max-iter", er_cfg.max_iter, "flip budget per trial");
  er_cmd->add_option("--seed", er_cfg.seed, "base seed");
  er_cmd->add_option("--jobs", er_cfg.jobs, "worker threads");
  er_cmd->add_option("--device-model", er_cfg.device_model, "device model file");
  er_cmd->add_option("--coeffs", er_cfg.coeffs, "energy coefficient file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_cfg);
    if (conv_cmd->parsed()) return cmd_convert(conv_cfg);
    if (gen_cmd->parsed()) {
      if (gen_mdp_cmd->parsed()) return cmd_gen_mdp(gen_cfg);
      if (gen_xorsat_cmd->parsed()) return cmd_gen_xorsat(gen_cfg);
      if (gen_ksat_cmd->parsed()) return cmd_gen_ksat(gen_cfg);
      return cmd_gen_xnf(gen_cfg);
    }
    if (bench_cmd->parsed()) return cmd_bench(bench_cfg);
    return cmd_energy_report(er_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
