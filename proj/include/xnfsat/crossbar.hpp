// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "xnfsat/activity.hpp"
#include "xnfsat/config_kv.hpp"
#include "xnfsat/formula.hpp"
#include "xnfsat/rng.hpp"
#include "xnfsat/walksat.hpp"

/// In-memory-computing emulation of the solver pipeline.
///
/// The formula maps onto a crossbar of C clause rows by 2N literal
/// columns: variable v owns column 2v (positive literal) and 2v+1
/// (negated). Programmed cells sit at high conductance g_on, the rest at
/// g_off. Reading drives exactly one column per variable (2v when v is
/// true, 2v+1 otherwise), so a row's current is
///     I = h * g_on + (N - h) * g_off,  h = true literals in the row,
/// and thresholds halfway between adjacent levels recover h. Device
/// variation perturbs every cell conductance once at programming time;
/// reads of a programmed array are deterministic, which makes trials
/// reproducible and means a noise-induced misreading repeats until the
/// assignment changes (a persistent stall is reported as an unsolved
/// trial, not retried with fresh noise).
namespace xnf {

enum class ThresholdMode : std::uint8_t { Midpoint, OffsetOptimized };

struct DeviceModel {
  double g_on_us = 100.0;   // programmed cell conductance, microsiemens
  double g_off_us = 1.0;    // unprogrammed cell conductance
  double g_sigma_us = 0.0;  // per-cell programming noise (stddev); 0 = ideal
  double read_voltage_v = 1.0;
  ThresholdMode threshold_mode = ThresholdMode::OffsetOptimized;
  std::uint32_t calibration_inputs = 200;  // random assignments for the offset sweep
  std::uint32_t sweep_steps = 81;

  static DeviceModel from_kv(const KvMap& kv) {
    DeviceModel d;
    for (const auto& [key, value] : kv) {
      if (key == "g_on_us")
        d.g_on_us = kv_to_double(key, value);
      else if (key == "g_off_us")
        d.g_off_us = kv_to_double(key, value);
      else if (key == "g_sigma_us")
        d.g_sigma_us = kv_to_double(key, value);
      else if (key == "read_voltage_v")
        d.read_voltage_v = kv_to_double(key, value);
      else if (key == "threshold_mode") {
        if (value == "midpoint")
          d.threshold_mode = ThresholdMode::Midpoint;
        else if (value == "offset_optimized")
          d.threshold_mode = ThresholdMode::OffsetOptimized;
        else
          throw Error("unknown threshold_mode '" + value + "'");
      } else if (key == "calibration_inputs")
        d.calibration_inputs = static_cast<std::uint32_t>(kv_to_double(key, value));
      else if (key == "sweep_steps")
        d.sweep_steps = static_cast<std::uint32_t>(kv_to_double(key, value));
      else
        throw Error("unknown device model key '" + key + "'");
    }
    if (d.g_on_us <= d.g_off_us) throw Error("device model needs g_on_us > g_off_us");
    if (d.g_sigma_us < 0) throw Error("g_sigma_us must be non-negative");
    return d;
  }

  static DeviceModel from_file(const std::string& path) { return from_kv(parse_kv_file(path)); }
};

/// Binary crossbar image of a formula plus, once sampled, the per-cell
/// conductances frozen at programming time.
struct CrossbarProgram {
  std::uint32_t rows = 0;
  std::uint32_t num_vars = 0;
  std::vector<ClauseKind> kind;      // per row
  std::vector<std::uint32_t> arity;  // per row
  std::vector<std::uint8_t> cell;    // rows x 2N, row-major
  std::vector<double> g_us;          // per-cell conductances; empty = ideal

  std::uint32_t cols() const { return 2 * num_vars; }
  bool ideal() const { return g_us.empty(); }
  std::uint8_t at(std::uint32_t r, std::uint32_t c) const { return cell[std::size_t{r} * cols() + c]; }
};

/// Each clause becomes one row with exactly one programmed cell per
/// member variable, in the column matching the literal sign.
inline CrossbarProgram program_crossbar(const Formula& f) {
  CrossbarProgram p;
  p.rows = static_cast<std::uint32_t>(f.num_clauses());
  p.num_vars = f.num_vars();
  p.kind.reserve(p.rows);
  p.arity.reserve(p.rows);
  p.cell.assign(std::size_t{p.rows} * p.cols(), 0);
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    const Clause& c = f.clause(r);
    p.kind.push_back(c.kind);
    p.arity.push_back(static_cast<std::uint32_t>(c.lits.size()));
    for (const Lit& l : c.lits)
      p.cell[std::size_t{r} * p.cols() + 2 * l.var + (l.neg ? 1 : 0)] = 1;
  }
  return p;
}

/// Draws one conductance per cell (row-major): N(g_on, sigma) for
/// programmed cells, N(g_off, sigma) for the rest. Unclamped: the noise
/// abstraction is symmetric around the nominal level, and clamping at
/// zero would bias the off-state mean upward and skew calibration.
inline void sample_conductances(CrossbarProgram& p, const DeviceModel& d, Xorshift64& rng) {
  p.g_us.resize(p.cell.size());
  for (std::size_t i = 0; i < p.cell.size(); ++i) {
    const double mean = p.cell[i] ? d.g_on_us : d.g_off_us;
    p.g_us[i] = mean + d.g_sigma_us * rng.next_gaussian();
  }
}

/// Analog row currents for one assignment: variable v drives column 2v
/// when true, 2v+1 when false; each row sums its driven-cell conductances
/// times the read voltage.
inline std::vector<double> row_currents(const CrossbarProgram& p, const DeviceModel& d,
                                        const Assignment& a) {
  if (a.size() != p.num_vars) throw FormulaError("assignment size does not match crossbar");
  std::vector<double> out(p.rows, 0.0);
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    const std::size_t base = std::size_t{r} * p.cols();
    double sum = 0.0;
    for (std::uint32_t v = 0; v < p.num_vars; ++v) {
      const std::size_t idx = base + 2 * v + (a[v] ? 0 : 1);
      sum += p.ideal() ? (p.cell[idx] ? d.g_on_us : d.g_off_us) : p.g_us[idx];
    }
    out[r] = sum * d.read_voltage_v;
  }
  return out;
}

/// Count thresholds shared by all rows: thresholds[h] separates count h
/// from h+1. A row of arity k uses the first k thresholds; currents are
/// identical across rows for a given count because every variable drives
/// exactly one column (non-member columns add the same g_off baseline).
struct RowQuantizer {
  std::vector<double> thresholds;  // strictly increasing
  double offset_us = 0.0;          // calibrated global shift, in conductance units

  std::uint32_t quantize(double current, std::uint32_t arity) const {
    std::uint32_t h = 0;
    while (h < arity && current > thresholds[h]) ++h;
    return h;
  }
};

namespace detail {

inline std::vector<double> midpoint_thresholds(const CrossbarProgram& p, const DeviceModel& d,
                                               double offset_us) {
  std::uint32_t max_arity = 0;
  for (std::uint32_t a : p.arity) max_arity = std::max(max_arity, a);
  std::vector<double> thr(max_arity);
  const double delta = d.g_on_us - d.g_off_us;
  for (std::uint32_t h = 0; h < max_arity; ++h)
    thr[h] = (p.num_vars * d.g_off_us + (h + 0.5) * delta + offset_us) * d.read_voltage_v;
  return thr;
}

}  // namespace detail

/// Ideal counts straight from the binary image (the ground truth a
/// noiseless array would report).
inline std::vector<std::uint32_t> ideal_counts(const CrossbarProgram& p, const Assignment& a) {
  std::vector<std::uint32_t> out(p.rows, 0);
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    const std::size_t base = std::size_t{r} * p.cols();
    for (std::uint32_t v = 0; v < p.num_vars; ++v)
      out[r] += p.cell[base + 2 * v + (a[v] ? 0 : 1)];
  }
  return out;
}

/// Midpoint thresholds, optionally shifted by a global offset chosen by a
/// one-dimensional sweep that minimizes the count misclassification rate
/// on random calibration inputs. The sweep scans offsets over half a
/// level spacing in both directions and prefers the candidate closest to
/// zero among equal error counts. Ideal programs take offset 0 directly.
inline RowQuantizer build_quantizer(const CrossbarProgram& p, const DeviceModel& d,
                                    std::uint64_t calib_seed) {
  RowQuantizer q;
  if (p.ideal() || d.threshold_mode == ThresholdMode::Midpoint || d.sweep_steps <= 1 ||
      d.calibration_inputs == 0) {
    q.thresholds = detail::midpoint_thresholds(p, d, 0.0);
    return q;
  }

  Xorshift64 rng(calib_seed);
  std::vector<Assignment> inputs;
  inputs.reserve(d.calibration_inputs);
  for (std::uint32_t i = 0; i < d.calibration_inputs; ++i)
    inputs.push_back(initial_assignment(p.num_vars, InitMode::Random, rng));

  const double delta = d.g_on_us - d.g_off_us;
  std::vector<double> offsets;
  offsets.reserve(d.sweep_steps);
  for (std::uint32_t i = 0; i < d.sweep_steps; ++i)
    offsets.push_back(-0.5 * delta + static_cast<double>(i) * delta / (d.sweep_steps - 1));
  // Candidates closest to zero first, so ties resolve to the least shift.
  std::sort(offsets.begin(), offsets.end(), [](double x, double y) {
    return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : x < y;
  });

  std::uint64_t best_err = ~std::uint64_t{0};
  double best_offset = 0.0;
  for (double off : offsets) {
    const std::vector<double> thr = detail::midpoint_thresholds(p, d, off);
    RowQuantizer cand{thr, off};
    std::uint64_t err = 0;
    for (const Assignment& a : inputs) {
      const std::vector<double> cur = row_currents(p, d, a);
      const std::vector<std::uint32_t> truth = ideal_counts(p, a);
      for (std::uint32_t r = 0; r < p.rows; ++r)
        err += cand.quantize(cur[r], p.arity[r]) != truth[r] ? 1 : 0;
    }
    if (err < best_err) {
      best_err = err;
      best_offset = off;
    }
  }
  q.thresholds = detail::midpoint_thresholds(p, d, best_offset);
  q.offset_us = best_offset;
  return q;
}

/// Quantized per-row true-literal counts for one assignment.
inline std::vector<std::uint32_t> row_readout(const CrossbarProgram& p, const DeviceModel& d,
                                              const RowQuantizer& q, const Assignment& a) {
  const std::vector<double> cur = row_currents(p, d, a);
  std::vector<std::uint32_t> out(p.rows);
  for (std::uint32_t r = 0; r < p.rows; ++r) out[r] = q.quantize(cur[r], p.arity[r]);
  return out;
}

/// Fraction of row reads whose quantized count differs from the ideal
/// count, over random assignments. Diagnostic for device settings.
inline double readout_error_rate(const CrossbarProgram& p, const DeviceModel& d,
                                 const RowQuantizer& q, std::uint32_t n_inputs,
                                 std::uint64_t seed) {
  if (n_inputs == 0 || p.rows == 0) return 0.0;
  Xorshift64 rng(seed);
  std::uint64_t wrong = 0;
  for (std::uint32_t i = 0; i < n_inputs; ++i) {
    const Assignment a = initial_assignment(p.num_vars, InitMode::Random, rng);
    const std::vector<std::uint32_t> got = row_readout(p, d, q, a);
    const std::vector<std::uint32_t> truth = ideal_counts(p, a);
    for (std::uint32_t r = 0; r < p.rows; ++r) wrong += got[r] != truth[r] ? 1 : 0;
  }
  return static_cast<double>(wrong) / (static_cast<double>(n_inputs) * p.rows);
}

/// Per-row make/break drive lines derived from the counts. CNF rows use
/// two comparators (count 0: every member flip satisfies; count 1: the
/// true literal's flip breaks). XOR rows toggle on any flip, so the count
/// parity picks exactly one drive.
struct EvalDrives {
  std::vector<std::uint8_t> make, brk;
};

inline EvalDrives eval_circuits(const std::vector<std::uint32_t>& counts,
                                const CrossbarProgram& p) {
  if (counts.size() != p.rows) throw FormulaError("count vector does not match crossbar rows");
  EvalDrives d;
  d.make.resize(p.rows);
  d.brk.resize(p.rows);
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    if (p.kind[r] == ClauseKind::Cnf) {
      d.make[r] = counts[r] == 0 ? 1 : 0;
      d.brk[r] = counts[r] == 1 ? 1 : 0;
    } else {
      d.make[r] = (counts[r] & 1u) == 0 ? 1 : 0;
      d.brk[r] = (counts[r] & 1u) != 0 ? 1 : 0;
    }
  }
  return d;
}

/// Transpose pass: per-variable make/break tallies. Make accumulates
/// ungated over both literal columns. Break is gated for CNF rows by the
/// literal that is currently true (only its flip can break the clause);
/// XOR rows break on any member flip, so no gate.
struct MakeBreakCounts {
  std::vector<std::uint32_t> make, brk;
};

inline MakeBreakCounts make_break_readout(const CrossbarProgram& p, const EvalDrives& d,
                                          const Assignment& a) {
  if (a.size() != p.num_vars) throw FormulaError("assignment size does not match crossbar");
  MakeBreakCounts mb;
  mb.make.assign(p.num_vars, 0);
  mb.brk.assign(p.num_vars, 0);
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    if (!d.make[r] && !d.brk[r]) continue;
    const std::size_t base = std::size_t{r} * p.cols();
    for (std::uint32_t v = 0; v < p.num_vars; ++v) {
      const std::uint8_t member = p.cell[base + 2 * v] | p.cell[base + 2 * v + 1];
      if (!member) continue;
      if (d.make[r]) mb.make[v] += 1;
      if (d.brk[r]) {
        if (p.kind[r] == ClauseKind::Xor)
          mb.brk[v] += 1;
        else
          mb.brk[v] += p.cell[base + 2 * v + (a[v] ? 0 : 1)];
      }
    }
  }
  return mb;
}

/// Winner-take-all over the masked noisy gains: strict maximum, scanning
/// ascending, so ties go to the lowest variable index.
inline Var wta_select(const std::vector<double>& noisy, const std::vector<std::uint8_t>& mask) {
  Var best = 0;
  double best_val = 0.0;
  bool have = false;
  for (Var v = 0; v < noisy.size(); ++v) {
    if (!mask[v]) continue;
    if (!have || noisy[v] > best_val) {
      have = true;
      best_val = noisy[v];
      best = v;
    }
  }
  if (!have) throw FormulaError("winner-take-all on an empty candidate mask");
  return best;
}

/// Full pipeline solver. With an ideal device this produces bit-identical
/// flip sequences to WalkSatSolver under the same seed: the candidate
/// mask (make > 0) equals the unsatisfied-clause variable set, the
/// make/break tallies equal the reference gains, and both backends draw
/// one Gaussian per candidate in ascending variable order.
class CrossbarSolver {
 public:
  CrossbarSolver(const Formula& f, const DeviceModel& dev, const SolverParams& params,
                 std::uint64_t device_seed = 0)
      : f_(&f), dev_(dev), params_(params), rng_(params.seed) {
    prog_ = program_crossbar(f);
    if (dev_.g_sigma_us > 0) {
      Xorshift64 dev_rng(device_seed);
      sample_conductances(prog_, dev_, dev_rng);
    }
    quant_ = build_quantizer(prog_, dev_, device_seed + 1);
    reg_ = initial_assignment(f.num_vars(), params.init, rng_);
    noisy_.resize(f.num_vars());
    mask_.resize(f.num_vars());
    for (ClauseKind k : prog_.kind) cnf_rows_ += k == ClauseKind::Cnf ? 1 : 0;
    xor_rows_ = prog_.rows - cnf_rows_;
  }

  const CrossbarProgram& program() const { return prog_; }
  const RowQuantizer& quantizer() const { return quant_; }
  const Assignment& assignment() const { return reg_; }
  const ActivityCounts& activity() const { return act_; }

  /// One pipeline iteration: row readout, eval circuits, transpose
  /// readout, noise injection, winner-take-all, register update. Returns
  /// the flipped variable, or nullopt on a stall (noise produced an empty
  /// candidate mask; readout activity still counts).
  std::optional<Var> step() {
    const std::vector<std::uint32_t> counts = row_readout(prog_, dev_, quant_, reg_);
    const EvalDrives drives = eval_circuits(counts, prog_);
    const MakeBreakCounts mb = make_break_readout(prog_, drives, reg_);

    act_.iterations += 1;
    act_.row_events += prog_.rows;
    act_.column_events += 2 * prog_.cols();
    act_.comparator_ops += 2 * cnf_rows_;
    act_.adc_ops += xor_rows_;

    std::uint32_t n_cand = 0;
    for (Var v = 0; v < prog_.num_vars; ++v) {
      mask_[v] = mb.make[v] > 0 ? 1 : 0;
      if (!mask_[v]) continue;
      ++n_cand;
      const int gain = static_cast<int>(mb.make[v]) - static_cast<int>(mb.brk[v]);
      const double e = rng_.next_gaussian();
      noisy_[v] = static_cast<double>(gain) + params_.sigma * e;
    }
    if (n_cand == 0) return std::nullopt;

    const Var best = wta_select(noisy_, mask_);
    act_.prng_words += n_cand;
    act_.dac_events += n_cand;
    act_.wta_ops += 1;
    act_.register_updates += 1;
    reg_.flip(best);
    return best;
  }

  TrialResult solve() {
    TrialResult r;
    std::uint64_t steps = 0;
    for (;;) {
      if (formula_satisfied(*f_, reg_)) {
        r.solved = true;
        break;
      }
      if (steps == params_.max_iter) break;
      const std::optional<Var> v = step();
      ++steps;
      if (v && params_.record_flips) r.flips.push_back(*v);
    }
    r.iterations = steps;
    r.final_assignment = reg_;
    r.activity = act_;
    return r;
  }

 private:
  const Formula* f_;
  DeviceModel dev_;
  SolverParams params_;
  Xorshift64 rng_;
  CrossbarProgram prog_;
  RowQuantizer quant_;
  Assignment reg_;
  std::vector<double> noisy_;
  std::vector<std::uint8_t> mask_;
  ActivityCounts act_;
  std::uint64_t cnf_rows_ = 0;
  std::uint64_t xor_rows_ = 0;
};

inline TrialResult solve_crossbar(const Formula& f, const DeviceModel& d,
                                  const SolverParams& params, std::uint64_t device_seed = 0) {
  return CrossbarSolver(f, d, params, device_seed).solve();
}

/// n pipeline trials with per-trial seeds seed + i on one programmed
/// device (shared device_seed).
inline std::vector<TrialResult> run_trials_crossbar(const Formula& f, const DeviceModel& d,
                                                    const SolverParams& base, std::size_t n,
                                                    unsigned jobs = 1,
                                                    std::uint64_t device_seed = 0) {
  return run_trials_with(n, jobs, [&](std::size_t i) {
    SolverParams p = base;
    p.seed = base.seed + i;
    return solve_crossbar(f, d, p, device_seed);
  });
}

/// Portable bitmap (P1) dump of the programmed cells: one image row per
/// clause row, 1 = programmed cell.
inline void write_pbm(std::ostream& out, const CrossbarProgram& p) {
  out << "P1\n" << p.cols() << ' ' << p.rows << '\n';
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    for (std::uint32_t c = 0; c < p.cols(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(p.at(r, c));
    }
    out << '\n';
  }
}

}  // namespace xnf
