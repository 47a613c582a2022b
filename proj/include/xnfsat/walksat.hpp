// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "xnfsat/activity.hpp"
#include "xnfsat/formula.hpp"
#include "xnfsat/rng.hpp"

/// Reference WalkSAT variant for XNF formulas with a full-neighbourhood
/// flip rule: every variable occurring in an unsatisfied clause is a
/// candidate each iteration, each candidate's make/break gain gets an
/// additive Gaussian noise term, and the noisiest-best candidate flips.
/// No random-walk branch and no per-clause candidate restriction; the
/// noise scale sigma is the only exploration knob.
namespace xnf {

enum class InitMode : std::uint8_t { AllTrue, Random };

struct SolverParams {
  double sigma = 0.0;             // noise scale on the gain
  std::uint64_t max_iter = 100000;
  std::uint64_t seed = 1;
  InitMode init = InitMode::AllTrue;
  bool record_flips = false;      // keep the flip trace in TrialResult
};

struct TrialResult {
  bool solved = false;
  std::uint64_t iterations = 0;   // executed steps; 0 when the initial assignment satisfies
  Assignment final_assignment;
  std::vector<Var> flips;         // only when record_flips
  ActivityCounts activity;
};

/// Gain of flipping v under a: make = clauses that become satisfied,
/// brk = clauses that become unsatisfied, gain = make - brk.
///
/// CNF clause with zero true literals: flipping any member satisfies it
/// (make). CNF clause whose single true literal belongs to v: flipping v
/// unsatisfies it (break); with two or more true literals nothing breaks.
/// XOR clause: any member flip toggles parity, so every unsatisfied
/// occurrence counts as make and every satisfied one as break.
struct GainBreakdown {
  std::uint32_t make = 0;
  std::uint32_t brk = 0;
  int gain = 0;
};

inline GainBreakdown compute_gain(const Formula& f, const Assignment& a, Var v) {
  GainBreakdown g;
  for (const Occurrence& o : f.occurrences(v)) {
    const Clause& c = f.clause(o.clause);
    const std::uint32_t n = true_literal_count(c, a);
    if (c.kind == ClauseKind::Cnf) {
      if (n == 0)
        ++g.make;
      else if (n == 1 && lit_true(c.lits[o.position], a))
        ++g.brk;
    } else {
      if ((n & 1u) == 0)
        ++g.make;
      else
        ++g.brk;
    }
  }
  g.gain = static_cast<int>(g.make) - static_cast<int>(g.brk);
  return g;
}

/// Draws one word per variable, ascending. Both backends use this for
/// InitMode::Random so their RNG streams stay aligned.
inline Assignment initial_assignment(std::size_t n, InitMode mode, Xorshift64& rng) {
  if (mode == InitMode::AllTrue) return Assignment::all_true(n);
  Assignment a(n);
  for (std::size_t v = 0; v < n; ++v) a.set(v, rng.next_bool());
  return a;
}

class WalkSatSolver {
 public:
  WalkSatSolver(const Formula& f, const SolverParams& params)
      : f_(&f), params_(params), rng_(params.seed) {
    asg_ = initial_assignment(f.num_vars(), params.init, rng_);
    true_count_.resize(f.num_clauses());
    violated_.resize(f.num_clauses());
    mark_.resize(f.num_vars());
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
      true_count_[ci] = true_literal_count(f.clause(ci), asg_);
      violated_[ci] = clause_sat(f.clause(ci).kind, true_count_[ci]) ? 0 : 1;
      num_violated_ += violated_[ci];
    }
  }

  bool satisfied() const { return num_violated_ == 0; }
  const Assignment& assignment() const { return asg_; }
  std::uint32_t last_candidate_count() const { return last_candidates_; }

  /// Incremental gain from the cached per-clause true-literal counts;
  /// agrees with the standalone compute_gain by construction.
  GainBreakdown gain(Var v) const {
    GainBreakdown g;
    for (const Occurrence& o : f_->occurrences(v)) {
      const Clause& c = f_->clause(o.clause);
      const std::uint32_t n = true_count_[o.clause];
      if (c.kind == ClauseKind::Cnf) {
        if (n == 0)
          ++g.make;
        else if (n == 1 && lit_true(c.lits[o.position], asg_))
          ++g.brk;
      } else {
        if ((n & 1u) == 0)
          ++g.make;
        else
          ++g.brk;
      }
    }
    g.gain = static_cast<int>(g.make) - static_cast<int>(g.brk);
    return g;
  }

  /// One flip: scan candidates ascending, draw one Gaussian word per
  /// candidate, pick the strict maximum of gain + sigma * noise (ties
  /// resolve to the lowest variable index).
  Var step() {
    if (num_violated_ == 0) throw std::logic_error("step on a satisfied formula");
    for (std::size_t ci = 0; ci < f_->num_clauses(); ++ci)
      if (violated_[ci])
        for (const Lit& l : f_->clause(ci).lits) mark_[l.var] = 1;

    Var best = 0;
    double best_val = 0.0;
    bool have_best = false;
    std::uint32_t n_candidates = 0;
    for (Var v = 0; v < f_->num_vars(); ++v) {
      if (!mark_[v]) continue;
      mark_[v] = 0;
      ++n_candidates;
      const GainBreakdown g = gain(v);
      const double e = rng_.next_gaussian();
      const double noisy = static_cast<double>(g.gain) + params_.sigma * e;
      if (!have_best || noisy > best_val) {
        have_best = true;
        best_val = noisy;
        best = v;
      }
    }
    last_candidates_ = n_candidates;
    flip(best);
    return best;
  }

  TrialResult solve() {
    TrialResult r;
    const std::uint64_t n_vars = f_->num_vars();
    std::uint64_t flips = 0;
    for (;;) {
      if (num_violated_ == 0) {
        r.solved = true;
        break;
      }
      if (flips == params_.max_iter) break;
      const Var v = step();
      ++flips;
      if (params_.record_flips) r.flips.push_back(v);
      r.activity.iterations += 1;
      r.activity.row_events += f_->num_clauses();
      r.activity.column_events += 4 * n_vars;  // two readout passes over 2N columns
      r.activity.comparator_ops += 2 * f_->cnf_count();
      r.activity.adc_ops += f_->xor_count();
      r.activity.prng_words += last_candidates_;
      r.activity.dac_events += last_candidates_;
      r.activity.wta_ops += 1;
      r.activity.register_updates += 1;
    }
    r.iterations = flips;
    r.final_assignment = asg_;
    if (r.solved && !formula_satisfied(*f_, asg_))
      throw std::logic_error("solver bookkeeping diverged from the formula");
    return r;
  }

 private:
  static bool clause_sat(ClauseKind kind, std::uint32_t n_true) {
    return kind == ClauseKind::Cnf ? n_true > 0 : (n_true & 1u) != 0;
  }

  void flip(Var v) {
    for (const Occurrence& o : f_->occurrences(v)) {
      const Clause& c = f_->clause(o.clause);
      const bool was_true = lit_true(c.lits[o.position], asg_);
      const std::uint32_t n = true_count_[o.clause] + (was_true ? -1 : 1);
      true_count_[o.clause] = n;
      const std::uint8_t now_violated = clause_sat(c.kind, n) ? 0 : 1;
      if (now_violated != violated_[o.clause]) {
        violated_[o.clause] = now_violated;
        num_violated_ += now_violated ? 1 : -1;
      }
    }
    asg_.flip(v);
  }

  const Formula* f_;
  SolverParams params_;
  Xorshift64 rng_;
  Assignment asg_;
  std::vector<std::uint32_t> true_count_;  // true literals per clause
  std::vector<std::uint8_t> violated_;
  std::vector<std::uint8_t> mark_;         // candidate scratch, zeroed each step
  std::uint64_t num_violated_ = 0;
  std::uint32_t last_candidates_ = 0;
};

inline TrialResult solve(const Formula& f, const SolverParams& params) {
  return WalkSatSolver(f, params).solve();
}

/// Runs fn(trial_index) for n trials, optionally across threads. Results
/// are indexed by trial, so the outcome is independent of scheduling.
template <typename SolveFn>
std::vector<TrialResult> run_trials_with(std::size_t n, unsigned jobs, SolveFn&& fn) {
  std::vector<TrialResult> results(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) results[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

/// n trials of the reference solver with per-trial seeds seed + i.
inline std::vector<TrialResult> run_trials(const Formula& f, const SolverParams& base,
                                           std::size_t n, unsigned jobs = 1) {
  return run_trials_with(n, jobs, [&](std::size_t i) {
    SolverParams p = base;
    p.seed = base.seed + i;
    return solve(f, p);
  });
}

}  // namespace xnf
