// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "xnfsat/rng.hpp"
#include "xnfsat/walksat.hpp"

/// Success-probability analytics: ITS99 (iterations to reach a 99%
/// aggregate success probability by repeating trials of a given length),
/// its optimized variant over observed trial lengths with bootstrap
/// standard errors, and the sigma grid search.
namespace xnf {

/// Repeat-count estimate: iter * ln(0.01) / ln(1 - theta).
///
/// theta = 1 returns iter (one repetition suffices; the formula's limit
/// would be 0, which has no operational meaning). theta = 0.99 also
/// returns iter exactly: it is the target rate itself, and an explicit
/// branch keeps that identity independent of how the two log1p calls
/// round (a compile-time-folded log1p can differ from the runtime one
/// by an ulp). theta outside (0, 1] throws: with no observed successes
/// the metric is undefined and the caller reports the instance as
/// unsolved/censored. Logs use log1p for precision near theta = 0.
inline double its99(double iter, double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw Error("its99 undefined outside 0 < theta <= 1");
  if (theta == 1.0 || theta == 0.99) return iter;
  return iter * (std::log1p(-0.99) / std::log1p(-theta));
}

/// Empirical success CDF of a trial set over the grid of distinct solve
/// lengths plus the longest observed run.
struct SuccessCurve {
  std::vector<std::uint64_t> grid;        // sorted ascending
  std::vector<double> theta;              // P(solved within grid[i] iterations)
  std::vector<std::uint32_t> successes;   // solved trials with iterations <= grid[i]
  std::size_t n_trials = 0;
  std::vector<std::pair<std::uint64_t, bool>> outcomes;  // per-trial (iterations, solved)

  bool any_success() const { return !successes.empty() && successes.back() > 0; }
};

inline SuccessCurve success_curve(const std::vector<TrialResult>& trials) {
  if (trials.empty()) throw Error("success curve needs at least one trial");
  SuccessCurve c;
  c.n_trials = trials.size();
  c.outcomes.reserve(trials.size());
  std::uint64_t longest = 0;
  std::map<std::uint64_t, std::uint32_t> solved_at;
  for (const TrialResult& t : trials) {
    c.outcomes.emplace_back(t.iterations, t.solved);
    longest = std::max(longest, t.iterations);
    if (t.solved) ++solved_at[t.iterations];
  }
  for (const auto& [len, cnt] : solved_at) c.grid.push_back(len);
  if (c.grid.empty() || c.grid.back() < longest) c.grid.push_back(longest);
  c.theta.reserve(c.grid.size());
  c.successes.reserve(c.grid.size());
  std::uint32_t cum = 0;
  auto it = solved_at.begin();
  for (std::uint64_t point : c.grid) {
    while (it != solved_at.end() && it->first <= point) {
      cum += it->second;
      ++it;
    }
    c.successes.push_back(cum);
    c.theta.push_back(static_cast<double>(cum) / static_cast<double>(c.n_trials));
  }
  return c;
}

struct ItsEstimate {
  double its99_opt = 0.0;
  std::uint64_t argmin_iter = 0;   // grid point achieving the minimum
  double stderr_its = 0.0;         // bootstrap standard error
  std::uint32_t n_success = 0;     // successes at argmin_iter
};

namespace detail {

/// Point estimate: minimize its99(t, theta(t)) over grid points with at
/// least min_successes solved trials; ties resolve to the earlier grid
/// point. Returns nullopt when no point qualifies (censored).
inline std::optional<std::pair<double, std::size_t>> its99_point(
    const std::vector<std::uint64_t>& grid, const std::vector<double>& theta,
    const std::vector<std::uint32_t>& successes, std::uint32_t min_successes) {
  std::optional<std::pair<double, std::size_t>> best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (successes[i] < min_successes || theta[i] <= 0.0) continue;
    const double val = its99(static_cast<double>(grid[i]), theta[i]);
    if (!best || val < best->first) best = {val, i};
  }
  return best;
}

}  // namespace detail

/// Optimized ITS99 with a bootstrap standard error over >= `resamples`
/// resamples of the trial set. nullopt = censored (not enough successes
/// at any trial length).
inline std::optional<ItsEstimate> its99_opt(const SuccessCurve& c,
                                            std::uint32_t min_successes = 10,
                                            std::uint32_t resamples = 1000,
                                            std::uint64_t bootstrap_seed = 1) {
  const auto point = detail::its99_point(c.grid, c.theta, c.successes, min_successes);
  if (!point) return std::nullopt;

  ItsEstimate est;
  est.its99_opt = point->first;
  est.argmin_iter = c.grid[point->second];
  est.n_success = c.successes[point->second];

  // Bootstrap: resample the n trial outcomes with replacement, rebuild
  // the curve counts on the same grid, recompute the point estimate.
  Xorshift64 rng(bootstrap_seed);
  const std::size_t n = c.outcomes.size();
  std::vector<double> values;
  values.reserve(resamples);
  std::vector<std::uint32_t> solved_counts(c.grid.size());
  std::vector<double> theta(c.grid.size());
  for (std::uint32_t b = 0; b < resamples; ++b) {
    std::fill(solved_counts.begin(), solved_counts.end(), 0);
    for (std::size_t d = 0; d < n; ++d) {
      const auto& [len, solved] = c.outcomes[rng.next_below(n)];
      if (!solved) continue;
      // First grid point >= len collects this solve (grid holds every
      // distinct solve length, so lower_bound lands exactly).
      const std::size_t gi = static_cast<std::size_t>(
          std::lower_bound(c.grid.begin(), c.grid.end(), len) - c.grid.begin());
      ++solved_counts[gi];
    }
    std::uint32_t cum = 0;
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      cum += solved_counts[i];
      solved_counts[i] = cum;
      theta[i] = static_cast<double>(cum) / static_cast<double>(n);
    }
    const auto p = detail::its99_point(c.grid, theta, solved_counts, min_successes);
    if (p) values.push_back(p->first);
  }
  if (values.size() >= 2) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    est.stderr_its = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return est;
}

inline std::optional<ItsEstimate> its99_opt(const std::vector<TrialResult>& trials,
                                            std::uint32_t min_successes = 10,
                                            std::uint32_t resamples = 1000,
                                            std::uint64_t bootstrap_seed = 1) {
  return its99_opt(success_curve(trials), min_successes, resamples, bootstrap_seed);
}

struct SigmaPoint {
  double sigma = 0.0;
  std::size_t solved = 0;
  std::optional<ItsEstimate> its;
};

struct GridSearchResult {
  std::optional<double> best_sigma;  // nullopt when every point is censored
  std::vector<SigmaPoint> table;
};

/// Reference-backend grid search over noise levels: runs
/// trials_per_point trials at each sigma and picks the smallest
/// its99_opt (ties to the earlier grid entry).
inline GridSearchResult grid_search_sigma(const Formula& f, const std::vector<double>& sigma_grid,
                                          std::size_t trials_per_point, const SolverParams& base,
                                          unsigned jobs = 1, std::uint32_t min_successes = 10) {
  if (sigma_grid.empty()) throw Error("sigma grid is empty");
  GridSearchResult res;
  double best_val = 0.0;
  for (double sigma : sigma_grid) {
    SolverParams p = base;
    p.sigma = sigma;
    const std::vector<TrialResult> trials = run_trials(f, p, trials_per_point, jobs);
    SigmaPoint pt;
    pt.sigma = sigma;
    for (const TrialResult& t : trials) pt.solved += t.solved ? 1 : 0;
    pt.its = its99_opt(trials, min_successes);
    if (pt.its && (!res.best_sigma || pt.its->its99_opt < best_val)) {
      res.best_sigma = sigma;
      best_val = pt.its->its99_opt;
    }
    res.table.push_back(std::move(pt));
  }
  return res;
}

}  // namespace xnf
