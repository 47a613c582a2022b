// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xnfsat/formula.hpp"
#include "xnfsat/rng.hpp"
#include "xnfsat/walksat.hpp"

/// Independent oracles for the test suite. Everything here recomputes
/// results from first principles, with none of the incremental state or
/// clause-kind shortcuts the library uses, so agreement is meaningful.
namespace xnf::test {

/// Brute-force gain: flip v, re-evaluate every clause from scratch, and
/// count transitions. No occurrence lists, no cached counts.
inline GainBreakdown naive_gain(const Formula& f, const Assignment& a, Var v) {
  Assignment flipped = a;
  flipped.flip(v);
  GainBreakdown g;
  for (const Clause& c : f.clauses()) {
    const bool before = clause_satisfied(c, a);
    const bool after = clause_satisfied(c, flipped);
    if (!before && after) ++g.make;
    if (before && !after) ++g.brk;
  }
  g.gain = static_cast<int>(g.make) - static_cast<int>(g.brk);
  return g;
}

/// Exhaustive satisfiability scan (n <= 24 or so).
inline std::optional<Assignment> brute_force_solve(const Formula& f) {
  const std::uint32_t n = f.num_vars();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a(n);
    for (std::uint32_t v = 0; v < n; ++v) a.set(v, (bits >> v) & 1);
    if (formula_satisfied(f, a)) return a;
  }
  return std::nullopt;
}

/// Exhaustive model count (n <= 24 or so).
inline std::uint64_t model_count(const Formula& f) {
  const std::uint32_t n = f.num_vars();
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a(n);
    for (std::uint32_t v = 0; v < n; ++v) a.set(v, (bits >> v) & 1);
    if (formula_satisfied(f, a)) ++count;
  }
  return count;
}

/// Model count on a chosen variable prefix: counts assignments of
/// vars [0, prefix) that extend to a model of f. Compares formulas over
/// different auxiliary-variable tails (Tseitin cuts).
inline std::uint64_t projected_model_count(const Formula& f, std::uint32_t prefix) {
  const std::uint32_t n = f.num_vars();
  std::uint64_t count = 0;
  for (std::uint64_t pbits = 0; pbits < (std::uint64_t{1} << prefix); ++pbits) {
    bool extendable = false;
    for (std::uint64_t tbits = 0; tbits < (std::uint64_t{1} << (n - prefix)) && !extendable;
         ++tbits) {
      Assignment a(n);
      for (std::uint32_t v = 0; v < prefix; ++v) a.set(v, (pbits >> v) & 1);
      for (std::uint32_t v = prefix; v < n; ++v) a.set(v, (tbits >> (v - prefix)) & 1);
      if (formula_satisfied(f, a)) extendable = true;
    }
    if (extendable) ++count;
  }
  return count;
}

/// GF(2) Gaussian elimination over the XOR clauses of f (ignores CNF
/// clauses; pass pure-XOR formulas). Returns satisfiability of the
/// linear system.
inline bool gf2_xor_system_satisfiable(const Formula& f) {
  const std::uint32_t n = f.num_vars();
  // Row = n coefficient bits + rhs. XOR clause with t negated literals
  // over distinct vars: sum of vars = 1 + t (mod 2).
  std::vector<std::vector<std::uint8_t>> rows;
  for (const Clause& c : f.clauses()) {
    if (c.kind != ClauseKind::Xor) continue;
    std::vector<std::uint8_t> row(n + 1, 0);
    std::uint8_t rhs = 1;
    for (const Lit& l : c.lits) {
      row[l.var] ^= 1;
      if (l.neg) rhs ^= 1;
    }
    row[n] = rhs;
    rows.push_back(std::move(row));
  }
  std::uint32_t rank_col = 0;
  for (std::uint32_t col = 0; col < n && rank_col < rows.size(); ++col) {
    std::uint32_t pivot = rank_col;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank_col]);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
      if (r == rank_col || !rows[r][col]) continue;
      for (std::uint32_t k = col; k <= n; ++k) rows[r][k] ^= rows[rank_col][k];
    }
    ++rank_col;
  }
  for (const auto& row : rows) {
    bool any = false;
    for (std::uint32_t col = 0; col < n; ++col) any = any || row[col];
    if (!any && row[n]) return false;  // 0 = 1
  }
  return true;
}

/// Random mixed CNF/XOR formula for property tests. Every clause has
/// distinct variables; arity in [1, max_arity]; roughly xor_percent of
/// clauses are XOR.
inline Formula random_formula(Xorshift64& rng, std::uint32_t num_vars, std::uint32_t num_clauses,
                              std::uint32_t max_arity = 4, std::uint32_t xor_percent = 40) {
  std::vector<Clause> clauses;
  std::vector<Var> vars(num_vars);
  for (std::uint32_t v = 0; v < num_vars; ++v) vars[v] = v;
  for (std::uint32_t c = 0; c < num_clauses; ++c) {
    const std::uint32_t arity =
        1 + static_cast<std::uint32_t>(rng.next_below(std::min(max_arity, num_vars)));
    for (std::uint32_t i = 0; i < arity; ++i) {
      const std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(num_vars - i));
      std::swap(vars[i], vars[j]);
    }
    Clause cl;
    cl.kind = rng.next_below(100) < xor_percent ? ClauseKind::Xor : ClauseKind::Cnf;
    for (std::uint32_t i = 0; i < arity; ++i)
      cl.lits.push_back(rng.next_bool() ? neg(vars[i]) : pos(vars[i]));
    clauses.push_back(std::move(cl));
  }
  return Formula(num_vars, std::move(clauses));
}

/// Random assignment drawn from the oracle's own stream.
inline Assignment random_assignment(Xorshift64& rng, std::uint32_t n) {
  Assignment a(n);
  for (std::uint32_t v = 0; v < n; ++v) a.set(v, rng.next_bool());
  return a;
}

/// Straight-line transcription of the solver loop with no incremental
/// state: recompute the unsatisfied-variable set and every gain from
/// scratch each iteration. Returns the flip sequence. Must match both
/// backends word-for-word under the same seed.
inline std::vector<Var> naive_solve_trace(const Formula& f, const SolverParams& params) {
  Xorshift64 rng(params.seed);
  Assignment a = initial_assignment(f.num_vars(), params.init, rng);
  std::vector<Var> trace;
  for (std::uint64_t iter = 0; iter < params.max_iter; ++iter) {
    if (formula_satisfied(f, a)) break;
    const std::vector<Var> u = unsat_variable_set(f, a);
    Var best = 0;
    double best_val = 0.0;
    bool have = false;
    for (Var v : u) {
      const GainBreakdown g = naive_gain(f, a, v);
      const double e = rng.next_gaussian();
      const double noisy = static_cast<double>(g.gain) + params.sigma * e;
      if (!have || noisy > best_val) {
        have = true;
        best_val = noisy;
        best = v;
      }
    }
    a.flip(best);
    trace.push_back(best);
  }
  return trace;
}

}  // namespace xnf::test
