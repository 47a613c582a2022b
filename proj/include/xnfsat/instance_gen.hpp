// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "xnfsat/formula.hpp"
#include "xnfsat/rng.hpp"

/// Seed-deterministic benchmark instance generators. Every satisfiable
/// instance ships with the planted witness that generation asserts
/// against, so downstream tests can verify solver output independently.
namespace xnf {

struct GeneratedInstance {
  Formula formula;
  Assignment witness;
};

/// Minimal disagreement parity: find a length-n vector a whose parities
/// against m random samples disagree with the observed values y in at
/// most k places. Encoding: a disagreement indicator d_i per sample row
/// via one XOR clause (d_i xor X_i.a = y_i, with y_i = 0 negating the
/// d_i literal), plus a sequential-counter cardinality constraint
/// sum d_i <= k over CNF clauses.
///
/// Variable layout: a_j -> j (0..n-1); d_i -> n+i (0..m-1); counter
/// stage s_{i,j} -> n+m+i*k+j for i in 0..m-2, j in 0..k-1 (only when
/// 1 <= k < m).
struct MdpSpec {
  std::uint32_t m = 8;           // sample rows
  std::uint32_t n = 8;           // parity vector length
  std::uint32_t k = 1;           // disagreement bound
  std::uint32_t flip_count = 1;  // planted disagreements; > k is a deliberate negative control
  std::uint64_t seed = 1;

  bool valid() const { return m >= 1 && n >= 1 && k <= m && flip_count <= m; }
};

namespace detail {

/// Sequential-counter clauses for sum(x) <= k over the given variables.
/// stage(i, j) must name the counter variable s_{i,j} ("at least j+1 of
/// x_0..x_i are true"), for i in 0..m-2, j in 0..k-1. k = 0 emits unit
/// negations; k >= m emits nothing.
template <typename StageFn>
void sequential_counter_at_most(const std::vector<Var>& xs, std::uint32_t k, StageFn stage,
                                std::vector<Clause>& out) {
  const std::uint32_t m = static_cast<std::uint32_t>(xs.size());
  if (k >= m) return;
  if (k == 0) {
    for (Var x : xs) out.push_back(Clause{ClauseKind::Cnf, {neg(x)}});
    return;
  }
  const auto s = [&](std::uint32_t i, std::uint32_t j) { return stage(i, j); };
  out.push_back(Clause{ClauseKind::Cnf, {neg(xs[0]), pos(s(0, 0))}});
  for (std::uint32_t j = 1; j < k; ++j) out.push_back(Clause{ClauseKind::Cnf, {neg(s(0, j))}});
  for (std::uint32_t i = 1; i + 1 < m; ++i) {
    out.push_back(Clause{ClauseKind::Cnf, {neg(xs[i]), pos(s(i, 0))}});
    out.push_back(Clause{ClauseKind::Cnf, {neg(s(i - 1, 0)), pos(s(i, 0))}});
    for (std::uint32_t j = 1; j < k; ++j) {
      out.push_back(Clause{ClauseKind::Cnf, {neg(xs[i]), neg(s(i - 1, j - 1)), pos(s(i, j))}});
      out.push_back(Clause{ClauseKind::Cnf, {neg(s(i - 1, j)), pos(s(i, j))}});
    }
    out.push_back(Clause{ClauseKind::Cnf, {neg(xs[i]), neg(s(i - 1, k - 1))}});
  }
  out.push_back(Clause{ClauseKind::Cnf, {neg(xs[m - 1]), neg(s(m - 2, k - 1))}});
}

}  // namespace detail

inline GeneratedInstance gen_mdp(const MdpSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw Error("MDP needs m >= 1 and n >= 1");
  if (spec.k > spec.m || spec.flip_count > spec.m)
    throw Error("MDP bounds must satisfy k <= m and flip_count <= m");
  Xorshift64 rng(spec.seed);

  // Sample matrix, hidden vector, observations with planted flips.
  std::vector<std::vector<std::uint8_t>> X(spec.m, std::vector<std::uint8_t>(spec.n));
  for (auto& row : X)
    for (auto& x : row) x = rng.next_bool() ? 1 : 0;
  std::vector<std::uint8_t> a_star(spec.n);
  for (auto& a : a_star) a = rng.next_bool() ? 1 : 0;
  std::vector<std::uint8_t> y(spec.m, 0);
  for (std::uint32_t i = 0; i < spec.m; ++i) {
    std::uint8_t p = 0;
    for (std::uint32_t j = 0; j < spec.n; ++j) p ^= X[i][j] & a_star[j];
    y[i] = p;
  }
  std::vector<std::uint32_t> rows(spec.m);
  std::iota(rows.begin(), rows.end(), 0);
  for (std::uint32_t i = 0; i < spec.flip_count; ++i) {  // partial Fisher-Yates
    const std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(spec.m - i));
    std::swap(rows[i], rows[j]);
    y[rows[i]] ^= 1;
  }

  const std::uint32_t stage_count = (spec.k >= 1 && spec.k < spec.m) ? (spec.m - 1) * spec.k : 0;
  const Var num_vars = spec.n + spec.m + stage_count;
  const auto d_var = [&](std::uint32_t i) { return spec.n + i; };
  const auto s_var = [&](std::uint32_t i, std::uint32_t j) {
    return spec.n + spec.m + i * spec.k + j;
  };

  std::vector<Clause> clauses;
  for (std::uint32_t i = 0; i < spec.m; ++i) {
    Clause xc;
    xc.kind = ClauseKind::Xor;
    // d_i xor (X_i . a) = y_i, i.e. odd parity over {d_i} u {a_j : X_ij=1}
    // when y_i = 1; y_i = 0 flips the d_i literal (even parity).
    xc.lits.push_back(y[i] ? pos(d_var(i)) : neg(d_var(i)));
    for (std::uint32_t j = 0; j < spec.n; ++j)
      if (X[i][j]) xc.lits.push_back(pos(j));
    clauses.push_back(std::move(xc));
  }
  std::vector<Var> ds(spec.m);
  for (std::uint32_t i = 0; i < spec.m; ++i) ds[i] = d_var(i);
  detail::sequential_counter_at_most(ds, spec.k, s_var, clauses);

  // Planted witness: a*, the actual disagreement pattern, and counter
  // stages s_{i,j} = [at least j+1 disagreements among rows 0..i].
  Assignment w(num_vars);
  for (std::uint32_t j = 0; j < spec.n; ++j) w.set(j, a_star[j] != 0);
  std::vector<std::uint8_t> d(spec.m, 0);
  for (std::uint32_t i = 0; i < spec.m; ++i) {
    std::uint8_t p = 0;
    for (std::uint32_t j = 0; j < spec.n; ++j) p ^= X[i][j] & a_star[j];
    d[i] = p ^ y[i];
    w.set(d_var(i), d[i] != 0);
  }
  if (stage_count > 0) {
    std::uint32_t cum = 0;
    for (std::uint32_t i = 0; i + 1 < spec.m; ++i) {
      cum += d[i];
      for (std::uint32_t j = 0; j < spec.k; ++j) w.set(s_var(i, j), cum >= j + 1);
    }
  }

  GeneratedInstance inst{Formula(num_vars, std::move(clauses)), std::move(w)};
  if (spec.flip_count <= spec.k && !formula_satisfied(inst.formula, inst.witness))
    throw Error("MDP generation produced a non-verifying witness");
  return inst;
}

/// m random XOR clauses of the given arity over n variables, with signs
/// adjusted so a planted random assignment satisfies every clause.
inline GeneratedInstance gen_planted_xorsat(std::uint32_t n, std::uint32_t m, std::uint32_t arity,
                                            std::uint64_t seed) {
  if (n == 0) throw Error("planted XORSAT needs n >= 1");
  if (arity == 0 || arity > n) throw Error("planted XORSAT needs 1 <= arity <= n");
  Xorshift64 rng(seed);

  Assignment w(n);
  for (std::uint32_t v = 0; v < n; ++v) w.set(v, rng.next_bool());

  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::uint32_t c = 0; c < m; ++c) {
    for (std::uint32_t i = 0; i < arity; ++i) {  // partial Fisher-Yates
      const std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
      std::swap(vars[i], vars[j]);
    }
    Clause xc;
    xc.kind = ClauseKind::Xor;
    for (std::uint32_t i = 0; i < arity; ++i)
      xc.lits.push_back(rng.next_bool() ? neg(vars[i]) : pos(vars[i]));
    if (!clause_satisfied(xc, w)) xc.lits.front().neg = !xc.lits.front().neg;
    clauses.push_back(std::move(xc));
  }

  GeneratedInstance inst{Formula(n, std::move(clauses)), std::move(w)};
  if (!formula_satisfied(inst.formula, inst.witness))
    throw Error("planted XORSAT produced a non-verifying witness");
  return inst;
}

/// m uniform k-SAT CNF clauses (distinct variables per clause, fair coin
/// signs). No planting; used for synthetic workload construction.
inline Formula gen_random_ksat(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                               std::uint64_t seed) {
  if (n == 0) throw Error("random k-SAT needs n >= 1");
  if (k == 0 || k > n) throw Error("random k-SAT needs 1 <= k <= n");
  Xorshift64 rng(seed);
  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::uint32_t c = 0; c < m; ++c) {
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
      std::swap(vars[i], vars[j]);
    }
    Clause cc;
    cc.kind = ClauseKind::Cnf;
    for (std::uint32_t i = 0; i < k; ++i)
      cc.lits.push_back(rng.next_bool() ? neg(vars[i]) : pos(vars[i]));
    clauses.push_back(std::move(cc));
  }
  return Formula(n, std::move(clauses));
}

/// Mixed random XNF: a planted XORSAT core of m_xor clauses plus m_cnf
/// random CNF clauses forced true under the same planted assignment (the
/// instance stays satisfiable by construction).
inline GeneratedInstance gen_random_xnf(std::uint32_t n, std::uint32_t m_cnf,
                                        std::uint32_t m_xor, std::uint32_t k_cnf,
                                        std::uint32_t k_xor, std::uint64_t seed) {
  GeneratedInstance core = gen_planted_xorsat(n, m_xor, k_xor, seed);
  if (k_cnf == 0 || k_cnf > n) throw Error("random XNF needs 1 <= k_cnf <= n");
  Xorshift64 rng(seed ^ 0x5851f42d4c957f2dULL);
  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::vector<Clause> clauses = core.formula.clauses();
  clauses.reserve(clauses.size() + m_cnf);
  for (std::uint32_t c = 0; c < m_cnf; ++c) {
    for (std::uint32_t i = 0; i < k_cnf; ++i) {
      const std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
      std::swap(vars[i], vars[j]);
    }
    Clause cc;
    cc.kind = ClauseKind::Cnf;
    for (std::uint32_t i = 0; i < k_cnf; ++i)
      cc.lits.push_back(rng.next_bool() ? neg(vars[i]) : pos(vars[i]));
    if (!clause_satisfied(cc, core.witness)) {
      // Force one literal true under the witness to keep the plant valid.
      const std::uint32_t pick = static_cast<std::uint32_t>(rng.next_below(k_cnf));
      cc.lits[pick].neg = !core.witness[cc.lits[pick].var];
    }
    clauses.push_back(std::move(cc));
  }
  GeneratedInstance inst{Formula(n, std::move(clauses)), core.witness};
  if (!formula_satisfied(inst.formula, inst.witness))
    throw Error("random XNF produced a non-verifying witness");
  return inst;
}

}  // namespace xnf
