// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "xnfsat/formula.hpp"

/// Conversions between the CNF and XNF representations of a formula.
///
/// An XOR clause over k distinct variables excludes exactly half of the
/// 2^k sign patterns, so it is equivalent to the conjunction of the
/// 2^(k-1) CNF clauses whose sign vectors have the wrong parity. The
/// expansion, its inverse (pattern-complete group detection), and the
/// width-bounded Tseitin cut for long XOR chains live here.
namespace xnf {

struct CompressionStats {
  std::uint32_t vars_before = 0;
  std::uint32_t vars_after = 0;
  std::uint64_t clauses_before = 0;
  std::uint64_t clauses_after = 0;
  double xor_fraction_after = 0.0;

  double var_ratio() const {
    return vars_before == 0 ? 1.0 : static_cast<double>(vars_after) / vars_before;
  }
  double clause_ratio() const {
    return clauses_before == 0 ? 1.0 : static_cast<double>(clauses_after) / clauses_before;
  }
};

inline CompressionStats compression_stats(const Formula& before, const Formula& after) {
  CompressionStats s;
  s.vars_before = before.num_vars();
  s.vars_after = after.num_vars();
  s.clauses_before = before.num_clauses();
  s.clauses_after = after.num_clauses();
  s.xor_fraction_after =
      after.num_clauses() == 0 ? 0.0 : static_cast<double>(after.xor_count()) / after.num_clauses();
  return s;
}

/// Expands one canonical XOR clause of arity k into the equivalent
/// 2^(k-1) CNF clauses: all sign patterns with an even number of extra
/// negations relative to the clause's own literal signs. `cap` guards
/// against accidental exponential blowups.
inline std::vector<Clause> expand_xor(const Clause& c, std::uint32_t cap = 20) {
  if (c.kind != ClauseKind::Xor) throw FormulaError("expand_xor needs an XOR clause");
  Clause canon = c;
  if (!Formula::canonicalize_clause(canon)) return {};  // tautology: empty conjunction
  const std::uint32_t k = static_cast<std::uint32_t>(canon.lits.size());
  if (k > cap) throw FormulaError("XOR arity exceeds expansion cap");

  std::vector<Clause> out;
  out.reserve(std::size_t{1} << (k - 1));
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    Clause cnf;
    cnf.kind = ClauseKind::Cnf;
    cnf.lits = canon.lits;
    for (std::uint32_t i = 0; i < k; ++i)
      if (mask & (1u << i)) cnf.lits[i].neg = !cnf.lits[i].neg;
    out.push_back(std::move(cnf));
  }
  return out;
}

struct ExtractResult {
  Formula formula;
  CompressionStats stats;
};

/// Detects pattern-complete CNF groups and replaces each with the single
/// XOR clause it encodes. A group is all clauses over the same variable
/// set; it collapses only when every one of the 2^(k-1) sign patterns of
/// one parity class is present (a strict subset constrains less than the
/// XOR and must stay CNF). Groups of both parity classes yield two XOR
/// clauses (the formula was unsatisfiable; equivalence is preserved).
/// Existing XOR clauses pass through untouched. k_max bounds the group
/// arity considered.
inline ExtractResult extract_xors(const Formula& f, std::uint32_t k_max = 6) {
  if (k_max > 20) throw FormulaError("k_max too large");

  // Group CNF clause indices by sorted variable set.
  std::map<std::vector<Var>, std::vector<std::uint32_t>> groups;
  for (std::uint32_t ci = 0; ci < f.num_clauses(); ++ci) {
    const Clause& c = f.clause(ci);
    if (c.kind != ClauseKind::Cnf || c.lits.size() > k_max) continue;
    std::vector<Var> key;
    key.reserve(c.lits.size());
    for (const Lit& l : c.lits) key.push_back(l.var);
    std::sort(key.begin(), key.end());
    groups[std::move(key)].push_back(ci);
  }

  // consumed[ci] != 0 marks a clause folded into an XOR; emit_at maps the
  // first consumed clause of a group to the XOR clause(s) replacing it.
  std::vector<std::uint8_t> consumed(f.num_clauses(), 0);
  std::map<std::uint32_t, std::vector<Clause>> emit_at;

  for (const auto& [vars, indices] : groups) {
    const std::uint32_t k = static_cast<std::uint32_t>(vars.size());
    const std::uint32_t half = 1u << (k - 1);

    // Sign pattern of a clause in sorted-variable order; bit i set when
    // the literal on vars[i] is negated.
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_pattern;
    for (std::uint32_t ci : indices) {
      std::uint32_t pat = 0;
      for (const Lit& l : f.clause(ci).lits) {
        const std::uint32_t i = static_cast<std::uint32_t>(
            std::lower_bound(vars.begin(), vars.end(), l.var) - vars.begin());
        if (l.neg) pat |= 1u << i;
      }
      by_pattern[pat].push_back(ci);
    }

    // parity_class 0: all even-weight patterns present -> clauses exclude
    // even-parity assignments -> XOR requires odd parity (all-positive
    // literals). parity_class 1: the mirror case, one literal negated.
    for (std::uint32_t parity_class = 0; parity_class <= 1; ++parity_class) {
      std::uint32_t found = 0;
      for (const auto& [pat, cis] : by_pattern)
        if (std::popcount(pat) % 2 == static_cast<int>(parity_class)) ++found;
      if (found != half) continue;

      std::uint32_t first_ci = 0xffffffffu;
      for (const auto& [pat, cis] : by_pattern) {
        if (std::popcount(pat) % 2 != static_cast<int>(parity_class)) continue;
        // Consume one clause per pattern; duplicates beyond the first stay CNF.
        std::uint32_t ci = *std::min_element(cis.begin(), cis.end());
        consumed[ci] = 1;
        first_ci = std::min(first_ci, ci);
      }
      Clause x;
      x.kind = ClauseKind::Xor;
      for (Var v : vars) x.lits.push_back(pos(v));
      if (parity_class == 1) x.lits.front().neg = true;  // even-parity constraint
      emit_at[first_ci].push_back(std::move(x));
    }
  }

  std::vector<Clause> out;
  out.reserve(f.num_clauses());
  for (std::uint32_t ci = 0; ci < f.num_clauses(); ++ci) {
    if (auto it = emit_at.find(ci); it != emit_at.end())
      for (Clause& x : it->second) out.push_back(std::move(x));
    if (!consumed[ci]) out.push_back(f.clause(ci));
  }

  ExtractResult res{Formula(f.num_vars(), std::move(out)), {}};
  res.stats = compression_stats(f, res.formula);
  return res;
}

struct TseitinResult {
  std::vector<Clause> clauses;  // XOR chain links, in order
  std::uint32_t aux_vars = 0;   // fresh variables introduced
};

/// Splits an XOR clause of arity k > width into a chain of XOR clauses of
/// arity at most width+1 by introducing carry variables: the first link
/// defines a1 as the XOR of the first `width` literals, middle links fold
/// in width-1 literals each, and the last link closes the parity. Every
/// carry is uniquely determined by the original variables, so solutions
/// project 1:1. Clauses of arity <= width are returned unchanged.
inline TseitinResult tseitin_cut(const Clause& c, std::uint32_t width, Var next_aux) {
  if (c.kind != ClauseKind::Xor) throw FormulaError("tseitin_cut needs an XOR clause");
  if (width < 2) throw FormulaError("tseitin width must be at least 2");

  Clause canon = c;
  if (!Formula::canonicalize_clause(canon)) return {{}, 0};
  const std::vector<Lit>& L = canon.lits;
  const std::size_t k = L.size();
  if (k <= width) return {{canon}, 0};

  TseitinResult res;
  std::size_t used = 0;
  Var carry = 0;
  bool have_carry = false;
  while (used < k) {
    Clause link;
    link.kind = ClauseKind::Xor;
    if (have_carry) link.lits.push_back(pos(carry));
    const std::size_t budget = have_carry ? width - 1 : width;
    const std::size_t remaining = k - used;
    if (have_carry && remaining <= width) {
      // Final link: carry (if any) plus everything left, arity <= width+1.
      for (std::size_t i = used; i < k; ++i) link.lits.push_back(L[i]);
      used = k;
      res.clauses.push_back(std::move(link));
      break;
    }
    for (std::size_t i = 0; i < budget; ++i) link.lits.push_back(L[used++]);
    const Var aux = next_aux + res.aux_vars;
    link.lits.push_back(neg(aux));  // link true iff aux equals the chunk parity
    res.clauses.push_back(std::move(link));
    carry = aux;
    have_carry = true;
    ++res.aux_vars;
  }
  return res;
}

/// Whole-formula CNF -> XNF direction: extract pattern-complete groups.
/// Whole-formula XNF -> CNF direction: cut wide XOR clauses down to
/// `width`, then expand every XOR clause (arity <= width+1 after the cut,
/// so each contributes at most 2^width CNF clauses).
inline Formula xnf_to_cnf(const Formula& f, std::uint32_t width = 5) {
  std::vector<Clause> out;
  Var next_aux = f.num_vars();
  for (const Clause& c : f.clauses()) {
    if (c.kind == ClauseKind::Cnf) {
      out.push_back(c);
      continue;
    }
    TseitinResult cut = tseitin_cut(c, width, next_aux);
    next_aux += cut.aux_vars;
    for (const Clause& link : cut.clauses)
      for (Clause& cnf : expand_xor(link)) out.push_back(std::move(cnf));
  }
  return Formula(next_aux, std::move(out));
}

}  // namespace xnf
