// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/// Core vocabulary for hybrid CNF/XOR ("XNF") formulas.
///
/// An XNF formula is a conjunction of constraints over boolean variables
/// where each constraint is either a plain disjunctive (CNF) clause or an
/// XOR clause. An XOR clause is satisfied when an odd number of its
/// literals evaluate to true; literal negations fold into that parity, so
/// no separate parity flag is stored.
namespace xnf {

using Var = std::uint32_t;

/// Base error type for the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural problem with a formula (empty clause, contradictory XOR
/// clause, variable index out of range).
struct FormulaError : Error {
  using Error::Error;
};

/// A literal: variable index (0-based) plus sign. `neg` means the literal
/// is the negation of the variable.
struct Lit {
  Var var = 0;
  bool neg = false;

  friend bool operator==(const Lit&, const Lit&) = default;
};

constexpr Lit pos(Var v) { return Lit{v, false}; }
constexpr Lit neg(Var v) { return Lit{v, true}; }

/// DIMACS-style encoding: variable i (1-based) is the integer i, its
/// negation -i. Zero is reserved as the clause terminator.
constexpr Lit lit_from_dimacs(long long x) {
  if (x == 0) throw FormulaError("literal 0 is reserved");
  return x > 0 ? Lit{static_cast<Var>(x - 1), false}
               : Lit{static_cast<Var>(-x - 1), true};
}

constexpr long long lit_to_dimacs(Lit l) {
  const long long v = static_cast<long long>(l.var) + 1;
  return l.neg ? -v : v;
}

enum class ClauseKind : std::uint8_t { Cnf, Xor };

/// One constraint. Raw clauses may repeat variables; Formula canonicalizes
/// on construction so that stored clauses have distinct variables.
struct Clause {
  ClauseKind kind = ClauseKind::Cnf;
  std::vector<Lit> lits;

  std::size_t arity() const { return lits.size(); }

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Convenience builder from DIMACS-style signed integers.
inline Clause make_clause(ClauseKind kind, std::initializer_list<long long> dimacs_lits) {
  Clause c;
  c.kind = kind;
  c.lits.reserve(dimacs_lits.size());
  for (long long x : dimacs_lits) c.lits.push_back(lit_from_dimacs(x));
  return c;
}

/// A total assignment of the variables 0..size()-1.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n, bool value = false)
      : bits_(n, value ? 1 : 0) {}

  static Assignment all_true(std::size_t n) { return Assignment(n, true); }
  static Assignment all_false(std::size_t n) { return Assignment(n, false); }

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline bool lit_true(Lit l, const Assignment& a) {
  if (l.var >= a.size()) throw FormulaError("literal variable out of range");
  return a[l.var] != l.neg;
}

/// Number of literals of `c` that are true under `a`.
inline std::uint32_t true_literal_count(const Clause& c, const Assignment& a) {
  std::uint32_t n = 0;
  for (const Lit& l : c.lits) n += lit_true(l, a) ? 1u : 0u;
  return n;
}

/// CNF clause: at least one true literal. XOR clause: odd number of true
/// literals.
inline bool clause_satisfied(const Clause& c, const Assignment& a) {
  const std::uint32_t n = true_literal_count(c, a);
  return c.kind == ClauseKind::Cnf ? n > 0 : (n & 1u) != 0;
}

/// Occurrence of a variable inside a formula: clause index plus position
/// of the literal within that clause.
struct Occurrence {
  std::uint32_t clause = 0;
  std::uint32_t position = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Immutable canonical formula.
///
/// Canonicalization on construction:
///  - CNF: duplicate literals collapse; a clause containing both x and !x
///    is a tautology and is dropped (counted in tautologies_dropped()).
///  - XOR: repeated variables cancel pairwise (x^x = 0, x^!x = 1, folded
///    into the parity); the residual parity constant is re-encoded by
///    negating the first remaining literal. An XOR clause that cancels to
///    "0 = 1" is unsatisfiable as stated and rejected with FormulaError;
///    one that cancels to "0 = 0" is a tautology and dropped.
///  - Empty input clauses are rejected (FormulaError).
///
/// Stored clauses therefore never repeat a variable. The incidence index
/// maps every variable to the clauses/positions where it occurs.
class Formula {
 public:
  Formula() = default;

  Formula(Var num_vars, std::vector<Clause> raw) : num_vars_(num_vars) {
    clauses_.reserve(raw.size());
    for (Clause& c : raw) {
      if (c.lits.empty()) throw FormulaError("empty clause");
      for (const Lit& l : c.lits)
        if (l.var >= num_vars_) throw FormulaError("clause references variable beyond num_vars");
      bool keep = canonicalize_clause(c);
      if (keep)
        clauses_.push_back(std::move(c));
      else
        ++tautologies_dropped_;
    }
    occ_ = build_incidence(clauses_, num_vars_);
    for (const Clause& c : clauses_)
      (c.kind == ClauseKind::Cnf ? cnf_count_ : xor_count_)++;
  }

  Var num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  std::size_t cnf_count() const { return cnf_count_; }
  std::size_t xor_count() const { return xor_count_; }
  std::size_t tautologies_dropped() const { return tautologies_dropped_; }

  /// Clauses containing variable v.
  const std::vector<Occurrence>& occurrences(Var v) const {
    if (v >= num_vars_) throw FormulaError("variable out of range");
    return occ_[v];
  }

  /// Recomputes the incidence index from scratch (used to check the index
  /// invariant; the constructor output must match).
  static std::vector<std::vector<Occurrence>> build_incidence(const std::vector<Clause>& clauses,
                                                              Var num_vars) {
    std::vector<std::vector<Occurrence>> occ(num_vars);
    for (std::uint32_t ci = 0; ci < clauses.size(); ++ci)
      for (std::uint32_t pi = 0; pi < clauses[ci].lits.size(); ++pi)
        occ[clauses[ci].lits[pi].var].push_back({ci, pi});
    return occ;
  }

  /// Rewrites `c` into canonical form (distinct variables, parity folded).
  /// Returns false when the clause is a tautology and should be dropped;
  /// throws FormulaError when an XOR clause cancels to a contradiction.
  /// Idempotent on canonical clauses. Exposed so parsers can canonicalize
  /// clause-by-clause and attach source line numbers to diagnostics.
  static bool canonicalize_clause(Clause& c) {
    if (c.lits.empty()) throw FormulaError("empty clause");
    return c.kind == ClauseKind::Cnf ? canonicalize_cnf(c) : canonicalize_xor(c);
  }

 private:
  // Returns false when the clause is a tautology and should be dropped.
  static bool canonicalize_cnf(Clause& c) {
    std::vector<Lit> out;
    out.reserve(c.lits.size());
    for (const Lit& l : c.lits) {
      bool dup = false;
      for (const Lit& k : out) {
        if (k.var != l.var) continue;
        if (k.neg == l.neg) {
          dup = true;  // identical literal repeated
          break;
        }
        return false;  // x and !x: always satisfied
      }
      if (!dup) out.push_back(l);
    }
    c.lits = std::move(out);
    return true;
  }

  static bool canonicalize_xor(Clause& c) {
    // Order-preserving pairwise cancellation. For a variable occurring m
    // times with t negations, the XOR contribution is (m mod 2) literals
    // with sign (t mod 2); fully cancelled variables feed their (t mod 2)
    // into the parity constant.
    std::vector<Lit> out;
    out.reserve(c.lits.size());
    bool constant = false;  // accumulated "xor 1" from cancellations
    for (const Lit& l : c.lits) {
      bool merged = false;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].var != l.var) continue;
        constant ^= out[i].neg ^ l.neg;  // x ^ !x contributes 1, x ^ x contributes 0
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        merged = true;
        break;
      }
      if (!merged) out.push_back(l);
    }
    if (out.empty()) {
      // Clause reduced to "constant must be odd".
      if (!constant) throw FormulaError("XOR clause cancels to a contradiction");
      return false;  // 1 = 1: tautology
    }
    // Fold the constant into the first literal: flipping one literal's sign
    // toggles the clause parity.
    if (constant) out.front().neg = !out.front().neg;
    c.lits = std::move(out);
    return true;
  }

  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Occurrence>> occ_;
  std::size_t cnf_count_ = 0;
  std::size_t xor_count_ = 0;
  std::size_t tautologies_dropped_ = 0;
};

inline bool formula_satisfied(const Formula& f, const Assignment& a) {
  for (const Clause& c : f.clauses())
    if (!clause_satisfied(c, a)) return false;
  return true;
}

/// Variables appearing in at least one unsatisfied clause, ascending.
inline std::vector<Var> unsat_variable_set(const Formula& f, const Assignment& a) {
  std::vector<std::uint8_t> mark(f.num_vars(), 0);
  for (const Clause& c : f.clauses())
    if (!clause_satisfied(c, a))
      for (const Lit& l : c.lits) mark[l.var] = 1;
  std::vector<Var> out;
  for (Var v = 0; v < f.num_vars(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

}  // namespace xnf
