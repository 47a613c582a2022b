// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xnfsat/formula.hpp"

/// DIMACS reader/writer for the CNF and XNF dialects.
///
/// Accepted grammar (line-oriented):
///   - 'c ...' comment lines, blank lines: ignored (counted).
///   - one 'p cnf <vars> <clauses>' or 'p xnf <vars> <clauses>' header,
///     before any clause line.
///   - clause lines: whitespace-separated non-zero literals, each clause
///     terminated by 0. Several clauses may share a line; a clause may not
///     continue onto the next line.
///   - lines starting with 'x' (e.g. "x1 2 3 0" or "x 1 2 3 0") are XOR
///     clauses: satisfied by an odd number of true literals.
///   - a line starting with '%' ends the body; the remainder of the file
///     is ignored (legacy benchmark trailer).
///
/// Malformed input (bad token, literal beyond the declared variable count,
/// clause without terminating 0, clause before header, duplicate header)
/// raises ParseError with a 1-based line number. Recoverable oddities
/// (header count mismatch, tautological clauses) become warnings in the
/// ParseReport, so no input line is ever silently dropped.
namespace xnf {

struct ParseError : Error {
  ParseError(std::uint32_t line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  std::uint32_t line;
};

struct ParseWarning {
  std::uint32_t line = 0;
  std::string message;
};

enum class DimacsFormat : std::uint8_t { Cnf, Xnf };

struct ParseReport {
  DimacsFormat format = DimacsFormat::Cnf;
  std::uint32_t declared_vars = 0;
  std::uint64_t declared_clauses = 0;
  std::uint64_t parsed_clauses = 0;  // pre-canonicalization, includes dropped tautologies
  std::uint64_t xor_clauses = 0;     // among parsed
  std::uint64_t tautologies_dropped = 0;
  std::vector<ParseWarning> warnings;

  // Line accounting. Every line of the body falls in exactly one bucket.
  std::uint64_t total_lines = 0;
  std::uint64_t comment_lines = 0;
  std::uint64_t blank_lines = 0;
  std::uint64_t header_lines = 0;
  std::uint64_t clause_lines = 0;
  std::uint64_t trailer_lines = 0;  // the '%' end marker and everything after
};

struct ParseResult {
  Formula formula;
  ParseReport report;
};

namespace detail {

inline long long parse_integer_token(const std::string& tok, std::uint32_t line_no) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected integer literal, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line_no, "expected integer literal, got '" + tok + "'");
  return v;
}

}  // namespace detail

inline ParseResult parse_dimacs(std::istream& in) {
  ParseReport rep;
  std::vector<Clause> clauses;
  bool have_header = false;
  std::uint32_t header_line = 0;
  bool in_trailer = false;

  std::string line;
  std::uint32_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++rep.total_lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (in_trailer) {
      ++rep.trailer_lines;
      continue;
    }

    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      ++rep.blank_lines;
      continue;
    }
    const char c0 = line[first];

    if (c0 == 'c' || c0 == 'C') {
      ++rep.comment_lines;
      continue;
    }
    if (c0 == '%') {
      in_trailer = true;
      ++rep.trailer_lines;
      continue;
    }
    if (c0 == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate problem header");
      std::istringstream hs(line.substr(first + 1));
      std::string fmt;
      long long nv = -1, nc = -1;
      if (!(hs >> fmt >> nv >> nc) || nv < 0 || nc < 0)
        throw ParseError(line_no, "malformed problem header (expected 'p cnf|xnf <vars> <clauses>')");
      std::string extra;
      if (hs >> extra) throw ParseError(line_no, "trailing tokens after problem header");
      if (fmt == "cnf")
        rep.format = DimacsFormat::Cnf;
      else if (fmt == "xnf")
        rep.format = DimacsFormat::Xnf;
      else
        throw ParseError(line_no, "unknown format '" + fmt + "' (expected cnf or xnf)");
      if (nv > 0xffffffffLL) throw ParseError(line_no, "variable count out of range");
      rep.declared_vars = static_cast<std::uint32_t>(nv);
      rep.declared_clauses = static_cast<std::uint64_t>(nc);
      have_header = true;
      header_line = line_no;
      ++rep.header_lines;
      continue;
    }

    // Clause line.
    if (!have_header) throw ParseError(line_no, "clause before problem header");
    ++rep.clause_lines;

    ClauseKind kind = ClauseKind::Cnf;
    std::string body = line;
    if (c0 == 'x' || c0 == 'X') {
      kind = ClauseKind::Xor;
      body = line.substr(first + 1);  // "x1 2 0" and "x 1 2 0" both parse
    }

    std::istringstream ts(body);
    std::string tok;
    Clause cur;
    cur.kind = kind;
    bool open = false;
    while (ts >> tok) {
      const long long v = detail::parse_integer_token(tok, line_no);
      if (v == 0) {
        if (!open) throw ParseError(line_no, "empty clause");
        ++rep.parsed_clauses;
        if (cur.kind == ClauseKind::Xor) ++rep.xor_clauses;
        bool keep = true;
        try {
          keep = Formula::canonicalize_clause(cur);
        } catch (const FormulaError& e) {
          throw ParseError(line_no, e.what());
        }
        if (keep) {
          clauses.push_back(std::move(cur));
        } else {
          ++rep.tautologies_dropped;
          rep.warnings.push_back({line_no, "tautological clause dropped"});
        }
        cur = Clause{};
        cur.kind = kind;
        open = false;
        continue;
      }
      const long long mag = v < 0 ? -v : v;
      if (mag > static_cast<long long>(rep.declared_vars))
        throw ParseError(line_no, "literal " + std::to_string(v) + " beyond declared variable count " +
                                      std::to_string(rep.declared_vars));
      cur.lits.push_back(lit_from_dimacs(v));
      open = true;
    }
    if (open) throw ParseError(line_no, "clause missing terminating 0");
  }

  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing problem header");
  if (rep.parsed_clauses != rep.declared_clauses)
    rep.warnings.push_back({header_line, "header declares " + std::to_string(rep.declared_clauses) +
                                             " clauses, parsed " + std::to_string(rep.parsed_clauses)});
  if (rep.format == DimacsFormat::Cnf && rep.xor_clauses > 0)
    rep.warnings.push_back({header_line, "XOR clauses present under a 'p cnf' header"});

  ParseResult res{Formula(rep.declared_vars, std::move(clauses)), std::move(rep)};
  return res;
}

inline ParseResult parse_dimacs_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

inline ParseResult parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return parse_dimacs(in);
}

enum class WriteStyle : std::uint8_t {
  XPrefixed,  // 'p xnf' header, XOR clauses as 'x ...' lines
  PureCnf,    // 'p cnf' header; XOR clauses are rejected
};

inline void write_dimacs(std::ostream& out, const Formula& f,
                         WriteStyle style = WriteStyle::XPrefixed,
                         const std::vector<std::string>& comments = {}) {
  if (style == WriteStyle::PureCnf && f.xor_count() > 0)
    throw FormulaError("formula has XOR clauses; pure CNF output would change its meaning");
  for (const std::string& c : comments) out << "c " << c << '\n';
  out << "p " << (style == WriteStyle::XPrefixed ? "xnf" : "cnf") << ' ' << f.num_vars() << ' '
      << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    if (c.kind == ClauseKind::Xor) out << "x ";
    for (const Lit& l : c.lits) out << lit_to_dimacs(l) << ' ';
    out << "0\n";
  }
}

inline std::string write_dimacs_string(const Formula& f, WriteStyle style = WriteStyle::XPrefixed) {
  std::ostringstream out;
  write_dimacs(out, f, style);
  return out.str();
}

inline void write_dimacs_file(const std::string& path, const Formula& f,
                              WriteStyle style = WriteStyle::XPrefixed,
                              const std::vector<std::string>& comments = {}) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_dimacs(out, f, style, comments);
}

}  // namespace xnf
