// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xnfsat/dimacs.hpp"
#include "xnfsat/formula.hpp"

/// Benchmark result records. One row per trial, plus one aggregate row
/// per (instance, representation, backend, sigma) group. Both the CSV
/// and the JSON-lines encodings carry the same nine fields in the same
/// order:
///
///   instance, representation, backend, seed, sigma, solved, iterations,
///   wall_ns, energy_pj
///
/// Aggregate rows reuse the schema: seed = -1 marks them, solved is the
/// solved-trial count, iterations carries ITS99_opt, wall_ns carries TTS
/// in nanoseconds and energy_pj carries ETS in picojoules. Censored
/// aggregates (no ITS) store NaN in those columns, serialized as "nan" /
/// JSON null.
namespace xnf {

struct ResultRow {
  std::string instance;
  std::string representation;  // "cnf" | "xnf"
  std::string backend;         // "reference" | "crossbar-ideal" | "crossbar-nonideal"
  std::int64_t seed = 0;       // -1 on aggregate rows
  double sigma = 0.0;
  double solved = 0.0;      // per trial: 0/1; aggregate: solved count
  double iterations = 0.0;  // per trial: steps; aggregate: ITS99_opt
  double wall_ns = 0.0;     // per trial: wall clock; aggregate: TTS
  double energy_pj = 0.0;   // per trial: ledger total; aggregate: ETS

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

enum class ResultFormat : std::uint8_t { Csv, JsonLines };

inline const char* result_header_csv() {
  return "instance,representation,backend,seed,sigma,solved,iterations,wall_ns,energy_pj";
}

namespace detail {

/// Shortest decimal form that round-trips the double exactly; integral
/// values print without an exponent or trailing zeros.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline void write_results(std::ostream& out, const std::vector<ResultRow>& rows,
                          ResultFormat format) {
  if (format == ResultFormat::Csv) {
    out << result_header_csv() << '\n';
    for (const ResultRow& r : rows) {
      out << detail::csv_field(r.instance) << ',' << detail::csv_field(r.representation) << ','
          << detail::csv_field(r.backend) << ',' << r.seed << ','
          << detail::format_double(r.sigma) << ',' << detail::format_double(r.solved) << ','
          << detail::format_double(r.iterations) << ',' << detail::format_double(r.wall_ns) << ','
          << detail::format_double(r.energy_pj) << '\n';
    }
    return;
  }
  for (const ResultRow& r : rows) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["representation"] = r.representation;
    j["backend"] = r.backend;
    j["seed"] = r.seed;
    const auto num = [](nlohmann::ordered_json& o, const char* key, double v) {
      if (std::isnan(v))
        o[key] = nullptr;
      else
        o[key] = v;
    };
    num(j, "sigma", r.sigma);
    num(j, "solved", r.solved);
    num(j, "iterations", r.iterations);
    num(j, "wall_ns", r.wall_ns);
    num(j, "energy_pj", r.energy_pj);
    out << j.dump() << '\n';
  }
}

inline std::string write_results_string(const std::vector<ResultRow>& rows, ResultFormat format) {
  std::ostringstream out;
  write_results(out, rows, format);
  return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line, std::uint32_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted CSV field");
  fields.push_back(cur);
  return fields;
}

inline double parse_double_field(const std::string& s, std::uint32_t line_no) {
  if (s == "nan") return std::nan("");
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected a number, got '" + s + "'");
  }
}

}  // namespace detail

inline std::vector<ResultRow> read_results(std::istream& in, ResultFormat format) {
  std::vector<ResultRow> rows;
  std::string line;
  std::uint32_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (format == ResultFormat::Csv) {
      if (line_no == 1 && line == result_header_csv()) continue;
      const std::vector<std::string> f = detail::split_csv_line(line, line_no);
      if (f.size() != 9) throw ParseError(line_no, "expected 9 CSV fields");
      ResultRow r;
      r.instance = f[0];
      r.representation = f[1];
      r.backend = f[2];
      r.seed = static_cast<std::int64_t>(detail::parse_double_field(f[3], line_no));
      r.sigma = detail::parse_double_field(f[4], line_no);
      r.solved = detail::parse_double_field(f[5], line_no);
      r.iterations = detail::parse_double_field(f[6], line_no);
      r.wall_ns = detail::parse_double_field(f[7], line_no);
      r.energy_pj = detail::parse_double_field(f[8], line_no);
      rows.push_back(std::move(r));
    } else {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(line_no, std::string("bad JSON record: ") + e.what());
      }
      const auto num = [&](const char* key) {
        if (!j.contains(key)) throw ParseError(line_no, std::string("missing field ") + key);
        if (j[key].is_null()) return std::nan("");
        return j[key].get<double>();
      };
      ResultRow r;
      r.instance = j.value("instance", "");
      r.representation = j.value("representation", "");
      r.backend = j.value("backend", "");
      r.seed = j.value("seed", std::int64_t{0});
      r.sigma = num("sigma");
      r.solved = num("solved");
      r.iterations = num("iterations");
      r.wall_ns = num("wall_ns");
      r.energy_pj = num("energy_pj");
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline std::vector<ResultRow> read_results_string(const std::string& text, ResultFormat format) {
  std::istringstream in(text);
  return read_results(in, format);
}

}  // namespace xnf
