// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "xnfsat/formula.hpp"

/// Flat key-value config files used for device models and energy
/// coefficients: one `key = value` pair per line, '#' starts a comment,
/// blank lines are fine. Units are spelled in the key suffix (_us, _pj,
/// _ns, _v) so values stay plain numbers.
namespace xnf {

using KvMap = std::map<std::string, std::string>;

namespace detail {

inline std::string kv_trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline KvMap parse_kv(std::istream& in) {
  KvMap kv;
  std::string line;
  std::uint32_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (detail::kv_trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = detail::kv_trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::kv_trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty())
      throw Error("line " + std::to_string(line_no) + ": expected 'key = value'");
    if (kv.count(key)) throw Error("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

inline KvMap parse_kv_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_kv(in);
}

inline KvMap parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return parse_kv(in);
}

inline double kv_to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != value.size()) throw Error("key '" + key + "': expected a number, got '" + value + "'");
  return v;
}

inline void write_kv(std::ostream& out, const KvMap& kv, std::string_view banner = {}) {
  if (!banner.empty()) out << "# " << banner << '\n';
  for (const auto& [key, value] : kv) out << key << " = " << value << '\n';
}

}  // namespace xnf
