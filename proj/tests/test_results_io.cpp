// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "xnfsat/results_io.hpp"
#include "xnfsat/rng.hpp"

using namespace xnf;

namespace {

ResultRow sample_row() {
  ResultRow r;
  r.instance = "bench/toy.xnf";
  r.representation = "xnf";
  r.backend = "reference";
  r.seed = 42;
  r.sigma = 2.5;
  r.solved = 1;
  r.iterations = 14;
  r.wall_ns = 120500;
  r.energy_pj = 1376.25;
  return r;
}

bool rows_equal(const ResultRow& a, const ResultRow& b) {
  const auto feq = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  return a.instance == b.instance && a.representation == b.representation &&
         a.backend == b.backend && a.seed == b.seed && feq(a.sigma, b.sigma) &&
         feq(a.solved, b.solved) && feq(a.iterations, b.iterations) &&
         feq(a.wall_ns, b.wall_ns) && feq(a.energy_pj, b.energy_pj);
}

}  // namespace

TEST_CASE("CSV header names the nine columns in order") {
  CHECK(std::string(result_header_csv()) ==
        "instance,representation,backend,seed,sigma,solved,iterations,wall_ns,energy_pj");
}

TEST_CASE("exact CSV encoding of a trial row") {
  const std::string text = write_results_string({sample_row()}, ResultFormat::Csv);
  CHECK(text ==
        "instance,representation,backend,seed,sigma,solved,iterations,wall_ns,energy_pj\n"
        "bench/toy.xnf,xnf,reference,42,2.5,1,14,120500,1376.25\n");
}

TEST_CASE("exact JSON-lines encoding of a trial row") {
  const std::string text = write_results_string({sample_row()}, ResultFormat::JsonLines);
  CHECK(text ==
        "{\"instance\":\"bench/toy.xnf\",\"representation\":\"xnf\",\"backend\":\"reference\","
        "\"seed\":42,\"sigma\":2.5,\"solved\":1.0,\"iterations\":14.0,\"wall_ns\":120500.0,"
        "\"energy_pj\":1376.25}\n");
}

TEST_CASE("censored aggregates serialize NaN as nan and null") {
  ResultRow r = sample_row();
  r.seed = -1;  // aggregate marker
  r.solved = 0;
  r.iterations = std::nan("");
  r.wall_ns = std::nan("");
  r.energy_pj = std::nan("");
  const std::string csv = write_results_string({r}, ResultFormat::Csv);
  CHECK(csv.find("-1,2.5,0,nan,nan,nan") != std::string::npos);
  const std::string jsonl = write_results_string({r}, ResultFormat::JsonLines);
  CHECK(jsonl.find("\"iterations\":null") != std::string::npos);
  CHECK(jsonl.find("\"wall_ns\":null") != std::string::npos);
  CHECK(jsonl.find("\"energy_pj\":null") != std::string::npos);

  for (ResultFormat fmt : {ResultFormat::Csv, ResultFormat::JsonLines}) {
    const std::vector<ResultRow> back =
        read_results_string(write_results_string({r}, fmt), fmt);
    REQUIRE(back.size() == 1);
    CHECK(rows_equal(back[0], r));
    CHECK(std::isnan(back[0].iterations));
  }
}

TEST_CASE("fields with commas and quotes survive the CSV round trip") {
  ResultRow r = sample_row();
  r.instance = "dir with,comma/inst \"quoted\".xnf";
  const std::string text = write_results_string({r}, ResultFormat::Csv);
  CHECK(text.find("\"dir with,comma/inst \"\"quoted\"\".xnf\"") != std::string::npos);
  const std::vector<ResultRow> back = read_results_string(text, ResultFormat::Csv);
  REQUIRE(back.size() == 1);
  CHECK(back[0].instance == r.instance);
}

TEST_CASE("doubles round-trip at full precision") {
  Xorshift64 rng(61);
  std::vector<ResultRow> rows;
  for (int i = 0; i < 200; ++i) {
    ResultRow r = sample_row();
    r.sigma = rng.next_gaussian() * 3.0;
    r.iterations = rng.next_unit() * 1e9;
    r.wall_ns = rng.next_unit() * 1e12;
    r.energy_pj = rng.next_gaussian() * 1e-7;
    r.seed = static_cast<std::int64_t>(rng.next_below(1u << 30));
    rows.push_back(r);
  }
  for (ResultFormat fmt : {ResultFormat::Csv, ResultFormat::JsonLines}) {
    const std::vector<ResultRow> back =
        read_results_string(write_results_string(rows, fmt), fmt);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows_equal(back[i], rows[i]));
  }
}

TEST_CASE("integral doubles print without decoration") {
  CHECK(detail::format_double(0.0) == "0");
  CHECK(detail::format_double(14.0) == "14");
  CHECK(detail::format_double(-3.0) == "-3");
  CHECK(detail::format_double(2.5) == "2.5");
  CHECK(detail::format_double(std::nan("")) == "nan");
  const double tiny = 7.18e-13;
  CHECK(std::strtod(detail::format_double(tiny).c_str(), nullptr) == tiny);
}

TEST_CASE("CSV reader accepts input without a header") {
  const std::vector<ResultRow> rows =
      read_results_string("a,cnf,reference,1,0,1,5,10,2\n", ResultFormat::Csv);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].instance == "a");
  CHECK(rows[0].iterations == 5.0);
}

TEST_CASE("malformed rows report their line number") {
  const auto line_of = [](const std::string& text, ResultFormat fmt) -> std::uint32_t {
    try {
      read_results_string(text, fmt);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  const std::string header = std::string(result_header_csv()) + "\n";
  CHECK(line_of(header + "a,cnf,reference,1,0\n", ResultFormat::Csv) == 2);
  CHECK(line_of(header + "a,cnf,reference,1,zero,1,5,10,2\n", ResultFormat::Csv) == 2);
  CHECK(line_of(header + "ok,cnf,reference,1,0,1,5,10,2\n\"broken,cnf,reference,1,0,1,5,10,2\n",
                ResultFormat::Csv) == 3);
  CHECK(line_of("{\"instance\": \"a\"}\n", ResultFormat::JsonLines) == 1);
  CHECK(line_of("{bad json\n", ResultFormat::JsonLines) == 1);
  const std::string good = write_results_string({sample_row()}, ResultFormat::JsonLines);
  CHECK(line_of(good + "{\"instance\": \"b\"}\n", ResultFormat::JsonLines) == 2);
}

TEST_CASE("blank lines and CRLF endings are tolerated") {
  const std::string text =
      std::string(result_header_csv()) + "\r\n" + "a,cnf,reference,1,0,1,5,10,2\r\n\r\n";
  const std::vector<ResultRow> rows = read_results_string(text, ResultFormat::Csv);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].instance == "a");
}
