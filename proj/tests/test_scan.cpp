#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "psfree/errors.hpp"
#include "psfree/report.hpp"
#include "psfree/scan.hpp"

using namespace psfree;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "psfree_test_scan";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ErrorSample> planted(double exponent, double scale) {
  std::vector<ErrorSample> out;
  for (std::uint64_t X = 1000; X <= 10'000'000; X *= 2) {
    ErrorSample s;
    s.X = X;
    s.c = Exponent::rational(11, 10);
    s.error = scale * std::pow(static_cast<long double>(X), static_cast<long double>(exponent));
    out.push_back(s);
  }
  return out;
}

ScanConfig config(SumKind kind, std::uint64_t a, std::uint64_t b, double factor, const fs::path& out,
                  OutputFormat format) {
  ScanConfig cfg;
  cfg.sum_kind = kind;
  cfg.x_start = a;
  cfg.x_stop = b;
  cfg.grid_factor = factor;
  cfg.output_path = out;
  cfg.format = format;
  cfg.sigma_cutoff = 1'000'000;
  return cfg;
}

}  // namespace

TEST_CASE("geometric grid") {
  CHECK(geometric_grid(1000, 1000, 2) == std::vector<std::uint64_t>{1000});
  CHECK(geometric_grid(10, 11, 2) == std::vector<std::uint64_t>{10});
  CHECK(geometric_grid(1000, 1'000'000, 10) == std::vector<std::uint64_t>{1000, 10'000, 100'000, 1'000'000});
  CHECK(geometric_grid(1, 10, 1.5) == std::vector<std::uint64_t>{1, 2, 3, 5, 8});
  CHECK(geometric_grid(1000, 5000, 2) == std::vector<std::uint64_t>{1000, 2000, 4000});
  CHECK_THROWS_AS(geometric_grid(10, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(geometric_grid(10, 50, 1.0), std::invalid_argument);
}

TEST_CASE("fit recovers planted exponents") {
  const auto a = planted(0.5, 1.0);
  const auto fa = fit_error_exponent(a);
  CHECK(std::abs(fa.slope - 0.5) <= 1e-9);
  CHECK(std::abs(fa.intercept) <= 1e-9);
  CHECK(fa.points_used == a.size());

  auto b = planted(0.8, 7.0);
  for (std::size_t i = 0; i < b.size(); i += 2) b[i].error = -b[i].error;  // sign does not matter
  const auto fb = fit_error_exponent(b);
  CHECK(std::abs(fb.slope - 0.8) <= 1e-9);
  CHECK(std::abs(fb.intercept - std::log(7.0)) <= 1e-9);
}

TEST_CASE("fit excludes small errors and needs three points") {
  auto s = planted(0.5, 1.0);
  s[0].error = 0;
  s[1].error = 0.5L;
  const auto f = fit_error_exponent(s);
  CHECK(f.points_excluded == 2);
  CHECK(f.points_used == s.size() - 2);
  CHECK(std::abs(f.slope - 0.5) <= 1e-9);

  auto few = planted(0.5, 1.0);
  few.resize(2);
  CHECK_THROWS_AS(fit_error_exponent(few), InsufficientData);
}

TEST_CASE("csv helpers") {
  CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_line("1,\"x,y\",\"say \"\"hi\"\"\"") == std::vector<std::string>{"1", "x,y", "say \"hi\""});
  CHECK(split_csv_line("a,,") == std::vector<std::string>{"a", "", ""});
  CHECK(csv_field("11/10") == "11/10");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(split_csv_line(csv_field("q\"uote")).front() == "q\"uote");
  CHECK(format_decimal(1.0L / 3.0L) == "0.333333333333333");
  CHECK(round_decimal(1.0L / 3.0L) == 0.333333333333333);
  CHECK(csv_header() == "X,c,count,mainTerm,error,normalizedError,elapsedSeconds");
}

TEST_CASE("single point and carlitz self-consistency") {
  const auto one = scratch("one.csv");
  const auto r1 = run_scan(config(SumKind::ScPair, 1000, 1000, 2, one, OutputFormat::Csv));
  CHECK(r1.samples.size() == 1);
  CHECK(r1.samples[0].count == sc_count(1000, Exponent::rational(11, 10)).count);

  const auto carl = scratch("carlitz.csv");
  const auto r = run_scan(config(SumKind::Carlitz, 1000, 1'000'000, 10, carl, OutputFormat::Csv));
  REQUIRE(r.samples.size() == 4);
  for (const auto& s : r.samples) CHECK(s.count == carlitz_count(s.X).count);
  const auto back = read_samples(carl, OutputFormat::Csv, SumKind::Carlitz);
  REQUIRE(back.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(back[i].count == r.samples[i].count);

  const auto dedup = scratch("dedup.csv");
  const auto rd = run_scan(config(SumKind::ScPair, 10, 11, 2, dedup, OutputFormat::Csv));
  REQUIRE(rd.samples.size() == 1);
  CHECK(rd.samples[0].X == 10);
}

TEST_CASE("csv and json carry identical numbers") {
  const auto csv = scratch("pair.csv");
  const auto json = scratch("pair.json");
  run_scan(config(SumKind::ScPair, 1000, 64'000, 2, csv, OutputFormat::Csv));
  run_scan(config(SumKind::ScPair, 1000, 64'000, 2, json, OutputFormat::Json));
  const auto a = read_samples(csv, OutputFormat::Csv, SumKind::ScPair);
  const auto b = read_samples(json, OutputFormat::Json, SumKind::ScPair);
  REQUIRE(a.size() == 7);
  REQUIRE(b.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].X == b[i].X);
    CHECK(a[i].c == b[i].c);
    CHECK(a[i].count == b[i].count);
    CHECK(a[i].main_term == b[i].main_term);
    CHECK(a[i].error == b[i].error);
    CHECK(a[i].normalized_error == b[i].normalized_error);
  }
  // a row written and read back is unchanged at the reporting precision
  const auto again = error_sample_from_csv(to_csv_row(a[3]), SumKind::ScPair);
  CHECK(to_csv_row(again) == to_csv_row(a[3]));
  const auto again_json = error_sample_from_json(to_json(b[3]));
  CHECK(to_json(again_json) == to_json(b[3]));
}

TEST_CASE("append resumes without recomputing finished rows") {
  for (auto format : {OutputFormat::Csv, OutputFormat::Json}) {
    const auto out = scratch(format == OutputFormat::Csv ? "resume.csv" : "resume.json");
    auto cfg = config(SumKind::ScPair, 1000, 8000, 2, out, format);
    const auto first = run_scan(cfg);
    CHECK(first.resumed == 0);
    CHECK(first.samples.size() == 4);
    const auto before = slurp(out);

    cfg.append = true;
    const auto again = run_scan(cfg);
    CHECK(again.resumed == 4);
    CHECK(again.samples.size() == 4);
    CHECK(slurp(out) == before);

    cfg.x_stop = 32'000;
    const auto longer = run_scan(cfg);
    CHECK(longer.resumed == 4);
    REQUIRE(longer.samples.size() == 6);
    CHECK(slurp(out).rfind(format == OutputFormat::Csv ? before : std::string("["), 0) == 0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(longer.samples[i].count == first.samples[i].count);
  }
}

TEST_CASE("unwritable output surfaces the path") {
  auto cfg = config(SumKind::Carlitz, 1000, 1000, 2, "/nonexistent-dir/x.csv", OutputFormat::Csv);
  try {
    run_scan(cfg);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_output_format("xml"), std::invalid_argument);
}
