// psfree: command-line front end for the squarefree-pair counting toolkit.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "psfree/constants.hpp"
#include "psfree/counting.hpp"
#include "psfree/errors.hpp"
#include "psfree/expsum.hpp"
#include "psfree/parallel.hpp"
#include "psfree/report.hpp"
#include "psfree/scan.hpp"

namespace {

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

// Argument problems detected after CLI11 has parsed (bad exponent text etc.).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

psfree::Exponent exponent_arg(const std::string& text, bool real) {
  try {
    return psfree::Exponent::parse(text, real ? psfree::ExponentMode::RealInterval : psfree::ExponentMode::ExactRational);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::optional<double> z_arg(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double z = std::stod(text, &used);
    if (used != text.size() || !(z >= 0)) throw std::invalid_argument("z");
    return z;
  } catch (const std::exception&) {
    throw UsageError("--z must be a non-negative number or 'inf', got '" + text + "'");
  }
}

std::vector<std::uint64_t> m_values_arg(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument("m");
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--m-values must be a comma-separated list of positive integers");
    }
  }
  if (out.empty()) throw UsageError("--m-values is empty");
  return out;
}

void print(const psfree::Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting laboratory for consecutive squarefree values [n^c], [n^c]+1"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads for the kernels (default: PSFREE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  std::string kind = "scpair";
  std::uint64_t x = 0;
  std::string c_text = "11/10";
  bool real = false;
  auto* count = app.add_subcommand("count", "Evaluate one counting sum exactly");
  count->add_option("--kind", kind, "carlitz | caozhai | scpair")
      ->check(CLI::IsMember({"carlitz", "caozhai", "scpair"}))
      ->required();
  count->add_option("--x", x, "X")->required()->check(CLI::PositiveNumber);
  count->add_option("--c", c_text, "exponent a/b or decimal");
  count->add_flag("--real", real, "use real-interval evaluation instead of exact rational");

  std::string z_text;
  auto* decompose = app.add_subcommand("decompose", "Exact S1 + S2 decomposition of S_c(X)");
  decompose->add_option("--x", x, "X")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  decompose->add_option("--c", c_text, "exponent a/b")->required();
  decompose->add_option("--z", z_text, "split point (default X^{(2c-1)/4}; 'inf' puts every pair in S1)");
  decompose->add_flag("--real", real, "use real-interval evaluation");

  std::uint64_t cutoff = 10'000'000;
  auto* sigma = app.add_subcommand("sigma", "Rigorous enclosure of prod_p (1 - 2/p^2)");
  sigma->add_option("--cutoff", cutoff, "prime cutoff P")->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{4'000'000'000}));

  std::uint64_t seed = 20240101;
  std::size_t instances = 100;
  std::uint64_t x_min = 1000;
  std::uint64_t x_max = 100000;
  auto* expsum = app.add_subcommand("expsum-check", "Empirical van der Corput check on random H(t, h)");
  expsum->add_option("--seed", seed, "RNG seed");
  expsum->add_option("--instances", instances, "number of instances")->check(CLI::PositiveNumber);
  expsum->add_option("--c", c_text, "exponent a/b");
  expsum->add_option("--x-min", x_min, "smallest X")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  expsum->add_option("--x-max", x_max, "largest X")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));

  psfree::ScanConfig scan_cfg;
  std::string out_path;
  std::string format = "csv";
  auto* scan = app.add_subcommand("scan", "Error samples over a geometric X grid, plus an exponent fit");
  scan->add_option("--kind", kind, "carlitz | caozhai | scpair")
      ->check(CLI::IsMember({"carlitz", "caozhai", "scpair"}))
      ->required();
  scan->add_option("--c", c_text, "exponent a/b");
  scan->add_option("--x-start", scan_cfg.x_start, "first X")->required()->check(CLI::PositiveNumber);
  scan->add_option("--x-stop", scan_cfg.x_stop, "last X")->required()->check(CLI::PositiveNumber);
  scan->add_option("--grid-factor", scan_cfg.grid_factor, "geometric grid factor (> 1)");
  scan->add_option("--out", out_path, "output file")->required();
  scan->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_flag("--append", scan_cfg.append, "resume: keep completed rows in --out and skip their X");
  scan->add_option("--workers", scan_cfg.workers, "grid points computed concurrently")->check(CLI::PositiveNumber);

  std::string m_values = "10,100,1000";
  auto* psi_check = app.add_subcommand("psi-check", "Truncated Fourier series of psi against its error envelope");
  psi_check->add_option("--m-values", m_values, "comma-separated truncation points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    psfree::set_kernel_threads(threads > 0 ? threads : psfree::worker_count());

    if (*count) {
      const auto k = psfree::parse_sum_kind(kind);
      psfree::CountReport report;
      if (k == psfree::SumKind::Carlitz) {
        report = psfree::carlitz_count(x);
      } else {
        const auto c = exponent_arg(c_text, real);
        if (k == psfree::SumKind::ScPair && x < 2) throw UsageError("scpair needs --x >= 2");
        report = k == psfree::SumKind::CaoZhai ? psfree::cao_zhai_count(x, c) : psfree::sc_count(x, c);
      }
      print(psfree::to_json(report));
    } else if (*decompose) {
      const auto c = exponent_arg(c_text, real);
      print(psfree::to_json(psfree::decompose(x, c, z_arg(z_text))));
    } else if (*sigma) {
      print(psfree::to_json(psfree::sigma_euler_product(cutoff)));
    } else if (*expsum) {
      const auto c = exponent_arg(c_text, false);
      if (x_max < x_min) throw UsageError("--x-max must be >= --x-min");
      const auto survey = psfree::survey_vdc(seed, instances, c, x_min, x_max);
      psfree::Json j;
      j["seed"] = survey.seed;
      j["instances"] = survey.instances;
      j["c"] = c.to_string();
      j["xMin"] = x_min;
      j["xMax"] = x_max;
      j["maxRatio"] = psfree::round_decimal(survey.max_ratio);
      j["maxHestRatio"] = psfree::round_decimal(survey.max_hest_ratio);
      j["withinTriangle"] = survey.within_triangle;
      print(j);
    } else if (*scan) {
      scan_cfg.sum_kind = psfree::parse_sum_kind(kind);
      scan_cfg.c = exponent_arg(c_text, false);
      scan_cfg.output_path = out_path;
      scan_cfg.format = psfree::parse_output_format(format);
      if (scan_cfg.x_stop < scan_cfg.x_start) throw UsageError("--x-stop must be >= --x-start");
      if (!(scan_cfg.grid_factor > 1.0)) throw UsageError("--grid-factor must be > 1");
      const auto result = psfree::run_scan(scan_cfg, &std::cerr);
      psfree::Json j;
      j["rows"] = result.samples.size();
      j["resumed"] = result.resumed;
      j["warnings"] = result.warnings;
      try {
        const auto fit = psfree::fit_error_exponent(result.samples);
        j["fit"] = {{"slope", psfree::round_decimal(fit.slope)},
                    {"intercept", psfree::round_decimal(fit.intercept)},
                    {"pointsUsed", fit.points_used},
                    {"pointsExcluded", fit.points_excluded},
                    {"referenceExponent", psfree::round_decimal(fit.reference_exponent)}};
      } catch (const psfree::InsufficientData& e) {
        j["fit"] = nullptr;
        j["fitError"] = e.what();
      }
      print(j);
    } else if (*psi_check) {
      psfree::Json rows = psfree::Json::array();
      for (auto M : m_values_arg(m_values)) {
        const auto check = psfree::psi_truncation_check(M);
        rows.push_back({{"M", M},
                        {"points", check.points},
                        {"maxScaledError", psfree::round_decimal(check.max_scaled_error)},
                        {"withinBound", check.within_bound},
                        {"atHalf", check.at_half}});
      }
      print(rows);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return 0;
}
