#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psfree/counting.hpp"
#include "psfree/exponent.hpp"

namespace psfree {

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(std::string_view text);

struct ScanConfig {
  Exponent c = Exponent::rational(11, 10);  // ignored for carlitz
  std::uint64_t x_start = 1000;
  std::uint64_t x_stop = 1000;
  double grid_factor = 2.0;
  SumKind sum_kind = SumKind::ScPair;
  std::filesystem::path output_path;
  OutputFormat format = OutputFormat::Csv;
  bool append = false;         // resume: keep rows already in output_path and skip their X
  int workers = 0;             // 0: worker_count()
  std::uint64_t sigma_cutoff = 10'000'000;
  PrecisionPolicy policy{};
};

/// X_i = round(start * factor^i) for i = 0, 1, ... while X_i <= stop, deduplicated.
std::vector<std::uint64_t> geometric_grid(std::uint64_t start, std::uint64_t stop, double factor);

struct ScanResult {
  std::vector<ErrorSample> samples;  // every row in the output, ascending X
  std::size_t resumed = 0;           // rows kept from an existing file
  std::vector<std::string> warnings;
};

/// Runs one count per grid point on a bounded worker pool and streams rows to
/// cfg.output_path in X order. A row whose exponent evaluation is ambiguous at
/// max precision is dropped with a warning; I/O failures throw with the path.
ScanResult run_scan(const ScanConfig& cfg, std::ostream* log = nullptr);

/// Rows previously written by run_scan.
std::vector<ErrorSample> read_samples(const std::filesystem::path& path, OutputFormat format, SumKind kind);

struct FitResult {
  double slope = 0;
  double intercept = 0;
  std::size_t points_used = 0;
  std::size_t points_excluded = 0;  // |error| < 1
  double reference_exponent = 0;
};

/// Least squares of log|error| against log X over samples with |error| >= 1.
/// Throws InsufficientData with fewer than 3 usable points.
FitResult fit_error_exponent(std::span<const ErrorSample> samples);

}  // namespace psfree
