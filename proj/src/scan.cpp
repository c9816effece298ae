#include "psfree/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <variant>

#include "psfree/constants.hpp"
#include "psfree/errors.hpp"
#include "psfree/parallel.hpp"
#include "psfree/report.hpp"

namespace psfree {

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t start, std::uint64_t stop, double factor) {
  if (start < 1 || stop < start) throw std::invalid_argument("geometric_grid: requires 1 <= start <= stop");
  if (!(factor > 1.0)) throw std::invalid_argument("geometric_grid: factor must be > 1");
  std::vector<std::uint64_t> grid;
  for (int i = 0;; ++i) {
    const long double x = std::round(static_cast<long double>(start) * std::pow(static_cast<long double>(factor), i));
    if (x > static_cast<long double>(stop)) break;
    const auto xi = static_cast<std::uint64_t>(x);
    if (grid.empty() || grid.back() != xi) grid.push_back(xi);
  }
  return grid;
}

std::vector<ErrorSample> read_samples(const std::filesystem::path& path, OutputFormat format, SumKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<ErrorSample> out;
  if (format == OutputFormat::Json) {
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
    }
    for (const auto& row : j) out.push_back(error_sample_from_json(row));
    return out;
  }
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      if (line.rfind(csv_header(), 0) != 0) throw std::runtime_error("unexpected CSV header in " + path.string());
      continue;
    }
    if (line.empty()) continue;
    out.push_back(error_sample_from_csv(line, kind));
  }
  return out;
}

namespace {

// Writes rows as they are handed over. CSV appends one line per row; JSON
// rewrites the whole array so the file stays valid after every row.
class RowSink {
 public:
  RowSink(const ScanConfig& cfg, std::vector<ErrorSample> existing)
      : cfg_(cfg), rows_(std::move(existing)) {
    if (cfg_.format == OutputFormat::Csv) {
      const bool fresh = !cfg_.append || rows_.empty();
      csv_.open(cfg_.output_path, fresh ? std::ios::trunc : std::ios::app);
      if (!csv_) throw std::runtime_error("cannot open " + cfg_.output_path.string() + " for writing");
      if (fresh) {
        csv_ << csv_header() << '\n';
        for (const auto& r : rows_) csv_ << to_csv_row(r) << '\n';
      }
      flush_csv();
    } else {
      rewrite_json();
    }
  }

  void write(const ErrorSample& s) {
    rows_.push_back(s);
    if (cfg_.format == OutputFormat::Csv) {
      csv_ << to_csv_row(s) << '\n';
      flush_csv();
    } else {
      rewrite_json();
    }
  }

  std::vector<ErrorSample> take_rows() { return std::move(rows_); }

 private:
  void flush_csv() {
    csv_.flush();
    if (!csv_) throw std::runtime_error("write failed for " + cfg_.output_path.string());
  }

  void rewrite_json() {
    auto sorted = rows_;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.X < b.X; });
    Json arr = Json::array();
    for (const auto& r : sorted) arr.push_back(to_json(r));
    std::ofstream out(cfg_.output_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + cfg_.output_path.string() + " for writing");
    out << arr.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + cfg_.output_path.string());
  }

  const ScanConfig& cfg_;
  std::ofstream csv_;
  std::vector<ErrorSample> rows_;
};

CountReport run_count(const ScanConfig& cfg, std::uint64_t X) {
  switch (cfg.sum_kind) {
    case SumKind::Carlitz: return carlitz_count(X);
    case SumKind::CaoZhai: return cao_zhai_count(X, cfg.c, cfg.policy);
    case SumKind::ScPair: return sc_count(X, cfg.c, cfg.policy);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ScanResult run_scan(const ScanConfig& cfg, std::ostream* log) {
  if (cfg.output_path.empty()) throw std::invalid_argument("run_scan: output path required");
  const auto grid = geometric_grid(cfg.x_start, cfg.x_stop, cfg.grid_factor);
  if (cfg.sum_kind == SumKind::ScPair && cfg.x_start < 2) throw std::invalid_argument("run_scan: scPair needs X >= 2");

  const RigorousValue constant =
      cfg.sum_kind == SumKind::CaoZhai ? reciprocal_zeta2() : sigma_euler_product(cfg.sigma_cutoff);

  ScanResult result;
  std::vector<ErrorSample> existing;
  if (cfg.append && std::filesystem::exists(cfg.output_path) && std::filesystem::file_size(cfg.output_path) > 0) {
    existing = read_samples(cfg.output_path, cfg.format, cfg.sum_kind);
    for (auto& s : existing)
      s.main_term_uncertainty = static_cast<double>((s.sum_kind == SumKind::ScPair ? 0.5L : 1.0L) *
                                                    constant.error_bound * static_cast<long double>(s.X));
  }
  std::set<std::uint64_t> done;
  for (const auto& s : existing) done.insert(s.X);
  result.resumed = existing.size();

  std::vector<std::uint64_t> todo;
  for (auto x : grid)
    if (!done.contains(x)) todo.push_back(x);

  RowSink sink(cfg, std::move(existing));

  const int total_threads = cfg.workers > 0 ? cfg.workers : worker_count();
  const int pool = std::max(1, std::min<int>(total_threads, static_cast<int>(todo.size())));
  const int kernel_threads = std::max(1, total_threads / pool);

  // slot i holds the finished sample, or the diagnostic for a dropped row
  std::vector<std::optional<std::variant<ErrorSample, std::string>>> slots(todo.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;

  auto worker = [&] {
    set_kernel_threads(kernel_threads);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      std::variant<ErrorSample, std::string> outcome;
      try {
        outcome = error_sample(run_count(cfg, todo[i]), constant);
      } catch (const AmbiguousAtMaxPrecision& e) {
        outcome = "X=" + std::to_string(todo[i]) + " skipped: " + e.what();
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!fatal) fatal = std::current_exception();
        next = todo.size();
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mutex);
      slots[i] = std::move(outcome);
      ready.notify_all();
    }
  };

  std::vector<std::thread> threads;
  for (int w = 0; w < pool; ++w) threads.emplace_back(worker);

  std::exception_ptr write_error;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return slots[i].has_value() || fatal; });
    if (fatal) break;
    auto outcome = std::move(*slots[i]);
    lock.unlock();
    if (auto* msg = std::get_if<std::string>(&outcome)) {
      result.warnings.push_back(*msg);
      if (log) *log << "warning: " << *msg << '\n';
      continue;
    }
    const auto& sample = std::get<ErrorSample>(outcome);
    if (sample.main_term_uncertainty >= std::fabs(static_cast<double>(sample.error))) {
      std::string msg = "X=" + std::to_string(sample.X) + ": main-term uncertainty " +
                        format_decimal(sample.main_term_uncertainty) + " is not below |error| " +
                        format_decimal(std::fabs(sample.error));
      result.warnings.push_back(msg);
      if (log) *log << "warning: " << msg << '\n';
    }
    try {
      sink.write(sample);
    } catch (...) {
      write_error = std::current_exception();
      std::lock_guard guard(mutex);
      next = todo.size();
      break;
    }
    if (log) *log << "X=" << sample.X << " count=" << sample.count << '\n';
  }
  for (auto& t : threads) t.join();
  if (fatal) std::rethrow_exception(fatal);
  if (write_error) std::rethrow_exception(write_error);

  result.samples = sink.take_rows();
  std::sort(result.samples.begin(), result.samples.end(), [](const auto& a, const auto& b) { return a.X < b.X; });
  return result;
}

FitResult fit_error_exponent(std::span<const ErrorSample> samples) {
  FitResult fit;
  std::vector<std::pair<long double, long double>> pts;
  for (const auto& s : samples) {
    if (std::fabs(s.error) < 1.0L || s.X == 0) {
      ++fit.points_excluded;
      continue;
    }
    pts.emplace_back(std::log(static_cast<long double>(s.X)), std::log(std::fabs(s.error)));
  }
  if (pts.size() < 3)
    throw InsufficientData("fit_error_exponent: " + std::to_string(pts.size()) + " usable points, need 3");
  long double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<long double>(pts.size());
  my /= static_cast<long double>(pts.size());
  long double sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw InsufficientData("fit_error_exponent: all usable points share one X");
  fit.slope = static_cast<double>(sxy / sxx);
  fit.intercept = static_cast<double>(my - sxy / sxx * mx);
  fit.points_used = pts.size();
  fit.reference_exponent = reference_exponent(samples.front().sum_kind, samples.front().c);
  return fit;
}

}  // namespace psfree
