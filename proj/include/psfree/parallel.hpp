#pragma once

#include <exception>
#include <mutex>

namespace psfree {

/// Worker count: PSFREE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Sets the OpenMP team size used by the kernels on the calling thread.
void set_kernel_threads(int threads);

/// Collects the first exception thrown inside a parallel region so it can be
/// rethrown after the region ends.
class ExceptionSink {
 public:
  void capture() {
    std::lock_guard lock(mutex_);
    if (!first_) first_ = std::current_exception();
  }
  bool failed() const { return static_cast<bool>(first_); }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr first_;
};

}  // namespace psfree
