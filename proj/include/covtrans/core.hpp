#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace covtrans {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Violated operation precondition (bad argument, bad geometry, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Numerical failure: non-convergence, excessive mass loss, singular system.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

inline bool nearly_equal(double x, double y, double tol) { return std::abs(x - y) <= tol; }

/// Deterministic parallel index map. Results must be written by index into
/// preallocated storage inside `fn`; chunk boundaries never influence values,
/// so output is identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::future<void>> jobs;
  jobs.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    jobs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& j : jobs) j.get();
}

/// Process-wide worker count used by grid evaluators. Defaults to 1 so results
/// are reproducible unless the caller opts in to threading.
inline unsigned& worker_count() {
  static unsigned value = 1;
  return value;
}

}  // namespace covtrans
