#ifndef PDSP_DEADLINE_HPP
#define PDSP_DEADLINE_HPP

#include <chrono>
#include <cmath>
#include <limits>

namespace pdsp {

class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  /// seconds <= 0 or non-finite means no limit.
  explicit Deadline(double seconds = std::numeric_limits<double>::infinity())
      : start_(Clock::now()),
        limited_(std::isfinite(seconds) && seconds > 0.0),
        end_(limited_ ? start_ + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(seconds))
                      : Clock::time_point::max()) {}

  bool expired() const { return limited_ && Clock::now() >= end_; }
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
  bool limited_;
  Clock::time_point end_;
};

}  // namespace pdsp

#endif  // PDSP_DEADLINE_HPP
