#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace maxvar {

/// Evaluation grid for a sweep: `count` points on [lo, hi], log- or
/// linearly spaced. Textual form "lo:hi:count:log" or "lo:hi:count:lin".
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  bool log = true;

  std::vector<double> points() const;
  /// Same endpoints, 2 * count - 1 points (every old point is kept).
  GridSpec refined() const;
  /// Endpoints multiplied by `factor`.
  GridSpec scaled(double factor) const;
  std::string to_string() const;

  /// Throws ParameterError on malformed text or an invalid range.
  static GridSpec parse(std::string_view text);
  /// Log grid on [1e-2 T, 8 T] with `count` points.
  static GridSpec standard(double support_radius, int count = 64);

  void validate() const;
};

}  // namespace maxvar
