#pragma once

#include <cstddef>
#include <vector>

namespace lpencil {

/// Closed parameter interval [lo, hi].
struct Range {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }

  /// n >= 2 equally spaced nodes including both ends. Node i is computed as
  /// lo + width * i / (n - 1) so that the ends are hit exactly.
  std::vector<double> uniform(std::size_t n) const {
    std::vector<double> out(n);
    if (n == 1) {
      out[0] = lo;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = i + 1 == n ? hi : lo + width() * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  }
};

}  // namespace lpencil
