#ifndef GINIFIELD_NUMERIC_HPP
#define GINIFIELD_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ginifield {

// Neumaier compensated summation. All bulk reductions in the library go
// through this so results do not depend on incidental loop restructuring.
inline double stable_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

inline double mean_of(std::span<const double> xs) {
  return xs.empty() ? 0.0 : stable_sum(xs) / static_cast<double>(xs.size());
}

// Central second moment with 1/n normalization.
double central_covariance(std::span<const double> a, std::span<const double> b);

double median_of(std::vector<double> xs);

inline double sample_variance(std::span<const double> xs, double denominator) {
  std::vector<double> sq;
  sq.reserve(xs.size());
  const double m = mean_of(xs);
  for (double x : xs) sq.push_back((x - m) * (x - m));
  return stable_sum(sq) / denominator;
}

}  // namespace ginifield

#endif  // GINIFIELD_NUMERIC_HPP
