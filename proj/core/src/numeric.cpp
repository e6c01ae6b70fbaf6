#include "ginifield/numeric.hpp"

#include "ginifield/errors.hpp"

namespace ginifield {

double central_covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw_error(ErrorCode::LengthMismatch, "covariance inputs differ in length");
  }
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - ma) * (b[i] - mb);
  return prod.empty() ? 0.0 : stable_sum(prod) / static_cast<double>(prod.size());
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) throw_error(ErrorCode::EmptySample, "median of empty sequence");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace ginifield
