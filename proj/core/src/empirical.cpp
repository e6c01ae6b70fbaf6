#include "ginifield/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginifield/errors.hpp"
#include "ginifield/numeric.hpp"

namespace ginifield {

double EmpiricalDistribution::ecdf(double x) const {
  const auto it = std::upper_bound(values_sorted.begin(), values_sorted.end(), x);
  return static_cast<double>(it - values_sorted.begin()) /
         static_cast<double>(values_sorted.size());
}

std::size_t EmpiricalDistribution::quantile_index(double s) const {
  const std::size_t n = values_sorted.size();
  if (!(s > 0.0) || s > 1.0) {
    throw_error(ErrorCode::OutOfRange,
                "quantile level must lie in (0,1], got " + std::to_string(s));
  }
  const double nd = static_cast<double>(n);
  std::size_t k = static_cast<std::size_t>(std::ceil(nd * s));
  k = std::clamp<std::size_t>(k, 1, n);
  // Settle k = min{k : k/n >= s} with the same floating division used by
  // ecdf(), so quantile(ecdf(x)) <= x holds exactly under rounding.
  while (k > 1 && static_cast<double>(k - 1) / nd >= s) --k;
  while (k < n && static_cast<double>(k) / nd < s) ++k;
  return k;
}

double EmpiricalDistribution::quantile(double s) const {
  return values_sorted[quantile_index(s) - 1];
}

EmpiricalDistribution make_distribution(std::span<const double> values) {
  if (values.empty()) throw_error(ErrorCode::EmptySample, "no observations given");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw_error(ErrorCode::NonPositiveValue,
                  "value " + std::to_string(values[i]) + " at index " +
                      std::to_string(i));
    }
  }
  EmpiricalDistribution dist;
  dist.values_sorted.assign(values.begin(), values.end());
  std::sort(dist.values_sorted.begin(), dist.values_sorted.end());
  dist.mean = mean_of(dist.values_sorted);
  return dist;
}

EmpiricalDistribution make_distribution(const std::vector<double>& values) {
  return make_distribution(std::span<const double>(values));
}

PairedSample make_paired_sample(std::span<const double> x1, std::span<const double> x2) {
  if (x1.size() != x2.size()) {
    throw_error(ErrorCode::LengthMismatch, "paired columns differ in length");
  }
  if (x1.size() < 2) throw_error(ErrorCode::SampleTooSmall, "need n >= 2 paired rows");
  for (std::size_t i = 0; i < x1.size(); ++i) {
    if (!(x1[i] > 0.0) || !(x2[i] > 0.0) || !std::isfinite(x1[i]) || !std::isfinite(x2[i])) {
      throw_error(ErrorCode::NonPositiveValue, "row " + std::to_string(i));
    }
  }
  PairedSample paired;
  paired.first.assign(x1.begin(), x1.end());
  paired.second.assign(x2.begin(), x2.end());
  return paired;
}

Grid::Grid(std::size_t points) : m(points) {
  if (m == 0) throw_error(ErrorCode::OutOfRange, "grid needs at least one node");
}

double EmpiricalCopula::evaluate(double u, double v) const {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  std::size_t count = 0;
  for (const auto& [ui, vi] : pseudo_obs) {
    if (ui <= u && vi <= v) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(pseudo_obs.size());
}

std::vector<double> EmpiricalCopula::grid_cdf(const Grid& grid) const {
  const std::size_t m = grid.m;
  const std::size_t n = pseudo_obs.size();
  std::vector<double> cells(m * m, 0.0);
  const double md = static_cast<double>(m);
  for (const auto& [u, v] : pseudo_obs) {
    // First node >= u is k with (k - 1/2)/m >= u, i.e. k = ceil(m*u + 1/2).
    const std::size_t a = static_cast<std::size_t>(std::ceil(md * u + 0.5));
    const std::size_t b = static_cast<std::size_t>(std::ceil(md * v + 0.5));
    if (a > m || b > m) continue;
    cells[(a - 1) * m + (b - 1)] += 1.0;
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 1; l < m; ++l) cells[k * m + l] += cells[k * m + l - 1];
  }
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) cells[k * m + l] += cells[(k - 1) * m + l];
  }
  for (double& c : cells) c /= static_cast<double>(n);
  return cells;
}

EmpiricalCopula empirical_copula(const PairedSample& paired) {
  const std::size_t n = paired.size();
  std::vector<double> s1 = paired.first;
  std::vector<double> s2 = paired.second;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  const double nd = static_cast<double>(n);
  EmpiricalCopula copula;
  copula.pseudo_obs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u =
        static_cast<double>(std::upper_bound(s1.begin(), s1.end(), paired.first[i]) -
                            s1.begin()) /
        nd;
    const double v =
        static_cast<double>(std::upper_bound(s2.begin(), s2.end(), paired.second[i]) -
                            s2.begin()) /
        nd;
    copula.pseudo_obs.emplace_back(u, v);
  }
  return copula;
}

double kernel_rect_integral(double a, double b, double c, double d) {
  const bool in_range = 0.0 <= a && a <= b && b <= 1.0 && 0.0 <= c && c <= d && d <= 1.0;
  if (!in_range) {
    throw_error(ErrorCode::OutOfRange, "rectangle must satisfy 0<=a<=b<=1, 0<=c<=d<=1");
  }
  if (a > c || (a == c && b > d)) {
    std::swap(a, c);
    std::swap(b, d);
  }
  double m = 0.0;
  // s below the t-interval: integrand s*(d-c).
  {
    const double lo = a, hi = std::min(b, c);
    if (lo < hi) m += 0.5 * (d - c) * (hi * hi - lo * lo);
  }
  // s inside [c,d]: inner integral is s*d - s^2/2 - c^2/2.
  {
    const double lo = std::max(a, c), hi = std::min(b, d);
    if (lo < hi) {
      m += 0.5 * d * (hi * hi - lo * lo) - (hi * hi * hi - lo * lo * lo) / 6.0 -
           0.5 * c * c * (hi - lo);
    }
  }
  // s above the t-interval: inner integral is (d^2 - c^2)/2.
  {
    const double lo = std::max(a, d);
    if (lo < b) m += 0.5 * (d * d - c * c) * (b - lo);
  }
  return m - 0.25 * (b * b - a * a) * (d * d - c * c);
}

}  // namespace ginifield
