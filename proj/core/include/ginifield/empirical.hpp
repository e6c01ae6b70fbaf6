#ifndef GINIFIELD_EMPIRICAL_HPP
#define GINIFIELD_EMPIRICAL_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ginifield {

// Sorted positive income sample with ECDF / quantile evaluation.
// Immutable after construction; safe to share across threads.
struct EmpiricalDistribution {
  std::vector<double> values_sorted;
  double mean = 0.0;

  std::size_t size() const { return values_sorted.size(); }

  // (1/n) #{i : X_i <= x}; right-continuous, ties stack.
  double ecdf(double x) const;

  // Left-continuous generalized inverse inf{x : ecdf(x) >= s} = X_{ceil(ns),n}
  // for s in (0,1]. Throws OutOfRange otherwise.
  double quantile(double s) const;

  // 1-based order-statistic index of quantile(s); shares the comparison logic
  // with quantile() so that quantile(ecdf(x)) <= x holds exactly.
  std::size_t quantile_index(double s) const;
};

EmpiricalDistribution make_distribution(std::span<const double> values);
EmpiricalDistribution make_distribution(const std::vector<double>& values);

// One household observed at two periods; both coordinates positive, n >= 2.
struct PairedSample {
  std::vector<double> first;
  std::vector<double> second;

  std::size_t size() const { return first.size(); }
};

PairedSample make_paired_sample(std::span<const double> x1, std::span<const double> x2);

// Midpoint quadrature grid on (0,1): s_k = (k - 1/2)/m, k = 1..m.
struct Grid {
  std::size_t m = 256;

  Grid() = default;
  explicit Grid(std::size_t points);

  double node(std::size_t k) const {  // k is 0-based
    return (static_cast<double>(k) + 0.5) / static_cast<double>(m);
  }
};

// Rank-based copula estimate from pseudo-observations in (0,1]^2
// (maximal-rank convention for ties).
struct EmpiricalCopula {
  std::vector<std::pair<double, double>> pseudo_obs;

  std::size_t size() const { return pseudo_obs.size(); }

  // (1/n) #{i : u_i <= u, v_i <= v}.
  double evaluate(double u, double v) const;

  // C_n evaluated on the full node lattice, row-major [k*m + l] with k the
  // first coordinate. O(n + m^2) via a cumulative cell histogram.
  std::vector<double> grid_cdf(const Grid& grid) const;
};

EmpiricalCopula empirical_copula(const PairedSample& paired);

// Exact value of the double integral of min(s,t) - s*t over [a,b] x [c,d],
// 0 <= a <= b <= 1 and 0 <= c <= d <= 1, split in closed form at the
// diagonal. Arguments are canonicalized so the (s,t) symmetry is bit-exact.
double kernel_rect_integral(double a, double b, double c, double d);

}  // namespace ginifield

#endif  // GINIFIELD_EMPIRICAL_HPP
