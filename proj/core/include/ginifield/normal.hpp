#ifndef GINIFIELD_NORMAL_HPP
#define GINIFIELD_NORMAL_HPP

namespace ginifield {

// Standard normal distribution function, accurate to machine precision.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1). Acklam's rational approximation followed by
// one Halley step; absolute error is below 1e-13 away from the extreme tails.
double normal_quantile(double p);

}  // namespace ginifield

#endif  // GINIFIELD_NORMAL_HPP
