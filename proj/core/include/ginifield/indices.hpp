#ifndef GINIFIELD_INDICES_HPP
#define GINIFIELD_INDICES_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ginifield/empirical.hpp"

namespace ginifield {

struct GiniEstimate {
  double value = 0.0;        // 2*a_statistic/mean - 1 - 1/n
  double a_statistic = 0.0;  // (1/n) sum_j (j/n) X_{j,n}
  double mean = 0.0;
  std::size_t n = 0;
};

// A_n = (1/n) sum_j (j/n) X_{j,n}.
double a_statistic(const EmpiricalDistribution& dist);

GiniEstimate gini_point(const EmpiricalDistribution& dist);

enum class GpiKind { Fgt, Sen, Kakwani, Custom };

// Parametrization of the generalized poverty index
//   J_n = A(Q,n,Z)/(n B) * sum_{j<=Q} w(mu1 n + mu2 Q - mu3 j + mu4)
//                                    * d((Z - X_{j,n})/Z),
// with B = sum_{j<=n} w(j) and Q the number of incomes strictly below Z.
// residual_g / residual_nu are the influence components used by the
// two-period variance; presets that admit an exact one set them directly.
struct GpiConfig {
  double poverty_line = 0.0;
  std::function<double(double)> weight;                                // w
  std::function<double(double)> deprivation;                           // d, on [0,1)
  std::function<double(std::size_t, std::size_t, double)> scale;       // A(Q,n,Z)
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0, mu4 = 0.0;
  std::function<double(double)> residual_g;   // influence g(x)
  std::function<double(double)> residual_nu;  // residual nu(s) on (0,1)
  GpiKind kind = GpiKind::Custom;
  double shape = 0.0;  // alpha for FGT, kappa for Kakwani
  std::string name = "custom";

  bool has_residuals() const {
    return static_cast<bool>(residual_g) && static_cast<bool>(residual_nu);
  }
};

// Presets calibrated so gpi_point reproduces the canonical direct formulas.
GpiConfig fgt_config(double poverty_line, double alpha);
GpiConfig sen_config(double poverty_line);
GpiConfig kakwani_config(double poverty_line, double kappa);

struct GpiEstimate {
  double value = 0.0;
  std::size_t poor_count = 0;  // Q = #{i : X_i < Z}
  double normalizer = 0.0;     // B
  std::vector<std::string> warnings;
};

GpiEstimate gpi_point(const EmpiricalDistribution& dist, const GpiConfig& cfg);

// Canonical closed forms serving as oracles for the presets.
double fgt_direct(const EmpiricalDistribution& dist, double poverty_line, double alpha);
double sen_direct(const EmpiricalDistribution& dist, double poverty_line);
double kakwani_direct(const EmpiricalDistribution& dist, double poverty_line, double kappa);

}  // namespace ginifield

#endif  // GINIFIELD_INDICES_HPP
