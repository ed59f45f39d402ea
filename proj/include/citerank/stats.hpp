#pragma once

#include <string>

namespace citerank {

inline constexpr double kCriticalZ05 = 1.96;

struct ZTestResult {
  double z = 0.0;
  std::string left_label;
  std::string right_label;
  double x1 = 0.0, n1 = 0.0, x2 = 0.0, n2 = 0.0;
  bool significant_05 = false;

  /// Two-sided p-value from the standard normal tail.
  double p_value() const;
};

struct ChiSquareResult {
  double chi2 = 0.0;
  int degrees_of_freedom = 1;
};

/// Pooled two-proportion z-test, no continuity correction. Counts may be
/// fractional (fractional counting). Throws Error on invalid counts or a
/// pooled proportion of 0 or 1.
ZTestResult z_two_proportions(double x1, double n1, double x2, double n2,
                              std::string left_label = {}, std::string right_label = {});

/// Observed proportion x/n against p0. Throws Error unless 0 < p0 < 1.
ZTestResult z_one_sample(double x, double n, double p0);

/// Pearson chi-square on the 2x2 table (in top / not in top) x (set 1 / set 2).
ChiSquareResult chi_square_2x2(double x1, double n1, double x2, double n2);

/// Two-sided standard normal tail probability.
double normal_two_sided_p(double z);

}  // namespace citerank
