#include "citerank/stats.hpp"

#include <cmath>

#include "citerank/corpus.hpp"

namespace citerank {

namespace {

void check_counts(double x, double n, const char* side) {
  if (!(n > 0) || !(x >= 0) || x > n || !std::isfinite(x) || !std::isfinite(n)) {
    throw Error(std::string("invalid counts for ") + side + ": need 0 <= x <= n and n > 0");
  }
}

}  // namespace

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

double ZTestResult::p_value() const { return normal_two_sided_p(z); }

ZTestResult z_two_proportions(double x1, double n1, double x2, double n2, std::string left_label,
                              std::string right_label) {
  check_counts(x1, n1, "first set");
  check_counts(x2, n2, "second set");
  const double pooled = (x1 + x2) / (n1 + n2);
  if (pooled <= 0.0 || pooled >= 1.0) throw Error("degenerate pooled proportion");
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  ZTestResult r;
  r.z = (x1 / n1 - x2 / n2) / se;
  r.left_label = std::move(left_label);
  r.right_label = std::move(right_label);
  r.x1 = x1;
  r.n1 = n1;
  r.x2 = x2;
  r.n2 = n2;
  r.significant_05 = std::fabs(r.z) > kCriticalZ05;
  return r;
}

ZTestResult z_one_sample(double x, double n, double p0) {
  check_counts(x, n, "sample");
  if (!(p0 > 0.0 && p0 < 1.0)) throw Error("p0 must lie in (0, 1)");
  ZTestResult r;
  r.z = (x / n - p0) / std::sqrt(p0 * (1.0 - p0) / n);
  r.x1 = x;
  r.n1 = n;
  r.significant_05 = std::fabs(r.z) > kCriticalZ05;
  return r;
}

ChiSquareResult chi_square_2x2(double x1, double n1, double x2, double n2) {
  check_counts(x1, n1, "first set");
  check_counts(x2, n2, "second set");
  const double total = n1 + n2;
  const double in_top = x1 + x2;
  const double not_top = total - in_top;
  if (in_top <= 0.0 || not_top <= 0.0) throw Error("zero margin in 2x2 table");
  const double observed[2][2] = {{x1, n1 - x1}, {x2, n2 - x2}};
  const double row[2] = {n1, n2};
  const double col[2] = {in_top, not_top};
  ChiSquareResult r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double expected = row[i] * col[j] / total;
      const double d = observed[i][j] - expected;
      r.chi2 += d * d / expected;
    }
  }
  return r;
}

}  // namespace citerank
