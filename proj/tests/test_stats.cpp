#include <doctest.h>

#include <random>

#include "citerank/corpus.hpp"
#include "citerank/output_table.hpp"
#include "citerank/stats.hpp"

using namespace citerank;

TEST_CASE("two-proportion z on category rows") {
  const auto bio = z_two_proportions(54, 2'952, 61, 3'923, "CN", "US");
  CHECK(bio.z == doctest::Approx(0.878).epsilon(0.005 / 0.878));
  CHECK(format_fixed(bio.z, 3) == "0.878");
  CHECK_FALSE(bio.significant_05);
  CHECK(bio.left_label == "CN");
  CHECK(bio.n2 == 3'923);

  const auto fin = z_two_proportions(15, 961, 16, 2'157);
  CHECK(std::fabs(fin.z - 2.129) < 0.001);
  CHECK(std::fabs(fin.z - 2.133) <= 0.05);
  CHECK(fin.significant_05);
  CHECK(fin.p_value() < 0.05);

  CHECK(std::fabs(z_two_proportions(13, 1'387, 41, 2'480).z - -1.805) <= 0.05);
  CHECK(std::fabs(z_two_proportions(416, 27'393, 126, 8'440).z - 0.197) <= 0.05);
  CHECK(z_two_proportions(5, 100, 10, 200).z == 0);

  const auto eu = z_two_proportions(6'074, 536'932, 7'337, 639'217);
  CHECK(eu.z == doctest::Approx(-0.84).epsilon(0.02));
  CHECK_FALSE(eu.significant_05);
}

TEST_CASE("two-proportion z errors") {
  try {
    z_two_proportions(0, 10, 0, 20);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "degenerate pooled proportion");
  }
  CHECK_THROWS_AS(z_two_proportions(10, 10, 20, 20), Error);
  CHECK_THROWS_AS(z_two_proportions(5, 0, 1, 10), Error);
  CHECK_THROWS_AS(z_two_proportions(11, 10, 1, 10), Error);
}

TEST_CASE("one-sample z") {
  CHECK(z_one_sample(5, 500, 0.01).z == 0);
  CHECK(z_one_sample(8'422, 504'695, 0.01).z == doctest::Approx(47.7).epsilon(0.002));
  CHECK(z_one_sample(0, 50, 0.01).z < 0);
  CHECK_THROWS_AS(z_one_sample(1, 10, 0), Error);
  CHECK_THROWS_AS(z_one_sample(1, 10, 1), Error);
}

TEST_CASE("chi-square 2x2") {
  const auto vir = chi_square_2x2(13, 1'387, 41, 2'480);
  CHECK(vir.chi2 == doctest::Approx(3.311).epsilon(1e-3));
  CHECK(vir.degrees_of_freedom == 1);
  CHECK(chi_square_2x2(5, 100, 5, 100).chi2 == 0);
  CHECK(chi_square_2x2(54, 2'952, 61, 3'923).chi2 == doctest::Approx(0.771).epsilon(1e-3));
  CHECK_THROWS_AS(chi_square_2x2(0, 10, 0, 10), Error);
}

TEST_CASE("identities over random tables") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(2, 5'000);
  for (int trial = 0; trial < 500; ++trial) {
    const double n1 = size(rng), n2 = size(rng);
    const double x1 = std::uniform_int_distribution<int>(0, static_cast<int>(n1))(rng);
    const double x2 = std::uniform_int_distribution<int>(0, static_cast<int>(n2))(rng);
    if ((x1 + x2) == 0 || (x1 + x2) == n1 + n2) continue;
    const double z = z_two_proportions(x1, n1, x2, n2).z;
    CHECK(z_two_proportions(x2, n2, x1, n1).z == -z);
    CHECK(z_two_proportions(n1 - x1, n1, n2 - x2, n2).z == doctest::Approx(-z));
    CHECK(std::fabs(chi_square_2x2(x1, n1, x2, n2).chi2 - z * z) <= 1e-9 * std::max(1.0, z * z));
    CHECK(z_two_proportions(x1, n1, x2, n2).significant_05 == (std::fabs(z) > kCriticalZ05));
  }
}

TEST_CASE("normal tail") {
  CHECK(normal_two_sided_p(0) == doctest::Approx(1.0));
  CHECK(normal_two_sided_p(1.96) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(normal_two_sided_p(-1.96) == normal_two_sided_p(1.96));
}
