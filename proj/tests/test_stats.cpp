#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "infokit/stats.hpp"
#include "testutil.hpp"

TEST_CASE("kahan summation keeps catastrophic terms") {
  infokit::KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 10000000; ++i) s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-9).epsilon(1e-12));
}

TEST_CASE("wilson intervals: frozen values") {
  const auto mid = infokit::wilson_interval(8, 10);
  CHECK(mid.low == doctest::Approx(0.49016247153664183).epsilon(1e-14));
  CHECK(mid.high == doctest::Approx(0.9433178485456247).epsilon(1e-14));

  const auto zero = infokit::wilson_interval(0, 10);
  CHECK(zero.low == 0.0);
  CHECK(zero.high == doctest::Approx(0.2775327998628892).epsilon(1e-14));

  const auto full = infokit::wilson_interval(10, 10);
  CHECK(full.low == doctest::Approx(0.7224672001371107).epsilon(1e-14));
  CHECK(full.high == doctest::Approx(0.9999999999999999).epsilon(1e-14));

  const auto big = infokit::wilson_interval(9900, 10000);
  CHECK(big.low == doctest::Approx(0.9878530177448853).epsilon(1e-14));
  CHECK(big.high == doctest::Approx(0.9917706638518516).epsilon(1e-14));
}

TEST_CASE("wilson intervals: structural invariants") {
  for (std::uint64_t trials : {1ull, 7ull, 100ull, 12345ull}) {
    for (std::uint64_t k = 0; k <= std::min<std::uint64_t>(trials, 20); ++k) {
      const auto ci = infokit::wilson_interval(k, trials);
      const double phat = static_cast<double>(k) / static_cast<double>(trials);
      CHECK(ci.low >= 0.0);
      CHECK(ci.high <= 1.0);
      CHECK(ci.low <= phat);
      CHECK(phat <= ci.high);
    }
  }
  // Mirror symmetry: swapping successes and failures flips the interval.
  const auto a = infokit::wilson_interval(3, 10);
  const auto b = infokit::wilson_interval(7, 10);
  CHECK(a.low == doctest::Approx(1.0 - b.high).epsilon(1e-14));
  CHECK(a.high == doctest::Approx(1.0 - b.low).epsilon(1e-14));
}

TEST_CASE("standard normal cdf: symmetry and reference points") {
  CHECK(infokit::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(infokit::normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  for (double x : {0.3, 1.0, 2.5}) {
    CHECK(infokit::normal_cdf(-x) ==
          doctest::Approx(1.0 - infokit::normal_cdf(x)).epsilon(1e-14));
  }
}

TEST_CASE("ks distance against the standard normal") {
  // A sample that IS the inverse-cdf grid has tiny distance; a shifted sample
  // has a large one.  Build the grid by bisecting the cdf.
  const auto inv_cdf = [](double u) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (infokit::normal_cdf(mid) < u) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<double> grid;
  const int m = 1000;
  for (int i = 0; i < m; ++i) {
    grid.push_back(inv_cdf((static_cast<double>(i) + 0.5) / m));
  }
  CHECK(infokit::ks_distance_standard_normal(grid) < 1.0 / m + 1e-9);

  // Shifting by 3 sigma pushes the distance toward its analytic supremum
  // sup_x |Phi(x - 3) - Phi(x)| = Phi(1.5) - Phi(-1.5) ~= 0.866.
  std::vector<double> shifted = grid;
  for (auto& x : shifted) x += 3.0;
  CHECK(infokit::ks_distance_standard_normal(shifted) > 0.8);

  // Distance is permutation-invariant (the implementation sorts).
  std::vector<double> scrambled = grid;
  std::mt19937_64 gen(4);
  std::shuffle(scrambled.begin(), scrambled.end(), gen);
  CHECK(infokit::ks_distance_standard_normal(scrambled) ==
        infokit::ks_distance_standard_normal(grid));
}
