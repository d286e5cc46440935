#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "infokit/distribution.hpp"
#include "infokit/entropy.hpp"
#include "infokit/errors.hpp"
#include "infokit/sequence.hpp"
#include "infokit/typicality.hpp"
#include "testutil.hpp"

using infokit::Distribution;
using infokit::EnumerationMethod;
using infokit::QParam;
using infokit::Sequence;
using infokit::SetCensus;

namespace {

Sequence binary_seq_with_zeros(std::uint64_t n, std::uint64_t zeros) {
  std::vector<std::uint32_t> letters(n, 1);
  for (std::uint64_t i = 0; i < zeros; ++i) letters[i] = 0;
  return Sequence(letters);
}

}  // namespace

TEST_CASE("empirical entropy rate: frozen value and input validation") {
  const Distribution p25({0.25, 0.75});
  CHECK(infokit::empirical_entropy_rate(p25, Sequence({0, 1, 1, 1})) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-15));

  CHECK_THROWS_AS(
      infokit::empirical_entropy_rate(p25, Sequence(std::vector<std::uint32_t>{})),
      std::domain_error);
  CHECK_THROWS_AS(infokit::empirical_entropy_rate(p25, Sequence({2})),
                  std::invalid_argument);
  const Distribution with_zero({0.0, 1.0});
  CHECK_THROWS_AS(infokit::empirical_entropy_rate(with_zero, Sequence({0, 1})),
                  std::domain_error);
}

TEST_CASE("statistic form and probability-sandwich form agree bitwise") {
  // The typicality test |rate - H| <= eps and the sandwich
  //   2^{-n(H+eps)} <= P(s) <= 2^{-n(H-eps)}
  // are the same comparison once log2 P(s) is divided by n.  Verify the two
  // library routes give the identical verdict on random blocks, including at
  // epsilons engineered to sit exactly on the statistic's boundary.
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Distribution d = testutil::random_distribution(seed, 2 + seed % 5);
    const double h = infokit::shannon_entropy(d).value;
    for (std::uint64_t t = 0; t < 40; ++t) {
      infokit::TrialRng rng(seed * 1000 + 7, t);
      const std::uint64_t n = 1 + t % 9;
      std::vector<std::uint32_t> letters(n);
      for (auto& a : letters) a = d.sample(rng);
      const Sequence s(letters);

      const double rate = infokit::empirical_entropy_rate(d, s);
      const auto lp = infokit::sequence_log_probability(d, s);
      const double sandwich_rate = -lp.log2_value / static_cast<double>(n);
      // Same quantity through both routes, bit for bit.
      CHECK(rate == sandwich_rate);

      // On-boundary epsilon: inclusive on both sides.
      const double eps_boundary = std::fabs(rate - h);
      const auto report = infokit::is_epsilon_typical(d, s, eps_boundary);
      CHECK(report.is_typical);
      CHECK(report.statistic == rate);
      CHECK(report.reference == h);

      for (double eps : {0.0, 0.05, 0.3, 1.0}) {
        const bool via_stat = std::fabs(rate - h) <= eps;
        const bool via_sandwich =
            sandwich_rate >= h - eps && sandwich_rate <= h + eps;
        const auto rep = infokit::is_epsilon_typical(d, s, eps);
        CHECK(rep.is_typical == via_stat);
        CHECK(rep.is_typical == via_sandwich);
      }
    }
  }
  CHECK_THROWS_AS(
      infokit::is_epsilon_typical(Distribution({0.5, 0.5}), Sequence({0}), -0.1),
      std::invalid_argument);
}

TEST_CASE("typical-set census agrees with exhaustive brute force") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::uint32_t w = 2 + seed % 3;
    const Distribution d = testutil::random_distribution(seed + 40, w);
    const double h = infokit::shannon_entropy(d).value;
    for (std::uint64_t n : {1ull, 4ull, 7ull}) {
      for (double eps : {0.02, 0.15, 0.5}) {
        const SetCensus census = infokit::enumerate_typical_set(d, n, eps);
        const auto brute = testutil::brute_census(
            d, n, eps, h, [&d](std::uint32_t a) { return d.surprisal_bits(a); });
        CHECK(census.count == brute.count);
        CHECK(census.mass == doctest::Approx(brute.mass).epsilon(1e-12));
        CHECK(census.n == n);
      }
    }
  }
}

TEST_CASE("census routes: composition grouping vs exhaustive enumeration") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::uint32_t w = 2 + seed % 2;
    const Distribution d = testutil::random_distribution(seed + 90, w);
    for (std::uint64_t n : {3ull, 8ull, 10ull}) {
      const SetCensus a =
          infokit::enumerate_typical_set(d, n, 0.2, EnumerationMethod::TypeClass);
      const SetCensus b =
          infokit::enumerate_typical_set(d, n, 0.2, EnumerationMethod::Exhaustive);
      CHECK(a.count == b.count);
      CHECK(a.mass == doctest::Approx(b.mass).epsilon(1e-12));
    }
  }
}

TEST_CASE("census validation and capacity guards") {
  const Distribution fair({0.5, 0.5});
  CHECK_THROWS_AS(infokit::enumerate_typical_set(fair, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(infokit::enumerate_typical_set(fair, 4, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(
      infokit::enumerate_typical_set(fair, 4, std::numeric_limits<double>::quiet_NaN()),
      std::invalid_argument);
  // 2^30 exhaustive states exceed the 2^24 cap.
  CHECK_THROWS_AS(
      infokit::enumerate_typical_set(fair, 30, 0.1, EnumerationMethod::Exhaustive),
      infokit::capacity_error);
  // Binary composition route is capped at n = 10^6.
  CHECK_THROWS_AS(
      infokit::enumerate_typical_set(fair, 1000001, 0.1, EnumerationMethod::TypeClass),
      infokit::capacity_error);
}

TEST_CASE("count bounds: frozen example and census coverage") {
  const auto frozen = infokit::typical_set_bounds(1.0, 10, 0.0, 0.5);
  CHECK(frozen.lower == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(frozen.upper == doctest::Approx(10.0).epsilon(1e-15));

  CHECK_THROWS_AS(infokit::typical_set_bounds(1.0, 10, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(infokit::typical_set_bounds(1.0, 10, 0.1, 1.0), std::invalid_argument);

  // Fair coin: every block is typical at any eps, so the bounds must hold.
  const Distribution fair({0.5, 0.5});
  for (std::uint64_t n : {5ull, 12ull, 20ull}) {
    const SetCensus census = infokit::enumerate_typical_set(fair, n, 0.01);
    CHECK(census.mass == doctest::Approx(1.0).epsilon(1e-12));
    const auto b = infokit::typical_set_bounds(1.0, n, 0.01, 0.1);
    CHECK(census.log2_count >= b.lower);
    CHECK(census.log2_count <= b.upper);
  }

  // Skewed coin: the upper bound holds unconditionally; the lower bound must
  // hold whenever the measured mass reaches 1 - delta.
  const Distribution p25({0.25, 0.75});
  const double h = infokit::shannon_entropy(p25).value;
  const double delta = 0.1;
  for (std::uint64_t n : {14ull, 60ull, 200ull}) {
    for (double eps : {0.05, 0.1, 0.2, 0.3}) {
      const SetCensus census = infokit::enumerate_typical_set(p25, n, eps);
      const auto b = infokit::typical_set_bounds(h, n, eps, delta);
      CHECK(census.log2_count <= b.upper + 1e-9);
      if (census.mass >= 1.0 - delta) {
        CHECK(census.log2_count >= b.lower - 1e-9);
      }
    }
  }

  // Frozen degenerate case: at n = 14, eps = 0.05 the skewed coin has NO
  // typical sequences at all (the statistic grid skips the window).
  const SetCensus empty = infokit::enumerate_typical_set(p25, 14, 0.05);
  CHECK(empty.count == 0);
  CHECK(empty.mass == 0.0);
  CHECK(empty.log2_count == -std::numeric_limits<double>::infinity());

  // Frozen neighbour: eps = 0.1 at n = 14 catches exactly the k0 in {3, 4}
  // classes: 1365 sequences, mass ~ 0.4604 (below 1 - delta, gate off).
  const SetCensus near = infokit::enumerate_typical_set(p25, 14, 0.1);
  CHECK(near.count == 1365);
  CHECK(near.mass == doctest::Approx(0.46040697768330574).epsilon(1e-12));
}

TEST_CASE("monte carlo typicality estimate: determinism and exact cross-checks") {
  const Distribution p25({0.25, 0.75});

  const auto a = infokit::estimate_typicality_probability(p25, 200, 0.05, 4000, 11, 1);
  const auto b = infokit::estimate_typicality_probability(p25, 200, 0.05, 4000, 11, 4);
  const auto c = infokit::estimate_typicality_probability(p25, 200, 0.05, 4000, 11, 1);
  CHECK(a.estimate == b.estimate);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
  CHECK(a.estimate == c.estimate);
  CHECK(a.trials == 4000);
  CHECK(a.seed == 11);

  // Exact interval from the census must contain the estimate (up to MC error):
  // compare against the Wilson interval instead of a point.
  const double exact = infokit::enumerate_typical_set(p25, 14, 0.1).mass;
  const auto est = infokit::estimate_typicality_probability(p25, 14, 0.1, 10000, 3, 1);
  CHECK(est.ci_low <= exact);
  CHECK(exact <= est.ci_high);

  // Degenerate frozen case: the window is empty, so the estimate is exactly 0.
  const auto zero = infokit::estimate_typicality_probability(p25, 14, 0.05, 2000, 5, 1);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.ci_low == 0.0);

  CHECK_THROWS_AS(infokit::estimate_typicality_probability(p25, 0, 0.1, 100, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(infokit::estimate_typicality_probability(p25, 5, 0.1, 0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("mass of the most-probable budget: frozen values and brute force") {
  const Distribution p25({0.25, 0.75});
  // Budget 2^6 = 64 at n = 12, rate 1/2.
  CHECK(infokit::top_set_mass(p25, 12, 0.5) ==
        doctest::Approx(0.33788108825683594).epsilon(1e-9));
  CHECK(infokit::top_set_mass(p25, 12, 0.5) ==
        doctest::Approx(testutil::brute_top_mass(p25, 12, 64)).epsilon(1e-12));

  // Dyadic rates make n * rate an exact integer: budgets 2^3 and 2^9.
  CHECK(infokit::top_set_mass(p25, 12, 0.25) ==
        doctest::Approx(testutil::brute_top_mass(p25, 12, 1ull << 3)).epsilon(1e-12));
  CHECK(infokit::top_set_mass(p25, 12, 0.75) ==
        doctest::Approx(testutil::brute_top_mass(p25, 12, 1ull << 9)).epsilon(1e-12));

  // Non-binary alphabet goes through the composition path.
  const Distribution tri = testutil::random_distribution(123, 3);
  CHECK(infokit::top_set_mass(tri, 10, 0.8) ==
        doctest::Approx(testutil::brute_top_mass(tri, 10, 1ull << 8)).epsilon(1e-12));

  // Rate high enough to cover everything.
  CHECK(infokit::top_set_mass(p25, 8, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Frozen large-n values for the skewed coin.
  const Distribution p11({0.11, 0.89});
  CHECK(infokit::top_set_mass(p11, 1000, 0.3) ==
        doctest::Approx(4.4880852993716694e-10).epsilon(1e-9));
  CHECK(infokit::top_set_mass(p11, 1000, 0.4) ==
        doctest::Approx(0.0011047035987174025).epsilon(1e-9));
  CHECK(infokit::top_set_mass(p11, 1000, 0.45) ==
        doctest::Approx(0.07224590791291145).epsilon(1e-9));

  CHECK_THROWS_AS(infokit::top_set_mass(p25, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(infokit::top_set_mass(p25, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(infokit::top_set_mass(p25, 5, -1.0), std::invalid_argument);
}

TEST_CASE("q-statistic of a block: frozen value and support handling") {
  const Distribution p25({0.25, 0.75});
  // One rare letter in four: the statistic lands exactly on S_q for q = 1/2
  // because the empirical composition matches the distribution.
  CHECK(infokit::q_typicality_statistic(p25, Sequence({0, 1, 1, 1}), QParam(0.5)) ==
        doctest::Approx(0.7320508075688772).epsilon(1e-15));

  // A block containing a zero-probability letter has no finite statistic on
  // either evaluation route; the contract is a refusal, not a quiet infinity.
  const Distribution with_zero({0.0, 1.0});
  CHECK_THROWS_AS(
      infokit::q_typicality_statistic(with_zero, Sequence({0, 1}), QParam(2.0)),
      std::domain_error);
}

TEST_CASE("q-census agrees with brute force and with the classical census at q = 1") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::uint32_t w = 2 + seed % 2;
    const Distribution d = testutil::random_distribution(seed + 11, w);
    for (double q : {0.5, 2.0}) {
      const QParam qp(q);
      const double sq = infokit::tsallis_entropy(d, qp).value;
      for (std::uint64_t n : {2ull, 6ull, 9ull}) {
        for (double eps : {0.05, 0.2}) {
          const SetCensus census = infokit::q_set_census(d, n, eps, qp);
          const auto brute = testutil::brute_census(
              d, n, eps, sq,
              [&](std::uint32_t a) { return infokit::q_surprisal(d.prob(a), qp); });
          CHECK(census.count == brute.count);
          CHECK(census.mass == doctest::Approx(brute.mass).epsilon(1e-12));
        }
      }
    }
  }

  // q = 1 with eps converted bits -> nats selects the same set as the
  // classical census (the statistic is the same quantity in different units;
  // the class margins here sit far from the window edges).
  const Distribution p25({0.25, 0.75});
  const double eps_bits = 0.1;
  const SetCensus classical = infokit::enumerate_typical_set(p25, 12, eps_bits);
  const SetCensus nats =
      infokit::q_set_census(p25, 12, eps_bits * std::numbers::ln2, QParam(1.0));
  CHECK(classical.count == nats.count);
  CHECK(classical.mass == doctest::Approx(nats.mass).epsilon(1e-12));
  CHECK(classical.count == 220);
}

TEST_CASE("q-concentration estimate: determinism, closed forms, frozen variances") {
  const Distribution p25({0.25, 0.75});

  const auto a = infokit::estimate_q_concentration(p25, 100, 0.05, QParam(1.5), 3000, 7, 1);
  const auto b = infokit::estimate_q_concentration(p25, 100, 0.05, QParam(1.5), 3000, 7, 5);
  CHECK(a.mc.estimate == b.mc.estimate);
  CHECK(a.empirical_variance == b.empirical_variance);

  CHECK(a.reference ==
        doctest::Approx(infokit::tsallis_entropy(p25, QParam(1.5)).value).epsilon(1e-15));

  // Frozen per-letter variances D(xi) for the skewed coin.
  const auto r05 = infokit::estimate_q_concentration(p25, 50, 0.05, QParam(0.5), 100, 1, 1);
  CHECK(r05.dxi == doctest::Approx(0.5358983848622455).epsilon(1e-14));
  const auto r15 = infokit::estimate_q_concentration(p25, 50, 0.05, QParam(1.5), 100, 1, 1);
  CHECK(r15.dxi == doctest::Approx(0.10048094716167097).epsilon(1e-14));
  const auto r20 = infokit::estimate_q_concentration(p25, 50, 0.05, QParam(2.0), 100, 1, 1);
  CHECK(r20.dxi == doctest::Approx(0.046875).epsilon(1e-14));
  CHECK(r20.predicted_variance == doctest::Approx(0.046875 / 50.0).epsilon(1e-14));

  // The empirical variance should track the prediction loosely even at small
  // trial counts (tight 3-SE tracking is asserted by the acceptance gate).
  CHECK(a.empirical_variance > 0.0);
  CHECK(a.empirical_variance ==
        doctest::Approx(a.predicted_variance).epsilon(0.25));
}

TEST_CASE("sequences built by helper have the expected composition") {
  const Sequence s = binary_seq_with_zeros(6, 2);
  std::uint64_t zeros = 0;
  for (auto v : s.letters) zeros += v == 0 ? 1 : 0;
  CHECK(zeros == 2);
  CHECK(s.size() == 6);
}
