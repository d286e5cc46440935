#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "infokit/distribution.hpp"
#include "infokit/entropy.hpp"
#include "infokit/sequence.hpp"
#include "testutil.hpp"

using infokit::Distribution;
using infokit::QParam;
using infokit::Sequence;
using infokit::Units;

TEST_CASE("binary entropy: exact points and the [0,1] range") {
  CHECK(infokit::binary_entropy(0.5) == 1.0);
  CHECK(infokit::binary_entropy(0.0) == 0.0);
  CHECK(infokit::binary_entropy(1.0) == 0.0);
  CHECK(infokit::binary_entropy(0.25) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-15));
  CHECK(infokit::binary_entropy(0.11) ==
        doctest::Approx(0.499915958164528).epsilon(1e-15));
  CHECK_THROWS_AS(infokit::binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(infokit::binary_entropy(1.1), std::domain_error);

  for (int i = 0; i <= 1000; ++i) {
    const double p = static_cast<double>(i) / 1000.0;
    const double h = infokit::binary_entropy(p);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
    // Symmetry around 1/2.
    CHECK(h == doctest::Approx(infokit::binary_entropy(1.0 - p)).epsilon(1e-14));
  }
}

TEST_CASE("shannon entropy: frozen values and unit conversion") {
  const Distribution fair({0.5, 0.5});
  CHECK(infokit::shannon_entropy(fair, Units::Bits).value == 1.0);
  CHECK(infokit::shannon_entropy(fair, Units::Nats).value ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-15));

  const Distribution p11({0.11, 0.89});
  CHECK(infokit::shannon_entropy(p11, Units::Bits).value ==
        doctest::Approx(0.499915958164528).epsilon(1e-15));
  CHECK(infokit::shannon_entropy(p11, Units::Nats).value ==
        doctest::Approx(0.34651533691866615).epsilon(1e-15));

  const Distribution u6 = Distribution::uniform(6);
  CHECK(infokit::shannon_entropy(u6).value ==
        doctest::Approx(std::log2(6.0)).epsilon(1e-14));

  // Shannon entropy has no Tsallis-unit reading.
  CHECK_THROWS_AS(infokit::shannon_entropy(fair, Units::TsallisK), std::invalid_argument);

  // Bits and nats always differ by exactly the same conversion factor.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Distribution d = testutil::random_distribution(seed, 2 + seed % 7);
    const double bits = infokit::shannon_entropy(d, Units::Bits).value;
    const double nats = infokit::shannon_entropy(d, Units::Nats).value;
    CHECK(nats == doctest::Approx(bits * std::numbers::ln2).epsilon(1e-12));
  }
}

TEST_CASE("shannon entropy invariants: range, maximality, symmetry") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::uint32_t w = 2 + seed % 7;
    const Distribution d = testutil::random_distribution(seed, w);
    const double h = infokit::shannon_entropy(d).value;
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(w)) + 1e-12);

    // Permuting letters leaves H unchanged.
    std::vector<double> shuffled = d.probs();
    std::mt19937_64 gen(seed + 1000);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const double hs = infokit::shannon_entropy(Distribution(shuffled)).value;
    CHECK(hs == doctest::Approx(h).epsilon(1e-12));
  }
}

TEST_CASE("tsallis entropy: frozen values") {
  const Distribution p25({0.25, 0.75});
  CHECK(infokit::tsallis_entropy(p25, QParam(0.5)).value ==
        doctest::Approx(0.7320508075688772).epsilon(1e-15));
  CHECK(infokit::tsallis_entropy(p25, QParam(1.5)).value ==
        doctest::Approx(0.4509618943233421).epsilon(1e-15));
  CHECK(infokit::tsallis_entropy(p25, QParam(2.0)).value ==
        doctest::Approx(0.375).epsilon(1e-15));

  // Uniform two-letter case at q = 2: 1 - (1/4 + 1/4) = 1/2, exactly.
  CHECK(infokit::tsallis_entropy(Distribution::uniform(2), QParam(2.0)).value == 0.5);

  // k scales linearly.
  CHECK(infokit::tsallis_entropy(p25, QParam(2.0, 3.0)).value ==
        doctest::Approx(3.0 * 0.375).epsilon(1e-15));

  CHECK_THROWS_AS(QParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(QParam(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(QParam(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("tsallis entropy recovers Shannon nats as q -> 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Distribution d = testutil::random_distribution(seed, 2 + seed % 7);
    const double h_nats = infokit::shannon_entropy(d, Units::Nats).value;
    CHECK(infokit::tsallis_entropy(d, QParam(1.0)).value ==
          doctest::Approx(h_nats).epsilon(1e-14));
    CHECK(std::fabs(infokit::tsallis_entropy(d, QParam(1.0 + 1e-6)).value - h_nats) <=
          1e-5);
    CHECK(std::fabs(infokit::tsallis_entropy(d, QParam(1.0 - 1e-6)).value - h_nats) <=
          1e-5);
  }
}

TEST_CASE("q-surprisal: frozen values, limits, and monotonicity") {
  // (1 - p^(q-1)) / (q - 1) at p = 1/2, q = 2: 1 - 1/2 = 1/2, exactly.
  CHECK(infokit::q_surprisal(0.5, QParam(2.0)) == 0.5);
  // p = 1/4, q = 1/2: (1 - 1/sqrt(1/4)) / (-1/2) = 2, exactly.
  CHECK(infokit::q_surprisal(0.25, QParam(0.5)) == 2.0);
  CHECK(infokit::q_surprisal(0.75, QParam(0.5)) ==
        doctest::Approx(0.3094010767585029).epsilon(1e-15));
  CHECK(infokit::q_surprisal(0.75, QParam(1.5)) ==
        doctest::Approx(0.2679491924311228).epsilon(1e-15));

  // q = 1 falls back to the ordinary surprisal -k ln p.
  CHECK(infokit::q_surprisal(0.25, QParam(1.0)) ==
        doctest::Approx(-std::log(0.25)).epsilon(1e-15));
  CHECK(infokit::q_surprisal(0.3, QParam(1.0, 2.0)) ==
        doctest::Approx(-2.0 * std::log(0.3)).epsilon(1e-15));

  // A certain letter carries zero surprisal at every q.
  for (double q : {0.5, 1.0, 2.0, 3.0}) CHECK(infokit::q_surprisal(1.0, QParam(q)) == 0.0);

  // Strictly decreasing in p for each q.
  for (double q : {0.5, 1.0, 1.5, 2.0}) {
    double prev = infokit::q_surprisal(0.05, QParam(q));
    for (int i = 2; i <= 20; ++i) {
      const double p = 0.05 * i;
      const double cur = infokit::q_surprisal(std::min(p, 1.0), QParam(q));
      CHECK(cur < prev);
      prev = cur;
    }
  }

  CHECK_THROWS_AS(infokit::q_surprisal(0.0, QParam(2.0)), std::domain_error);
  CHECK_THROWS_AS(infokit::q_surprisal(-0.5, QParam(2.0)), std::domain_error);
  CHECK_THROWS_AS(infokit::q_surprisal(1.5, QParam(2.0)), std::domain_error);
}

TEST_CASE("expectation of the q-surprisal equals the Tsallis entropy") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Distribution d = testutil::random_distribution(seed, 2 + seed % 7);
    for (double q : {0.5, 1.5, 2.0, 3.0}) {
      const QParam qp(q);
      double expectation = 0.0;
      for (std::uint32_t a = 0; a < d.alphabet_size(); ++a) {
        expectation += d.prob(a) * infokit::q_surprisal(d.prob(a), qp);
      }
      CHECK(expectation ==
            doctest::Approx(infokit::tsallis_entropy(d, qp).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("tsallis pseudoadditivity over independent products") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Distribution a = testutil::random_distribution(seed, 2 + seed % 4);
    const Distribution b = testutil::random_distribution(seed + 500, 2 + (seed + 1) % 4);
    const Distribution ab = infokit::product_distribution(a, b);
    for (double q : {0.5, 1.5, 2.0}) {
      for (double k : {1.0, 2.0}) {
        const QParam qp(q, k);
        const double sa = infokit::tsallis_entropy(a, qp).value;
        const double sb = infokit::tsallis_entropy(b, qp).value;
        const double sab = infokit::tsallis_entropy(ab, qp).value;
        CHECK(sab ==
              doctest::Approx(sa + sb + (1.0 - q) / k * sa * sb).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("log factorials: two-term Stirling vs direct summation") {
  CHECK(infokit::stirling_log_factorial(0) == 0.0);
  CHECK(infokit::stirling_log_factorial(1) == 0.0);
  CHECK(infokit::exact_log_factorial(0) == 0.0);
  CHECK(infokit::exact_log_factorial(1) == 0.0);

  CHECK(infokit::stirling_log_factorial(10) ==
        doctest::Approx(13.02585092994046).epsilon(1e-14));
  CHECK(infokit::exact_log_factorial(10) ==
        doctest::Approx(15.104412573075516).epsilon(1e-14));

  const double rel10 = (infokit::exact_log_factorial(10) -
                        infokit::stirling_log_factorial(10)) /
                       infokit::exact_log_factorial(10);
  CHECK(rel10 == doctest::Approx(0.13761287524946259).epsilon(1e-12));

  // The relative error of the two-term estimate shrinks as n grows.
  double prev = rel10;
  for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
    const double rel = (infokit::exact_log_factorial(n) -
                        infokit::stirling_log_factorial(n)) /
                       infokit::exact_log_factorial(n);
    CHECK(rel > 0.0);
    CHECK(rel < prev);
    prev = rel;
  }
}

TEST_CASE("first-order typical-count estimate vs the exact central coefficient") {
  const Distribution fair({0.5, 0.5});
  CHECK(infokit::typical_count_estimate(10, fair) == doctest::Approx(10.0).epsilon(1e-15));

  CHECK(infokit::exact_log_multinomial(10, {5, 5}) ==
        doctest::Approx(7.977279923499917).epsilon(1e-13));
  CHECK_THROWS_AS(infokit::exact_log_multinomial(10, {5, 4}), std::invalid_argument);

  // Frozen per-letter gaps (n H - log2 C(n, n/2)) / n for the fair coin.
  const auto gap = [&fair](std::uint64_t n) {
    return (infokit::typical_count_estimate(n, fair) -
            infokit::exact_log_multinomial(n, {n / 2, n / 2})) /
           static_cast<double>(n);
  };
  CHECK(gap(10) == doctest::Approx(0.20227200765000833).epsilon(1e-12));
  CHECK(gap(100) == doctest::Approx(0.03651282837120661).epsilon(1e-12));
  CHECK(gap(1000) == doctest::Approx(0.005309000880767257).epsilon(1e-11));
}

TEST_CASE("sequence log probability: exact dyadic case and support handling") {
  const Distribution p25({0.25, 0.75});
  const auto lp = infokit::sequence_log_probability(p25, Sequence({0, 1, 1, 1}));
  CHECK(lp.in_support);
  CHECK(lp.log2_value == doctest::Approx(-3.2451124978365313).epsilon(1e-15));

  const auto empty =
      infokit::sequence_log_probability(p25, Sequence(std::vector<std::uint32_t>{}));
  CHECK(empty.in_support);
  CHECK(empty.log2_value == 0.0);

  const Distribution with_zero({0.0, 1.0});
  const auto out = infokit::sequence_log_probability(with_zero, Sequence({0, 1}));
  CHECK_FALSE(out.in_support);
  CHECK(out.log2_value == -std::numeric_limits<double>::infinity());

  CHECK_THROWS_AS(infokit::sequence_log_probability(p25, Sequence({2})),
                  std::invalid_argument);
}
