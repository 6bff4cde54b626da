#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "inar/combinatorics.hpp"

using namespace inar;

namespace {

// Brute-force oracle: number of ways to partition {0..n-1} into exactly k
// non-empty blocks, counted by enumerating all block assignments.
std::int64_t count_set_partitions(int n, int k) {
  std::int64_t count = 0;
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  while (true) {
    int blocks = 0;
    bool canonical = true;
    for (int i = 0; i < n && canonical; ++i) {
      if (assign[std::size_t(i)] > blocks) canonical = false;  // first use must be in order
      else if (assign[std::size_t(i)] == blocks) ++blocks;
    }
    if (canonical && blocks == k) ++count;
    int pos = n - 1;
    while (pos >= 0 && assign[std::size_t(pos)] == n - 1) assign[std::size_t(pos--)] = 0;
    if (pos < 0) break;
    ++assign[std::size_t(pos)];
  }
  return count;
}

std::vector<double> random_values(std::uint64_t seed, int n, double scale) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = dist(eng);
  return v;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("second-kind table boundary values") {
  CHECK(stirling_second(0, 0) == 1);
  for (int r = 1; r <= 20; ++r) {
    CHECK(stirling_second(r, 0) == 0);
    CHECK(stirling_second(r, 1) == 1);
    CHECK(stirling_second(r, r) == 1);
  }
  CHECK(double(stirling_second(2, 1)) == 1);
  CHECK(double(stirling_second(2, 2)) == 1);
  CHECK(double(stirling_second(3, 2)) == 3);
  CHECK(double(stirling_second(4, 2)) == 7);  // oracle below
}

TEST_CASE("second-kind matches set-partition enumeration") {
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(double(stirling_second(n, k)) == double(count_set_partitions(n, k)));
}

TEST_CASE("second-kind alternating sum agrees with recurrence up to r = 20") {
  for (int r = 0; r <= 20; ++r)
    for (int j = 0; j <= r; ++j)
      CHECK(stirling_second_by_sum(r, j) == stirling_second(r, j));
}

TEST_CASE("first-kind values and recurrence") {
  CHECK(stirling_first_signed(1, 1) == 1);
  for (int r = 1; r <= 20; ++r) CHECK(stirling_first_signed(r, 0) == 0);
  // unrolled by hand: s(2,1)=-1, s(2,2)=1, s(3,2)=s(2,1)-2 s(2,2)=-3,
  // s(3,1)=2, s(4,2)=s(3,1)-3 s(3,2)=11
  CHECK(double(stirling_first_signed(2, 1)) == -1);
  CHECK(double(stirling_first_signed(2, 2)) == 1);
  CHECK(double(stirling_first_signed(3, 2)) == -3);
  CHECK(double(stirling_first_signed(3, 1)) == 2);
  CHECK(double(stirling_first_signed(4, 2)) == 11);
  for (int r = 1; r < kMaxStirlingOrder; ++r)
    for (int j = 1; j <= r + 1; ++j) {
      const wide_int lhs = stirling_first_signed(r + 1, j);
      const wide_int rhs = stirling_first_signed(r, j - 1) -
                           wide_int(r) * ((j <= r) ? stirling_first_signed(r, j) : wide_int(0));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("the two kinds are inverse triangular systems") {
  for (int r = 0; r <= 15; ++r)
    for (int m = 0; m <= 15; ++m) {
      wide_int acc = 0;
      for (int j = 0; j <= r; ++j)
        if (j >= m) acc += stirling_first_signed(r, j) * stirling_second(j, m);
      CHECK(acc == wide_int(r == m ? 1 : 0));
    }
}

TEST_CASE("index range errors") {
  CHECK_THROWS_AS(stirling_second(-1, 0), std::domain_error);
  CHECK_THROWS_AS(stirling_second(3, 4), std::domain_error);
  CHECK_THROWS_AS(stirling_second(26, 2), std::domain_error);
  CHECK_THROWS_AS(stirling_first_signed(26, 26), std::domain_error);
  CHECK_THROWS_AS(stirling_second_by_sum(21, 3), std::domain_error);
}

TEST_CASE("cumulants from factorial cumulants") {
  SUBCASE("Poisson oracle: kappa_[1]=a, rest 0 gives kappa_r = a") {
    const double a = 1.7;
    MomentVector fc{MomentKind::factorial_cumulants, {a, 0.0, 0.0, 0.0, 0.0, 0.0}};
    const MomentVector c = cumulants_from_factorial_cumulants(fc);
    for (int r = 1; r <= 6; ++r) CHECK(c.at(r) == doctest::Approx(a).epsilon(1e-14));
  }
  SUBCASE("order 1 passes through") {
    MomentVector fc{MomentKind::factorial_cumulants, {0.37}};
    CHECK(cumulants_from_factorial_cumulants(fc).at(1) == 0.37);
  }
  SUBCASE("kappa_2 = kappa_[2] + kappa_[1]") {
    MomentVector fc{MomentKind::factorial_cumulants, {0.4, -0.3}};
    CHECK(cumulants_from_factorial_cumulants(fc).at(2) == doctest::Approx(0.1).epsilon(1e-14));
  }
}

TEST_CASE("factorial cumulants from cumulants") {
  SUBCASE("order 1 passes through") {
    MomentVector c{MomentKind::cumulants, {1.25}};
    CHECK(factorial_cumulants_from_cumulants(c).at(1) == 1.25);
  }
  SUBCASE("Poisson inverse: constant cumulants collapse to first order") {
    const double a = 0.8;
    MomentVector c{MomentKind::cumulants, std::vector<double>(6, a)};
    const MomentVector fc = factorial_cumulants_from_cumulants(c);
    CHECK(fc.at(1) == doctest::Approx(a).epsilon(1e-14));
    for (int r = 2; r <= 6; ++r) CHECK(fc.at(r) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("round trip is identity to 1e-12 for R <= 10") {
    // identity up to roundoff relative to the intermediate magnitudes, which
    // the Stirling weights amplify by up to Bell-number factors
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      MomentVector fc{MomentKind::factorial_cumulants, random_values(seed, 10, 2.0)};
      const MomentVector mid = cumulants_from_factorial_cumulants(fc);
      const MomentVector back = factorial_cumulants_from_cumulants(mid);
      for (int r = 1; r <= 10; ++r)
        CHECK(std::abs(back.at(r) - fc.at(r)) <
              1e-12 * std::max({1.0, std::abs(fc.at(r)), std::abs(mid.at(r))}));
    }
  }
}

TEST_CASE("moments and factorial moments") {
  SUBCASE("mu_[1] = m passes through") {
    MomentVector fm{MomentKind::factorial_moments, {2.5}};
    CHECK(moments_from_factorial_moments(fm).at(1) == 2.5);
  }
  SUBCASE("Bernoulli powers are idempotent") {
    const double p = 0.3;
    MomentVector fm{MomentKind::factorial_moments, {p, 0.0, 0.0, 0.0, 0.0}};
    const MomentVector m = moments_from_factorial_moments(fm);
    for (int r = 1; r <= 5; ++r) CHECK(m.at(r) == doctest::Approx(p).epsilon(1e-14));
    const MomentVector back = factorial_moments_from_moments(m);
    CHECK(back.at(1) == doctest::Approx(p).epsilon(1e-14));
    for (int r = 2; r <= 5; ++r) CHECK(back.at(r) == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("mu_[2] = mu_2 - mu_1") {
    MomentVector m{MomentKind::moments, {0.7, 1.9}};
    CHECK(factorial_moments_from_moments(m).at(2) == doctest::Approx(1.2).epsilon(1e-14));
  }
  SUBCASE("round trip identity") {
    MomentVector fm{MomentKind::factorial_moments, random_values(21, 8, 5.0)};
    const MomentVector mid = moments_from_factorial_moments(fm);
    const MomentVector back = factorial_moments_from_moments(mid);
    for (int r = 1; r <= 8; ++r)
      CHECK(std::abs(back.at(r) - fm.at(r)) <
            1e-12 * std::max({1.0, std::abs(fm.at(r)), std::abs(mid.at(r))}));
  }
}

TEST_CASE("Smith recursions between moments and cumulants") {
  SUBCASE("kappa_1 = mu_1 and kappa_2 = mu_2 - mu_1^2") {
    MomentVector m{MomentKind::moments, {0.8, 1.4}};
    const MomentVector c = cumulants_from_moments(m);
    CHECK(c.at(1) == 0.8);
    CHECK(c.at(2) == doctest::Approx(1.4 - 0.64).epsilon(1e-14));
  }
  SUBCASE("the two directions compose to identity to 1e-12 for R <= 8") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
      MomentVector m{MomentKind::moments, random_values(seed, 8, 2.0)};
      const MomentVector mid = cumulants_from_moments(m);
      const MomentVector back = moments_from_cumulants(mid);
      for (int r = 1; r <= 8; ++r)
        CHECK(std::abs(back.at(r) - m.at(r)) <
              1e-12 * std::max({1.0, std::abs(m.at(r)), std::abs(mid.at(r))}));
    }
  }
}

// All four representations must commute: converting along any path between
// two corners gives the same vector.  The fourth edge (factorial moments <->
// factorial cumulants) is the same exp/log recursion, applied test-side.
// Probed on realistic moment sequences with entries up to ~1e3 (adversarial
// random vectors at that scale amplify intermediates past double precision).
TEST_CASE("commuting square of representations") {
  const int R = 8;
  std::vector<MomentVector> inputs;
  for (std::uint64_t seed : {41u, 42u, 43u, 44u})
    inputs.emplace_back(MomentKind::moments, random_values(seed, R, 0.5));
  // moments of a Poisson(0.7) and a Binomial(4, 0.25), summed off the pmf
  for (auto make_pmf : {+[](int k) { return std::exp(-0.7) * std::pow(0.7, k) / std::tgamma(k + 1.0); },
                        +[](int k) {
                          if (k > 4) return 0.0;
                          double b = 1.0;
                          for (int i = 1; i <= k; ++i) b = b * double(4 - k + i) / double(i);
                          return b * std::pow(0.25, k) * std::pow(0.75, 4 - k);
                        }}) {
    std::vector<double> mu(std::size_t(R), 0.0);
    for (int r = 1; r <= R; ++r) {
      double acc = 0.0;
      for (int k = 0; k <= 60; ++k) acc += std::pow(double(k), r) * make_pmf(k);
      mu[std::size_t(r) - 1] = acc;
    }
    CHECK(mu.back() < 1.1e3);
    inputs.emplace_back(MomentKind::moments, std::move(mu));
  }
  for (const MomentVector& mu : inputs) {
    const MomentVector via_cumulants =
        factorial_cumulants_from_cumulants(cumulants_from_moments(mu));
    const std::vector<double> via_factorial =
        inar::detail::series_log(factorial_moments_from_moments(mu).values);
    for (int r = 1; r <= R; ++r) {
      const double a = via_cumulants.at(r);
      const double b = via_factorial[std::size_t(r) - 1];
      CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}));
    }
    // and the reverse loop back to moments
    const MomentVector back = moments_from_cumulants(cumulants_from_factorial_cumulants(via_cumulants));
    for (int r = 1; r <= R; ++r) CHECK(rel_err(back.at(r), mu.at(r)) < 1e-10);
  }
}

TEST_CASE("kind mismatches are rejected") {
  MomentVector m{MomentKind::moments, {1.0, 2.0}};
  CHECK_THROWS_AS(cumulants_from_factorial_cumulants(m), std::invalid_argument);
  CHECK_THROWS_AS(factorial_cumulants_from_cumulants(m), std::invalid_argument);
  CHECK_THROWS_AS(moments_from_factorial_moments(m), std::invalid_argument);
  MomentVector c{MomentKind::cumulants, {1.0}};
  CHECK_THROWS_AS(factorial_moments_from_moments(c), std::invalid_argument);
  CHECK_THROWS_AS(cumulants_from_moments(c), std::invalid_argument);
  CHECK_THROWS_AS(moments_from_cumulants(m), std::invalid_argument);
}

TEST_CASE("MomentVector validation") {
  CHECK_THROWS_AS(MomentVector(MomentKind::moments, {}), std::invalid_argument);
  CHECK_THROWS_AS(MomentVector(MomentKind::moments, {std::nan("")}), std::invalid_argument);
  MomentVector ok{MomentKind::moments, {1.0}};
  CHECK_THROWS_AS(ok.at(2), std::out_of_range);
}
