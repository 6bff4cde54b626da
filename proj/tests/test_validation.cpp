#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "inar/validation.hpp"

using namespace inar;
using namespace inar::validation;

TEST_CASE("functional equation residual") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(double(i) / 10.0);
  SUBCASE("passes at 1e-8 for representative models") {
    for (const auto& model :
         {StationaryModel{InnovationSpec::logarithmic(0.5), 0.6},
          StationaryModel{InnovationSpec::heine(1.5, 0.7), 0.9},
          StationaryModel{InnovationSpec::poissonian_binomial(3, 0.4, 0.3), 0.3}}) {
      CAPTURE(model.describe());
      const CheckReport rep = functional_equation_residual(model, grid, 1e-8);
      CHECK(rep.passed);
      CHECK(rep.max_abs_error <= rep.tolerance);
    }
  }
  SUBCASE("residual vanishes at z = 1") {
    const CheckReport rep =
        functional_equation_residual({InnovationSpec::bernoulli(0.3), 0.5}, {1.0}, 1e-12);
    CHECK(rep.max_abs_error == 0.0);
  }
  SUBCASE("Poisson marginal satisfies the equation analytically") {
    // phi(z) = exp(lambda (z-1)/(1-alpha)) solves the equation exactly
    const StationaryModel model{InnovationSpec::poisson(1.0), 0.5};
    const CheckReport rep = functional_equation_residual(model, grid, 1e-10);
    CHECK(rep.passed);
    for (double z : grid) {
      const double phi = std::exp(1.0 * (z - 1.0) / 0.5);
      CHECK(marginal_pgf(model, z, 1e-12) == doctest::Approx(phi).epsilon(1e-10));
    }
  }
}

TEST_CASE("fixed-depth convolution oracle") {
  SUBCASE("depth 40 matches the Bernoulli series for r <= 15") {
    const StationaryModel model{InnovationSpec::bernoulli(0.2), 0.5};
    const DiscretePmf oracle = oracle_marginal(model, 40, 1e-12);
    const MarginalDistribution series = marginal_pmf_bernoulli(0.2, 0.5, 1e-12);
    for (int r = 0; r <= 15; ++r) CHECK(std::abs(oracle.at(r) - series.pmf.at(r)) < 1e-8);
  }
  SUBCASE("successive depths differ by less than the mean bound") {
    const StationaryModel model{InnovationSpec::heine(1.0, 0.5), 0.6};
    const double mean_f = mean_var_dispersion(model.innovation).mean;
    for (int depth : {8, 12, 16}) {
      const DiscretePmf a = oracle_marginal(model, depth, 1e-13);
      const DiscretePmf b = oracle_marginal(model, depth + 1, 1e-13);
      CHECK(std::abs(a.mean() - b.mean()) < mean_f * std::pow(model.alpha, depth));
    }
  }
  SUBCASE("Heine limit construction matches the oracle entrywise") {
    const StationaryModel model{InnovationSpec::heine(1.0, 0.5), 0.5};
    const DiscretePmf oracle = oracle_marginal(model, 45, 1e-12);
    const MarginalDistribution limit = marginal_pmf_heine(1.0, 0.5, 0.5, 1e-10);
    for (int r = 0; r <= std::max(oracle.max_k(), limit.pmf.max_k()); ++r)
      CHECK(std::abs(oracle.at(r) - limit.pmf.at(r)) < 1e-8);
  }
}

TEST_CASE("falling-factorial moment oracle") {
  SUBCASE("point mass at zero") {
    DiscretePmf point;
    point.probs = {1.0};
    point.origin = "delta_0";
    const MomentVector fm = factorial_moment_oracle(point, 4);
    for (int r = 1; r <= 4; ++r) CHECK(fm.at(r) == 0.0);
  }
  SUBCASE("Bernoulli marginal mu_[2]") {
    const MarginalDistribution marg = marginal_pmf_bernoulli(0.2, 0.5, 1e-12);
    const MomentVector fm = factorial_moment_oracle(marg.pmf, 2);
    CHECK(fm.at(2) == doctest::Approx(0.106667).epsilon(1e-5));
  }
  SUBCASE("Binomial marginal against the closed-form recursion") {
    const StationaryModel model{InnovationSpec::binomial(2, 0.3), 0.4};
    const MomentVector fm = factorial_moment_oracle(marginal_pmf(model, 1e-12).pmf, 5);
    const MomentVector closed = closed_form_factorial_moments(model, 5);
    for (int r = 1; r <= 5; ++r)
      CHECK(std::abs(fm.at(r) - closed.at(r)) < 1e-8 * std::max(1.0, std::abs(closed.at(r))));
  }
}

TEST_CASE("lemma-2 identities") {
  SUBCASE("k = 1 is the geometric sum") {
    const double alpha = 0.37;
    const int n = 7;
    double direct = 0.0;
    for (int j = 0; j < n; ++j) direct += std::pow(alpha, j);
    CHECK(direct == doctest::Approx((1.0 - std::pow(alpha, n)) / (1.0 - alpha)).epsilon(1e-14));
    CHECK(lemma2_identity_check(n, alpha).passed);
  }
  SUBCASE("k = n forces the single tuple") {
    const int n = 6;
    const double alpha = 0.5;
    const CheckReport rep = lemma2_identity_check(n, alpha);
    CHECK(rep.passed);
    // the k = n subset sum is alpha^{C(n,2)} on both sides
    double formula = std::pow(alpha, n * (n - 1) / 2);
    for (int l = 0; l <= n - 1; ++l)
      formula *= (1.0 - std::pow(alpha, n - l)) / (1.0 - std::pow(alpha, l + 1));
    CHECK(formula == doctest::Approx(std::pow(alpha, n * (n - 1) / 2)).epsilon(1e-13));
  }
  SUBCASE("n = 5, alpha = 0.5 passes at 1e-12") {
    const CheckReport rep = lemma2_identity_check(5, 0.5);
    CHECK(rep.passed);
    CHECK(rep.max_abs_error < 1e-12);
  }
  SUBCASE("n outside [2,12] rejected") {
    CHECK_THROWS_AS(lemma2_identity_check(1, 0.5), std::domain_error);
    CHECK_THROWS_AS(lemma2_identity_check(13, 0.5), std::domain_error);
  }
}

TEST_CASE("Poissonian Binomial triple identity") {
  SUBCASE("m = 1 is Bernoulli on all three routes") {
    const CheckReport rep = poissonian_binomial_pgf_identity(1, 0.5, 0.35);
    CHECK(rep.passed);
    CHECK(rep.max_abs_error < 1e-14);
  }
  SUBCASE("m = 3, q = 0.5, c = 0.4") {
    const CheckReport rep = poissonian_binomial_pgf_identity(3, 0.5, 0.4);
    CHECK(rep.passed);
    CHECK(rep.max_abs_error < 1e-12);
  }
  SUBCASE("pmf sums to 1 over 0..m") {
    const DiscretePmf pm = pmf(InnovationSpec::poissonian_binomial(5, 0.7, 0.45), 1e-10);
    CHECK(pm.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pm.max_k() == 5);
  }
}

TEST_CASE("Monte Carlo agreement") {
  const StationaryModel model{InnovationSpec::bernoulli(0.2), 0.5};
  SUBCASE("passes and is deterministic given seeds") {
    const CheckReport a = monte_carlo_check(model, 100000, {4242});
    const CheckReport b = monte_carlo_check(model, 100000, {4242});
    CHECK(a.passed);
    CHECK(a.max_abs_error == b.max_abs_error);
    REQUIRE(a.details.size() == b.details.size());
    for (std::size_t i = 0; i < a.details.size(); ++i)
      CHECK(a.details[i].second == b.details[i].second);
  }
  SUBCASE("rejects undersized runs") {
    CHECK_THROWS_AS(monte_carlo_check(model, 1000, {1}), std::domain_error);
  }
}

TEST_CASE("suite runner") {
  CHECK_THROWS_AS(run_suite("bogus", 1e-8), std::domain_error);
  const auto lemma = run_suite("lemma2", 1e-8);
  CHECK(lemma.size() > 10);
  for (const auto& rep : lemma) CHECK(rep.passed);
}
