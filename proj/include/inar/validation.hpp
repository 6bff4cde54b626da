#pragma once

// Brute-force oracles and identity checks certifying the closed forms:
// functional-equation residuals, fixed-depth convolution oracles, the
// combinatorial subset-sum identities and Monte Carlo agreement.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inar/combinatorics.hpp"
#include "inar/innovations.hpp"
#include "inar/marginal.hpp"
#include "inar/numeric.hpp"
#include "inar/presets.hpp"
#include "inar/process.hpp"

namespace inar::validation {

struct CheckReport {
  std::string name;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, double>> details;  // (input point, error)

  void record(std::string point, double err) {
    max_abs_error = std::max(max_abs_error, err);
    details.emplace_back(std::move(point), err);
  }
  void finish() { passed = max_abs_error <= tolerance; }
};

// max over the grid of |phi(z) - phi(1-alpha+alpha z) Psi(z)|; exact equality
// holds analytically, so the residual is pure product-truncation error.
inline CheckReport functional_equation_residual(const StationaryModel& model,
                                                const std::vector<double>& grid, double tol) {
  model.validate();
  CheckReport rep;
  rep.name = "functional-eq: " + model.describe();
  rep.tolerance = tol;
  const double inner_tol = std::min(1e-8, tol / 100.0);
  for (double z : grid) {
    if (z < 0.0 || z > 1.0) throw std::domain_error("functional_equation_residual: grid z outside [0,1]");
    const double lhs = marginal_pgf(model, z, inner_tol);
    const double rhs =
        marginal_pgf(model, 1.0 - model.alpha + model.alpha * z, inner_tol) * pgf(model.innovation, z);
    rep.record("z=" + std::to_string(z), std::abs(lhs - rhs));
  }
  rep.finish();
  return rep;
}

// Direct depth-factor convolution of thinned pmfs at a fixed, explicit depth
// (no adaptive truncation), for comparison against the closed forms.
inline DiscretePmf oracle_marginal(const StationaryModel& model, int depth, double tol) {
  model.validate();
  if (depth < 1) throw std::domain_error("oracle_marginal: depth must be >= 1");
  detail::require_tol(tol, "oracle_marginal");
  std::vector<double> probs;
  for (int i = 0; i < depth; ++i) {
    const DiscretePmf factor = thinned_pmf(model.innovation, i, model.alpha, tol);
    probs = (i == 0) ? factor.probs : convolve(probs, factor.probs);
    trim_tail(probs, tol * 1e-3);
  }
  return detail::finish_pmf(std::move(probs),
                            "oracle depth=" + std::to_string(depth) + " of " + model.describe());
}

// mu_[r] = sum_k k(k-1)...(k-r+1) p_k, straight off the pmf.
inline MomentVector factorial_moment_oracle(const DiscretePmf& pmf, int R) {
  if (R < 1) throw std::domain_error("factorial_moment_oracle: R must be >= 1");
  std::vector<double> vals(std::size_t(R), 0.0);
  for (int r = 1; r <= R; ++r) {
    KahanSum acc;
    for (int k = r; k <= pmf.max_k(); ++k) acc.add(falling_factorial(double(k), r) * pmf.at(k));
    vals[std::size_t(r) - 1] = acc.value();
  }
  return {MomentKind::factorial_moments, std::move(vals)};
}

namespace detail {

// sum over ordered k-subsets {j_1 < ... < j_k} of {0..n-1} of alpha^{sum j};
// brute-force enumeration.
inline double enumerate_subset_power_sum(int n, int k, double alpha) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
  KahanSum acc;
  while (true) {
    int e = 0;
    for (int j : idx) e += j;
    acc.add(std::pow(alpha, e));
    int pos = k - 1;
    while (pos >= 0 && idx[std::size_t(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[std::size_t(pos)];
    for (int i = pos + 1; i < k; ++i) idx[std::size_t(i)] = idx[std::size_t(i) - 1] + 1;
  }
  return acc.value();
}

}  // namespace detail

// Two combinatorial identities behind the q-series closed forms.
// (1) prod(1-a_i) expands into signed elementary
// symmetric sums, checked on random a_i.  (2) the geometric subset sum
//   sum_{j_1<...<j_k} alpha^{j_1+...+j_k}
//     = alpha^{C(k,2)} prod_{l=0..k-1} (1-alpha^{n-l})/(1-alpha^{l+1})
// checked by full enumeration for all k <= n.
inline CheckReport lemma2_identity_check(int n, double alpha) {
  if (n < 2 || n > 12) throw std::domain_error("lemma2_identity_check: n must be in [2, 12]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("lemma2_identity_check: alpha in (0,1)");
  CheckReport rep;
  rep.name = "lemma2: n=" + std::to_string(n) + ", alpha=" + std::to_string(alpha);
  rep.tolerance = 1e-12;

  // product expansion against elementary symmetric functions e_k
  RandomStream rng(0xC0FFEEu + std::uint64_t(n));
  std::vector<double> a(static_cast<std::size_t>(n));
  for (double& x : a) x = 0.05 + 0.9 * rng.uniform();
  double lhs = 1.0;
  for (double x : a) lhs *= 1.0 - x;
  std::vector<double> esym(std::size_t(n) + 1, 0.0);  // e_0..e_n by DP
  esym[0] = 1.0;
  for (double x : a)
    for (int k = n; k >= 1; --k) esym[std::size_t(k)] += x * esym[std::size_t(k) - 1];
  KahanSum rhs;
  rhs.add(1.0);
  for (int k = 1; k <= n; ++k) rhs.add(((k % 2 == 0) ? 1.0 : -1.0) * esym[std::size_t(k)]);
  rep.record("product-expansion", std::abs(lhs - rhs.value()));

  for (int k = 1; k <= n; ++k) {
    const double direct = detail::enumerate_subset_power_sum(n, k, alpha);
    double formula = std::pow(alpha, k * (k - 1) / 2);
    for (int l = 0; l <= k - 1; ++l)
      formula *= (1.0 - std::pow(alpha, n - l)) / (1.0 - std::pow(alpha, l + 1));
    rep.record("subset-sum k=" + std::to_string(k), std::abs(direct - formula));
  }
  rep.finish();
  return rep;
}

// The Poissonian Binomial triple identity: the product pgf, its finite-sum
// expansion and Kemp's pmf all describe the same distribution.
inline CheckReport poissonian_binomial_pgf_identity(int m, double q, double c) {
  if (m < 1 || m > 12) throw std::domain_error("poissonian_binomial_pgf_identity: m must be in [1, 12]");
  const InnovationSpec spec = InnovationSpec::poissonian_binomial(m, q, c);
  CheckReport rep;
  rep.name = "po-bin identity: " + spec.describe();
  rep.tolerance = 1e-12;

  for (int iz = 0; iz <= 10; ++iz) {
    const double z = double(iz) / 10.0;
    const double by_product = pgf(spec, z);
    // finite-sum expansion of the product via the subset-sum identity
    KahanSum by_sum;
    by_sum.add(1.0);
    for (int k = 1; k <= m; ++k) {
      double term = std::pow(c * (z - 1.0), k) * std::pow(q, k * (k - 1) / 2);
      for (int l = 0; l <= k - 1; ++l)
        term *= (1.0 - std::pow(q, m - l)) / (1.0 - std::pow(q, l + 1));
      by_sum.add(term);
    }
    const DiscretePmf pm = pmf(spec, 1e-12);
    const double by_pmf = pm.pgf(z);
    rep.record("pgf z=" + std::to_string(z), std::abs(by_product - by_sum.value()));
    rep.record("pmf-pgf z=" + std::to_string(z), std::abs(by_product - by_pmf));
  }

  // pmf against the explicit Bernoulli(c q^j) convolution
  std::vector<double> conv{1.0};
  double qj = 1.0;
  for (int j = 0; j < m; ++j) {
    conv = convolve(conv, {1.0 - c * qj, c * qj});
    qj *= q;
  }
  const DiscretePmf pm = pmf(spec, 1e-12);
  for (int r = 0; r <= m; ++r)
    rep.record("pmf r=" + std::to_string(r), std::abs(conv[std::size_t(r)] - pm.at(r)));
  rep.record("pmf normalization", std::abs(pm.mass() - 1.0));
  rep.finish();
  return rep;
}

namespace detail {

struct BatchStats {
  std::vector<double> means;
  std::vector<double> vars;
};

// Sample moments over batches long enough (10^4) to decouple under the
// geometric mixing of the chain; 4 x (sd across batches / sqrt(#batches))
// is the acceptance band.
inline void batch_moments(const std::vector<int>& path, BatchStats& out) {
  const std::size_t batch_len = 10000;
  const std::size_t nb = path.size() / batch_len;
  for (std::size_t b = 0; b < nb; ++b) {
    KahanSum s1, s2;
    for (std::size_t t = b * batch_len; t < (b + 1) * batch_len; ++t) {
      s1.add(double(path[t]));
      s2.add(double(path[t]) * double(path[t]));
    }
    const double mu = s1.value() / double(batch_len);
    out.means.push_back(mu);
    out.vars.push_back(s2.value() / double(batch_len) - mu * mu);
  }
}

inline double sd_of(const std::vector<double>& v) {
  KahanSum s1, s2;
  for (double x : v) {
    s1.add(x);
    s2.add(x * x);
  }
  const double mu = s1.value() / double(v.size());
  const double var = s2.value() / double(v.size()) - mu * mu;
  return std::sqrt(std::max(0.0, var));
}

inline double mean_of(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value() / double(v.size());
}

}  // namespace detail

// Pooled sample mean/variance against the analytic values (within 4 pooled
// standard errors) plus total-variation distance of the empirical law from
// the computed marginal (< 0.01).  Deterministic given the seeds.
// max_abs_error is the worst constraint ratio; the check passes at <= 1.
inline CheckReport monte_carlo_check(const StationaryModel& model, int T,
                                     const std::vector<std::uint64_t>& seeds) {
  model.validate();
  if (T < 100000) throw std::domain_error("monte_carlo_check: T must be >= 1e5");
  if (seeds.empty()) throw std::domain_error("monte_carlo_check: needs at least one seed");
  CheckReport rep;
  rep.name = "monte-carlo: " + model.describe();
  rep.tolerance = 1.0;

  detail::BatchStats stats;
  std::vector<double> hist;
  std::size_t total = 0;
  for (std::uint64_t seed : seeds) {
    RandomStream rng(seed);
    const SamplePath path = simulate(model, T, rng, InitSpec::stationary());
    detail::batch_moments(path.values, stats);
    for (int x : path.values) {
      if (std::size_t(x) >= hist.size()) hist.resize(std::size_t(x) + 1, 0.0);
      hist[std::size_t(x)] += 1.0;
    }
    total += path.values.size();
  }
  for (double& h : hist) h /= double(total);

  const MomentReport analytic = marginal_moments(model, 2);
  const double nb = double(stats.means.size());
  const double mean_hat = detail::mean_of(stats.means);
  const double mean_se = detail::sd_of(stats.means) / std::sqrt(nb);
  const double var_hat = detail::mean_of(stats.vars);
  const double var_se = detail::sd_of(stats.vars) / std::sqrt(nb);

  rep.record("mean |err|/4se", std::abs(mean_hat - analytic.mean) / (4.0 * mean_se));
  rep.record("variance |err|/4se", std::abs(var_hat - analytic.variance) / (4.0 * var_se));

  const MarginalDistribution marg = marginal_pmf(model, 1e-10);
  KahanSum tv;
  const std::size_t span = std::max(hist.size(), marg.pmf.probs.size());
  for (std::size_t k = 0; k < span; ++k) {
    const double emp = k < hist.size() ? hist[k] : 0.0;
    const double ana = k < marg.pmf.probs.size() ? marg.pmf.probs[k] : 0.0;
    tv.add(std::abs(emp - ana));
  }
  const double tv_dist = 0.5 * (tv.value() + marg.pmf.tail_bound);
  rep.record("tv/0.01", tv_dist / 0.01);

  rep.finish();
  return rep;
}

// ---- suites ---------------------------------------------------------------

inline std::vector<CheckReport> suite_functional_eq(double tol) {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(double(i) / 10.0);
  std::vector<CheckReport> out;
  for (const auto& model : presets::parameter_grid())
    out.push_back(functional_equation_residual(model, grid, tol));
  return out;
}

namespace detail {

inline CheckReport compare_pmfs(const std::string& name, const DiscretePmf& a, const DiscretePmf& b,
                                double tol) {
  CheckReport rep;
  rep.name = name;
  rep.tolerance = tol;
  const int span = std::max(a.max_k(), b.max_k());
  double worst = 0.0;
  int worst_k = 0;
  for (int k = 0; k <= span; ++k) {
    const double err = std::abs(a.at(k) - b.at(k));
    if (err > worst) {
      worst = err;
      worst_k = k;
    }
  }
  rep.record("entrywise max at k=" + std::to_string(worst_k), worst);
  rep.finish();
  return rep;
}

}  // namespace detail

// Closed-form constructions against the adaptive generic convolution, plus
// the Poisson closed form and the Poisson-convolution factorizations.
inline std::vector<CheckReport> suite_oracles(double tol) {
  std::vector<CheckReport> out;
  const double build_tol = std::min(1e-9, tol / 10.0);
  for (const auto& model : presets::parameter_grid()) {
    const MarginalDistribution closed = marginal_pmf(model, build_tol);
    if (closed.method == MarginalMethod::generic_convolution &&
        model.innovation.family == Family::convolution) {
      // factorization check: Poisson part splits off as Poisson(lambda/(1-alpha))
      std::vector<InnovationSpec> rest;
      double pois_lambda = 0.0;
      for (const auto& part : model.innovation.parts) {
        if (part.family == Family::poisson && pois_lambda == 0.0) pois_lambda = part.lambda;
        else rest.push_back(part);
      }
      if (pois_lambda > 0.0 && !rest.empty()) {
        const StationaryModel base{rest.size() == 1 ? rest.front() : InnovationSpec::convolution(rest),
                                   model.alpha};
        const MarginalDistribution base_marg = marginal_pmf(base, build_tol);
        const DiscretePmf pois =
            pmf(InnovationSpec::poisson(pois_lambda / (1.0 - model.alpha)), build_tol);
        std::vector<double> probs = convolve(pois.probs, base_marg.pmf.probs);
        const DiscretePmf factored = inar::detail::finish_pmf(std::move(probs), "factorized " + model.describe());
        out.push_back(detail::compare_pmfs("oracle factorization: " + model.describe(), closed.pmf,
                                           factored, tol));
      }
      continue;
    }
    if (model.innovation.family == Family::poisson) {
      // exact closed form: Poisson(lambda/(1-alpha))
      const DiscretePmf exact =
          pmf(InnovationSpec::poisson(model.innovation.lambda / (1.0 - model.alpha)), build_tol);
      out.push_back(
          detail::compare_pmfs("oracle poisson closed form: " + model.describe(), closed.pmf, exact, tol));
      continue;
    }
    const MarginalDistribution generic = marginal_pmf_generic(model, build_tol);
    out.push_back(
        detail::compare_pmfs("oracle vs closed form: " + model.describe(), closed.pmf, generic.pmf, tol));
  }
  return out;
}

inline std::vector<CheckReport> suite_lemma2() {
  std::vector<CheckReport> out;
  for (int n = 2; n <= 8; ++n)
    for (double alpha : presets::alpha_grid()) out.push_back(lemma2_identity_check(n, alpha));
  for (int m : {1, 3, 8})
    for (double q : presets::q_grid()) out.push_back(poissonian_binomial_pgf_identity(m, q, 0.3));
  return out;
}

inline std::vector<CheckReport> suite_monte_carlo(int T = 1000000) {
  std::vector<CheckReport> out;
  for (const auto& [name, model] : presets::named_models()) {
    CheckReport rep = monte_carlo_check(model, T, {20240801u});
    rep.name = "monte-carlo: " + name;
    out.push_back(std::move(rep));
  }
  return out;
}

inline std::vector<CheckReport> run_suite(std::string_view suite, double tol) {
  std::vector<CheckReport> out;
  const bool all = suite == "all";
  if (all || suite == "functional-eq") {
    auto r = suite_functional_eq(tol);
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "oracles") {
    auto r = suite_oracles(tol);
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "lemma2") {
    auto r = suite_lemma2();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "monte-carlo") {
    auto r = suite_monte_carlo();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (out.empty())
    throw std::domain_error("run_suite: unknown suite '" + std::string(suite) +
                            "' (expected all|functional-eq|oracles|lemma2|monte-carlo)");
  return out;
}

}  // namespace inar::validation
