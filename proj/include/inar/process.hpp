#pragma once

// The INAR(1) chain itself: simulation under binomial thinning, 1-step
// transition probabilities and k-step conditional distributions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "inar/innovations.hpp"
#include "inar/marginal.hpp"
#include "inar/numeric.hpp"

namespace inar {

enum class InitKind { stationary, fixed };

struct InitSpec {
  InitKind kind = InitKind::stationary;
  int x0 = 0;

  static InitSpec stationary() { return {InitKind::stationary, 0}; }
  static InitSpec fixed(int x0) {
    if (x0 < 0) throw std::domain_error("InitSpec: x0 must be >= 0");
    return {InitKind::fixed, x0};
  }
};

struct SamplePath {
  std::vector<int> values;  // X_1..X_T
  std::uint64_t seed = 0;
  StationaryModel model;
  InitSpec init;
};

struct TransitionRow {
  int from_state = 0;
  DiscretePmf probs;
};

// X_t = alpha o X_{t-1} + eps_t.  Thinning is realized as one binomial draw
// with trials X_{t-1} and success probability alpha; the distribution equals
// the Bernoulli-sum definition, and reproducibility is defined by this
// choice of draw.  Stationary starts are drawn by inverse CDF from the
// computed marginal (table tail <= 1e-12, residual mass on the top state).
inline SamplePath simulate(const StationaryModel& model, int T, RandomStream& rng,
                           InitSpec init = InitSpec::stationary()) {
  model.validate();
  if (T < 1) throw std::domain_error("simulate: T must be >= 1");
  SamplePath path;
  path.seed = rng.seed();
  path.model = model;
  path.init = init;
  path.values.reserve(std::size_t(T));

  int x = init.x0;
  if (init.kind == InitKind::stationary) {
    const MarginalDistribution marg = marginal_pmf(model, 1e-12);
    std::vector<double> cdf(marg.pmf.probs.size());
    double cum = 0.0;
    for (std::size_t k = 0; k < cdf.size(); ++k) {
      cum += marg.pmf.probs[k];
      cdf[k] = cum;
    }
    cdf.back() = 1.0;
    const double u = rng.uniform();
    x = int(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }

  const InnovationSampler eps(model.innovation);
  for (int t = 0; t < T; ++t) {
    x = detail::binomial_draw(x, model.alpha, rng) + eps(rng);
    path.values.push_back(x);
  }
  return path;
}

namespace detail {

// Generic 1-step kernel: sum_{j=0..min(l,k)} C(l,j) alpha^j (1-alpha)^{l-j} f_{k-j}.
inline double transition_prob_from_pmf(const DiscretePmf& innov, double alpha, int l, int k) {
  KahanSum acc;
  const int jmax = std::min(l, k);
  for (int j = 0; j <= jmax; ++j)
    acc.add(binom(l, j) * std::pow(alpha, j) * std::pow(1.0 - alpha, l - j) * innov.at(k - j));
  return acc.value();
}

// Bernoulli fast path: 0 above the diagonal band, p alpha^l at k = l+1,
// and alpha^{k-1} (1-alpha)^{l-k} {p C(l,k-1)(1-alpha) + (1-p) C(l,k) alpha}
// for k <= l (written without the alpha^{-1} singularity at k = 0).
inline double transition_bernoulli(double p, double alpha, int l, int k) {
  if (k > l + 1) return 0.0;
  if (k == l + 1) return p * std::pow(alpha, l);
  const double survive = binom(l, k - 1) * std::pow(alpha, k - 1) * std::pow(1.0 - alpha, l - k + 1);
  const double stay = binom(l, k) * std::pow(alpha, k) * std::pow(1.0 - alpha, l - k);
  return p * survive + (1.0 - p) * stay;
}

// Binomial fast path:
// p^k (1-p)^{m-k} (1-alpha)^l sum_j C(l,j) C(m,k-j) (alpha(1-p)/(p(1-alpha)))^j
inline double transition_binomial(int m, double p, double alpha, int l, int k) {
  const int jlo = std::max(k - m, 0);
  const int jhi = std::min(l, k);
  if (jlo > jhi) return 0.0;
  const double ratio = alpha * (1.0 - p) / (p * (1.0 - alpha));
  KahanSum acc;
  double rj = std::pow(ratio, jlo);
  for (int j = jlo; j <= jhi; ++j) {
    acc.add(binom(l, j) * binom(m, k - j) * rj);
    rj *= ratio;
  }
  return std::pow(p, k) * std::pow(1.0 - p, m - k) * std::pow(1.0 - alpha, l) * acc.value();
}

// Poissonian Binomial fast path: the Markov sum against Kemp's exact pmf,
// with the empty terms outside [max(k-m,0), min(l,k)] skipped.
inline double transition_poissonian_binomial(int m, double q, double c, double alpha, int l, int k) {
  const std::vector<double> innov = poissonian_binomial_entries(m, q, c);
  const int jlo = std::max(k - m, 0);
  const int jhi = std::min(l, k);
  KahanSum acc;
  for (int j = jlo; j <= jhi; ++j)
    acc.add(binom(l, j) * std::pow(alpha, j) * std::pow(1.0 - alpha, l - j) * innov[std::size_t(k - j)]);
  return acc.value();
}

}  // namespace detail

// Always available; the family fast paths in transition_prob must agree with
// this sum to 1e-12.
inline double transition_prob_generic(const StationaryModel& model, int l, int k) {
  model.validate();
  if (l < 0 || k < 0) throw std::domain_error("transition_prob: l, k must be >= 0");
  const DiscretePmf innov = pmf(model.innovation, 1e-14);
  return detail::transition_prob_from_pmf(innov, model.alpha, l, k);
}

// P(X_t = k | X_{t-1} = l).
inline double transition_prob(const StationaryModel& model, int l, int k) {
  model.validate();
  if (l < 0 || k < 0) throw std::domain_error("transition_prob: l, k must be >= 0");
  const InnovationSpec& in = model.innovation;
  switch (in.family) {
    case Family::bernoulli: return detail::transition_bernoulli(in.p, model.alpha, l, k);
    case Family::binomial: return detail::transition_binomial(in.m, in.p, model.alpha, l, k);
    case Family::poissonian_binomial:
      return detail::transition_poissonian_binomial(in.m, in.q, in.c, model.alpha, l, k);
    default: return transition_prob_generic(model, l, k);
  }
}

// Full row of the 1-step kernel from state l, truncated where the destination
// mass becomes negligible.
inline TransitionRow transition_row(const StationaryModel& model, int l, double tol = 1e-12) {
  model.validate();
  if (l < 0) throw std::domain_error("transition_row: l must be >= 0");
  detail::require_tol(tol, "transition_row");
  const DiscretePmf innov = pmf(model.innovation, tol / double(l + 1));
  std::vector<double> probs(std::size_t(l + innov.max_k()) + 2, 0.0);
  for (int j = 0; j <= l; ++j) {
    const double thin = binom(l, j) * std::pow(model.alpha, j) * std::pow(1.0 - model.alpha, l - j);
    for (int e = 0; e <= innov.max_k(); ++e) probs[std::size_t(j + e)] += thin * innov.at(e);
  }
  trim_tail(probs, 0.0);
  TransitionRow row;
  row.from_state = l;
  row.probs = detail::finish_pmf(std::move(probs),
                                 "transition row l=" + std::to_string(l) + " of " + model.describe());
  return row;
}

// Law of X_{t+k} given X_t = x: Binomial(x, alpha^k) convolved with the
// thinned innovation pmfs for i = 0..k-1.  Supports k <= 64; each factor is
// truncated at tol/k so the total error stays below tol.
inline DiscretePmf k_step_conditional(const StationaryModel& model, int x_t, int k, double tol) {
  model.validate();
  if (x_t < 0) throw std::domain_error("k_step_conditional: x_t must be >= 0");
  if (k < 1 || k > 64) throw std::domain_error("k_step_conditional: k must be in [1, 64]");
  detail::require_tol(tol, "k_step_conditional");
  const double factor_tol = tol / double(k);
  const double ak = std::pow(model.alpha, k);
  std::vector<double> probs(std::size_t(x_t) + 1, 0.0);
  {
    double b = std::pow(1.0 - ak, x_t);
    const double odds = ak / (1.0 - ak);
    for (int r = 0; r <= x_t; ++r) {
      probs[std::size_t(r)] = b;
      if (r < x_t) b *= odds * double(x_t - r) / double(r + 1);
    }
  }
  for (int i = 0; i < k; ++i) {
    const DiscretePmf factor = thinned_pmf(model.innovation, i, model.alpha, factor_tol);
    probs = convolve(probs, factor.probs);
    trim_tail(probs, factor_tol * 1e-3);
  }
  return detail::finish_pmf(std::move(probs), "k-step conditional k=" + std::to_string(k) +
                                                  " from x=" + std::to_string(x_t) + " of " +
                                                  model.describe());
}

}  // namespace inar
