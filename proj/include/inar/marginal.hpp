#pragma once

// Backward construction of the stationary INAR(1) marginal: truncated
// infinite-product pgf, convolution-limit pmf, family-specific closed forms,
// the factorial-cumulant transfer pipeline and PCPD representations.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "inar/combinatorics.hpp"
#include "inar/innovations.hpp"
#include "inar/numeric.hpp"

namespace inar {

// Innovation law plus thinning coefficient alpha in (0,1), strictly.
struct StationaryModel {
  InnovationSpec innovation;
  double alpha = 0.5;

  void validate() const {
    innovation.validate();
    if (!(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0))
      throw std::domain_error("StationaryModel: alpha must be in (0,1)");
  }

  std::string describe() const {
    return innovation.describe() + ", alpha=" + std::to_string(alpha);
  }
};

enum class MarginalMethod {
  generic_convolution,
  bernoulli_series,
  binomial_convolution,
  po_bin_convolution,
  heine_limit,
  log_mixture,
};

inline const char* marginal_method_name(MarginalMethod m) {
  switch (m) {
    case MarginalMethod::generic_convolution: return "generic_convolution";
    case MarginalMethod::bernoulli_series: return "bernoulli_series";
    case MarginalMethod::binomial_convolution: return "binomial_convolution";
    case MarginalMethod::po_bin_convolution: return "po_bin_convolution";
    case MarginalMethod::heine_limit: return "heine_limit";
    case MarginalMethod::log_mixture: return "log_mixture";
  }
  return "?";
}

struct MarginalDistribution {
  DiscretePmf pmf;
  StationaryModel model;
  int product_depth = 0;  // factors (or series cut) used to build the pmf
  MarginalMethod method = MarginalMethod::generic_convolution;
};

// Truncation depth from the tail bound h_i(z) <= Psi'(1) alpha^i of the
// uniform-convergence proof: N factors leave a log-product error below
// Psi'(1) alpha^N / (1-alpha) <= tol.
inline int product_depth_for(const StationaryModel& model, double tol) {
  model.validate();
  detail::require_tol(tol, "product_depth_for");
  const double mean = mean_var_dispersion(model.innovation).mean;
  const double x = tol * (1.0 - model.alpha) / mean;
  int n = 8;
  if (x < 1.0) n = int(std::ceil(std::log(x) / std::log(model.alpha)));
  return std::max(8, n);
}

// phi(z) = prod_{i=0..N-1} Psi(1 - alpha^i (1-z)), truncation error <= tol.
inline double marginal_pgf(const StationaryModel& model, double z, double tol) {
  model.validate();
  if (z < 0.0 || z > 1.0) throw std::domain_error("marginal_pgf: z must be in [0,1]");
  const int n = product_depth_for(model, tol);
  double prod = 1.0;
  double ai = 1.0;
  for (int i = 0; i < n; ++i) {
    prod *= pgf(model.innovation, 1.0 - ai * (1.0 - z));
    ai *= model.alpha;
  }
  return prod;
}

namespace detail {

inline DiscretePmf finish_marginal(std::vector<double> probs, const StationaryModel& model) {
  return finish_pmf(std::move(probs), "marginal of " + model.describe());
}

// p_r series of the Bernoulli-innovation marginal (weak limit of Poissonian
// Binomial(n, alpha, p)):
//   p_r = sum_{k>=r} (-1)^{k-r} C(k,r) p^k alpha^{C(k,2)} / prod_{l=1..k}(1-alpha^l)
// Terms decay like alpha^{C(k,2)}; summation stops once two consecutive term
// magnitudes fall below term_tol.
inline double bernoulli_marginal_entry(double p, double alpha, int r, double term_tol,
                                       int* terms_used = nullptr) {
  // w_r = p^r alpha^{C(r,2)} / prod_{l=1..r} (1-alpha^l)
  double w = 1.0, al = 1.0;
  for (int l = 0; l < r; ++l) {
    w *= p * al / (1.0 - al * alpha);
    al *= alpha;
  }
  // now al = alpha^r
  KahanSum acc;
  double chooser = 1.0;  // C(k,r), k starts at r
  int small_streak = 0;
  int k = r;
  for (;; ++k) {
    const double term = chooser * w;
    acc.add(((k - r) % 2 == 0) ? term : -term);
    if (std::abs(term) < term_tol) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
    if (k - r > 100000) throw std::runtime_error("bernoulli marginal series did not converge");
    w *= p * al / (1.0 - al * alpha);
    al *= alpha;
    chooser *= double(k + 1) / double(k + 1 - r);
  }
  if (terms_used) *terms_used = k - r + 1;
  return acc.value();
}

}  // namespace detail

// P(X >= r) for the Bernoulli-innovation marginal:
//   sum_{k>=r} (-1)^{k-r} C(k-1,r-1) p^k alpha^{C(k,2)} / prod_{l=1..k}(1-alpha^l)
inline double tail_bernoulli(double p, double alpha, int r, double tol) {
  if (!(p > 0.0 && p < 1.0) || !(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("tail_bernoulli: p, alpha must be in (0,1)");
  if (r < 1) throw std::domain_error("tail_bernoulli: r must be >= 1");
  detail::require_tol(tol, "tail_bernoulli");
  double w = 1.0, al = 1.0;
  for (int l = 0; l < r; ++l) {
    w *= p * al / (1.0 - al * alpha);
    al *= alpha;
  }
  KahanSum acc;
  double chooser = 1.0;  // C(k-1,r-1), k starts at r
  int small_streak = 0;
  for (int k = r;; ++k) {
    const double term = chooser * w;
    acc.add(((k - r) % 2 == 0) ? term : -term);
    if (std::abs(term) < tol) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
    if (k - r > 100000) throw std::runtime_error("bernoulli tail series did not converge");
    w *= p * al / (1.0 - al * alpha);
    al *= alpha;
    chooser *= double(k + 1 - 1) / double(k + 1 - r);
  }
  // A partial sum stopped at term < tol may undershoot 0 by up to ~2 tol.
  return clamp_probability(acc.value(), "tail_bernoulli", 2.0 * tol);
}

inline MarginalDistribution marginal_pmf_bernoulli(double p, double alpha, double tol) {
  StationaryModel model{InnovationSpec::bernoulli(p), alpha};
  model.validate();
  detail::require_tol(tol, "marginal_pmf_bernoulli");
  std::vector<double> probs;
  int max_terms = 0;
  for (int r = 0;; ++r) {
    int used = 0;
    probs.push_back(clamp_probability(detail::bernoulli_marginal_entry(p, alpha, r, tol, &used),
                                      "marginal_pmf_bernoulli", 2.0 * tol));
    max_terms = std::max(max_terms, used);
    if (r >= 1 && tail_bernoulli(p, alpha, r + 1, tol) <= tol) break;
    if (r > 100000) throw std::runtime_error("marginal_pmf_bernoulli: support did not converge");
  }
  return {detail::finish_marginal(std::move(probs), model), model, max_terms,
          MarginalMethod::bernoulli_series};
}

// m-fold self-convolution of the Bernoulli-innovation marginal.
inline MarginalDistribution marginal_pmf_binomial(int m, double p, double alpha, double tol) {
  StationaryModel model{InnovationSpec::binomial(m, p), alpha};
  model.validate();
  detail::require_tol(tol, "marginal_pmf_binomial");
  const MarginalDistribution one = marginal_pmf_bernoulli(p, alpha, tol / double(m));
  std::vector<double> probs = one.pmf.probs;
  for (int j = 1; j < m; ++j) probs = convolve(probs, one.pmf.probs);
  return {detail::finish_marginal(std::move(probs), model), model, one.product_depth,
          MarginalMethod::binomial_convolution};
}

// Convolution over j = 0..m-1 of Bernoulli-innovation marginals with
// parameter c q^j.
inline MarginalDistribution marginal_pmf_poissonian_binomial(int m, double q, double c,
                                                             double alpha, double tol) {
  StationaryModel model{InnovationSpec::poissonian_binomial(m, q, c), alpha};
  model.validate();
  detail::require_tol(tol, "marginal_pmf_poissonian_binomial");
  std::vector<double> probs;
  int depth = 0;
  double qj = 1.0;
  for (int j = 0; j < m; ++j) {
    const MarginalDistribution factor = marginal_pmf_bernoulli(c * qj, alpha, tol / double(m));
    depth = std::max(depth, factor.product_depth);
    probs = (j == 0) ? factor.pmf.probs : convolve(probs, factor.pmf.probs);
    qj *= q;
  }
  return {detail::finish_marginal(std::move(probs), model), model, depth,
          MarginalMethod::po_bin_convolution};
}

// Limit convolution over j >= 0 of Bernoulli-innovation marginals with
// parameter beta_j = lambda q^j / (1 + lambda q^j).  Truncated at J factors
// once the omitted factors' total mean sum_{j>J} beta_j/(1-alpha) < tol.
inline MarginalDistribution marginal_pmf_heine(double lambda, double q, double alpha, double tol) {
  StationaryModel model{InnovationSpec::heine(lambda, q), alpha};
  model.validate();
  detail::require_tol(tol, "marginal_pmf_heine");
  // sum_{j>J} beta_j <= lambda q^{J+1} / (1-q)
  int factors = 1;
  while (lambda * std::pow(q, factors) / ((1.0 - q) * (1.0 - alpha)) >= tol / 2.0) ++factors;
  std::vector<double> probs;
  double qj = 1.0;
  for (int j = 0; j < factors; ++j) {
    const double beta = lambda * qj / (1.0 + lambda * qj);
    const MarginalDistribution factor = marginal_pmf_bernoulli(beta, alpha, tol / (2.0 * factors));
    probs = (j == 0) ? factor.pmf.probs : convolve(probs, factor.pmf.probs);
    qj *= q;
  }
  return {detail::finish_marginal(std::move(probs), model), model, factors,
          MarginalMethod::heine_limit};
}

// Iterated convolution of the two-mixture thinned pmfs of the logarithmic
// family (point mass at 0 plus logarithmic(q_i)); the exponential-size
// mixture expansion is never formed.
inline MarginalDistribution marginal_pmf_logarithmic(double p, double alpha, double tol) {
  StationaryModel model{InnovationSpec::logarithmic(p), alpha};
  model.validate();
  detail::require_tol(tol, "marginal_pmf_logarithmic");
  const int n = product_depth_for(model, tol / 2.0);
  const double factor_tol = tol / (2.0 * n);
  std::vector<double> probs;
  for (int i = 0; i < n; ++i) {
    const DiscretePmf factor = thinned_pmf(model.innovation, i, alpha, factor_tol);
    probs = (i == 0) ? factor.probs : convolve(probs, factor.probs);
    trim_tail(probs, factor_tol);
  }
  return {detail::finish_marginal(std::move(probs), model), model, n, MarginalMethod::log_mixture};
}

// Convolution-limit construction f^(0) * f^(1) * ... * f^(N-1) of thinned
// pmfs, valid for every innovation family.
inline MarginalDistribution marginal_pmf_generic(const StationaryModel& model, double tol) {
  model.validate();
  detail::require_tol(tol, "marginal_pmf_generic");
  const int n = product_depth_for(model, tol / 2.0);
  const double factor_tol = tol / (2.0 * n);
  std::vector<double> probs;
  for (int i = 0; i < n; ++i) {
    const DiscretePmf factor = thinned_pmf(model.innovation, i, model.alpha, factor_tol);
    probs = (i == 0) ? factor.probs : convolve(probs, factor.probs);
    trim_tail(probs, factor_tol);
  }
  return {detail::finish_marginal(std::move(probs), model), model, n,
          MarginalMethod::generic_convolution};
}

// Family dispatcher: closed-form construction where one exists, generic
// convolution otherwise.
inline MarginalDistribution marginal_pmf(const StationaryModel& model, double tol) {
  model.validate();
  switch (model.innovation.family) {
    case Family::bernoulli: return marginal_pmf_bernoulli(model.innovation.p, model.alpha, tol);
    case Family::binomial:
      return marginal_pmf_binomial(model.innovation.m, model.innovation.p, model.alpha, tol);
    case Family::poissonian_binomial:
      return marginal_pmf_poissonian_binomial(model.innovation.m, model.innovation.q,
                                              model.innovation.c, model.alpha, tol);
    case Family::heine:
      return marginal_pmf_heine(model.innovation.lambda, model.innovation.q, model.alpha, tol);
    case Family::logarithmic:
      return marginal_pmf_logarithmic(model.innovation.p, model.alpha, tol);
    default:
      return marginal_pmf_generic(model, tol);
  }
}

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double dispersion_index = 0.0;
  MomentVector moments;
  MomentVector factorial_moments;
  MomentVector cumulants;
  MomentVector factorial_cumulants;
};

// Moment pipeline: innovation factorial moments -> moments -> cumulants ->
// factorial cumulants, transfer kappa_[r] /= (1-alpha^r), then back out to
// cumulants, moments and factorial moments of the marginal.
inline MomentReport marginal_moments(const StationaryModel& model, int R) {
  model.validate();
  detail::require_order(R, "marginal_moments");
  const int r_eff = std::max(R, 2);
  const MomentVector fm_f = factorial_moments(model.innovation, r_eff);
  const MomentVector mu_f = moments_from_factorial_moments(fm_f);
  const MomentVector kappa_f = cumulants_from_moments(mu_f);
  const MomentVector fc_f = factorial_cumulants_from_cumulants(kappa_f);
  std::vector<double> fc_p(fc_f.values);
  double ar = 1.0;
  for (int r = 1; r <= r_eff; ++r) {
    ar *= model.alpha;
    fc_p[std::size_t(r) - 1] /= 1.0 - ar;
  }
  const MomentVector fc_marg{MomentKind::factorial_cumulants, std::move(fc_p)};
  const MomentVector kappa_marg = cumulants_from_factorial_cumulants(fc_marg);
  const MomentVector mu_marg = moments_from_cumulants(kappa_marg);
  const MomentVector fm_marg = factorial_moments_from_moments(mu_marg);

  auto trim = [R](const MomentVector& v) {
    return MomentVector{v.kind, std::vector<double>(v.values.begin(), v.values.begin() + R)};
  };
  MomentReport rep;
  rep.mean = kappa_marg.at(1);
  rep.variance = kappa_marg.at(2);
  rep.dispersion_index = rep.variance / rep.mean;
  rep.moments = trim(mu_marg);
  rep.factorial_moments = trim(fm_marg);
  rep.cumulants = trim(kappa_marg);
  rep.factorial_cumulants = trim(fc_marg);
  return rep;
}

// Closed-form factorial moments of the marginal.
//   Bernoulli: mu_[r] = r! p^r alpha^{C(r,2)} / prod_{i=1..r}(1-alpha^i)
//   Binomial / Poissonian Binomial: forward recursion
//   mu_[r] = -m sum_{j<r} C(r-1,j) mu_[j] phi^{(r-j)}(1)
inline MomentVector closed_form_factorial_moments(const StationaryModel& model, int R) {
  model.validate();
  detail::require_order(R, "closed_form_factorial_moments");
  const InnovationSpec& in = model.innovation;
  const double alpha = model.alpha;
  std::vector<double> vals(std::size_t(R), 0.0);
  switch (in.family) {
    case Family::bernoulli: {
      double w = 1.0, ar = 1.0;  // w = r! p^r alpha^{C(r,2)} / prod(1-alpha^i)
      for (int r = 1; r <= R; ++r) {
        w *= double(r) * in.p * ar / (1.0 - ar * alpha);
        ar *= alpha;
        vals[std::size_t(r) - 1] = w;
      }
      break;
    }
    case Family::binomial:
    case Family::poissonian_binomial: {
      const bool bin = in.family == Family::binomial;
      const double mult = bin ? double(in.m) : 1.0;
      // phi^{(r)}(1): Bernoulli/Binomial use (-1)^r (r-1)! p^r/(1-alpha^r);
      // Poissonian Binomial multiplies by (1-q^{mr})/(1-q^r) with c for p.
      std::vector<double> dphi(std::size_t(R) + 1, 0.0);
      for (int r = 1; r <= R; ++r) {
        const double base = bin ? in.p : in.c;
        double v = factorial(r - 1) * std::pow(base, r) / (1.0 - std::pow(alpha, r));
        if (!bin) v *= (1.0 - std::pow(in.q, double(in.m) * r)) / (1.0 - std::pow(in.q, r));
        dphi[std::size_t(r)] = ((r % 2 == 0) ? 1.0 : -1.0) * v;
      }
      std::vector<double> mu(std::size_t(R) + 1, 0.0);
      mu[0] = 1.0;
      for (int r = 1; r <= R; ++r) {
        KahanSum acc;
        for (int j = 0; j <= r - 1; ++j) acc.add(binom(r - 1, j) * mu[std::size_t(j)] * dphi[std::size_t(r - j)]);
        mu[std::size_t(r)] = -mult * acc.value();
      }
      std::copy(mu.begin() + 1, mu.end(), vals.begin());
      break;
    }
    default:
      throw std::domain_error(
          "closed_form_factorial_moments: only bernoulli/binomial/poissonian_binomial; "
          "use marginal_moments for other families");
  }
  return {MomentKind::factorial_moments, std::move(vals)};
}

// Closed-form factorial cumulants of the marginal.
//   Bernoulli: kappa_[r] = (-1)^{r+1} (r-1)! p^r / (1-alpha^r); Binomial: x m
//   Poissonian Binomial: (-1)^{r+1} (r-1)! (1-q^{mr}) c^r / ((1-q^r)(1-alpha^r))
//   Heine: (-1)^{r+1} (r-1)! B_r / (1-alpha^r), B_r = sum_j beta_j^r
inline MomentVector closed_form_factorial_cumulants(const StationaryModel& model, int R) {
  model.validate();
  detail::require_order(R, "closed_form_factorial_cumulants");
  const InnovationSpec& in = model.innovation;
  const double alpha = model.alpha;
  std::vector<double> vals(std::size_t(R), 0.0);
  for (int r = 1; r <= R; ++r) {
    const double sign = (r % 2 == 1) ? 1.0 : -1.0;
    const double denom = 1.0 - std::pow(alpha, r);
    double v = 0.0;
    switch (in.family) {
      case Family::bernoulli:
        v = factorial(r - 1) * std::pow(in.p, r) / denom;
        break;
      case Family::binomial:
        v = double(in.m) * factorial(r - 1) * std::pow(in.p, r) / denom;
        break;
      case Family::poissonian_binomial:
        v = factorial(r - 1) * (1.0 - std::pow(in.q, double(in.m) * r)) * std::pow(in.c, r) /
            ((1.0 - std::pow(in.q, r)) * denom);
        break;
      case Family::heine: {
        // B_r truncated once beta_j^r < 1e-18 (beta_j <= lambda q^j)
        KahanSum b;
        double qj = 1.0;
        while (true) {
          const double beta = in.lambda * qj / (1.0 + in.lambda * qj);
          const double t = std::pow(beta, r);
          if (!(t > 1e-18)) break;
          b.add(t);
          qj *= in.q;
        }
        v = factorial(r - 1) * b.value() / denom;
        break;
      }
      default:
        throw std::domain_error(
            "closed_form_factorial_cumulants: only bernoulli/binomial/poissonian_binomial/heine; "
            "use marginal_moments for other families");
    }
    vals[std::size_t(r) - 1] = sign * v;
  }
  return {MomentKind::factorial_cumulants, std::move(vals)};
}

// Discrete pseudo compound Poisson representation of the Bernoulli/Binomial
// marginal (requires p < 1/2 for absolute convergence):
//   lambda = m sum_n p^n/(n(1-alpha^n))
//   a_n = (-1)^{n+1} (m/lambda) sum_{j>=n} C(j,n) p^j/(j(1-alpha^j))
struct PcpdRepresentation {
  double lambda = 0.0;
  std::vector<double> weights;  // a_n, n = 1..N_trunc
  double tail_bound = 0.0;

  double pgf(double z) const {
    KahanSum acc;
    double zn = 1.0;
    for (double a : weights) {
      zn *= z;
      acc.add(a * zn);
    }
    return std::exp(lambda * (acc.value() - 1.0));
  }
};

inline PcpdRepresentation pcpd_representation(const StationaryModel& model, double tol) {
  model.validate();
  detail::require_tol(tol, "pcpd_representation");
  const InnovationSpec& in = model.innovation;
  if (in.family != Family::bernoulli && in.family != Family::binomial)
    throw std::domain_error("pcpd_representation: innovation must be bernoulli or binomial");
  if (!(in.p < 0.5)) throw std::domain_error("pcpd_representation: requires p < 1/2");
  const double p = in.p;
  const double alpha = model.alpha;
  const double m = (in.family == Family::binomial) ? double(in.m) : 1.0;

  // phi(0) = sum_{n>=1} p^n / (n (1-alpha^n)); the weights are normalized by
  // phi(0) so that sum_n a_n = 1 and exp{lambda(A(z)-1)} = exp{-m phi(z)}.
  KahanSum phi0;
  {
    double pn = 1.0, an = 1.0;
    for (int n = 1;; ++n) {
      pn *= p;
      an *= alpha;
      const double term = pn / (double(n) * (1.0 - an));
      phi0.add(term);
      if (term < 1e-17) break;
    }
  }
  PcpdRepresentation rep;
  rep.lambda = m * phi0.value();

  const double inner_tol = tol * 1e-3;
  for (int n = 1;; ++n) {
    // |a_n| <= p^n / (n (1-p)^{n+1} (1-alpha) phi0); stop once below tol
    const double bound =
        std::pow(p, n) / (double(n) * std::pow(1.0 - p, n + 1) * (1.0 - alpha) * phi0.value());
    if (n > 1 && bound < tol) {
      rep.tail_bound = bound * (1.0 - p) / (1.0 - 2.0 * p);  // geometric ratio p/(1-p)
      break;
    }
    KahanSum inner;
    double chooser = 1.0;  // C(j,n), j starts at n
    double pj = std::pow(p, n), aj = std::pow(alpha, n);
    for (int j = n;; ++j) {
      const double term = chooser * pj / (double(j) * (1.0 - aj));
      inner.add(term);
      if (term < inner_tol && j > n + 4) break;
      if (j - n > 100000) throw std::runtime_error("pcpd_representation: weight series did not converge");
      chooser *= double(j + 1) / double(j + 1 - n);
      pj *= p;
      aj *= alpha;
    }
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    rep.weights.push_back(sign * inner.value() / phi0.value());
    if (n > 10000) throw std::runtime_error("pcpd_representation: weight list did not converge");
  }
  return rep;
}

}  // namespace inar
