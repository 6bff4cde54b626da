#pragma once

// Innovation families for the INAR(1) construction: logarithmic, Bernoulli,
// Binomial, Poissonian Binomial, Heine, Poisson and finite convolutions.
// Provides pmf/pgf evaluation, moments, thinned pmfs and samplers.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "inar/combinatorics.hpp"
#include "inar/numeric.hpp"

namespace inar {

enum class Family {
  logarithmic,
  bernoulli,
  binomial,
  poissonian_binomial,
  heine,
  poisson,
  convolution,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::logarithmic: return "logarithmic";
    case Family::bernoulli: return "bernoulli";
    case Family::binomial: return "binomial";
    case Family::poissonian_binomial: return "poissonian_binomial";
    case Family::heine: return "heine";
    case Family::poisson: return "poisson";
    case Family::convolution: return "convolution";
  }
  return "?";
}

// Tagged description of an innovation distribution.  Parameter slots are
// used per family: p (logarithmic/bernoulli/binomial), m,q,c (poissonian
// binomial; m also binomial), lambda,q (heine), lambda (poisson).
struct InnovationSpec {
  Family family = Family::poisson;
  double p = 0.0;
  double q = 0.0;
  double c = 0.0;
  double lambda = 0.0;
  int m = 0;
  std::vector<InnovationSpec> parts;

  static InnovationSpec logarithmic(double p) {
    InnovationSpec s;
    s.family = Family::logarithmic;
    s.p = p;
    s.validate();
    return s;
  }
  static InnovationSpec bernoulli(double p) {
    InnovationSpec s;
    s.family = Family::bernoulli;
    s.p = p;
    s.validate();
    return s;
  }
  static InnovationSpec binomial(int m, double p) {
    InnovationSpec s;
    s.family = Family::binomial;
    s.m = m;
    s.p = p;
    s.validate();
    return s;
  }
  static InnovationSpec poissonian_binomial(int m, double q, double c) {
    InnovationSpec s;
    s.family = Family::poissonian_binomial;
    s.m = m;
    s.q = q;
    s.c = c;
    s.validate();
    return s;
  }
  static InnovationSpec heine(double lambda, double q) {
    InnovationSpec s;
    s.family = Family::heine;
    s.lambda = lambda;
    s.q = q;
    s.validate();
    return s;
  }
  static InnovationSpec poisson(double lambda) {
    InnovationSpec s;
    s.family = Family::poisson;
    s.lambda = lambda;
    s.validate();
    return s;
  }
  static InnovationSpec convolution(std::vector<InnovationSpec> parts) {
    InnovationSpec s;
    s.family = Family::convolution;
    s.parts = std::move(parts);
    s.validate();
    return s;
  }

  void validate() const {
    auto in_unit = [](double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; };
    switch (family) {
      case Family::logarithmic:
      case Family::bernoulli:
        if (!in_unit(p)) throw std::domain_error(std::string(family_name(family)) + ": p must be in (0,1)");
        break;
      case Family::binomial:
        if (m < 1) throw std::domain_error("binomial: m must be >= 1");
        if (!in_unit(p)) throw std::domain_error("binomial: p must be in (0,1)");
        break;
      case Family::poissonian_binomial:
        if (m < 1) throw std::domain_error("poissonian_binomial: m must be >= 1");
        if (!in_unit(q)) throw std::domain_error("poissonian_binomial: q must be in (0,1)");
        if (!in_unit(c)) throw std::domain_error("poissonian_binomial: c must be in (0,1)");
        break;
      case Family::heine:
        if (!(std::isfinite(lambda) && lambda > 0.0)) throw std::domain_error("heine: lambda must be > 0");
        if (!in_unit(q)) throw std::domain_error("heine: q must be in (0,1)");
        break;
      case Family::poisson:
        if (!(std::isfinite(lambda) && lambda > 0.0)) throw std::domain_error("poisson: lambda must be > 0");
        break;
      case Family::convolution:
        if (parts.empty()) throw std::domain_error("convolution: needs at least one part");
        for (const auto& part : parts) {
          part.validate();
        }
        break;
    }
  }

  std::string describe() const {
    switch (family) {
      case Family::logarithmic: return "logarithmic(p=" + std::to_string(p) + ")";
      case Family::bernoulli: return "bernoulli(p=" + std::to_string(p) + ")";
      case Family::binomial: return "binomial(m=" + std::to_string(m) + ",p=" + std::to_string(p) + ")";
      case Family::poissonian_binomial:
        return "poissonian_binomial(m=" + std::to_string(m) + ",q=" + std::to_string(q) +
               ",c=" + std::to_string(c) + ")";
      case Family::heine: return "heine(lambda=" + std::to_string(lambda) + ",q=" + std::to_string(q) + ")";
      case Family::poisson: return "poisson(lambda=" + std::to_string(lambda) + ")";
      case Family::convolution: {
        std::string s = "convolution(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) s += " * ";
          s += parts[i].describe();
        }
        return s + ")";
      }
    }
    return "?";
  }
};

// Finite pmf over {0,...,K} plus an upper bound on the mass beyond K.
struct DiscretePmf {
  std::vector<double> probs;
  double tail_bound = 0.0;
  std::string origin;

  int max_k() const { return int(probs.size()) - 1; }

  double at(int k) const {
    if (k < 0) return 0.0;
    return (std::size_t(k) < probs.size()) ? probs[std::size_t(k)] : 0.0;
  }

  double mass() const {
    KahanSum s;
    for (double x : probs) s.add(x);
    return s.value();
  }

  double mean() const {
    KahanSum s;
    for (std::size_t k = 1; k < probs.size(); ++k) s.add(double(k) * probs[k]);
    return s.value();
  }

  double variance() const {
    const double mu = mean();
    KahanSum s;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      const double d = double(k) - mu;
      s.add(d * d * probs[k]);
    }
    return s.value();
  }

  // sum_k p_k z^k over the truncated support
  double pgf(double z) const {
    double acc = 0.0;
    for (std::size_t k = probs.size(); k-- > 0;) acc = acc * z + probs[k];
    return acc;
  }

  void validate() const {
    for (double x : probs)
      if (!(x >= 0.0 && x <= 1.0)) throw std::runtime_error("DiscretePmf: entry outside [0,1] (" + origin + ")");
    if (tail_bound < 0.0) throw std::runtime_error("DiscretePmf: negative tail bound");
    const double total = mass() + tail_bound;
    if (std::abs(total - 1.0) > 1e-9)
      throw std::runtime_error("DiscretePmf: mass + tail = " + std::to_string(total) + " (" + origin + ")");
  }
};

namespace detail {

inline void require_tol(double tol, const char* op) {
  if (!(tol > 0.0 && tol <= 1e-6))
    throw std::domain_error(std::string(op) + ": tol must be in (0, 1e-6]");
}

// Finalizes a truncated pmf: the stored tail is the actual missing mass
// (bounded by the analytic tail used to pick the cut).
inline DiscretePmf finish_pmf(std::vector<double> probs, std::string origin) {
  DiscretePmf pmf;
  pmf.probs = std::move(probs);
  pmf.origin = std::move(origin);
  for (double& x : pmf.probs) x = clamp_probability(x, pmf.origin.c_str());
  pmf.tail_bound = std::max(0.0, 1.0 - pmf.mass());
  return pmf;
}

// Grows a pmf whose entries satisfy f_{k+1} = f_k * ratio_exact(k) with
// sup_{k' >= k} f_{k'+1}/f_{k'} <= ratio_sup(k).  Stops at the smallest K
// whose geometric tail bound is <= tol; with weight_order w > 0 the
// falling-factorial-weighted tail sum_{k>K} k^w f_k must also be <= tol.
template <typename RatioExact, typename RatioSup>
void grow_pmf(std::vector<double>& probs, RatioExact ratio_exact, RatioSup ratio_sup,
              double tol, int weight_order, const char* what) {
  constexpr int kCap = 200000;
  int k = int(probs.size()) - 1;
  double f = probs.back();
  while (true) {
    const double s = ratio_sup(k);
    if (f == 0.0) return;
    if (s < 1.0) {
      const double tail = f * s / (1.0 - s);
      bool ok = tail <= tol;
      if (ok && weight_order > 0) {
        const double sw = s * std::exp(double(weight_order) / double(k + 1));
        ok = sw < 1.0 && f * std::pow(double(k + 1), weight_order) * sw / (1.0 - sw) <= tol;
      }
      if (ok) return;
    }
    if (k >= kCap) throw std::runtime_error(std::string(what) + ": pmf truncation did not converge");
    f *= ratio_exact(k);
    probs.push_back(f);
    ++k;
  }
}

inline std::vector<double> logarithmic_entries(double p, double tol, int weight_order) {
  std::vector<double> probs{0.0, p / (-std::log1p(-p))};
  // f_{r+1}/f_r = p r/(r+1) <= p
  grow_pmf(
      probs, [p](int k) { return p * double(k) / double(k + 1); }, [p](int) { return p; }, tol,
      weight_order, "logarithmic pmf");
  return probs;
}

inline std::vector<double> heine_entries(double lambda, double q, double tol, int weight_order) {
  // f_0 = prod_{j>=0} (1 + lambda q^j)^{-1}, the pgf at z = 0
  KahanSum log_f0;
  double qj = 1.0;
  while (lambda * qj > 1e-20) {
    log_f0.add(std::log1p(lambda * qj));
    qj *= q;
  }
  std::vector<double> probs{std::exp(-log_f0.value())};
  // f_{k+1}/f_k = lambda q^k / (1 - q^{k+1}) <= lambda q^k / (1 - q)
  grow_pmf(
      probs,
      [lambda, q](int k) { return lambda * std::pow(q, k) / (1.0 - std::pow(q, k + 1)); },
      [lambda, q](int k) { return lambda * std::pow(q, k) / (1.0 - q); }, tol, weight_order,
      "heine pmf");
  return probs;
}

inline std::vector<double> poisson_entries(double lambda, double tol, int weight_order) {
  std::vector<double> probs{std::exp(-lambda)};
  grow_pmf(
      probs, [lambda](int k) { return lambda / double(k + 1); },
      [lambda](int k) { return lambda / double(k + 1); }, tol, weight_order, "poisson pmf");
  return probs;
}

inline std::vector<double> binomial_entries(int m, double p) {
  std::vector<double> probs(std::size_t(m) + 1, 0.0);
  double f = std::pow(1.0 - p, m);
  const double odds = p / (1.0 - p);
  for (int k = 0; k <= m; ++k) {
    probs[std::size_t(k)] = f;
    if (k < m) f *= odds * double(m - k) / double(k + 1);
  }
  return probs;
}

// Kemp's closed form for the Poissonian Binomial(m,q,c) pmf:
// q_r = sum_{k=r..m} (-1)^{k-r} C(k,r) c^k q^{C(k,2)}
//       prod_{l=0..k-1} (1-q^{m-l})/(1-q^{l+1}),  r = 0..m.
inline std::vector<double> poissonian_binomial_entries(int m, double q, double c) {
  std::vector<double> w(std::size_t(m) + 1, 0.0);
  w[0] = 1.0;
  double qk = 1.0;  // q^k
  for (int k = 0; k < m; ++k) {
    // w_{k+1}/w_k = c q^k (1-q^{m-k})/(1-q^{k+1})
    w[std::size_t(k) + 1] =
        w[std::size_t(k)] * c * qk * (1.0 - std::pow(q, m - k)) / (1.0 - std::pow(q, k + 1));
    qk *= q;
  }
  std::vector<double> probs(std::size_t(m) + 1, 0.0);
  for (int r = 0; r <= m; ++r) {
    KahanSum acc;
    double chooser = 1.0;  // C(k,r) starting at k = r
    for (int k = r; k <= m; ++k) {
      const double term = chooser * w[std::size_t(k)];
      acc.add(((k - r) % 2 == 0) ? term : -term);
      chooser *= double(k + 1) / double(k + 1 - r);
    }
    probs[std::size_t(r)] = acc.value();
  }
  return probs;
}

inline std::vector<double> pmf_entries(const InnovationSpec& spec, double tol, int weight_order);

inline std::vector<double> convolution_entries(const InnovationSpec& spec, double tol, int weight_order) {
  const double part_tol = tol / double(spec.parts.size());
  std::vector<double> probs = pmf_entries(spec.parts.front(), part_tol, weight_order);
  for (std::size_t i = 1; i < spec.parts.size(); ++i)
    probs = convolve(probs, pmf_entries(spec.parts[i], part_tol, weight_order));
  return probs;
}

inline std::vector<double> pmf_entries(const InnovationSpec& spec, double tol, int weight_order) {
  switch (spec.family) {
    case Family::logarithmic: return logarithmic_entries(spec.p, tol, weight_order);
    case Family::bernoulli: return {1.0 - spec.p, spec.p};
    case Family::binomial: return binomial_entries(spec.m, spec.p);
    case Family::poissonian_binomial: return poissonian_binomial_entries(spec.m, spec.q, spec.c);
    case Family::heine: return heine_entries(spec.lambda, spec.q, tol, weight_order);
    case Family::poisson: return poisson_entries(spec.lambda, tol, weight_order);
    case Family::convolution: return convolution_entries(spec, tol, weight_order);
  }
  throw std::logic_error("pmf_entries: unknown family");
}

}  // namespace detail

// Innovation pmf truncated at the smallest K whose analytic tail bound is
// <= tol.  The stored tail_bound is the actual missing mass.
inline DiscretePmf pmf(const InnovationSpec& spec, double tol) {
  spec.validate();
  detail::require_tol(tol, "pmf");
  return detail::finish_pmf(detail::pmf_entries(spec, tol, 0), spec.describe());
}

// Psi(z) on [0,1], in closed form per family.
inline double pgf(const InnovationSpec& spec, double z) {
  spec.validate();
  if (z < 0.0 || z > 1.0) {
    if (z > -1e-12 && z < 0.0) z = 0.0;
    else if (z < 1.0 + 1e-12 && z > 1.0) z = 1.0;
    else throw std::domain_error("pgf: z must be in [0,1]");
  }
  switch (spec.family) {
    case Family::logarithmic: return std::log1p(-spec.p * z) / std::log1p(-spec.p);
    case Family::bernoulli: return 1.0 - spec.p * (1.0 - z);
    case Family::binomial: return std::pow(1.0 - spec.p * (1.0 - z), spec.m);
    case Family::poissonian_binomial: {
      double prod = 1.0, qj = 1.0;
      for (int j = 0; j < spec.m; ++j) {
        prod *= 1.0 - spec.c * qj * (1.0 - z);
        qj *= spec.q;
      }
      return prod;
    }
    case Family::heine: {
      // prod_j (1 - beta_j (1-z)); the log-product tail beyond J is below
      // sum_{j>J} beta_j <= lambda q^{J+1}/(1-q).
      KahanSum log_prod;
      double qj = 1.0;
      while (spec.lambda * qj / (1.0 - spec.q) > 1e-17) {
        const double beta = spec.lambda * qj / (1.0 + spec.lambda * qj);
        log_prod.add(std::log1p(-beta * (1.0 - z)));
        qj *= spec.q;
      }
      return std::exp(log_prod.value());
    }
    case Family::poisson: return std::exp(spec.lambda * (z - 1.0));
    case Family::convolution: {
      double prod = 1.0;
      for (const auto& part : spec.parts) prod *= pgf(part, z);
      return prod;
    }
  }
  throw std::logic_error("pgf: unknown family");
}

struct MeanVarDispersion {
  double mean = 0.0;
  double variance = 0.0;
  double dispersion_index = 0.0;
};

// Closed-form mean/variance per family; dispersion_index = variance/mean.
inline MeanVarDispersion mean_var_dispersion(const InnovationSpec& spec) {
  spec.validate();
  MeanVarDispersion out;
  switch (spec.family) {
    case Family::logarithmic: {
      const double lp = std::log1p(-spec.p);  // ln(1-p) < 0
      const double pb = 1.0 - spec.p;
      out.mean = -spec.p / (pb * lp);
      out.variance = -spec.p * (spec.p + lp) / ((pb * lp) * (pb * lp));
      break;
    }
    case Family::bernoulli:
      out.mean = spec.p;
      out.variance = spec.p * (1.0 - spec.p);
      break;
    case Family::binomial:
      out.mean = spec.m * spec.p;
      out.variance = spec.m * spec.p * (1.0 - spec.p);
      break;
    case Family::poissonian_binomial: {
      const double q = spec.q, c = spec.c;
      out.mean = (1.0 - std::pow(q, spec.m)) * c / (1.0 - q);
      out.variance = out.mean - (1.0 - std::pow(q, 2 * spec.m)) * c * c / (1.0 - q * q);
      break;
    }
    case Family::heine: {
      // mu = sum beta_j, sigma^2 = sum beta_j (1 - beta_j); tails <= 1e-14
      KahanSum mu, var;
      double qj = 1.0;
      while (spec.lambda * qj / (1.0 - spec.q) > 1e-15) {
        const double beta = spec.lambda * qj / (1.0 + spec.lambda * qj);
        mu.add(beta);
        var.add(beta * (1.0 - beta));
        qj *= spec.q;
      }
      out.mean = mu.value();
      out.variance = var.value();
      break;
    }
    case Family::poisson:
      out.mean = spec.lambda;
      out.variance = spec.lambda;
      break;
    case Family::convolution: {
      KahanSum mu, var;
      for (const auto& part : spec.parts) {
        const auto d = mean_var_dispersion(part);
        mu.add(d.mean);
        var.add(d.variance);
      }
      out.mean = mu.value();
      out.variance = var.value();
      break;
    }
  }
  out.dispersion_index = out.variance / out.mean;
  return out;
}

// mu_[r] = E[X(X-1)...(X-r+1)] for r = 1..R.  Logarithmic has a closed form;
// the other families are summed from a pmf truncated so the weighted tail is
// negligible.
inline MomentVector factorial_moments(const InnovationSpec& spec, int R) {
  spec.validate();
  if (R < 1) throw std::domain_error("factorial_moments: R must be >= 1");
  std::vector<double> vals(std::size_t(R), 0.0);
  if (spec.family == Family::logarithmic) {
    // mu_[r] = -p^r (r-1)! / ((1-p)^r ln(1-p))
    const double lp = std::log1p(-spec.p);
    double ratio = spec.p / (1.0 - spec.p);
    double term = -ratio / lp;  // r = 1
    for (int r = 1; r <= R; ++r) {
      vals[std::size_t(r) - 1] = term;
      term *= ratio * double(r);
    }
    return {MomentKind::factorial_moments, std::move(vals)};
  }
  const std::vector<double> probs = detail::pmf_entries(spec, 1e-13, R);
  for (int r = 1; r <= R; ++r) {
    KahanSum acc;
    for (std::size_t k = std::size_t(r); k < probs.size(); ++k)
      acc.add(falling_factorial(double(k), r) * probs[k]);
    vals[std::size_t(r) - 1] = acc.value();
  }
  return {MomentKind::factorial_moments, std::move(vals)};
}

// pmf of Psi(1 - alpha^i + alpha^i z): the innovation thinned i times.
// Generic route: f_r^{(i)} = sum_n Binomial(n, alpha^i)(r) f_n.  For the
// logarithmic family the two-mixture closed form is used instead:
// f_0^{(i)} = b_i and f_r^{(i)} = -q_i^r / (r ln(1-p)) with
// q_i = p alpha^i / (1 - p(1-alpha^i)).
inline DiscretePmf thinned_pmf(const InnovationSpec& spec, int i, double alpha, double tol) {
  spec.validate();
  detail::require_tol(tol, "thinned_pmf");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("thinned_pmf: alpha must be in (0,1)");
  if (i < 0) throw std::domain_error("thinned_pmf: i must be >= 0");
  const std::string origin = spec.describe() + " thinned i=" + std::to_string(i);
  if (i == 0) {
    DiscretePmf base = pmf(spec, tol);
    base.origin = origin;
    return base;
  }
  if (spec.family == Family::logarithmic) {
    const double p = spec.p;
    const double ai = std::pow(alpha, i);
    const double qi = p * ai / (1.0 - p * (1.0 - ai));
    const double lp = std::log1p(-p);
    std::vector<double> probs{std::log1p(-p * (1.0 - ai)) / lp, -qi / lp};
    detail::grow_pmf(
        probs, [qi](int k) { return qi * double(k) / double(k + 1); }, [qi](int) { return qi; },
        tol, 0, "thinned logarithmic pmf");
    return detail::finish_pmf(std::move(probs), origin);
  }
  const std::vector<double> base = detail::pmf_entries(spec, tol, 0);
  const double beta = std::pow(alpha, i);
  std::vector<double> probs(base.size(), 0.0);
  probs[0] += base[0];
  for (std::size_t n = 1; n < base.size(); ++n) {
    if (base[n] == 0.0) continue;
    // Binomial(n, beta) row by multiplicative recurrence
    double b = std::pow(1.0 - beta, double(n));
    const double odds = beta / (1.0 - beta);
    for (std::size_t r = 0; r <= n; ++r) {
      probs[r] += base[n] * b;
      if (r < n) b *= odds * double(n - r) / double(r + 1);
    }
  }
  trim_tail(probs, 0.0);
  return detail::finish_pmf(std::move(probs), origin);
}

// Deterministic seedable random stream (64-bit Mersenne twister mapped to
// [0,1) doubles).  Each stream is owned by exactly one consumer at a time.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

namespace detail {

// Single binomial draw by CDF inversion; expected cost O(np + 1).
inline int binomial_draw(int n, double prob, RandomStream& rng) {
  if (n <= 0) return 0;
  double f = std::pow(1.0 - prob, double(n));
  if (f < 1e-300) {
    // Deep regime that inversion from 0 cannot reach; fall back to the
    // definition as a sum of Bernoulli trials.
    int s = 0;
    for (int t = 0; t < n; ++t) s += rng.uniform() < prob ? 1 : 0;
    return s;
  }
  const double odds = prob / (1.0 - prob);
  double u = rng.uniform();
  int k = 0;
  double cum = f;
  while (u > cum && k < n) {
    f *= odds * double(n - k) / double(k + 1);
    ++k;
    cum += f;
  }
  return k;
}

inline int poisson_draw(double lambda, RandomStream& rng) {
  double f = std::exp(-lambda);
  double u = rng.uniform();
  double cum = f;
  int k = 0;
  while (u > cum && k < 100000) {
    ++k;
    f *= lambda / double(k);
    cum += f;
  }
  return k;
}

}  // namespace detail

// Draws from an innovation distribution.  Table-based families cache an
// inverse-CDF table at construction (tail <= 1e-12 folded into the top
// bucket); the object is immutable afterwards and safe to share.
class InnovationSampler {
 public:
  explicit InnovationSampler(const InnovationSpec& spec) : spec_(spec) {
    spec_.validate();
    switch (spec_.family) {
      case Family::logarithmic:
      case Family::heine: {
        const DiscretePmf table = pmf(spec_, 1e-12);
        cdf_.reserve(table.probs.size());
        double cum = 0.0;
        for (double x : table.probs) {
          cum += x;
          cdf_.push_back(cum);
        }
        cdf_.back() = 1.0;
        break;
      }
      case Family::convolution:
        for (const auto& part : spec_.parts) parts_.emplace_back(part);
        break;
      default:
        break;
    }
  }

  int operator()(RandomStream& rng) const {
    switch (spec_.family) {
      case Family::bernoulli:
        return rng.uniform() < spec_.p ? 1 : 0;
      case Family::binomial:
        return detail::binomial_draw(spec_.m, spec_.p, rng);
      case Family::poisson:
        return detail::poisson_draw(spec_.lambda, rng);
      case Family::poissonian_binomial: {
        // sum of m independent Bernoulli(c q^j)
        int s = 0;
        double qj = 1.0;
        for (int j = 0; j < spec_.m; ++j) {
          if (rng.uniform() < spec_.c * qj) ++s;
          qj *= spec_.q;
        }
        return s;
      }
      case Family::logarithmic:
      case Family::heine: {
        const double u = rng.uniform();
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return int(it - cdf_.begin());
      }
      case Family::convolution: {
        int s = 0;
        for (const auto& part : parts_) s += part(rng);
        return s;
      }
    }
    throw std::logic_error("InnovationSampler: unknown family");
  }

 private:
  InnovationSpec spec_;
  std::vector<double> cdf_;
  std::vector<InnovationSampler> parts_;
};

// One draw from the family.  Builds a sampler per call; for bulk use
// construct an InnovationSampler once.
inline int sample(const InnovationSpec& spec, RandomStream& rng) {
  return InnovationSampler(spec)(rng);
}

}  // namespace inar
