#pragma once

// Stirling numbers of both kinds (exact integer tables) and the conversions
// between moments, factorial moments, cumulants and factorial cumulants.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "inar/numeric.hpp"

namespace inar {

// Wide enough for |s(25,j)| <= 24! ~ 6.2e23 and the alternating-sum
// intermediates at r <= 20.
using wide_int = __int128;

inline constexpr int kMaxStirlingOrder = 25;

enum class StirlingKind { first_signed, second };

// Triangular table of exact Stirling numbers, rows r = 0..kMaxStirlingOrder.
struct StirlingTable {
  StirlingKind kind;
  std::vector<std::vector<wide_int>> values;  // values[r][j], 0 <= j <= r

  wide_int at(int r, int j) const {
    if (r < 0 || j < 0 || j > r || r > kMaxStirlingOrder)
      throw std::domain_error("StirlingTable: index out of range (r=" + std::to_string(r) +
                              ", j=" + std::to_string(j) + ")");
    return values[std::size_t(r)][std::size_t(j)];
  }

  static const StirlingTable& second();
  static const StirlingTable& first_signed();
};

inline const StirlingTable& StirlingTable::second() {
  static const StirlingTable table = [] {
    StirlingTable t{StirlingKind::second, {}};
    t.values.resize(kMaxStirlingOrder + 1);
    for (int r = 0; r <= kMaxStirlingOrder; ++r) t.values[std::size_t(r)].assign(std::size_t(r) + 1, 0);
    t.values[0][0] = 1;  // S(0,0)=1, S(0,k)=S(r,0)=0 otherwise
    for (int r = 1; r <= kMaxStirlingOrder; ++r) {
      for (int j = 1; j <= r; ++j) {
        const wide_int above = (j <= r - 1) ? t.values[std::size_t(r - 1)][std::size_t(j)] : wide_int(0);
        t.values[std::size_t(r)][std::size_t(j)] = wide_int(j) * above + t.values[std::size_t(r - 1)][std::size_t(j - 1)];
      }
    }
    return t;
  }();
  return table;
}

inline const StirlingTable& StirlingTable::first_signed() {
  static const StirlingTable table = [] {
    StirlingTable t{StirlingKind::first_signed, {}};
    t.values.resize(kMaxStirlingOrder + 1);
    for (int r = 0; r <= kMaxStirlingOrder; ++r) t.values[std::size_t(r)].assign(std::size_t(r) + 1, 0);
    t.values[0][0] = 1;
    // s(r+1,j) = s(r,j-1) - r*s(r,j), with s(r,0)=0 for r>=1 and s(1,1)=1.
    for (int r = 0; r < kMaxStirlingOrder; ++r) {
      for (int j = 1; j <= r + 1; ++j) {
        const wide_int same = (j <= r) ? t.values[std::size_t(r)][std::size_t(j)] : wide_int(0);
        t.values[std::size_t(r + 1)][std::size_t(j)] = t.values[std::size_t(r)][std::size_t(j - 1)] - wide_int(r) * same;
      }
    }
    return t;
  }();
  return table;
}

inline wide_int stirling_second(int r, int j) { return StirlingTable::second().at(r, j); }
inline wide_int stirling_first_signed(int r, int j) { return StirlingTable::first_signed().at(r, j); }

namespace detail {

inline wide_int binom_wide(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  wide_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * wide_int(n - k + i) / wide_int(i);
  return r;
}

inline wide_int ipow_wide(int base, int exp) {
  wide_int r = 1;
  for (int i = 0; i < exp; ++i) r *= wide_int(base);
  return r;
}

inline wide_int factorial_wide(int n) {
  wide_int r = 1;
  for (int i = 2; i <= n; ++i) r *= wide_int(i);
  return r;
}

}  // namespace detail

// S(r,j) = (1/j!) sum_{k=0..j} (-1)^{j-k} C(j,k) k^r, evaluated exactly.
// Intermediates overflow 128 bits beyond r = 20.
inline wide_int stirling_second_by_sum(int r, int j) {
  if (r < 0 || j < 0 || j > r || r > 20)
    throw std::domain_error("stirling_second_by_sum: requires 0 <= j <= r <= 20");
  wide_int sum = 0;
  for (int k = 0; k <= j; ++k) {
    const wide_int term = detail::binom_wide(j, k) * detail::ipow_wide(k, r);
    sum += ((j - k) % 2 == 0) ? term : -term;
  }
  return sum / detail::factorial_wide(j);
}

enum class MomentKind { moments, factorial_moments, cumulants, factorial_cumulants };

inline const char* moment_kind_name(MomentKind k) {
  switch (k) {
    case MomentKind::moments: return "moments";
    case MomentKind::factorial_moments: return "factorial_moments";
    case MomentKind::cumulants: return "cumulants";
    case MomentKind::factorial_cumulants: return "factorial_cumulants";
  }
  return "?";
}

// Dense vector of order-r values, r = 1..R.  Order-0 terms (mu_0 = 1,
// kappa_0 = 0) are implicit in the conversion formulas.
struct MomentVector {
  MomentKind kind = MomentKind::moments;
  std::vector<double> values;

  MomentVector() = default;
  MomentVector(MomentKind k, std::vector<double> vals) : kind(k), values(std::move(vals)) {
    if (values.empty()) throw std::invalid_argument("MomentVector: order must be >= 1");
    for (double x : values)
      if (!std::isfinite(x)) throw std::invalid_argument("MomentVector: entries must be finite");
  }

  int order() const { return int(values.size()); }
  double at(int r) const {
    if (r < 1 || r > order()) throw std::out_of_range("MomentVector: order " + std::to_string(r));
    return values[std::size_t(r) - 1];
  }
};

namespace detail {

inline void require_kind(const MomentVector& v, MomentKind want, const char* op) {
  if (v.kind != want)
    throw std::invalid_argument(std::string(op) + ": expected kind " + moment_kind_name(want) +
                                ", got " + moment_kind_name(v.kind));
}

inline void require_order(int R, const char* op) {
  if (R < 1 || R > kMaxStirlingOrder)
    throw std::domain_error(std::string(op) + ": order must be in [1, " +
                            std::to_string(kMaxStirlingOrder) + "]");
}

// b_r of log A(t) from a_r of A(t), both as coefficients of t^r/r! with
// a_0 = 1 implicit:  b_r = a_r - sum_{i=1}^{r-1} C(r-1,i) b_{r-i} a_i.
// This is the Smith (1995) recursion; it is the generic exp/log relation, so
// it applies verbatim to the factorial variants as well.
inline std::vector<double> series_log(const std::vector<double>& a) {
  const int R = int(a.size());
  std::vector<double> b(std::size_t(R), 0.0);
  for (int r = 1; r <= R; ++r) {
    KahanSum acc;
    acc.add(a[std::size_t(r) - 1]);
    for (int i = 1; i <= r - 1; ++i)
      acc.add(-binom(r - 1, i) * b[std::size_t(r - i) - 1] * a[std::size_t(i) - 1]);
    b[std::size_t(r) - 1] = acc.value();
  }
  return b;
}

// Inverse of series_log:  a_r = sum_{j=0}^{r-1} C(r-1,j) b_{r-j} a_j, a_0 = 1.
inline std::vector<double> series_exp(const std::vector<double>& b) {
  const int R = int(b.size());
  std::vector<double> a(std::size_t(R), 0.0);
  for (int r = 1; r <= R; ++r) {
    KahanSum acc;
    for (int j = 0; j <= r - 1; ++j) {
      const double aj = (j == 0) ? 1.0 : a[std::size_t(j) - 1];
      acc.add(binom(r - 1, j) * b[std::size_t(r - j) - 1] * aj);
    }
    a[std::size_t(r) - 1] = acc.value();
  }
  return a;
}

// Triangular sum with second-kind Stirling weights: out_r = sum_j S(r,j) in_j.
inline std::vector<double> second_kind_mix(const std::vector<double>& in) {
  const int R = int(in.size());
  std::vector<double> out(std::size_t(R), 0.0);
  for (int r = 1; r <= R; ++r) {
    KahanSum acc;
    for (int j = 1; j <= r; ++j)
      acc.add(double(stirling_second(r, j)) * in[std::size_t(j) - 1]);
    out[std::size_t(r) - 1] = acc.value();
  }
  return out;
}

// Triangular sum with signed first-kind weights: out_r = sum_j s(r,j) in_j.
// The j = 0 term always vanishes (s(r,0) = 0 for r >= 1).
inline std::vector<double> first_kind_mix(const std::vector<double>& in) {
  const int R = int(in.size());
  std::vector<double> out(std::size_t(R), 0.0);
  for (int r = 1; r <= R; ++r) {
    KahanSum acc;
    for (int j = 1; j <= r; ++j)
      acc.add(double(stirling_first_signed(r, j)) * in[std::size_t(j) - 1]);
    out[std::size_t(r) - 1] = acc.value();
  }
  return out;
}

}  // namespace detail

// kappa_r = sum_{j=1..r} S(r,j) kappa_[j]
inline MomentVector cumulants_from_factorial_cumulants(const MomentVector& fc) {
  detail::require_kind(fc, MomentKind::factorial_cumulants, "cumulants_from_factorial_cumulants");
  detail::require_order(fc.order(), "cumulants_from_factorial_cumulants");
  return {MomentKind::cumulants, detail::second_kind_mix(fc.values)};
}

// kappa_[r] = sum_{j=0..r} s(r,j) kappa_j, with kappa_0 = 0
inline MomentVector factorial_cumulants_from_cumulants(const MomentVector& c) {
  detail::require_kind(c, MomentKind::cumulants, "factorial_cumulants_from_cumulants");
  detail::require_order(c.order(), "factorial_cumulants_from_cumulants");
  return {MomentKind::factorial_cumulants, detail::first_kind_mix(c.values)};
}

// mu_r = sum_{j=1..r} S(r,j) mu_[j]
inline MomentVector moments_from_factorial_moments(const MomentVector& fm) {
  detail::require_kind(fm, MomentKind::factorial_moments, "moments_from_factorial_moments");
  detail::require_order(fm.order(), "moments_from_factorial_moments");
  return {MomentKind::moments, detail::second_kind_mix(fm.values)};
}

// mu_[r] = sum_{j=0..r} s(r,j) mu_j, with mu_0 = 1 (whose weight s(r,0) is 0)
inline MomentVector factorial_moments_from_moments(const MomentVector& m) {
  detail::require_kind(m, MomentKind::moments, "factorial_moments_from_moments");
  detail::require_order(m.order(), "factorial_moments_from_moments");
  return {MomentKind::factorial_moments, detail::first_kind_mix(m.values)};
}

// kappa_r = mu_r - sum_{i=1}^{r-1} C(r-1,i) kappa_{r-i} mu_i
inline MomentVector cumulants_from_moments(const MomentVector& m) {
  detail::require_kind(m, MomentKind::moments, "cumulants_from_moments");
  return {MomentKind::cumulants, detail::series_log(m.values)};
}

// mu_r = sum_{j=0}^{r-1} C(r-1,j) kappa_{r-j} mu_j, mu_0 = 1
inline MomentVector moments_from_cumulants(const MomentVector& c) {
  detail::require_kind(c, MomentKind::cumulants, "moments_from_cumulants");
  return {MomentKind::moments, detail::series_exp(c.values)};
}

}  // namespace inar
