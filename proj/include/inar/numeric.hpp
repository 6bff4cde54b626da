#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace inar {

// Compensated summation; used wherever alternating series are accumulated.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Binomial coefficient in double precision, exact to ~1 ulp for the small
// arguments used here.  Returns 0 outside the triangle.
inline double binom(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

// x(x-1)...(x-r+1); equals 0 for integer x in [0, r).
inline double falling_factorial(double x, int r) {
  double v = 1.0;
  for (int i = 0; i < r; ++i) v *= (x - double(i));
  return v;
}

inline double factorial(int n) {
  double v = 1.0;
  for (int i = 2; i <= n; ++i) v *= double(i);
  return v;
}

inline std::vector<double> convolve(const std::vector<double>& a,
                                    const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("convolve: empty operand");
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Drops the largest trailing block whose total mass is <= tol; returns the
// removed mass.  Always keeps at least one entry.
inline double trim_tail(std::vector<double>& v, double tol) {
  double removed = 0.0;
  while (v.size() > 1 && removed + v.back() <= tol) {
    removed += v.back();
    v.pop_back();
  }
  return removed;
}

// Probabilities produced by alternating series carry round-off; tiny negative
// values are clamped, anything worse is a genuine computation failure.  A
// series terminated once its terms fall below some threshold may undershoot
// zero by that threshold, so such callers widen the guard accordingly.
inline double clamp_probability(double x, const char* what, double guard = 1e-12) {
  guard = std::max(guard, 1e-12);
  if (x < 0.0) {
    if (x < -guard) throw std::runtime_error(std::string(what) + ": negative probability " + std::to_string(x));
    return 0.0;
  }
  if (x > 1.0) {
    if (x > 1.0 + guard) throw std::runtime_error(std::string(what) + ": probability exceeds 1");
    return 1.0;
  }
  return x;
}

}  // namespace inar
