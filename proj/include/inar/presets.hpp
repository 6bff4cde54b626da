#pragma once

// Named innovation presets (including the Poisson-convolution extensions)
// and the default parameter grid used by the validation suite.

#include <string>
#include <utility>
#include <vector>

#include "inar/innovations.hpp"
#include "inar/marginal.hpp"

namespace inar::presets {

// Poisson(lambda) * Logarithmic(p)
inline InnovationSpec pois_log(double lambda, double p) {
  return InnovationSpec::convolution(
      {InnovationSpec::poisson(lambda), InnovationSpec::logarithmic(p)});
}

// Power-Law of the first kind: Poisson(lambda) * Bernoulli(p)
inline InnovationSpec pl1(double lambda, double p) {
  return InnovationSpec::convolution({InnovationSpec::poisson(lambda), InnovationSpec::bernoulli(p)});
}

// Power-Law of order m: Poisson(lambda) * Binomial(m,p)
inline InnovationSpec plm(double lambda, int m, double p) {
  return InnovationSpec::convolution(
      {InnovationSpec::poisson(lambda), InnovationSpec::binomial(m, p)});
}

// Poisson(lambda1) * Heine(lambda, q)
inline InnovationSpec pois_heine(double lambda1, double lambda, double q) {
  return InnovationSpec::convolution(
      {InnovationSpec::poisson(lambda1), InnovationSpec::heine(lambda, q)});
}

// Desk-scale models used by the Monte Carlo checks and CLI validation.
inline std::vector<std::pair<std::string, StationaryModel>> named_models() {
  const double alpha = 0.5;
  return {
      {"bernoulli(0.2)", {InnovationSpec::bernoulli(0.2), alpha}},
      {"binomial(3,0.2)", {InnovationSpec::binomial(3, 0.2), alpha}},
      {"poissonian_binomial(3,0.5,0.4)", {InnovationSpec::poissonian_binomial(3, 0.5, 0.4), alpha}},
      {"heine(1,0.5)", {InnovationSpec::heine(1.0, 0.5), alpha}},
      {"logarithmic(0.5)", {InnovationSpec::logarithmic(0.5), alpha}},
      {"poisson(1)", {InnovationSpec::poisson(1.0), alpha}},
      {"pois_log(1,0.3)", {pois_log(1.0, 0.3), alpha}},
      {"pl1(1,0.3)", {pl1(1.0, 0.3), alpha}},
      {"plm(1,3,0.3)", {plm(1.0, 3, 0.3), alpha}},
      {"pois_heine(1,1,0.5)", {pois_heine(1.0, 1.0, 0.5), alpha}},
  };
}

inline const std::vector<double>& p_grid() {
  static const std::vector<double> g{0.15, 0.3, 0.45};
  return g;
}
inline const std::vector<double>& alpha_grid() {
  static const std::vector<double> g{0.3, 0.6, 0.9};  // 0.9 stresses truncation depth
  return g;
}
inline const std::vector<int>& m_grid() {
  static const std::vector<int> g{1, 3};
  return g;
}
inline const std::vector<double>& q_grid() {
  static const std::vector<double> g{0.4, 0.7};
  return g;
}
inline const std::vector<double>& lambda_grid() {
  static const std::vector<double> g{0.5, 1.5};
  return g;
}

// Every family crossed with its parameter grid.
inline std::vector<StationaryModel> parameter_grid() {
  std::vector<StationaryModel> grid;
  for (double alpha : alpha_grid()) {
    for (double p : p_grid()) {
      grid.push_back({InnovationSpec::logarithmic(p), alpha});
      grid.push_back({InnovationSpec::bernoulli(p), alpha});
      for (int m : m_grid()) grid.push_back({InnovationSpec::binomial(m, p), alpha});
      for (int m : m_grid())
        for (double q : q_grid())
          grid.push_back({InnovationSpec::poissonian_binomial(m, q, p), alpha});
    }
    for (double lambda : lambda_grid()) {
      grid.push_back({InnovationSpec::poisson(lambda), alpha});
      for (double q : q_grid()) grid.push_back({InnovationSpec::heine(lambda, q), alpha});
    }
    grid.push_back({pois_log(1.0, 0.3), alpha});
    grid.push_back({pl1(1.0, 0.3), alpha});
    grid.push_back({plm(1.0, 3, 0.3), alpha});
    grid.push_back({pois_heine(1.0, 1.0, 0.5), alpha});
  }
  return grid;
}

}  // namespace inar::presets
