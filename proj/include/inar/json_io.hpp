#pragma once

// JSON encodings of the public types: InnovationSpec, the model config
// document {"innovation": ..., "alpha": ...}, moment reports and check
// reports (one JSON object per line when streamed).

#include <cstdio>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "inar/combinatorics.hpp"
#include "inar/innovations.hpp"
#include "inar/marginal.hpp"
#include "inar/validation.hpp"

namespace inar::io {

using nlohmann::json;

// 12 significant digits, '.' decimal separator regardless of locale.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline json to_json(const InnovationSpec& spec) {
  json j;
  j["family"] = family_name(spec.family);
  switch (spec.family) {
    case Family::logarithmic:
    case Family::bernoulli: j["p"] = spec.p; break;
    case Family::binomial:
      j["m"] = spec.m;
      j["p"] = spec.p;
      break;
    case Family::poissonian_binomial:
      j["m"] = spec.m;
      j["q"] = spec.q;
      j["c"] = spec.c;
      break;
    case Family::heine:
      j["lambda"] = spec.lambda;
      j["q"] = spec.q;
      break;
    case Family::poisson: j["lambda"] = spec.lambda; break;
    case Family::convolution: {
      json parts = json::array();
      for (const auto& part : spec.parts) parts.push_back(to_json(part));
      j["parts"] = std::move(parts);
      break;
    }
  }
  return j;
}

namespace detail {

inline double need_number(const json& j, const char* field, const std::string& family) {
  if (!j.contains(field))
    throw std::invalid_argument("innovation: missing field \"" + std::string(field) +
                                "\" for family \"" + family + "\"");
  if (!j[field].is_number())
    throw std::invalid_argument("innovation: field \"" + std::string(field) + "\" must be a number");
  return j[field].get<double>();
}

inline int need_int(const json& j, const char* field, const std::string& family) {
  if (!j.contains(field))
    throw std::invalid_argument("innovation: missing field \"" + std::string(field) +
                                "\" for family \"" + family + "\"");
  if (!j[field].is_number_integer())
    throw std::invalid_argument("innovation: field \"" + std::string(field) + "\" must be an integer");
  return j[field].get<int>();
}

}  // namespace detail

inline InnovationSpec innovation_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("innovation: expected a JSON object");
  if (!j.contains("family") || !j["family"].is_string())
    throw std::invalid_argument("innovation: missing string field \"family\"");
  const std::string family = j["family"].get<std::string>();
  if (family == "logarithmic") return InnovationSpec::logarithmic(detail::need_number(j, "p", family));
  if (family == "bernoulli") return InnovationSpec::bernoulli(detail::need_number(j, "p", family));
  if (family == "binomial")
    return InnovationSpec::binomial(detail::need_int(j, "m", family), detail::need_number(j, "p", family));
  if (family == "poissonian_binomial")
    return InnovationSpec::poissonian_binomial(detail::need_int(j, "m", family),
                                               detail::need_number(j, "q", family),
                                               detail::need_number(j, "c", family));
  if (family == "heine")
    return InnovationSpec::heine(detail::need_number(j, "lambda", family),
                                 detail::need_number(j, "q", family));
  if (family == "poisson") return InnovationSpec::poisson(detail::need_number(j, "lambda", family));
  if (family == "convolution") {
    if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].empty())
      throw std::invalid_argument("innovation: family \"convolution\" needs a non-empty \"parts\" array");
    std::vector<InnovationSpec> parts;
    for (const auto& pj : j["parts"]) parts.push_back(innovation_from_json(pj));
    return InnovationSpec::convolution(std::move(parts));
  }
  throw std::invalid_argument("innovation: unknown family \"" + family + "\"");
}

inline json to_json(const StationaryModel& model) {
  return json{{"innovation", to_json(model.innovation)}, {"alpha", model.alpha}};
}

inline StationaryModel model_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("model: expected a JSON object");
  if (!j.contains("innovation"))
    throw std::invalid_argument("model: missing field \"innovation\"");
  if (!j.contains("alpha") || !j["alpha"].is_number())
    throw std::invalid_argument("model: missing numeric field \"alpha\"");
  StationaryModel model{innovation_from_json(j["innovation"]), j["alpha"].get<double>()};
  model.validate();
  return model;
}

inline json to_json(const MomentReport& rep) {
  return json{{"mean", rep.mean},
              {"variance", rep.variance},
              {"dispersion_index", rep.dispersion_index},
              {"moments", rep.moments.values},
              {"factorial_moments", rep.factorial_moments.values},
              {"cumulants", rep.cumulants.values},
              {"factorial_cumulants", rep.factorial_cumulants.values}};
}

inline json to_json(const validation::CheckReport& rep) {
  json details = json::array();
  for (const auto& [point, err] : rep.details)
    details.push_back(json{{"point", point}, {"error", err}});
  return json{{"name", rep.name},
              {"max_abs_error", rep.max_abs_error},
              {"tolerance", rep.tolerance},
              {"passed", rep.passed},
              {"details", std::move(details)}};
}

}  // namespace inar::io
