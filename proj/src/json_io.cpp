#include "patricia_lab/json_io.hpp"

#include <initializer_list>
#include <string>

#include <nlohmann/json.hpp>

#include "patricia_lab/error.hpp"

namespace patricia_lab {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) fail(ErrorCode::parse, std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(ErrorCode::parse, std::string(what) + ": unknown key \"" + key + "\"");
  }
}

double number(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    fail(ErrorCode::parse, std::string(what) + ": \"" + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

std::uint64_t unsigned_number(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    fail(ErrorCode::parse, std::string(what) + ": \"" + key + "\" must be a nonnegative integer");
  }
  return j.at(key).get<std::uint64_t>();
}

// Library validation errors surface as parse errors at this boundary.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument) fail(ErrorCode::parse, e.what());
    throw;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, e.what());
  }
}

}  // namespace

AlphaSpec alpha_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
      fail(ErrorCode::parse, "alpha: needs a \"family\" string");
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "power") {
      only_keys(j, {"family", "eps"}, "alpha");
      return AlphaSpec::power(number(j, "eps", "alpha"));
    }
    if (family == "log_power") {
      only_keys(j, {"family", "c"}, "alpha");
      return AlphaSpec::log_power(number(j, "c", "alpha"));
    }
    if (family == "exp2_power") {
      only_keys(j, {"family", "eps"}, "alpha");
      return AlphaSpec::exp2_power(number(j, "eps", "alpha"));
    }
    if (family == "table") {
      only_keys(j, {"family", "values", "continuation"}, "alpha");
      if (!j.contains("values") || !j.at("values").is_array()) fail(ErrorCode::parse, "alpha: table needs \"values\"");
      std::vector<double> values;
      for (const auto& v : j.at("values")) {
        if (!v.is_number()) fail(ErrorCode::parse, "alpha: table values must be numbers");
        values.push_back(v.get<double>());
      }
      std::optional<AlphaSpec> continuation;
      if (j.contains("continuation")) continuation = alpha_from_json(j.at("continuation"));
      return AlphaSpec::table(std::move(values), continuation);
    }
    fail(ErrorCode::parse, "alpha: unknown family \"" + family + "\"");
  });
}

DistributionSpec distribution_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_object() || !j.contains("law") || !j.at("law").is_string()) {
      fail(ErrorCode::parse, "distribution: needs a \"law\" string");
    }
    const std::string law = j.at("law").get<std::string>();
    if (law == "bernoulli") {
      only_keys(j, {"law", "p"}, "distribution");
      return DistributionSpec::bernoulli(number(j, "p", "distribution"));
    }
    if (law == "mu_n") {
      only_keys(j, {"law", "N"}, "distribution");
      return DistributionSpec::mu_n(unsigned_number(j, "N", "distribution"));
    }
    if (law == "mixture" || law == "nu") {
      only_keys(j, {"law", "alpha", "a_cap"}, "distribution");
      if (!j.contains("alpha")) fail(ErrorCode::parse, "distribution: \"" + law + "\" needs \"alpha\"");
      const AlphaSpec alpha = alpha_from_json(j.at("alpha"));
      const std::uint64_t cap = j.contains("a_cap") ? unsigned_number(j, "a_cap", "distribution") : kDefaultACap;
      return law == "mixture" ? DistributionSpec::mixture(alpha, cap) : DistributionSpec::nu(alpha, cap);
    }
    fail(ErrorCode::parse, "distribution: unknown law \"" + law + "\"");
  });
}

DistributionSpec distribution_from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("distribution: invalid JSON: ") + e.what());
  }
  return distribution_from_json(j);
}

json to_json(const AlphaSpec& alpha) {
  switch (alpha.family()) {
    case AlphaSpec::Family::power:
      return {{"family", "power"}, {"eps", alpha.parameter()}};
    case AlphaSpec::Family::log_power:
      return {{"family", "log_power"}, {"c", alpha.parameter()}};
    case AlphaSpec::Family::exp2_power:
      return {{"family", "exp2_power"}, {"eps", alpha.parameter()}};
    case AlphaSpec::Family::table:
      return {{"family", "table"}, {"values", alpha.table_values()}, {"continuation", to_json(*alpha.nested())}};
    case AlphaSpec::Family::log2_of:
      // Only produced internally by the nu transform.
      return {{"family", "log2_of"}, {"inner", to_json(*alpha.nested())}};
  }
  return nullptr;
}

json to_json(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BernoulliLaw>) {
          return {{"law", "bernoulli"}, {"p", p.p}};
        } else if constexpr (std::is_same_v<T, MuNLaw>) {
          return {{"law", "mu_n"}, {"N", p.n}};
        } else if constexpr (std::is_same_v<T, MixtureLaw>) {
          return {{"law", "mixture"}, {"alpha", to_json(p.alpha)}, {"a_cap", p.a_cap}};
        } else {
          return {{"law", "nu"}, {"alpha", to_json(p.alpha)}, {"a_cap", p.mixture.a_cap}};
        }
      },
      spec.params());
}

}  // namespace patricia_lab
