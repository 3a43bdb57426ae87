/* Copyright 2026 The weightdist Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <type_traits>
#include <string>
#include <vector>

#include <json.hpp>

#include "weightdist/bigint.hpp"
#include "weightdist/code.hpp"
#include "weightdist/field.hpp"
#include "weightdist/spectrum.hpp"

namespace weightdist {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

namespace detail {

template <class T>
std::string render(const T& v) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return to_decimal(v);
  } else if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_convertible_v<T, std::string>) {
    return std::string(v);
  } else {
    std::ostringstream os;
    os << v;
    return os.str();
  }
}

}  // namespace detail

/// Everything a subcommand reports. Only runtime_ms varies between runs.
struct VerificationReport {
  using Json = nlohmann::ordered_json;

  CodeParams params;
  std::vector<std::uint32_t> modulus;
  std::uint32_t lambda = 0;
  std::uint32_t primitive = 0;
  std::string mode;
  std::vector<Check> checks;
  std::optional<ValueDistribution> values;
  std::optional<WeightHistogram> weights;
  Json extra = Json::object();
  std::int64_t runtime_ms = 0;

  VerificationReport(const CodeParams& p, const FieldCtx& ctx, std::string run_mode)
      : params(p), modulus(ctx.params().modulus), lambda(lambda_element(p, ctx).index),
        primitive(ctx.primitive().index), mode(std::move(run_mode)) {}

  template <class T>
  bool check(std::string name, const T& expected, const T& actual) {
    const bool pass = expected == actual;
    checks.push_back({std::move(name), detail::render(expected), detail::render(actual), pass});
    return pass;
  }

  bool check_true(std::string name, bool ok, std::string expected = "true", std::string actual = "") {
    checks.push_back({std::move(name), std::move(expected), actual.empty() ? detail::render(ok) : std::move(actual), ok});
    return ok;
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  Json params_json() const {
    Json j;
    j["p"] = params.p;
    j["m"] = params.m;
    j["k"] = params.k;
    j["t"] = params.t;
    j["d"] = params.d;
    j["s"] = params.s;
    j["m0"] = params.m0;
    j["q"] = params.q;
    j["q0"] = params.q0;
    j["q0_mod4"] = params.q0_mod4;
    j["d1"] = to_decimal(params.d1());
    j["d2"] = to_decimal(params.d2());
    j["modulus"] = modulus;
    j["primitive"] = primitive;
    j["lambda"] = lambda;
    j["lambda_is_minus_one"] = params.lambda_is_minus_one;
    return j;
  }

  Json to_json() const {
    Json j;
    j["params"] = params_json();
    j["mode"] = mode;
    Json cs = Json::array();
    for (const auto& c : checks)
      cs.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    j["checks"] = cs;
    Json vd = Json::array();
    if (values)
      for (const auto& [t, f] : values->freq) vd.push_back({{"t", std::to_string(t)}, {"freq", to_decimal(f)}});
    j["value_distribution"] = vd;
    Json wd = Json::array();
    if (weights)
      for (const auto& [w, f] : weights->freq) wd.push_back({{"w", w}, {"freq", to_decimal(f)}});
    j["weight_distribution"] = wd;
    for (const auto& [key, value] : extra.items()) j[key] = value;
    j["runtime_ms"] = runtime_ms;
    return j;
  }
};

}  // namespace weightdist
