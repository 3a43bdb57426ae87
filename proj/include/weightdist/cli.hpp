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

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weightdist/charsum.hpp"
#include "weightdist/code.hpp"
#include "weightdist/counting.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"
#include "weightdist/parallel.hpp"
#include "weightdist/quadform.hpp"
#include "weightdist/report.hpp"
#include "weightdist/spectrum.hpp"

namespace weightdist::cli {

enum ExitCode : int { kPass = 0, kFalsified = 1, kInvalidParameters = 2, kInternal = 3 };

struct RunConfig {
  std::string subcommand;
  std::uint32_t p = 0, m = 0, k = 0, t = 0;
  std::string mode = "moments";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::optional<unsigned> workers;
  std::string out;
  bool oracle = false;
  int which = 1;
  std::uint64_t a = 0, b = 0, c = 0;
};

namespace detail {

inline std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline nlohmann::ordered_json poly_json(const SubfieldPolynomial& h) {
  auto j = nlohmann::ordered_json::array();
  for (auto c : h.coeffs) j.push_back(c.index);
  return j;
}

inline void compare_values(VerificationReport& rep, const std::string& label, const ValueDistribution& expected,
                           const ValueDistribution& actual) {
  std::map<std::int64_t, bool> keys;
  for (const auto& [t, f] : expected.freq) keys[t] = true;
  for (const auto& [t, f] : actual.freq) keys[t] = true;
  for (const auto& [t, unused] : keys)
    rep.check(label + " frequency of T = " + std::to_string(t), expected.at(t), actual.at(t));
}

inline void compare_weights(VerificationReport& rep, const std::string& label, const WeightHistogram& expected,
                            const WeightHistogram& actual) {
  std::map<std::uint64_t, bool> keys;
  for (const auto& [w, f] : expected.freq) keys[w] = true;
  for (const auto& [w, f] : actual.freq) keys[w] = true;
  auto at = [](const WeightHistogram& h, std::uint64_t w) {
    auto it = h.freq.find(w);
    return it == h.freq.end() ? BigInt(0) : it->second;
  };
  for (const auto& [w, unused] : keys)
    rep.check(label + " frequency of weight " + std::to_string(w), at(expected, w), at(actual, w));
}

inline void check_moments(VerificationReport& rep, const std::string& label, const std::array<BigInt, 4>& actual,
                          const CodeParams& p) {
  const auto closed = moment_closed_forms(p);
  for (std::size_t j = 0; j < 4; ++j)
    rep.check(label + " sum of T^" + std::to_string(j + 1), closed[j], actual[j]);
}

inline void common_structure(VerificationReport& rep, const CodeParams& p, const FieldCtx& ctx,
                             const ValueDistribution& table1, const WeightHistogram& table2) {
  const ParityCheck h = parity_check_polynomial(p, ctx);
  rep.check("degree of h0", std::size_t{p.m0}, h.h0.degree());
  rep.check("degree of h1", std::size_t{p.m0}, h.h1.degree());
  rep.check("degree of h2", std::size_t{p.m0}, h.h2.degree());
  rep.check("dimension (degree of h0*h1*h2)", std::size_t{3} * p.m0, h.product.degree());
  rep.check("Table 1 total", big_pow(p.q, 3), table1.total());
  rep.check("Table 2 total", big_pow(p.q, 3), table2.total());
  rep.check_true("Table 1 mapped through the weight formula equals Table 2",
                 weights_from_distribution(p, table1) == table2);
  const std::uint64_t dmin = (p.pt - 1) * (checked_pow(p.p, p.m - p.t) - checked_pow(p.p, (p.m + 3 * p.d - 2 * p.t) / 2));
  rep.check("minimum distance", dmin, table2.min_nonzero());
}

inline std::array<BigInt, 4> compute_moments(const CodeParams& p, const FieldCtx& ctx, unsigned workers,
                                             std::string& route) {
  std::array<BigInt, 4> m;
  if (ctx.q() <= kMaxHistogramField) {
    route = "histogram";
    const CountingTables tables = build_counting_tables(p, ctx, workers);
    for (std::uint32_t j = 1; j <= 4; ++j) m[j - 1] = moment(tables, j);
  } else {
    route = "homogeneous";
    HomogeneousMoments hm(p, ctx, workers);
    for (std::uint32_t j = 1; j <= 4; ++j) m[j - 1] = hm.moment(j);
  }
  return m;
}

inline void verify(const RunConfig& cfg, const CodeParams& p, const FieldCtx& ctx, VerificationReport& rep) {
  const unsigned workers = resolve_workers(cfg.workers);
  const ValueDistribution table1 = table1_closed_form(p);
  const WeightHistogram table2 = table2_closed_form(p);
  common_structure(rep, p, ctx, table1, table2);

  if (cfg.mode == "full") {
    const ClassCounts classes = enumerate_classes(p, ctx, workers);
    nlohmann::ordered_json cj = nlohmann::ordered_json::array();
    for (const auto& [cls, n] : classes)
      cj.push_back({{"rank", cls.first}, {"disc_class", cls.second}, {"count", std::to_string(n)}});
    rep.extra["rank_classes"] = cj;
    const ValueDistribution dist = distribution_from_classes(p, classes);
    rep.check("enumerated total", big_pow(p.q, 3), dist.total());
    compare_values(rep, "enumeration vs Table 1:", table1, dist);
    const WeightHistogram weights = weights_from_distribution(p, dist);
    compare_weights(rep, "enumeration vs Table 2:", table2, weights);
    std::array<BigInt, 4> sums;
    for (std::uint32_t j = 1; j <= 4; ++j) sums[j - 1] = dist.power_sum(j);
    check_moments(rep, "enumerated", sums, p);
    if (cfg.oracle) {
      const OracleAgreement agree = oracle_agreement(p, ctx, workers);
      rep.check("oracle triples compared", static_cast<std::uint64_t>(p.q * p.q * p.q), agree.compared);
      rep.check("oracle vs classifier mismatches", std::uint64_t{0}, agree.mismatches);
    }
    rep.values = dist;
    rep.weights = weights;
  } else if (cfg.mode == "moments") {
    std::string route;
    const auto sums = compute_moments(p, ctx, workers, route);
    rep.extra["moment_route"] = route;
    auto mj = nlohmann::ordered_json::array();
    for (const auto& s : sums) mj.push_back(to_decimal(s));
    rep.extra["moments"] = mj;
    check_moments(rep, "counted", sums, p);
    const ValueDistribution dist = moment_solve_distribution(p, sums);
    compare_values(rep, "moment solution vs Table 1:", table1, dist);
    const WeightHistogram weights = weights_from_distribution(p, dist);
    compare_weights(rep, "moment solution vs Table 2:", table2, weights);
    rep.values = dist;
    rep.weights = weights;
  } else if (cfg.mode == "sample") {
    const SampleReport s = sample_check(p, ctx, cfg.samples, cfg.seed, workers);
    rep.check("T(0,0,0)", 2 * static_cast<std::int64_t>(p.q), s.zero_triple_value);
    nlohmann::ordered_json buckets = nlohmann::ordered_json::array();
    for (const auto& b : s.buckets) {
      rep.check_true("sample proportion of T = " + std::to_string(b.value) + " within 5 sigma",
                     std::abs(b.z) < kSampleSigmaLimit, "|z| < 5", "z = " + fixed(b.z));
      buckets.push_back({{"t", std::to_string(b.value)},
                         {"observed", b.observed},
                         {"expected_proportion", fixed(b.expected_proportion, 10)},
                         {"z", fixed(b.z)}});
    }
    rep.extra["sample"] = {{"samples", s.samples}, {"seed", s.seed}, {"buckets", buckets}};
    rep.values = table1;
    rep.weights = table2;
  } else {
    throw Error(ErrorKind::InvalidS, "unknown mode " + cfg.mode);
  }
}

inline void lemmas(const RunConfig& cfg, const CodeParams& p, const FieldCtx& ctx, VerificationReport& rep) {
  const CountingTables tables = build_counting_tables(p, ctx, resolve_workers(cfg.workers));
  const BigInt q2 = big_pow(p.q, 2);
  rep.check("pairs counted under (+,+)", q2, tables.pp.table.total());
  rep.check("pairs counted under (+,-)", q2, tables.pm.table.total());
  auto add = [&](const LemmaCheck& c) {
    const std::string suffix = c.claimed ? "" : " (not claimed when q0 = 1 mod 4; reported only)";
    rep.checks.push_back({c.name + suffix, to_decimal(c.expected), to_decimal(c.actual), c.pass});
  };
  for (const auto& c : count_pair_systems(tables)) add(c);
  for (const auto& c : count_triple_systems(tables)) add(c);
  for (const auto& c : count_quad_systems(tables)) add(c);
  const SublemmaReport sub = sublemma_distributions(tables);
  for (const auto& c : sub.checks) add(c);
  nlohmann::ordered_json dj = nlohmann::ordered_json::object();
  for (const auto& d : sub.distributions) {
    nlohmann::ordered_json mult = nlohmann::ordered_json::array();
    for (const auto& [v, n] : d.multiplicities) mult.push_back({{"value", v}, {"pairs", n}});
    dj[d.name] = {{"at_1_1", d.at_one_one}, {"multiplicities", mult}};
  }
  rep.extra["lemmas_claimed"] = p.q0_mod4 == 3;
  rep.extra["sublemma_distributions"] = dj;
}

inline void table(const RunConfig& cfg, const CodeParams& p, VerificationReport& rep) {
  if (cfg.which == 1) {
    rep.values = table1_closed_form(p);
    rep.check("Table 1 total", big_pow(p.q, 3), rep.values->total());
  } else if (cfg.which == 2) {
    rep.weights = table2_closed_form(p);
    rep.check("Table 2 total", big_pow(p.q, 3), rep.weights->total());
  } else {
    throw Error(ErrorKind::InvalidS, "--which must be 1 or 2");
  }
}

inline void codeword(const RunConfig& cfg, const CodeParams& p, const FieldCtx& ctx, VerificationReport& rep) {
  const FieldElement a = ctx.element(cfg.a), b = ctx.element(cfg.b), c = ctx.element(cfg.c);
  const FormClass cls = classify(p, ctx, a, b, c);
  const std::uint64_t direct = codeword_weight_direct(p, ctx, a, b, c);
  const std::uint64_t formula = weight_from_T(p, cls.t_value);
  rep.check("direct weight vs weight from T", formula, direct);
  rep.check("character-sum oracle vs classifier", cls.t_value, t_oracle(p, ctx, a, b, c));
  const ParityCheck h = parity_check_polynomial(p, ctx);
  rep.check_true("codeword satisfies the parity-check recurrence", lfsr_membership(p, ctx, h.product, a, b, c));
  rep.extra["triple"] = {cfg.a, cfg.b, cfg.c};
  rep.extra["classification"] = {{"rank", cls.rank}, {"disc_class", cls.disc_class}, {"t", std::to_string(cls.t_value)}};
  rep.extra["weight"] = direct;
}

inline void minpoly(const CodeParams& p, const FieldCtx& ctx, VerificationReport& rep) {
  const ParityCheck h = parity_check_polynomial(p, ctx);
  rep.check("degree of h0", std::size_t{p.m0}, h.h0.degree());
  rep.check("degree of h1", std::size_t{p.m0}, h.h1.degree());
  rep.check("degree of h2", std::size_t{p.m0}, h.h2.degree());
  rep.check("degree of h0*h1*h2", std::size_t{3} * p.m0, h.product.degree());
  rep.extra["polynomials"] = {{"h0", poly_json(h.h0)},
                              {"h1", poly_json(h.h1)},
                              {"h2", poly_json(h.h2)},
                              {"product", poly_json(h.product)}};
}

inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const CodeParams p = validate_params(cfg.p, cfg.m, cfg.k, cfg.t);
    const FieldCtx ctx = build_field(p.p, p.m);
    VerificationReport rep(p, ctx, cfg.subcommand == "verify" ? cfg.mode : cfg.subcommand);
    if (cfg.subcommand == "verify") verify(cfg, p, ctx, rep);
    else if (cfg.subcommand == "lemmas") lemmas(cfg, p, ctx, rep);
    else if (cfg.subcommand == "table") table(cfg, p, rep);
    else if (cfg.subcommand == "codeword") codeword(cfg, p, ctx, rep);
    else minpoly(p, ctx, rep);
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
    const std::string text = rep.to_json().dump(2) + "\n";
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "cannot write " << cfg.out << "\n";
        return kInternal;
      }
      f << text;
    }
    for (const auto& c : rep.checks)
      if (!c.pass) err << "FAILED: " << c.name << " (expected " << c.expected << ", got " << c.actual << ")\n";
    return rep.all_pass() ? kPass : kFalsified;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (classify_error(e.kind())) {
      case ErrorClass::InvalidParameters: return kInvalidParameters;
      case ErrorClass::Falsified: return kFalsified;
      case ErrorClass::Internal: return kInternal;
    }
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace detail

/// Parses argv and runs one subcommand; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight distributions of five-weight cyclic codes over F_{p^t}", "weightdist"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime p")->required();
    sub->add_option("--m", cfg.m, "extension degree m")->required();
    sub->add_option("--k", cfg.k, "exponent parameter k")->required();
    sub->add_option("--t", cfg.t, "subfield degree t")->required();
    sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "worker threads (default: WEIGHTDIST_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* verify = app.add_subcommand("verify", "Tables 1 and 2 by enumeration, moments or sampling");
  add_params(verify);
  add_workers(verify);
  verify->add_option("--mode", cfg.mode, "full | moments | sample")
      ->check(CLI::IsMember({"full", "moments", "sample"}));
  verify->add_flag("--oracle", cfg.oracle, "full mode: also compare every triple with the character-sum oracle");
  verify->add_option("--samples", cfg.samples, "sample mode: number of random triples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "sample mode: generator seed");

  auto* lemmas = app.add_subcommand("lemmas", "counting lemmas and sub-lemma distributions");
  add_params(lemmas);
  add_workers(lemmas);

  auto* table = app.add_subcommand("table", "closed-form Table 1 or Table 2");
  add_params(table);
  table->add_option("--which", cfg.which, "1 (values of T) or 2 (weights)")->check(CLI::IsMember({1, 2}));

  auto* codeword = app.add_subcommand("codeword", "weight and classification of one codeword");
  add_params(codeword);
  codeword->add_option("--a", cfg.a, "canonical index of a")->required();
  codeword->add_option("--b", cfg.b, "canonical index of b")->required();
  codeword->add_option("--c", cfg.c, "canonical index of c")->required();

  auto* minpoly = app.add_subcommand("minpoly", "the factors h0, h1, h2 of the parity-check polynomial");
  add_params(minpoly);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidParameters;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return detail::execute(cfg, out, err);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"weightdist"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace weightdist::cli
