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
// Acceptance gate: one test case per criterion, each printing a single
// PASS/FAIL line. Runtime limits are asserted inside the case, so a slow
// pass counts as a failure. Worker count comes from WEIGHTDIST_WORKERS.

#include <catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <optional>

#include "properties.hpp"

namespace weightdist {
namespace {

using testing::point;
using testing::Random;
using Clock = std::chrono::steady_clock;

class CriterionListener : public Catch::EventListenerBase {
 public:
  using Catch::EventListenerBase::EventListenerBase;

  void testCaseEnded(const Catch::TestCaseStats& stats) override {
    const auto& a = stats.totals.assertions;
    const bool pass = a.failed == 0 && a.passed > 0;
    std::printf("%s %s (%llu assertions)\n", pass ? "PASS" : "FAIL", stats.testInfo->name.c_str(),
                static_cast<unsigned long long>(a.passed + a.failed));
    std::fflush(stdout);
  }
};

}  // namespace
}  // namespace weightdist

CATCH_REGISTER_LISTENER(weightdist::CriterionListener)

namespace weightdist {
namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned workers() { return resolve_workers(); }

WeightHistogram weights(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> rows) {
  WeightHistogram w;
  for (auto [x, n] : rows) w.freq[x] = n;
  return w;
}

// Shared between criteria 1 and 5.
const ValueDistribution& enumerated_35() {
  static const ValueDistribution v = [] {
    const auto& pt = point(3, 5, 1, 1);
    return enumerate_distribution(pt.params, pt.ctx, workers());
  }();
  return v;
}

TEST_CASE("criterion 1: full enumeration at (3,5,1,1) reproduces Tables 1 and 2", "[acceptance]") {
  const auto start = Clock::now();
  const auto& pt = point(3, 5, 1, 1);
  const ValueDistribution& v = enumerated_35();
  CHECK(v.total() == 14348907);
  CHECK(v == table1_closed_form(pt.params));
  const WeightHistogram w = weights_from_distribution(pt.params, v);
  CHECK(w == weights({{0, 1}, {108, 14520}, {144, 2548260}, {162, 9740258}, {180, 2038608}, {216, 7260}}));
  CHECK(w == table2_closed_form(pt.params));
  const double elapsed = seconds_since(start);
  INFO("enumeration took " << elapsed << " s with " << workers() << " worker(s)");
  CHECK(elapsed <= 300.0);
}

TEST_CASE("criterion 2: character-sum oracle equals the classifier on all 3^15 triples", "[acceptance]") {
  const auto start = Clock::now();
  const auto& pt = point(3, 5, 1, 1);
  const OracleAgreement r = oracle_agreement(pt.params, pt.ctx, workers());
  CHECK(r.compared == 14348907);
  CHECK(r.mismatches == 0);
  CHECK_FALSE(r.first_mismatch.has_value());
  CHECK(seconds_since(start) <= 300.0);
}

TEST_CASE("criterion 3: moment method at (3,7,1,1) reproduces the [2186,21,1296] enumerator", "[acceptance]") {
  const auto start = Clock::now();
  const auto& pt = point(3, 7, 1, 1);
  const CountingTables t = build_counting_tables(pt.params, pt.ctx, workers());
  std::array<BigInt, 4> moments;
  for (std::uint32_t j = 1; j <= 4; ++j) moments[j - 1] = moment(t, j);
  const ValueDistribution v = moment_solve_distribution(pt.params, moments);
  const WeightHistogram w = weights_from_distribution(pt.params, v);
  CHECK(w == weights({{0, 1},
                      {1296, 8951670},
                      {1404, 1732767876},
                      {1458, 7102473578},
                      {1512, 1608998742},
                      {1620, 7161336}}));
  CHECK(w.total() == 10460353203ULL);
  CHECK(w.min_nonzero() == 1296);
  const double elapsed = seconds_since(start);
  INFO("moment route took " << elapsed << " s");
  CHECK(elapsed <= 120.0);
}

TEST_CASE("criterion 4: counting lemmas and sub-lemma distributions", "[acceptance]") {
  for (std::uint32_t m : {5u, 7u}) {
    const auto& pt = point(3, m, 1, 1);
    const BigInt q = pt.params.q;
    const CountingTables t = build_counting_tables(pt.params, pt.ctx, workers());
    const auto pair = count_pair_systems(t);
    const auto triple = count_triple_systems(t);
    const auto quad = count_quad_systems(t);
    const BigInt n3 = 3 * q + q - 3;
    const BigInt n4 = 1 + (q - 1) * 4 * (2 * q - 2);
    CAPTURE(m);
    CHECK(pair[0].actual == 1);
    CHECK(pair[1].actual == 2 * q - 1);
    CHECK(triple[0].actual == n3);
    CHECK(triple[1].actual == n3);
    CHECK(quad[0].actual == n4);
    CHECK(quad[1].actual == 9 * q + q - 9);
    CHECK(quad[2].actual == n4);
    for (const auto* c : {&pair[0], &pair[1], &triple[0], &triple[1], &quad[0], &quad[1], &quad[2]}) {
      CHECK(c->claimed);
      CHECK(c->pass);
    }
    const SublemmaReport s = sublemma_distributions(t);
    const std::uint64_t qq = pt.params.q;
    CHECK(s.distributions[0].at_one_one == 4);
    CHECK(s.distributions[0].multiplicities.at(4) == 1);
    CHECK(s.distributions[0].multiplicities.at(8) == (qq - 3) / 8);
    CHECK(s.distributions[2].at_one_one == 2);
    CHECK(s.distributions[2].multiplicities.at(2) == 1);
    CHECK(s.distributions[2].multiplicities.at(4) == (qq - 3) / 4);
    for (const auto& c : s.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("criterion 5: power sums at (3,5,1,1) by enumeration and by histograms", "[acceptance]") {
  const auto& pt = point(3, 5, 1, 1);
  const BigInt p3m = big_pow(3, 15), p4m = big_pow(3, 20);
  const std::array<BigInt, 3> expected{2 * p3m, 4 * p4m, 8 * p3m * 969};
  const ValueDistribution& v = enumerated_35();
  const CountingTables t = build_counting_tables(pt.params, pt.ctx, workers());
  for (std::uint32_t j = 1; j <= 3; ++j) {
    CAPTURE(j);
    CHECK(v.power_sum(j) == expected[j - 1]);
    CHECK(moment(t, j) == expected[j - 1]);
  }
}

TEST_CASE("criterion 6: probe of the q0 = 1 mod 4 case at (3,10,2,2)", "[acceptance]") {
  const auto& pt = point(3, 10, 2, 2);
  const ValueDistribution table = table1_closed_form(pt.params);
  CHECK(table.total() == big_pow(pt.params.q, 3));
  for (const auto& [t, n] : table.freq) CHECK(n >= 0);
  CHECK(table.freq.size() == 6);

  const SampleReport s = sample_check(pt.params, pt.ctx, 100000, 0, workers());
  std::uint64_t seen = 0;
  for (const auto& b : s.buckets) seen += b.observed;
  CHECK(seen == 100000);
  INFO("largest |z| = " << s.max_abs_z);
  CHECK(s.max_abs_z < 5.0);
  CHECK(s.pass);

  const ParityCheck h = parity_check_polynomial(pt.params, pt.ctx);
  CHECK(h.h0.degree() == 5);
  CHECK(h.h1.degree() == 5);
  CHECK(h.h2.degree() == 5);
}

TEST_CASE("criterion 7: property suites within 60 s", "[acceptance]") {
  const auto start = Clock::now();
  Random rng(2024);

  // Field axioms.
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 5}, {5, 5}, {3, 10}}) {
    const FieldCtx& ctx = point(p, m, m % 2 == 0 ? 2 : 1, m % 2 == 0 ? 2 : 1).ctx;
    for (int i = 0; i < 5000; ++i) {
      const FieldElement x = rng.element(ctx), y = rng.element(ctx), z = rng.element(ctx);
      REQUIRE(ctx.add(ctx.add(x, y), z) == ctx.add(x, ctx.add(y, z)));
      REQUIRE(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
      REQUIRE(ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
      REQUIRE(ctx.add(x, ctx.neg(x)) == ctx.zero());
      if (x.index != 0) REQUIRE(ctx.mul(x, ctx.inv(x)) == ctx.one());
    }
  }

  // Trace transitivity and balance.
  {
    const FieldCtx& ctx = point(3, 10, 2, 2).ctx;
    for (int i = 0; i < 2000; ++i) {
      const FieldElement x = rng.element(ctx);
      REQUIRE(ctx.trace(x, 1) == ctx.relative_trace(ctx.trace(x, 2), 2, 1));
      REQUIRE(ctx.trace(x, 1) == ctx.relative_trace(ctx.trace(x, 5), 5, 1));
    }
    for (std::uint32_t r : {1u, 2u, 5u}) {
      std::map<std::uint32_t, std::uint64_t> hits;
      for (std::uint32_t x = 0; x < ctx.q(); ++x) ++hits[ctx.trace(FieldElement{x}, r).index];
      CHECK(hits.size() == checked_pow(3, r));
      for (auto [v, n] : hits) REQUIRE(n == ctx.q() / checked_pow(3, r));
    }
  }

  // LFSR membership of 100 random codewords.
  {
    const auto& pt = point(3, 5, 1, 1);
    const ParityCheck h = parity_check_polynomial(pt.params, pt.ctx);
    for (int i = 0; i < 100; ++i) {
      const auto x = rng.triple(pt.ctx);
      REQUIRE(lfsr_membership(pt.params, pt.ctx, h.product, x[0], x[1], x[2]));
    }
  }

  // Basis and non-square invariance of the classification.
  {
    const auto& pt = point(5, 5, 1, 1);
    const FormClassifier base(pt.params, pt.ctx), shifted(pt.params, pt.ctx, pt.ctx.exp(11));
    const FieldElement lambda = lambda_element(pt.params, pt.ctx), other = pt.ctx.pow(lambda, 3);
    for (int i = 0; i < 200; ++i) {
      const auto x = rng.triple(pt.ctx);
      const FormClass c = base.classify(x[0], x[1], x[2]);
      REQUIRE(c == shifted.classify(x[0], x[1], x[2]));
      if (i < 50) {
        REQUIRE(t_oracle(pt.params, pt.ctx, x[0], x[1], x[2], lambda) == c.t_value);
        REQUIRE(t_oracle(pt.params, pt.ctx, x[0], x[1], x[2], other) == c.t_value);
      }
    }
  }

  // Histogram negation symmetry.
  {
    const auto& pt = point(3, 5, 1, 1);
    const auto pp = build_histogram(pt.params, pt.ctx, 1, 1, workers());
    const auto mm = build_histogram(pt.params, pt.ctx, -1, -1, workers());
    const FieldElement minus = pt.ctx.from_integer(-1);
    CHECK(pp.table.size() == mm.table.size());
    pp.table.for_each([&](std::uint64_t key, std::uint64_t n) {
      REQUIRE(mm[scale_fingerprint(pt.ctx, minus, pp.codec.decode(key))] == n);
    });
  }

  // Direct weight against the weight formula on 100 random triples.
  {
    const auto& pt = point(3, 5, 1, 1);
    const FormClassifier fc(pt.params, pt.ctx);
    for (int i = 0; i < 100; ++i) {
      const auto x = rng.triple(pt.ctx);
      REQUIRE(codeword_weight_direct(pt.params, pt.ctx, x[0], x[1], x[2]) ==
              weight_from_T(pt.params, fc.classify(x[0], x[1], x[2]).t_value));
    }
  }

  const double elapsed = seconds_since(start);
  INFO("property suites took " << elapsed << " s");
  CHECK(elapsed <= 60.0);
}

TEST_CASE("extended: moment method at (3,10,2,2) matches Table 1", "[.][extended]") {
  const auto start = Clock::now();
  const auto& pt = point(3, 10, 2, 2);
  HomogeneousMoments h(pt.params, pt.ctx, workers());
  std::array<BigInt, 4> moments;
  for (std::uint32_t j = 1; j <= 4; ++j) moments[j - 1] = h.moment(j);
  CHECK(moments == moment_closed_forms(pt.params));
  CHECK(moment_solve_distribution(pt.params, moments) == table1_closed_form(pt.params));
  const double elapsed = seconds_since(start);
  INFO("homogeneous moments took " << elapsed << " s with " << workers() << " worker(s)");
  CHECK(elapsed <= 1800.0);
}

}  // namespace
}  // namespace weightdist
