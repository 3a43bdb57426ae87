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
#include <catch_amalgamated.hpp>

#include "properties.hpp"

namespace weightdist {
namespace {

using testing::point;
using testing::Random;

ValueDistribution values(std::initializer_list<std::pair<std::int64_t, std::uint64_t>> rows) {
  ValueDistribution v;
  for (auto [t, n] : rows) v.freq[t] = n;
  return v;
}

WeightHistogram weights(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> rows) {
  WeightHistogram w;
  for (auto [x, n] : rows) w.freq[x] = n;
  return w;
}

const ValueDistribution kTable1_35 =
    values({{486, 1}, {0, 9740258}, {54, 2548260}, {-54, 2038608}, {162, 14520}, {-162, 7260}});
const WeightHistogram kTable2_35 =
    weights({{0, 1}, {108, 14520}, {144, 2548260}, {162, 9740258}, {180, 2038608}, {216, 7260}});
const WeightHistogram kTable2_37 = weights(
    {{0, 1}, {1296, 8951670}, {1404, 1732767876}, {1458, 7102473578}, {1512, 1608998742}, {1620, 7161336}});

TEST_CASE("closed-form tables", "[spectrum]") {
  const CodeParams p = validate_params(3, 5, 1, 1);
  CHECK(table1_closed_form(p) == kTable1_35);
  CHECK(table2_closed_form(p) == kTable2_35);
  CHECK(weights_from_distribution(p, table1_closed_form(p)) == kTable2_35);
  CHECK(table2_closed_form(p).min_nonzero() == 108);

  const CodeParams e = validate_params(3, 7, 1, 1);
  CHECK(table2_closed_form(e) == kTable2_37);
  CHECK(table2_closed_form(e).total() == big_pow(3, 21));
  CHECK(weights_from_distribution(e, table1_closed_form(e)) == kTable2_37);

  for (auto [pp, m, k, t] : std::vector<std::array<std::uint32_t, 4>>{{5, 5, 1, 1}, {7, 5, 1, 1}, {3, 10, 2, 2}, {3, 5, 2, 1}}) {
    CAPTURE(pp, m, k, t);
    const CodeParams c = validate_params(pp, m, k, t);
    const ValueDistribution v = table1_closed_form(c);
    CHECK(v.total() == big_pow(c.q, 3));
    for (const auto& [x, n] : v.freq) CHECK(n >= 0);
    CHECK(weights_from_distribution(c, v) == table2_closed_form(c));
  }
}

TEST_CASE("weights from T", "[spectrum]") {
  const CodeParams p = validate_params(3, 5, 1, 1);
  CHECK(weight_from_T(p, 486) == 0);
  CHECK(weight_from_T(p, 0) == 162);
  CHECK(weight_from_T(p, 54) == 144);
  CHECK(weight_from_T(p, -162) == 216);
  CHECK_THROWS_AS(weight_from_T(p, 1), Error);
}

TEST_CASE("admissible values", "[spectrum]") {
  CHECK(admissible_values(validate_params(3, 5, 1, 1)) == std::vector<std::int64_t>{-162, -54, 0, 54, 162, 486});
  CHECK(admissible_values(validate_params(3, 10, 2, 2)) ==
        std::vector<std::int64_t>{-13122, -1458, 0, 1458, 13122, 118098});
}

TEST_CASE("moment solve", "[spectrum]") {
  for (auto [pp, m, k, t] : std::vector<std::array<std::uint32_t, 4>>{{3, 5, 1, 1}, {3, 7, 1, 1}, {5, 5, 1, 1}, {3, 10, 2, 2}}) {
    const CodeParams c = validate_params(pp, m, k, t);
    CHECK(moment_solve_distribution(c, moment_closed_forms(c)) == table1_closed_form(c));
  }
  const CodeParams p = validate_params(3, 5, 1, 1);
  auto moments = moment_closed_forms(p);
  moments[3] += 1;
  CHECK_THROWS_AS(moment_solve_distribution(p, moments), Error);
  moments = moment_closed_forms(p);
  moments[0] += 2 * 54;
  CHECK_THROWS_AS(moment_solve_distribution(p, moments), Error);
}

TEST_CASE("enumeration reproduces the closed form", "[spectrum]") {
  const auto& pt = point(3, 5, 1, 1);
  const ValueDistribution v = enumerate_distribution(pt.params, pt.ctx, 2);
  CHECK(v == kTable1_35);
  for (std::uint32_t j = 1; j <= 4; ++j) CHECK(v.power_sum(j) == moment_closed_forms(pt.params)[j - 1]);
  CHECK_THROWS_AS(enumerate_distribution(point(3, 10, 2, 2).params, point(3, 10, 2, 2).ctx), Error);
}

TEST_CASE("sampling", "[spectrum]") {
  const auto& pt = point(3, 10, 2, 2);
  const SampleReport a = sample_check(pt.params, pt.ctx, 2000, 7, 1);
  const SampleReport b = sample_check(pt.params, pt.ctx, 2000, 7, 2);
  CHECK(a.pass);
  CHECK(a.zero_triple_value == 118098);
  REQUIRE(a.buckets.size() == b.buckets.size());
  for (std::size_t i = 0; i < a.buckets.size(); ++i) {
    CHECK(a.buckets[i].value == b.buckets[i].value);
    CHECK(a.buckets[i].observed == b.buckets[i].observed);
  }
  std::uint64_t observed = 0;
  for (const auto& bucket : a.buckets) observed += bucket.observed;
  CHECK(observed == 2000);
  CHECK_THROWS_AS(sample_check(pt.params, pt.ctx, 0, 7, 1), Error);
}

TEST_CASE("direct weights match the formula", "[spectrum][property]") {
  for (auto [pp, m, k, t] : std::vector<std::array<std::uint32_t, 4>>{{3, 5, 1, 1}, {3, 10, 2, 2}}) {
    const auto& pt = point(pp, m, k, t);
    const FormClassifier fc(pt.params, pt.ctx);
    Random rng(81);
    for (int i = 0; i < 100; ++i) {
      const auto [a, b, c] = rng.triple(pt.ctx);
      CHECK(codeword_weight_direct(pt.params, pt.ctx, a, b, c) ==
            weight_from_T(pt.params, fc.classify(a, b, c).t_value));
    }
  }
}

}  // namespace
}  // namespace weightdist
