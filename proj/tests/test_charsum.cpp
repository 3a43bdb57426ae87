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

#include <algorithm>

#include "properties.hpp"

namespace weightdist {
namespace {

using testing::point;
using testing::Random;

TEST_CASE("reduce_rational", "[charsum]") {
  CyclotomicSum s(3);
  s.counts = {243, 0, 0};
  CHECK(reduce_rational(s) == 243);
  s.counts = {10, 4, 4};
  CHECK(reduce_rational(s) == 6);
  s.counts = {1, 7, 7, 7, 7};
  CHECK(reduce_rational(s) == -6);
  s.counts = {5, 1, 2};
  CHECK_THROWS_MATCHES(reduce_rational(s), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotRational;
                       }));
}

TEST_CASE("form sums", "[charsum]") {
  const auto& pt = point(3, 5, 1, 1);
  const auto& ctx = pt.ctx;
  const CyclotomicSum zero = form_char_sum(pt.params, ctx, ctx.zero(), ctx.zero(), ctx.zero(), ctx.one());
  CHECK(zero.counts == std::vector<std::uint64_t>{243, 0, 0});
  CHECK_THROWS_AS(form_char_sum(pt.params, ctx, ctx.one(), ctx.zero(), ctx.zero(), ctx.zero()), Error);

  // Tr(x^2) has odd rank 5, so for p = 3 the single sum is sqrt(-3)-type: not rational.
  const CyclotomicSum odd = form_char_sum(pt.params, ctx, ctx.one(), ctx.zero(), ctx.zero(), ctx.one());
  CHECK(odd.total() == 243);
  CHECK_THROWS_AS(reduce_rational(odd), Error);
  CHECK(classify(pt.params, ctx, ctx.one(), ctx.zero(), ctx.zero()).rank == 5);
  CHECK(t_oracle(pt.params, ctx, ctx.one(), ctx.zero(), ctx.zero()) == 0);
}

TEST_CASE("oracle values", "[charsum]") {
  const auto& pt = point(3, 5, 1, 1);
  const auto& ctx = pt.ctx;
  CHECK(t_oracle(pt.params, ctx, ctx.zero(), ctx.zero(), ctx.zero()) == 486);
  Random rng(21);
  const std::vector<std::int64_t> allowed{0, 54, -54, 162, -162};
  for (int i = 0; i < 300; ++i) {
    const auto [a, b, c] = rng.triple(ctx);
    if ((a.index | b.index | c.index) == 0) continue;
    const std::int64_t t = t_oracle(pt.params, ctx, a, b, c);
    CHECK(std::find(allowed.begin(), allowed.end(), t) != allowed.end());
    // Both scales together count 2q points.
    const auto s1 = form_char_sum(pt.params, ctx, a, b, c, ctx.one());
    const auto s2 = form_char_sum(pt.params, ctx, a, b, c, lambda_element(pt.params, ctx));
    CHECK((s1 + s2).total() == 486);
    // The weight derived from T is an integer in [0, q - 1].
    const std::uint64_t w = weight_from_T(pt.params, t);
    CHECK(w <= 242);
  }
}

TEST_CASE("T does not depend on the choice of non-square", "[charsum][property]") {
  const auto& pt = point(5, 5, 1, 1);
  const auto& ctx = pt.ctx;
  const FieldElement lambda = lambda_element(pt.params, ctx);
  const FieldElement other = ctx.pow(lambda, 3);
  REQUIRE(ctx.quadratic_character(other, 1) == -1);
  REQUIRE(other != lambda);
  Random rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b, c] = rng.triple(ctx);
    CHECK(t_oracle(pt.params, ctx, a, b, c, lambda) == t_oracle(pt.params, ctx, a, b, c, other));
  }
}

TEST_CASE("even rank sums agree at both scales", "[charsum]") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 5}, {5, 5}}) {
    const auto& pt = point(p, m, 1, 1);
    const auto& ctx = pt.ctx;
    const FormClassifier fc(pt.params, ctx);
    Random rng(23 + p);
    int even = 0;
    for (int i = 0; i < 400 && even < 20; ++i) {
      const auto [a, b, c] = rng.triple(ctx);
      const FormClass cls = fc.classify(a, b, c);
      if (cls.rank % 2 != 0) continue;
      ++even;
      const auto s1 = reduce_rational(form_char_sum(pt.params, ctx, a, b, c, ctx.one()));
      const auto s2 = reduce_rational(form_char_sum(pt.params, ctx, a, b, c, lambda_element(pt.params, ctx)));
      CHECK(s1 == s2);
      CHECK(s1 + s2 == cls.t_value);
    }
    CHECK(even > 0);
  }
}

TEST_CASE("table-driven sweep agrees with the direct oracle", "[charsum]") {
  for (auto [p, m, k, t] : std::vector<std::array<std::uint32_t, 4>>{{3, 5, 1, 1}, {5, 5, 1, 1}}) {
    const auto& pt = point(p, m, k, t);
    const OracleSweep sweep(pt.params, pt.ctx, lambda_element(pt.params, pt.ctx));
    Random rng(24);
    for (int i = 0; i < 100; ++i) {
      const auto [a, b, c] = rng.triple(pt.ctx);
      CHECK(sweep.t_value(a, b, c) == t_oracle(pt.params, pt.ctx, a, b, c));
    }
    if (p != 3) continue;  // a full (b, c) row at q = 3125 takes minutes
    const FieldElement a = rng.element(pt.ctx);
    std::uint64_t seen = 0;
    sweep.for_each_bc(a, [&](FieldElement b, FieldElement c, std::int64_t value) {
      if (seen++ % 997 == 0) CHECK(value == t_oracle(pt.params, pt.ctx, a, b, c));
    });
    CHECK(seen == std::uint64_t{pt.ctx.q()} * pt.ctx.q());
  }
}

}  // namespace
}  // namespace weightdist
