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

// Shared fixtures for the test binaries: cached contexts, seeded random
// elements and brute-force counters that avoid the library's fast paths.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "weightdist/weightdist.hpp"

namespace weightdist::testing {

struct Point {
  CodeParams params;
  FieldCtx ctx;
};

/// Parameter points are expensive to build; keep one per (p, m, k, t).
inline const Point& point(std::uint32_t p, std::uint32_t m, std::uint32_t k, std::uint32_t t) {
  static std::map<std::array<std::uint32_t, 4>, std::unique_ptr<Point>> cache;
  auto& slot = cache[{p, m, k, t}];
  if (!slot) {
    auto params = validate_params(p, m, k, t);
    slot = std::make_unique<Point>(Point{params, build_field(p, m)});
  }
  return *slot;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  FieldElement element(const FieldCtx& ctx) {
    return FieldElement{std::uniform_int_distribution<std::uint32_t>(0, ctx.q() - 1)(rng_)};
  }
  FieldElement nonzero(const FieldCtx& ctx) {
    return FieldElement{std::uniform_int_distribution<std::uint32_t>(1, ctx.q() - 1)(rng_)};
  }
  std::array<FieldElement, 3> triple(const FieldCtx& ctx) { return {element(ctx), element(ctx), element(ctx)}; }
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

/// fp(x) by repeated multiplication, independent of the log tables' pow.
inline std::array<std::uint32_t, 3> slow_fingerprint(const Point& pt, FieldElement x) {
  auto slow_pow = [&](std::uint64_t e) {
    FieldElement r = pt.ctx.one(), b = x;
    while (e) {
      if (e & 1) r = pt.ctx.mul(r, b);
      b = pt.ctx.mul(b, b);
      e >>= 1;
    }
    return r;
  };
  if (x.index == 0) return {0, 0, 0};
  return {slow_pow(2).index, slow_pow(pt.params.d1_exp).index, slow_pow(pt.params.d2_exp).index};
}

inline std::uint64_t pack(const std::array<std::uint32_t, 3>& f) {
  return (std::uint64_t{f[0]} << 42) | (std::uint64_t{f[1]} << 21) | f[2];
}

/// #{x in F_q^j : sum_i signs_i fp(x_i) = 0} by iterating the first j - 1
/// variables and looking the last one up in a preimage table.
inline std::uint64_t brute_force_count(const Point& pt, const std::vector<int>& signs) {
  const auto& ctx = pt.ctx;
  const std::uint32_t q = ctx.q();
  std::vector<std::array<std::uint32_t, 3>> fp(q);
  for (std::uint32_t x = 0; x < q; ++x) fp[x] = slow_fingerprint(pt, FieldElement{x});
  auto scaled = [&](int sign, const std::array<std::uint32_t, 3>& f) {
    std::array<std::uint32_t, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = sign > 0 ? f[i] : ctx.neg(FieldElement{f[i]}).index;
    return r;
  };
  // Preimages of the last term: value -> number of x_j with sign_j fp(x_j) = value.
  std::unordered_map<std::uint64_t, std::uint64_t> last;
  for (std::uint32_t x = 0; x < q; ++x) ++last[pack(scaled(signs.back(), fp[x]))];
  const std::size_t free = signs.size() - 1;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> xs(free, 0);
  while (true) {
    std::array<std::uint32_t, 3> acc{0, 0, 0};
    for (std::size_t i = 0; i < free; ++i) {
      const auto term = scaled(signs[i], fp[xs[i]]);
      for (int c = 0; c < 3; ++c) acc[c] = ctx.add(FieldElement{acc[c]}, FieldElement{term[c]}).index;
    }
    for (int c = 0; c < 3; ++c) acc[c] = ctx.neg(FieldElement{acc[c]}).index;
    if (auto it = last.find(pack(acc)); it != last.end()) total += it->second;
    std::size_t i = 0;
    while (i < free && ++xs[i] == q) xs[i++] = 0;
    if (i == free) break;
  }
  return total;
}

}  // namespace weightdist::testing
