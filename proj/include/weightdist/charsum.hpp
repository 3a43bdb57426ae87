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

// Exact character sums in Z[zeta_p]. A sum  sum_j n_j zeta_p^j  is kept as
// its count vector; it is rational iff n_1 = ... = n_{p-1}, and then equals
// n_0 - n_1 because 1 + zeta + ... + zeta^{p-1} = 0.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "weightdist/code.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"

namespace weightdist {

struct CyclotomicSum {
  std::vector<std::uint64_t> counts;

  CyclotomicSum() = default;
  explicit CyclotomicSum(std::uint32_t p) : counts(p, 0) {}

  CyclotomicSum& operator+=(const CyclotomicSum& other) {
    if (counts.size() != other.counts.size()) throw Error(ErrorKind::NotRational, "mismatched p");
    for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += other.counts[j];
    return *this;
  }

  friend CyclotomicSum operator+(CyclotomicSum a, const CyclotomicSum& b) { return a += b; }

  std::uint64_t total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }
};

/// sum over x in F_q of zeta_p^{Tr^{q0}_p(scale * Q_{a,b,c}(x))}.
inline CyclotomicSum form_char_sum(const CodeParams& params, const FieldCtx& ctx, FieldElement a,
                                   FieldElement b, FieldElement c, FieldElement scale) {
  if (scale.index == 0) throw Error(ErrorKind::DivisionByZero, "character sum scale must be nonzero");
  if (!ctx.in_subfield(scale, params.d)) throw Error(ErrorKind::NotInSubfield, "scale must lie in F_{q0}");
  CyclotomicSum sum(params.p);
  for (std::uint32_t xi = 0; xi < ctx.q(); ++xi) {
    const FieldElement qx = quadratic_form_value(params, ctx, a, b, c, FieldElement{xi});
    const FieldElement y = ctx.relative_trace(ctx.mul(scale, qx), params.d, 1);
    ++sum.counts[y.index];
  }
  return sum;
}

inline std::int64_t reduce_rational(const CyclotomicSum& sum) {
  const auto& n = sum.counts;
  if (n.empty()) return 0;
  if (n.size() > 1 && !std::all_of(n.begin() + 1, n.end(), [&](std::uint64_t v) { return v == n[1]; }))
    throw Error(ErrorKind::NotRational, "nonzero-index counts differ");
  const std::uint64_t tail = n.size() > 1 ? n[1] : 0;
  return static_cast<std::int64_t>(n[0]) - static_cast<std::int64_t>(tail);
}

/// T(a,b,c): the character sums at scale 1 and scale lambda, added in Z[zeta_p].
inline std::int64_t t_oracle(const CodeParams& params, const FieldCtx& ctx, FieldElement a, FieldElement b,
                             FieldElement c, FieldElement lambda) {
  try {
    return reduce_rational(form_char_sum(params, ctx, a, b, c, ctx.one()) +
                           form_char_sum(params, ctx, a, b, c, lambda));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotRational)
      throw Error(ErrorKind::NotRational, "T(a,b,c) is not rational: implementation defect");
    throw;
  }
}

inline std::int64_t t_oracle(const CodeParams& params, const FieldCtx& ctx, FieldElement a, FieldElement b,
                             FieldElement c) {
  return t_oracle(params, ctx, a, b, c, lambda_element(params, ctx));
}

/// Table-driven variant of t_oracle for exhaustive sweeps over small fields.
///
/// For nu in F_{q0}, Tr^{q0}_p(nu Tr^{q}_{q0}(y)) = Tr^{q}_p(nu y), so each
/// exponent splits into three per-coefficient rows  Tr^q_p(e x^2),
/// Tr^q_p(e x^{d1}), Tr^q_p(e x^{d2})  indexed by (e, x), stored as bytes.
class OracleSweep {
 public:
  static constexpr std::uint64_t kMaxField = 4096;

  OracleSweep(const CodeParams& params, const FieldCtx& ctx, FieldElement lambda)
      : p_(params.p), q_(ctx.q()), lambda_(lambda), ctx_(&ctx) {
    if (q_ > kMaxField || p_ > 255)
      throw Error(ErrorKind::BudgetExceeded, "oracle sweep tables need q <= 4096 and p < 256");
    const std::uint64_t exps[3] = {2, params.d1_exp, params.d2_exp};
    for (int r = 0; r < 3; ++r) {
      auto& rows = rows_[r];
      rows.assign(std::size_t{q_} * q_, 0);
      std::vector<FieldElement> powers(q_);
      for (std::uint32_t x = 0; x < q_; ++x) powers[x] = power_of(ctx, FieldElement{x}, exps[r]);
      for (std::uint32_t e = 1; e < q_; ++e)
        for (std::uint32_t x = 0; x < q_; ++x)
          rows[std::size_t{e} * q_ + x] =
              static_cast<std::uint8_t>(ctx.trace(ctx.mul(FieldElement{e}, powers[x]), 1).index);
    }
    mod_.resize(3 * p_);
    for (std::uint32_t v = 0; v < mod_.size(); ++v) mod_[v] = static_cast<std::uint8_t>(v % p_);
  }

  CyclotomicSum scale_sum(FieldElement a, FieldElement b, FieldElement c, FieldElement scale) const {
    const auto* ra = row(0, ctx_->mul(scale, a));
    const auto* rb = row(1, ctx_->mul(scale, b));
    const auto* rc = row(2, ctx_->mul(scale, c));
    CyclotomicSum sum(p_);
    for (std::uint32_t x = 0; x < q_; ++x) ++sum.counts[mod_[ra[x] + rb[x] + rc[x]]];
    return sum;
  }

  std::int64_t t_value(FieldElement a, FieldElement b, FieldElement c) const {
    return reduce_rational(scale_sum(a, b, c, ctx_->one()) + scale_sum(a, b, c, lambda_));
  }

  /// Calls fn(b, c, T) for every (b, c) with a fixed; partial row sums are
  /// shared across the inner loop.
  template <class Fn>
  void for_each_bc(FieldElement a, Fn&& fn) const {
    const FieldElement scales[2] = {ctx_->one(), lambda_};
    std::vector<std::uint8_t> ab[2], abc(q_);
    ab[0].resize(q_);
    ab[1].resize(q_);
    std::vector<std::uint64_t> counts(p_);
    for (std::uint32_t bi = 0; bi < q_; ++bi) {
      const FieldElement b{bi};
      for (int si = 0; si < 2; ++si) {
        const auto* ra = row(0, ctx_->mul(scales[si], a));
        const auto* rb = row(1, ctx_->mul(scales[si], b));
        for (std::uint32_t x = 0; x < q_; ++x) ab[si][x] = mod_[ra[x] + rb[x]];
      }
      for (std::uint32_t ci = 0; ci < q_; ++ci) {
        const FieldElement c{ci};
        std::fill(counts.begin(), counts.end(), 0);
        for (int si = 0; si < 2; ++si) {
          const auto* rc = row(2, ctx_->mul(scales[si], c));
          const auto* rab = ab[si].data();
          for (std::uint32_t x = 0; x < q_; ++x) abc[x] = mod_[rab[x] + rc[x]];
          count_residues(abc, counts);
        }
        CyclotomicSum sum;
        sum.counts = counts;
        fn(b, c, reduce_rational(sum));
      }
    }
  }

 private:
  const std::uint8_t* row(int r, FieldElement e) const {
    // Row 0 is all zeros.
    return rows_[r].data() + std::size_t{e.index} * q_;
  }

  void count_residues(const std::vector<std::uint8_t>& v, std::vector<std::uint64_t>& counts) const {
    if (p_ <= 16) {
      // Compare-and-count passes vectorize; residue 0 is the remainder.
      std::uint64_t rest = q_;
      for (std::uint32_t j = 1; j < p_; ++j) {
        std::uint32_t n = 0;
        for (std::uint32_t x = 0; x < q_; ++x) n += v[x] == j;
        counts[j] += n;
        rest -= n;
      }
      counts[0] += rest;
    } else {
      for (std::uint32_t x = 0; x < q_; ++x) ++counts[v[x]];
    }
  }

  std::uint32_t p_;
  std::uint32_t q_;
  FieldElement lambda_;
  const FieldCtx* ctx_;
  std::vector<std::uint8_t> rows_[3];
  std::vector<std::uint8_t> mod_;
};

}  // namespace weightdist
