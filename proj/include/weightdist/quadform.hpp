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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "weightdist/code.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"
#include "weightdist/number_theory.hpp"

namespace weightdist {

/// Symmetric s x s matrix over F_{q0}, entries as Subfield codes (row-major).
struct GramMatrix {
  std::uint32_t s = 0;
  std::vector<Subfield::Code> entries;

  GramMatrix() = default;
  explicit GramMatrix(std::uint32_t size) : s(size), entries(std::size_t{size} * size, 0) {}

  Subfield::Code& at(std::uint32_t i, std::uint32_t j) { return entries[std::size_t{i} * s + j]; }
  Subfield::Code at(std::uint32_t i, std::uint32_t j) const { return entries[std::size_t{i} * s + j]; }

  bool symmetric() const {
    for (std::uint32_t i = 0; i < s; ++i)
      for (std::uint32_t j = 0; j < i; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;
};

struct FormClass {
  std::uint32_t rank = 0;
  int disc_class = 0;
  std::int64_t t_value = 0;

  friend bool operator==(const FormClass&, const FormClass&) = default;
};

inline constexpr std::uint32_t kMaxFormSize = 32;

/// Rank and square class of the product of the nonzero diagonal entries
/// after symmetric congruence reduction. Works on a copy.
inline std::pair<std::uint32_t, int> rank_and_discriminant(const Subfield& f, GramMatrix a) {
  const std::uint32_t s = a.s;
  std::uint32_t r = 0;
  Subfield::Code disc = 1;
  for (std::uint32_t cur = 0; cur < s; ++cur) {
    std::uint32_t pivot = s;
    for (std::uint32_t i = cur; i < s && pivot == s; ++i)
      if (a.at(i, i) != 0) pivot = i;
    if (pivot == s) {
      // Zero diagonal: A_ii + 2 A_ij + A_jj = 2 A_ij != 0 after adding row/column j to i.
      for (std::uint32_t i = cur; i < s && pivot == s; ++i)
        for (std::uint32_t j = i + 1; j < s; ++j)
          if (a.at(i, j) != 0) {
            for (std::uint32_t l = 0; l < s; ++l) a.at(i, l) = f.add(a.at(i, l), a.at(j, l));
            for (std::uint32_t l = 0; l < s; ++l) a.at(l, i) = f.add(a.at(l, i), a.at(l, j));
            pivot = i;
            break;
          }
      if (pivot == s) break;
    }
    if (pivot != cur) {
      for (std::uint32_t l = 0; l < s; ++l) std::swap(a.at(cur, l), a.at(pivot, l));
      for (std::uint32_t l = 0; l < s; ++l) std::swap(a.at(l, cur), a.at(l, pivot));
    }
    const Subfield::Code d = a.at(cur, cur);
    const Subfield::Code dinv = f.inv(d);
    for (std::uint32_t i = cur + 1; i < s; ++i) {
      const Subfield::Code factor = f.mul(a.at(i, cur), dinv);
      if (factor == 0) continue;
      for (std::uint32_t j = cur + 1; j < s; ++j) a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(cur, j)));
    }
    for (std::uint32_t i = cur + 1; i < s; ++i) a.at(i, cur) = a.at(cur, i) = 0;
    disc = f.mul(disc, d);
    ++r;
  }
  return {r, r == 0 ? 0 : f.character(disc)};
}

/// Closed-form T value for a form of rank r and discriminant class disc_class.
inline std::int64_t t_closed_form(const CodeParams& params, std::uint32_t r, int disc_class) {
  if (r > params.s) throw Error(ErrorKind::RankBoundViolation, "rank exceeds s");
  if (r == 0) return 2 * static_cast<std::int64_t>(params.q);
  if (r % 2 == 1) return 0;
  const std::uint64_t d = params.d;
  int sign = disc_class;
  if (((d - 1) * r) % 2 == 1) sign = -sign;
  if (params.p % 4 == 3 && ((d * r) / 2) % 2 == 1) sign = -sign;
  const std::uint64_t magnitude = checked_pow(params.q0, params.s - r / 2);
  return sign * 2 * static_cast<std::int64_t>(magnitude);
}

/// Gram-matrix builder and classifier for Q_{a,b,c} in the basis
/// y_j = u * pi^j (j < s) of F_q over F_{q0}.
///
/// Each entry is F_{q0}-linear in (a, b, c): A_ij = Tr(a g0_ij) + Tr(b g1_ij)
/// + Tr(c g2_ij) with g_ij the polarized monomials of the basis, so a Gram
/// row costs one multiplication and one trace lookup per coefficient.
class FormClassifier {
 public:
  FormClassifier(const CodeParams& params, const FieldCtx& ctx, FieldElement basis_unit)
      : params_(params), ctx_(&ctx), sub_(ctx, params.d), s_(params.s) {
    if (basis_unit.index == 0) throw Error(ErrorKind::DivisionByZero, "basis unit must be nonzero");
    if (s_ > kMaxFormSize) throw Error(ErrorKind::BudgetExceeded, "form too large");
    for (std::uint32_t j = 0; j < s_; ++j) basis_.push_back(ctx.mul(basis_unit, ctx.exp(j)));
    const std::array<std::uint64_t, 3> exps = {2, params.d1_exp, params.d2_exp};
    const FieldElement half = ctx.inv(ctx.from_integer(2));
    for (std::size_t role = 0; role < 3; ++role) {
      auto& logs = poly_logs_[role];
      logs.assign(std::size_t{s_} * s_, FieldCtx::kNoLog);
      for (std::uint32_t i = 0; i < s_; ++i)
        for (std::uint32_t j = i; j < s_; ++j) {
          const FieldElement yi = power_of(ctx, basis_[i], exps[role]);
          FieldElement g = yi;
          if (i != j) {
            const FieldElement yj = power_of(ctx, basis_[j], exps[role]);
            const FieldElement yij = power_of(ctx, ctx.add(basis_[i], basis_[j]), exps[role]);
            g = ctx.mul(half, ctx.sub(ctx.sub(yij, yi), yj));
          }
          const std::uint32_t l = g.index == 0 ? FieldCtx::kNoLog : ctx.log(g);
          logs[std::size_t{i} * s_ + j] = l;
          logs[std::size_t{j} * s_ + i] = l;
        }
    }
  }

  FormClassifier(const CodeParams& params, const FieldCtx& ctx) : FormClassifier(params, ctx, ctx.one()) {}

  const Subfield& subfield() const noexcept { return sub_; }
  const std::vector<FieldElement>& basis() const noexcept { return basis_; }
  std::uint32_t size() const noexcept { return s_; }

  /// Contribution of coefficient e in role 0 (x^2), 1 (x^{d1}) or 2 (x^{d2}).
  void add_role(std::size_t role, FieldElement e, GramMatrix& g) const {
    if (e.index == 0) return;
    const auto& logs = poly_logs_[role];
    const std::uint32_t le = ctx_->log(e);
    const auto exp = ctx_->exp_table();
    const auto tr = sub_.trace_codes();
    const std::uint64_t n = ctx_->group_order();
    for (std::uint32_t i = 0; i < s_; ++i)
      for (std::uint32_t j = i; j < s_; ++j) {
        const std::uint32_t lg = logs[std::size_t{i} * s_ + j];
        if (lg == FieldCtx::kNoLog) continue;
        std::uint64_t l = std::uint64_t{le} + lg;
        if (l >= n) l -= n;
        const Subfield::Code v = sub_.add(g.at(i, j), tr[exp[l]]);
        g.at(i, j) = v;
        g.at(j, i) = v;
      }
  }

  GramMatrix role_matrix(std::size_t role, FieldElement e) const {
    GramMatrix g(s_);
    add_role(role, e, g);
    return g;
  }

  GramMatrix gram(FieldElement a, FieldElement b, FieldElement c) const {
    GramMatrix g(s_);
    add_role(0, a, g);
    add_role(1, b, g);
    add_role(2, c, g);
    return g;
  }

  /// Entrywise sum of Gram matrices (forms are additive in (a, b, c)).
  GramMatrix sum(const GramMatrix& x, const GramMatrix& y) const {
    GramMatrix g(s_);
    for (std::size_t i = 0; i < g.entries.size(); ++i) g.entries[i] = sub_.add(x.entries[i], y.entries[i]);
    return g;
  }

  FormClass classify_gram(const GramMatrix& g, bool nonzero_triple) const {
    const auto [r, disc] = rank_and_discriminant(sub_, g);
    if (nonzero_triple && r + 4 < s_)
      throw Error(ErrorKind::RankBoundViolation,
                  "nonzero triple gives rank " + std::to_string(r) + " < s - 4 = " + std::to_string(s_ - 4));
    return {r, disc, t_closed_form(params_, r, disc)};
  }

  FormClass classify(FieldElement a, FieldElement b, FieldElement c) const {
    return classify_gram(gram(a, b, c), (a.index | b.index | c.index) != 0);
  }

  /// Q_{a,b,c}(x) from the definition.
  FieldElement evaluate(FieldElement a, FieldElement b, FieldElement c, FieldElement x) const {
    return quadratic_form_value(params_, *ctx_, a, b, c, x);
  }

  /// X A X^T for coordinates X over F_{q0}.
  FieldElement form_at(const GramMatrix& g, std::span<const Subfield::Code> coords) const {
    Subfield::Code acc = 0;
    for (std::uint32_t i = 0; i < s_; ++i)
      for (std::uint32_t j = 0; j < s_; ++j)
        acc = sub_.add(acc, sub_.mul(sub_.mul(coords[i], g.at(i, j)), coords[j]));
    return sub_.decode(acc);
  }

  /// The field element sum_j X_j y_j.
  FieldElement combine(std::span<const Subfield::Code> coords) const {
    FieldElement x = ctx_->zero();
    for (std::uint32_t j = 0; j < s_; ++j) x = ctx_->add(x, ctx_->mul(sub_.decode(coords[j]), basis_[j]));
    return x;
  }

 private:
  CodeParams params_;
  const FieldCtx* ctx_;
  Subfield sub_;
  std::uint32_t s_;
  std::vector<FieldElement> basis_;
  std::array<std::vector<std::uint32_t>, 3> poly_logs_;
};

inline GramMatrix gram_matrix(const CodeParams& params, const FieldCtx& ctx, FieldElement a, FieldElement b,
                              FieldElement c) {
  return FormClassifier(params, ctx).gram(a, b, c);
}

inline FormClass classify(const CodeParams& params, const FieldCtx& ctx, FieldElement a, FieldElement b,
                          FieldElement c) {
  return FormClassifier(params, ctx).classify(a, b, c);
}

}  // namespace weightdist
