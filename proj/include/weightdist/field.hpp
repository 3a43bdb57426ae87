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

// Table-driven arithmetic in F_{p^m} for odd p and p^m <= 2^24.
//
// Elements are identified by their canonical index sum_i c_i p^i, where c_i
// are the coefficients of the polynomial-basis representation modulo the
// context's modulus. Multiplication runs through discrete-log tables and
// addition through a Zech-logarithm table, so every operation is O(1).

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weightdist/error.hpp"
#include "weightdist/number_theory.hpp"

namespace weightdist {

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;

struct FieldElement {
  std::uint32_t index = 0;

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

struct FieldParams {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  /// Monic irreducible modulus over F_p, coefficients low-to-high (size m + 1).
  std::vector<std::uint32_t> modulus;
  std::uint32_t q = 0;
};

namespace detail {

// Dense polynomials over F_p, low-to-high, only used while building a context.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

/// a mod f for monic f.
inline PrimePoly poly_mod(PrimePoly a, const PrimePoly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * f[i]) % p);
    trim(a);
  }
  return a;
}

inline PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f,
                             std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  }
  return poly_mod(std::move(r), f, p);
}

inline PrimePoly poly_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& f, std::uint32_t p) {
  PrimePoly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return poly_mod(std::move(r), f, p);
}

inline PrimePoly poly_gcd(PrimePoly a, PrimePoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Make b monic so it can serve as a divisor.
    const std::uint32_t li = inv_mod_p(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * li % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

/// Rabin's test: f monic of degree m is irreducible iff x^{p^m} = x mod f and
/// gcd(x^{p^{m/l}} - x, f) = 1 for every prime l | m.
inline bool is_irreducible(const PrimePoly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  std::vector<PrimePoly> frob(m + 1);
  frob[0] = poly_mod(PrimePoly{0, 1}, f, p);
  for (std::size_t i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  if (frob[m] != frob[0]) return false;
  for (std::uint64_t l : prime_factors(m)) {
    PrimePoly g = frob[m / l];
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    if (poly_gcd(g, f, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class FieldCtx {
 public:
  static constexpr std::uint32_t kNoLog = ~std::uint32_t{0};

  /// Builds F_{p^m}. The modulus is the lexicographically smallest monic
  /// irreducible of degree m (coefficients compared from the constant term
  /// upward); the primitive element is the generator with the smallest index.
  static FieldCtx build(std::uint32_t p, std::uint32_t m) {
    if (m < 1) throw Error(ErrorKind::NotADivisor, "extension degree must be >= 1");
    if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    if (p == 2) throw Error(ErrorKind::EvenCharacteristic, "characteristic 2 is not supported");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      q *= p;
      if (q > kMaxFieldSize)
        throw Error(ErrorKind::FieldTooLarge,
                    std::to_string(p) + "^" + std::to_string(m) + " exceeds 2^24");
    }
    FieldCtx ctx;
    ctx.params_.p = p;
    ctx.params_.m = m;
    ctx.params_.q = static_cast<std::uint32_t>(q);
    ctx.params_.modulus = find_modulus(p, m, q);
    ctx.build_tables();
    return ctx;
  }

  const FieldParams& params() const noexcept { return params_; }
  std::uint32_t p() const noexcept { return params_.p; }
  std::uint32_t m() const noexcept { return params_.m; }
  std::uint32_t q() const noexcept { return params_.q; }
  /// Order of the multiplicative group, q - 1.
  std::uint32_t group_order() const noexcept { return order_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  FieldElement primitive() const noexcept { return {exp_[1]}; }

  FieldElement element(std::uint64_t index) const {
    if (index >= params_.q)
      throw Error(ErrorKind::NotInSubfield, "index " + std::to_string(index) + " out of range");
    return {static_cast<std::uint32_t>(index)};
  }

  FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > params_.m) throw Error(ErrorKind::NotInSubfield, "too many coefficients");
    std::uint64_t idx = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] >= params_.p) throw Error(ErrorKind::NotInSubfield, "coefficient out of range");
      idx = idx * params_.p + coeffs[i];
    }
    return {static_cast<std::uint32_t>(idx)};
  }

  std::vector<std::uint32_t> coefficients(FieldElement x) const {
    std::vector<std::uint32_t> c(params_.m);
    std::uint32_t v = x.index;
    for (auto& ci : c) {
      ci = v % params_.p;
      v /= params_.p;
    }
    return c;
  }

  /// Image of an integer under Z -> F_p -> F_q.
  FieldElement from_integer(std::int64_t v) const {
    const std::int64_t p = params_.p;
    return {static_cast<std::uint32_t>(((v % p) + p) % p)};
  }

  /// pi^e.
  FieldElement exp(std::uint64_t e) const noexcept { return {exp_[e % order_]}; }

  std::uint32_t log(FieldElement x) const {
    if (x.index == 0) throw Error(ErrorKind::DivisionByZero, "log of zero");
    return log_[x.index];
  }

  FieldElement add(FieldElement x, FieldElement y) const noexcept {
    if (x.index == 0) return y;
    if (y.index == 0) return x;
    const std::uint32_t lx = log_[x.index];
    const std::uint32_t ly = log_[y.index];
    const std::uint32_t n = ly >= lx ? ly - lx : ly + order_ - lx;
    const std::uint32_t z = zech_[n];
    if (z == kNoLog) return {0};
    std::uint32_t r = lx + z;
    if (r >= order_) r -= order_;
    return {exp_[r]};
  }

  FieldElement neg(FieldElement x) const noexcept {
    if (x.index == 0) return x;
    std::uint32_t r = log_[x.index] + order_ / 2;
    if (r >= order_) r -= order_;
    return {exp_[r]};
  }

  FieldElement sub(FieldElement x, FieldElement y) const noexcept { return add(x, neg(y)); }

  FieldElement mul(FieldElement x, FieldElement y) const noexcept {
    if (x.index == 0 || y.index == 0) return {0};
    std::uint32_t r = log_[x.index] + log_[y.index];
    if (r >= order_) r -= order_;
    return {exp_[r]};
  }

  FieldElement inv(FieldElement x) const {
    if (x.index == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    const std::uint32_t l = log_[x.index];
    return {exp_[l == 0 ? 0 : order_ - l]};
  }

  FieldElement div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }

  /// x^e with 0^0 = 1.
  FieldElement pow(FieldElement x, std::uint64_t e) const noexcept {
    if (x.index == 0) return e == 0 ? one() : zero();
    return {exp_[mulmod(log_[x.index], e % order_, order_)]};
  }

  /// x^{p^i}.
  FieldElement frobenius(FieldElement x, std::uint64_t i) const noexcept {
    if (x.index == 0) return x;
    const std::uint64_t e = powmod(params_.p, i % params_.m, order_);
    return {exp_[mulmod(log_[x.index], e, order_)]};
  }

  bool divides_degree(std::uint32_t r) const noexcept { return r >= 1 && params_.m % r == 0; }

  bool in_subfield(FieldElement x, std::uint32_t r) const {
    require_divisor(r);
    return frobenius(x, r) == x;
  }

  /// Tr^{p^m}_{p^r}(x), an element of F_{p^r}.
  FieldElement trace(FieldElement x, std::uint32_t r) const {
    require_divisor(r);
    if (r == params_.m) return x;
    return {traces_[r][x.index]};
  }

  /// Tr^{p^from}_{p^to}(y) for y in F_{p^from}, evaluated from the definition.
  FieldElement relative_trace(FieldElement y, std::uint32_t from, std::uint32_t to) const {
    require_divisor(from);
    require_divisor(to);
    if (from % to != 0) throw Error(ErrorKind::NotADivisor, "trace target must divide source");
    if (!in_subfield(y, from)) throw Error(ErrorKind::NotInSubfield, "trace argument");
    FieldElement acc = zero();
    for (std::uint32_t j = 0; j < from / to; ++j) acc = add(acc, frobenius(y, std::uint64_t{to} * j));
    return acc;
  }

  /// Quadratic character of F_{p^r}: 0 at 0, +1 on nonzero squares, -1 otherwise.
  int quadratic_character(FieldElement x, std::uint32_t r) const {
    require_divisor(r);
    if (!in_subfield(x, r)) throw Error(ErrorKind::NotInSubfield, "character argument");
    if (x.index == 0) return 0;
    const std::uint64_t sub_order = checked_pow(params_.p, r) - 1;
    const std::uint64_t sub_log = log_[x.index] / (order_ / sub_order);
    return sub_log % 2 == 0 ? 1 : -1;
  }

  // Raw tables for hot loops.
  std::span<const std::uint32_t> log_table() const noexcept { return log_; }
  std::span<const std::uint32_t> exp_table() const noexcept { return exp_; }
  std::span<const std::uint32_t> zech_table() const noexcept { return zech_; }
  std::span<const std::uint32_t> trace_table(std::uint32_t r) const {
    require_divisor(r);
    if (r == params_.m) throw Error(ErrorKind::NotADivisor, "trace to the full field is the identity");
    return traces_[r];
  }

  /// Addition of two discrete logs (kNoLog stands for zero).
  std::uint32_t add_logs(std::uint32_t lx, std::uint32_t ly) const noexcept {
    if (lx == kNoLog) return ly;
    if (ly == kNoLog) return lx;
    const std::uint32_t n = ly >= lx ? ly - lx : ly + order_ - lx;
    const std::uint32_t z = zech_[n];
    if (z == kNoLog) return kNoLog;
    std::uint32_t r = lx + z;
    return r >= order_ ? r - order_ : r;
  }

 private:
  FieldCtx() = default;

  void require_divisor(std::uint32_t r) const {
    if (!divides_degree(r))
      throw Error(ErrorKind::NotADivisor,
                  std::to_string(r) + " does not divide " + std::to_string(params_.m));
  }

  static std::vector<std::uint32_t> find_modulus(std::uint32_t p, std::uint32_t m, std::uint64_t q) {
    // The enumeration key has c_0 as its most significant digit, so keys
    // increase in the low-degree-first lexicographic order.
    for (std::uint64_t key = 0; key < q; ++key) {
      detail::PrimePoly f(m + 1, 0);
      std::uint64_t k = key;
      for (std::uint32_t j = m; j-- > 0;) {
        f[j] = static_cast<std::uint32_t>(k % p);
        k /= p;
      }
      f[m] = 1;
      if (detail::is_irreducible(f, p)) return f;
    }
    throw Error(ErrorKind::NonPrime, "no irreducible polynomial found");
  }

  detail::PrimePoly to_poly(std::uint32_t index) const {
    detail::PrimePoly a(params_.m);
    for (auto& c : a) {
      c = index % params_.p;
      index /= params_.p;
    }
    detail::trim(a);
    return a;
  }

  std::uint32_t to_index(const detail::PrimePoly& a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = a.size(); i-- > 0;) idx = idx * params_.p + a[i];
    return static_cast<std::uint32_t>(idx);
  }

  void build_tables() {
    const std::uint32_t p = params_.p;
    const std::uint32_t q = params_.q;
    const auto& f = params_.modulus;
    order_ = q - 1;

    const auto factors = prime_factors(order_);
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 1; cand < q && gen == 0; ++cand) {
      const auto g = to_poly(cand);
      bool ok = true;
      for (std::uint64_t l : factors) {
        if (detail::poly_powmod(g, order_ / l, f, p) == detail::PrimePoly{1}) {
          ok = false;
          break;
        }
      }
      if (ok) gen = cand;
    }
    if (gen == 0) throw Error(ErrorKind::NonPrime, "no primitive element found");

    // Multiplication by the generator is F_p-linear; column j is gen * x^j.
    const std::uint32_t m = params_.m;
    std::vector<std::vector<std::uint32_t>> columns(m);
    for (std::uint32_t j = 0; j < m; ++j) {
      detail::PrimePoly xj(j + 1, 0);
      xj[j] = 1;
      auto col = detail::poly_mulmod(to_poly(gen), xj, f, p);
      col.resize(m, 0);
      columns[j] = std::move(col);
    }

    exp_.assign(order_, 0);
    log_.assign(q, kNoLog);
    std::vector<std::uint32_t> cur(m, 0), next(m);
    cur[0] = 1;
    for (std::uint32_t e = 0; e < order_; ++e) {
      std::uint64_t idx = 0;
      for (std::uint32_t i = m; i-- > 0;) idx = idx * p + cur[i];
      if (log_[idx] != kNoLog)
        throw Error(ErrorKind::NonPrime, "generator order check failed");
      exp_[e] = static_cast<std::uint32_t>(idx);
      log_[idx] = e;
      std::fill(next.begin(), next.end(), 0);
      for (std::uint32_t j = 0; j < m; ++j) {
        if (cur[j] == 0) continue;
        for (std::uint32_t i = 0; i < m; ++i)
          next[i] = static_cast<std::uint32_t>((next[i] + std::uint64_t{cur[j]} * columns[j][i]) % p);
      }
      std::swap(cur, next);
    }

    // zech[e] = log(1 + pi^e); adding one only touches the constant digit.
    zech_.assign(order_, kNoLog);
    for (std::uint32_t e = 0; e < order_; ++e) {
      const std::uint32_t x = exp_[e];
      const std::uint32_t c0 = x % p;
      const std::uint32_t y = x - c0 + (c0 + 1) % p;
      zech_[e] = log_[y];
    }

    traces_.assign(m + 1, {});
    for (std::uint32_t r = 1; r < m; ++r) {
      if (m % r != 0) continue;
      auto& table = traces_[r];
      table.assign(q, 0);
      const std::uint32_t terms = m / r;
      std::vector<std::uint64_t> powers(terms);
      for (std::uint32_t j = 0; j < terms; ++j) powers[j] = powmod(p, std::uint64_t{r} * j, order_);
      for (std::uint32_t x = 1; x < q; ++x) {
        FieldElement acc{0};
        for (std::uint32_t j = 0; j < terms; ++j)
          acc = add(acc, FieldElement{exp_[mulmod(log_[x], powers[j], order_)]});
        if (frobenius(acc, r) != acc)
          throw Error(ErrorKind::NotInSubfield, "trace left the subfield");
        table[x] = acc.index;
      }
    }
  }

  FieldParams params_;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::vector<std::uint32_t>> traces_;
};

inline FieldCtx build_field(std::uint32_t p, std::uint32_t m) { return FieldCtx::build(p, m); }

/// Compact representation of a small subfield F_{p^r} of a context.
///
/// Code 0 is zero and code k + 1 is g^k for g = pi^{(q-1)/(p^r-1)}, so
/// multiplication and the quadratic character are pure integer arithmetic
/// and addition is one lookup. The referenced FieldCtx must outlive this.
class Subfield {
 public:
  using Code = std::uint16_t;
  static constexpr std::uint32_t kMaxOrder = 4096;

  Subfield(const FieldCtx& ctx, std::uint32_t r) : ctx_(&ctx), degree_(r) {
    if (!ctx.divides_degree(r)) throw Error(ErrorKind::NotADivisor, "subfield degree");
    const std::uint64_t order = checked_pow(ctx.p(), r);
    if (order > kMaxOrder) throw Error(ErrorKind::FieldTooLarge, "subfield too large for compact tables");
    order_ = static_cast<std::uint32_t>(order);
    step_ = ctx.group_order() / (order_ - 1);
    decode_.resize(order_);
    decode_[0] = 0;
    for (std::uint32_t k = 0; k + 1 < order_; ++k) decode_[k + 1] = ctx.exp(std::uint64_t{k} * step_).index;
    add_.resize(std::size_t{order_} * order_);
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        add_[std::size_t{a} * order_ + b] =
            encode(ctx.add(FieldElement{decode_[a]}, FieldElement{decode_[b]}));
    trace_codes_.resize(ctx.q());
    for (std::uint32_t x = 0; x < ctx.q(); ++x)
      trace_codes_[x] = encode(ctx.trace(FieldElement{x}, r));
  }

  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t order() const noexcept { return order_; }

  Code add(Code a, Code b) const noexcept { return add_[std::size_t{a} * order_ + b]; }

  Code neg(Code a) const noexcept {
    if (a == 0) return 0;
    std::uint32_t k = (a - 1) + (order_ - 1) / 2;
    if (k >= order_ - 1) k -= order_ - 1;
    return static_cast<Code>(k + 1);
  }

  Code sub(Code a, Code b) const noexcept { return add(a, neg(b)); }

  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t k = (a - 1) + (b - 1);
    if (k >= order_ - 1) k -= order_ - 1;
    return static_cast<Code>(k + 1);
  }

  Code inv(Code a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    const std::uint32_t k = a - 1;
    return static_cast<Code>((k == 0 ? 0 : order_ - 1 - k) + 1);
  }

  int character(Code a) const noexcept {
    if (a == 0) return 0;
    return (a - 1) % 2 == 0 ? 1 : -1;
  }

  Code encode(FieldElement x) const {
    if (x.index == 0) return 0;
    const std::uint32_t l = ctx_->log(x);
    if (l % step_ != 0) throw Error(ErrorKind::NotInSubfield, "element not in subfield");
    return static_cast<Code>(l / step_ + 1);
  }

  FieldElement decode(Code c) const noexcept { return {decode_[c]}; }

  /// Tr^{q}_{p^r} composed with encode, indexed by F_q element index.
  std::span<const Code> trace_codes() const noexcept { return trace_codes_; }

  const FieldCtx& field() const noexcept { return *ctx_; }

 private:
  const FieldCtx* ctx_;
  std::uint32_t degree_;
  std::uint32_t order_ = 0;
  std::uint32_t step_ = 0;
  std::vector<std::uint32_t> decode_;
  std::vector<Code> add_;
  std::vector<Code> trace_codes_;
};

}  // namespace weightdist
