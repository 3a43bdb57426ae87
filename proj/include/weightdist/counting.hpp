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

// Solution counts for the diagonal systems
//   e1 x1^2 + e2 x2^2 = u,  e1 x1^{d1} + e2 x2^{d1} = v,  e1 x1^{d2} + e2 x2^{d2} = w
// collected in bulk as fingerprint histograms, and the power moments of T
// derived from them.
//
// Histogram storage: a fingerprint (u, v, w) packs the three canonical
// indices into one 64-bit key (3 * bit_width(q - 1) bits, so q <= 2^21).
// Keys and counts live in two flat arrays addressed by open addressing with
// linear probing; the slot is the top bits of key * 2^64/phi (Fibonacci
// hashing) and the table doubles at load 1/2. Workers fill private tables
// over contiguous x1 ranges which are then merged in worker order.

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightdist/bigint.hpp"
#include "weightdist/code.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"
#include "weightdist/number_theory.hpp"
#include "weightdist/parallel.hpp"

namespace weightdist {

struct Fingerprint {
  FieldElement u;
  FieldElement v;
  FieldElement w;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

class FingerprintCodec {
 public:
  static constexpr std::uint64_t kMaxField = std::uint64_t{1} << 21;

  explicit FingerprintCodec(std::uint64_t q) {
    if (q > kMaxField) throw Error(ErrorKind::BudgetExceeded, "fingerprint keys need q <= 2^21");
    bits_ = static_cast<std::uint32_t>(std::bit_width(q - 1));
    mask_ = (std::uint64_t{1} << bits_) - 1;
  }

  std::uint64_t encode(std::uint32_t u, std::uint32_t v, std::uint32_t w) const noexcept {
    return (std::uint64_t{u} << (2 * bits_)) | (std::uint64_t{v} << bits_) | w;
  }
  std::uint64_t encode(const Fingerprint& f) const noexcept { return encode(f.u.index, f.v.index, f.w.index); }

  Fingerprint decode(std::uint64_t key) const noexcept {
    return {FieldElement{static_cast<std::uint32_t>(key >> (2 * bits_))},
            FieldElement{static_cast<std::uint32_t>((key >> bits_) & mask_)},
            FieldElement{static_cast<std::uint32_t>(key & mask_)}};
  }

 private:
  std::uint32_t bits_ = 0;
  std::uint64_t mask_ = 0;
};

class CountingTable {
 public:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  explicit CountingTable(std::uint64_t expected = 16) {
    std::uint64_t cap = 16;
    while (cap < 2 * expected) cap *= 2;
    resize(cap);
  }

  void add(std::uint64_t key, std::uint64_t n) {
    std::uint64_t slot = home(key);
    while (keys_[slot] != kEmpty && keys_[slot] != key) slot = (slot + 1) & mask_;
    if (keys_[slot] == kEmpty) {
      keys_[slot] = key;
      counts_[slot] = n;
      if (++size_ * 2 > keys_.size()) grow();
    } else {
      counts_[slot] += n;
    }
  }

  std::uint64_t get(std::uint64_t key) const noexcept {
    std::uint64_t slot = home(key);
    while (keys_[slot] != kEmpty) {
      if (keys_[slot] == key) return counts_[slot];
      slot = (slot + 1) & mask_;
    }
    return 0;
  }

  void merge(const CountingTable& other) {
    other.for_each([&](std::uint64_t key, std::uint64_t n) { add(key, n); });
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] != kEmpty) fn(keys_[i], counts_[i]);
  }

  std::uint64_t size() const noexcept { return size_; }

  BigInt total() const {
    BigInt t = 0;
    for_each([&](std::uint64_t, std::uint64_t n) { t += n; });
    return t;
  }

 private:
  std::uint64_t home(std::uint64_t key) const noexcept { return (key * 0x9E3779B97F4A7C15ull) >> shift_; }

  void resize(std::uint64_t cap) {
    keys_.assign(cap, kEmpty);
    counts_.assign(cap, 0);
    mask_ = cap - 1;
    shift_ = 64 - static_cast<std::uint32_t>(std::countr_zero(cap));
    size_ = 0;
  }

  void grow() {
    auto keys = std::move(keys_);
    auto counts = std::move(counts_);
    resize(keys.size() * 2);
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] != kEmpty) add(keys[i], counts[i]);
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t mask_ = 0;
  std::uint32_t shift_ = 64;
  std::uint64_t size_ = 0;
};

/// Discrete logs of x^2, x^{d1}, x^{d2} for every x (kNoLog at 0).
struct PowerLogs {
  std::vector<std::uint32_t> sq;
  std::vector<std::uint32_t> d1;
  std::vector<std::uint32_t> d2;

  PowerLogs(const CodeParams& params, const FieldCtx& ctx) : sq(ctx.q()), d1(ctx.q()), d2(ctx.q()) {
    const std::uint64_t n = ctx.group_order();
    sq[0] = d1[0] = d2[0] = FieldCtx::kNoLog;
    for (std::uint32_t x = 1; x < ctx.q(); ++x) {
      const std::uint64_t l = ctx.log(FieldElement{x});
      sq[x] = static_cast<std::uint32_t>(mulmod(l, 2, n));
      d1[x] = static_cast<std::uint32_t>(mulmod(l, params.d1_exp, n));
      d2[x] = static_cast<std::uint32_t>(mulmod(l, params.d2_exp, n));
    }
  }
};

/// fp(x) = (x^2, x^{d1}, x^{d2}).
inline Fingerprint fingerprint_of(const CodeParams& params, const FieldCtx& ctx, FieldElement x) {
  return {power_of(ctx, x, 2), power_of(ctx, x, params.d1_exp), power_of(ctx, x, params.d2_exp)};
}

inline Fingerprint scale_fingerprint(const FieldCtx& ctx, FieldElement s, const Fingerprint& f) {
  return {ctx.mul(s, f.u), ctx.mul(s, f.v), ctx.mul(s, f.w)};
}

/// Counts of (x1, x2) by fingerprint e1 fp(x1) + e2 fp(x2).
struct FingerprintHistogram {
  FieldElement e1;
  FieldElement e2;
  FingerprintCodec codec;
  CountingTable table;

  std::uint64_t operator[](const Fingerprint& f) const { return table.get(codec.encode(f)); }
};

inline constexpr std::uint64_t kMaxHistogramField = 4096;

inline FingerprintHistogram build_histogram(const CodeParams& params, const FieldCtx& ctx, FieldElement e1,
                                            FieldElement e2, unsigned workers = 1) {
  if (ctx.q() > kMaxHistogramField)
    throw Error(ErrorKind::BudgetExceeded, "histograms are limited to q <= " + std::to_string(kMaxHistogramField));
  if (e1.index == 0 || e2.index == 0) throw Error(ErrorKind::DivisionByZero, "histogram coefficients must be nonzero");
  const FingerprintCodec codec(ctx.q());
  const PowerLogs pw(params, ctx);
  const std::uint32_t q = ctx.q();
  const std::uint32_t n = ctx.group_order();
  const std::uint32_t l1 = ctx.log(e1);
  const std::uint32_t l2 = ctx.log(e2);
  // With equal coefficients the fingerprint is symmetric in (x1, x2).
  const bool symmetric = e1 == e2;
  const auto exp = ctx.exp_table();
  auto shifted = [n](std::uint32_t l, std::uint32_t by) -> std::uint32_t {
    if (l == FieldCtx::kNoLog) return l;
    const std::uint32_t r = l + by;
    return r >= n ? r - n : r;
  };
  auto index_of = [&](std::uint32_t l) -> std::uint32_t { return l == FieldCtx::kNoLog ? 0 : exp[l]; };

  workers = std::max(1u, workers);
  std::vector<CountingTable> local(workers, CountingTable(std::uint64_t{q} * q / workers / (symmetric ? 2 : 1)));
  parallel_for(workers, q, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& table = local[w];
    for (std::uint64_t x1 = begin; x1 < end; ++x1) {
      const std::uint32_t a = shifted(pw.sq[x1], l1), b = shifted(pw.d1[x1], l1), c = shifted(pw.d2[x1], l1);
      for (std::uint64_t x2 = symmetric ? x1 : 0; x2 < q; ++x2) {
        const std::uint32_t u = ctx.add_logs(a, shifted(pw.sq[x2], l2));
        const std::uint32_t v = ctx.add_logs(b, shifted(pw.d1[x2], l2));
        const std::uint32_t wv = ctx.add_logs(c, shifted(pw.d2[x2], l2));
        table.add(codec.encode(index_of(u), index_of(v), index_of(wv)), symmetric && x2 != x1 ? 2 : 1);
      }
    }
  });
  for (unsigned w = 1; w < workers; ++w) {
    local[0].merge(local[w]);
    local[w] = CountingTable();
  }
  return {e1, e2, codec, std::move(local[0])};
}

inline FingerprintHistogram build_histogram(const CodeParams& params, const FieldCtx& ctx, int sign1, int sign2,
                                            unsigned workers = 1) {
  return build_histogram(params, ctx, ctx.from_integer(sign1), ctx.from_integer(sign2), workers);
}

/// The histogram of sigma * (fingerprints of base): lookup(t) = base[t / sigma].
struct HistogramView {
  const FingerprintHistogram* base = nullptr;
  FieldElement sigma{1};

  std::uint64_t lookup(const FieldCtx& ctx, const Fingerprint& t) const {
    return (*base)[scale_fingerprint(ctx, ctx.inv(sigma), t)];
  }
};

/// The histograms needed for the lemmas and the moments: pp = (+,+),
/// pm = (+,-) and pl = (1, lambda); pl is pm when lambda = -1.
struct CountingTables {
  const CodeParams* params = nullptr;
  const FieldCtx* ctx = nullptr;
  FieldElement lambda;
  FingerprintHistogram pp;
  FingerprintHistogram pm;
  std::optional<FingerprintHistogram> pl;

  const FingerprintHistogram& lambda_mixed() const { return pl ? *pl : pm; }

  /// View for the coefficient pair (nu1, nu2), each nu in {1, lambda}.
  HistogramView view(bool nu1_lambda, bool nu2_lambda) const {
    if (nu1_lambda == nu2_lambda) return {&pp, nu1_lambda ? lambda : ctx->one()};
    return {&lambda_mixed(), ctx->one()};
  }
};

inline CountingTables build_counting_tables(const CodeParams& params, const FieldCtx& ctx, unsigned workers = 1) {
  const FieldElement lambda = lambda_element(params, ctx);
  auto pp = build_histogram(params, ctx, 1, 1, workers);
  auto pm = build_histogram(params, ctx, 1, -1, workers);
  std::optional<FingerprintHistogram> pl;
  if (!params.lambda_is_minus_one) pl = build_histogram(params, ctx, ctx.one(), lambda, workers);
  return {&params, &ctx, lambda, std::move(pp), std::move(pm), std::move(pl)};
}

struct LemmaCheck {
  std::string name;
  BigInt expected;
  BigInt actual;
  bool claimed = true;
  bool pass = false;
};

namespace detail {

inline LemmaCheck lemma(const CodeParams& params, std::string name, BigInt expected, BigInt actual) {
  const bool claimed = params.q0_mod4 == 3;
  const bool pass = !claimed || expected == actual;
  return {std::move(name), std::move(expected), std::move(actual), claimed, pass};
}

/// sum over t of a[t] * b[f * t] for base tables a, b and a scale f.
inline BigInt convolve(const FieldCtx& ctx, const FingerprintHistogram& a, const FingerprintHistogram& b,
                       FieldElement f) {
  unsigned __int128 acc = 0;
  a.table.for_each([&](std::uint64_t key, std::uint64_t n) {
    const Fingerprint t = scale_fingerprint(ctx, f, a.codec.decode(key));
    acc += static_cast<unsigned __int128>(n) * b[t];
  });
  BigInt r = static_cast<std::uint64_t>(acc >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(acc);
  return r;
}

}  // namespace detail

/// N2 = #(+,+) at 0 and N2bar = #(+,-) at 0.
inline std::array<LemmaCheck, 2> count_pair_systems(const CountingTables& t) {
  const auto& p = *t.params;
  const Fingerprint zero{};
  return {detail::lemma(p, "N2", 1, t.pp[zero]),
          detail::lemma(p, "N2bar", 2 * BigInt(p.q) - 1, t.pm[zero])};
}

/// N3 = sum_x pp[-fp(x)], N3bar = sum_x pp[fp(x)].
inline std::array<LemmaCheck, 2> count_triple_systems(const CountingTables& t) {
  const auto& p = *t.params;
  const auto& ctx = *t.ctx;
  const FieldElement minus = ctx.from_integer(-1);
  BigInt n3 = 0, n3bar = 0;
  for (std::uint32_t x = 0; x < ctx.q(); ++x) {
    const Fingerprint f = fingerprint_of(p, ctx, FieldElement{x});
    n3 += t.pp[scale_fingerprint(ctx, minus, f)];
    n3bar += t.pp[f];
  }
  const BigInt expected = big_pow(p.p, p.m + p.d) + big_pow(p.p, p.m) - big_pow(p.p, p.d);
  return {detail::lemma(p, "N3", expected, n3), detail::lemma(p, "N3bar", expected, n3bar)};
}

/// N4 = sum_t pp[t] pp[-t], N4bar = sum_t pp[t] pm[-t], N4tilde = sum_t pp[t]^2.
inline std::array<LemmaCheck, 3> count_quad_systems(const CountingTables& t) {
  const auto& p = *t.params;
  const auto& ctx = *t.ctx;
  const FieldElement minus = ctx.from_integer(-1);
  const BigInt q = p.q, q0 = p.q0;
  const BigInt n4_expected = 1 + (q - 1) * (q0 + 1) * (2 * q - q0 + 1);
  const BigInt n4bar_expected = big_pow(p.p, p.m + 2 * p.d) + q - q0 * q0;
  return {detail::lemma(p, "N4", n4_expected, detail::convolve(ctx, t.pp, t.pp, minus)),
          detail::lemma(p, "N4bar", n4bar_expected, detail::convolve(ctx, t.pp, t.pm, minus)),
          detail::lemma(p, "N4tilde", n4_expected, detail::convolve(ctx, t.pp, t.pp, ctx.one()))};
}

/// sum over (a, b, c) of T(a, b, c)^j, j in 1..4, from the histograms:
/// q^3 * sum over nu in {1, lambda}^j of #{sum_i nu_i fp(x_i) = 0}.
inline BigInt moment(const CountingTables& t, std::uint32_t j) {
  const auto& p = *t.params;
  const auto& ctx = *t.ctx;
  const BigInt q3 = big_pow(p.q, 3);
  const FieldElement minus = ctx.from_integer(-1);
  switch (j) {
    case 1:
      return 2 * q3;
    case 2: {
      BigInt total = 0;
      for (int mask = 0; mask < 4; ++mask) total += t.view(mask & 1, mask & 2).lookup(ctx, Fingerprint{});
      return q3 * total;
    }
    case 3: {
      BigInt total = 0;
      for (std::uint32_t x = 0; x < ctx.q(); ++x) {
        const Fingerprint f = fingerprint_of(p, ctx, FieldElement{x});
        for (int mask = 0; mask < 8; ++mask) {
          const FieldElement nu3 = mask & 4 ? t.lambda : ctx.one();
          total += t.view(mask & 1, mask & 2).lookup(ctx, scale_fingerprint(ctx, ctx.mul(minus, nu3), f));
        }
      }
      return q3 * total;
    }
    case 4: {
      // Views (1,1), (lambda,lambda), mixed with multiplicities 1, 1, 2.
      const HistogramView views[3] = {t.view(false, false), t.view(true, true), t.view(false, true)};
      const int mult[3] = {1, 1, 2};
      BigInt total = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
          // sum_t A[t] B[-t] = sum_k baseA[k] baseB[-sigmaA/sigmaB k].
          const FieldElement f = ctx.div(ctx.mul(minus, views[a].sigma), views[b].sigma);
          const BigInt conv = detail::convolve(ctx, *views[a].base, *views[b].base, f);
          total += conv * mult[a] * mult[b] * (a == b ? 1 : 2);
        }
      return q3 * total;
    }
    default:
      throw Error(ErrorKind::BudgetExceeded, "moments are implemented for j = 1..4");
  }
}

/// The same moments without histograms. Scaling every x_i by a unit keeps
/// the system sum nu_i fp(x_i) = 0, so a j-variable count splits into the
/// solutions with x1 = 0 and (q - 1) times those with x1 = 1. The remaining
/// sums run over x up to sign (fp(-x) = fp(x)). Cost O(q^{j-2}) per class.
class HomogeneousMoments {
 public:
  HomogeneousMoments(const CodeParams& params, const FieldCtx& ctx, unsigned workers = 1)
      : params_(params), ctx_(ctx), workers_(std::max(1u, workers)), n_(ctx.group_order()),
        half_(n_ / 2), lambda_log_(static_cast<std::uint32_t>(params.lambda_log % n_)) {}

  BigInt moment(std::uint32_t j) {
    if (j < 1 || j > 4) throw Error(ErrorKind::BudgetExceeded, "moments are implemented for j = 1..4");
    BigInt total = 0;
    for (std::uint32_t k = 0; k <= j; ++k) total += binomial(j, k) * count(k, j - k);
    return big_pow(params_.q, 3) * total;
  }

  /// #{x in F_q^{kl + k1}: sum nu_i fp(x_i) = 0} with kl coefficients lambda and k1 ones.
  BigInt count(std::uint32_t kl, std::uint32_t k1) {
    const std::uint32_t j = kl + k1;
    if (j == 0) return 1;
    if (j == 1) return 1;
    const auto key = std::make_pair(kl, k1);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::uint32_t> nus;
    for (std::uint32_t i = 0; i < kl; ++i) nus.push_back(lambda_log_);
    for (std::uint32_t i = 0; i < k1; ++i) nus.push_back(0);
    const std::uint32_t first = nus.front();
    nus.erase(nus.begin());
    // Target -nu1 * fp(1) = -nu1 * (1, 1, 1).
    const std::uint32_t tl = add_mod(first, half_);
    const BigInt rest = kl > 0 ? count(kl - 1, k1) : count(kl, k1 - 1);
    const BigInt result = rest + BigInt(n_) * BigInt(solutions({tl, tl, tl}, nus));
    memo_[key] = result;
    return result;
  }

 private:
  using LogTriple = std::array<std::uint32_t, 3>;

  static BigInt binomial(std::uint32_t n, std::uint32_t k) {
    BigInt r = 1;
    for (std::uint32_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  }

  std::uint32_t add_mod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint32_t>((a + b) % n_);
  }

  /// #{x: nu fp(x) = target}.
  std::uint64_t preimages(const LogTriple& t, std::uint32_t nu) const {
    constexpr auto kNone = FieldCtx::kNoLog;
    if (t[0] == kNone) return t[1] == kNone && t[2] == kNone ? 1 : 0;
    if (t[1] == kNone || t[2] == kNone) return 0;
    const std::uint32_t lu = add_mod(t[0], n_ - nu);
    if (lu % 2 != 0) return 0;
    const std::uint64_t i = lu / 2;
    if (add_mod(t[1], n_ - nu) != mulmod(params_.d1_exp, i, n_)) return 0;
    if (add_mod(t[2], n_ - nu) != mulmod(params_.d2_exp, i, n_)) return 0;
    return 2;
  }

  /// target - c * fp(pi^i) in logs, with cneg = log(-c).
  LogTriple step(const LogTriple& t, std::uint32_t cneg, std::uint64_t i) const {
    return {ctx_.add_logs(t[0], add_mod(cneg, mulmod(2, i, n_))),
            ctx_.add_logs(t[1], add_mod(cneg, mulmod(params_.d1_exp, i, n_))),
            ctx_.add_logs(t[2], add_mod(cneg, mulmod(params_.d2_exp, i, n_)))};
  }

  /// #{x: sum_i nus[i] fp(x_i) = target}, for 1 to 3 variables.
  std::uint64_t solutions(const LogTriple& target, const std::vector<std::uint32_t>& nus) const {
    if (nus.size() == 1) return preimages(target, nus[0]);
    const std::uint32_t cneg = add_mod(nus[0], half_);
    const std::vector<std::uint32_t> rest(nus.begin() + 1, nus.end());
    if (nus.size() == 2) {
      std::uint64_t total = preimages(target, rest[0]);
      for (std::uint64_t i = 0; i < half_; ++i) total += 2 * preimages(step(target, cneg, i), rest[0]);
      return total;
    }
    if (nus.size() != 3) throw Error(ErrorKind::BudgetExceeded, "at most four variables");
    // Outer x over {0} and representatives pi^i (i < n/2), split across workers.
    std::vector<std::uint64_t> partial(workers_, 0);
    parallel_for(workers_, half_ + 1, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      std::uint64_t acc = 0;
      for (std::uint64_t r = begin; r < end; ++r) {
        const LogTriple t = r == 0 ? target : step(target, cneg, r - 1);
        acc += (r == 0 ? 1 : 2) * inner(t, rest[0], rest[1]);
      }
      partial[w] = acc;
    });
    std::uint64_t total = 0;
    for (auto v : partial) total = checked_add(total, v);
    return total;
  }

  /// #{(x, y): nu_x fp(x) + nu_y fp(y) = t}, the hot loop of the four-variable count.
  std::uint64_t inner(const LogTriple& t, std::uint32_t nu_x, std::uint32_t nu_y) const {
    std::uint64_t total = preimages(t, nu_y);
    const std::uint32_t cneg = add_mod(nu_x, half_);
    const std::uint32_t step_d1 = static_cast<std::uint32_t>(params_.d1_exp % n_);
    const std::uint32_t step_d2 = static_cast<std::uint32_t>(params_.d2_exp % n_);
    std::uint32_t lu = cneg, lv = cneg, lw = cneg;
    const std::uint32_t n = n_;
    auto adv = [n](std::uint32_t& l, std::uint32_t by) {
      l += by;
      if (l >= n) l -= n;
    };
    for (std::uint64_t i = 0; i < half_; ++i) {
      const std::uint32_t u = ctx_.add_logs(t[0], lu);
      // Parity test on u first: an odd log of u / nu_y has no square root.
      if (u != FieldCtx::kNoLog ? ((u + n - nu_y) % n) % 2 == 0 : true)
        total += 2 * preimages({u, ctx_.add_logs(t[1], lv), ctx_.add_logs(t[2], lw)}, nu_y);
      adv(lu, 2);
      adv(lv, step_d1);
      adv(lw, step_d2);
    }
    return total;
  }

  const CodeParams& params_;
  const FieldCtx& ctx_;
  unsigned workers_;
  std::uint32_t n_;
  std::uint32_t half_;
  std::uint32_t lambda_log_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, BigInt> memo_;
};

inline BigInt moment_homogeneous(const CodeParams& params, const FieldCtx& ctx, std::uint32_t j,
                                 unsigned workers = 1) {
  return HomogeneousMoments(params, ctx, workers).moment(j);
}

/// Distribution over (b, c) in (F_q^*)^2 of one family of solution counts.
struct SublemmaDistribution {
  std::string name;
  std::uint64_t at_one_one = 0;
  std::map<std::uint64_t, std::uint64_t> multiplicities;  // value -> number of (b, c)
  std::uint64_t stray = 0;  // nonzero counts with b = 0 or c = 0
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> values;
};

struct SublemmaReport {
  std::array<SublemmaDistribution, 3> distributions;
  std::vector<LemmaCheck> checks;
};

namespace detail {

/// Counts h[(u0, s b, s c)] over (b, c), read off the stored entries.
inline SublemmaDistribution extract_sublemma(const FieldCtx& ctx, std::string name, const FingerprintHistogram& h,
                                             FieldElement u0, FieldElement s) {
  SublemmaDistribution out;
  out.name = std::move(name);
  const FieldElement sinv = ctx.inv(s);
  h.table.for_each([&](std::uint64_t key, std::uint64_t n) {
    const Fingerprint f = h.codec.decode(key);
    if (f.u != u0 || n == 0) return;
    const FieldElement b = ctx.mul(sinv, f.v), c = ctx.mul(sinv, f.w);
    if (b.index == 0 || c.index == 0) {
      out.stray += n;
      return;
    }
    out.values[{b.index, c.index}] = n;
  });
  const std::uint64_t pairs = std::uint64_t{ctx.group_order()} * ctx.group_order();
  out.multiplicities[0] = pairs - out.values.size();
  for (const auto& [bc, n] : out.values) ++out.multiplicities[n];
  if (out.multiplicities[0] == 0) out.multiplicities.erase(0);
  if (auto it = out.values.find({ctx.one().index, ctx.one().index}); it != out.values.end())
    out.at_one_one = it->second;
  return out;
}

inline void sublemma_checks(const CodeParams& p, const SublemmaDistribution& d, std::uint64_t small,
                            std::vector<LemmaCheck>& checks) {
  const std::uint64_t big = 2 * small;
  const std::uint64_t big_count = (p.q - p.q0) / big;
  checks.push_back(lemma(p, d.name + "(1,1)", small, d.at_one_one));
  const auto count_of = [&](std::uint64_t v) -> std::uint64_t {
    auto it = d.multiplicities.find(v);
    return it == d.multiplicities.end() ? 0 : it->second;
  };
  checks.push_back(lemma(p, d.name + " multiplicity of " + std::to_string(big), big_count, count_of(big)));
  checks.push_back(lemma(p, d.name + " multiplicity of " + std::to_string(small), 1, count_of(small)));
  std::uint64_t other = 0;
  for (const auto& [v, c] : d.multiplicities)
    if (v != 0 && v != small && v != big) other += c;
  checks.push_back(lemma(p, d.name + " values outside {0, " + std::to_string(small) + ", " + std::to_string(big) + "}",
                         0, other));
  checks.push_back(lemma(p, d.name + " solutions with b = 0 or c = 0", 0, d.stray));
}

}  // namespace detail

/// N1(b,c) = #(+,+) at (1, b, c), N2(b,c) = #(+,+) at (-1, -b, -c) and
/// N3(b,c) = #(+,-) at (-1, -b, -c), over (b, c) in (F_q^*)^2.
inline SublemmaReport sublemma_distributions(const CountingTables& t) {
  const auto& p = *t.params;
  const auto& ctx = *t.ctx;
  const FieldElement minus = ctx.from_integer(-1);
  SublemmaReport r;
  r.distributions[0] = detail::extract_sublemma(ctx, "N1", t.pp, ctx.one(), ctx.one());
  r.distributions[1] = detail::extract_sublemma(ctx, "N2", t.pp, minus, minus);
  r.distributions[2] = detail::extract_sublemma(ctx, "N3", t.pm, minus, minus);
  detail::sublemma_checks(p, r.distributions[0], p.q0 + 1, r.checks);
  detail::sublemma_checks(p, r.distributions[2], p.q0 - 1, r.checks);
  std::uint64_t differing = 0;
  const auto& n1 = r.distributions[0].values;
  const auto& n2 = r.distributions[1].values;
  for (const auto& [bc, v] : n1) {
    auto it = n2.find(bc);
    if (it == n2.end() || it->second != v) ++differing;
  }
  for (const auto& [bc, v] : n2)
    if (!n1.contains(bc)) ++differing;
  r.checks.push_back(detail::lemma(p, "N1(b,c) = N2(b,c) for all (b,c)", 0, differing));
  return r;
}

}  // namespace weightdist
