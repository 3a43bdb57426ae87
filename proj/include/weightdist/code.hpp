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

// Parameter regime, parity-check polynomial and direct codeword oracle for the
// cyclic code over F_{p^t} whose codewords are
//   c_i = Tr^{q}_{p^t}(a pi^{2i} + b pi^{(p^k+1)i} + c pi^{(p^{2k}+1)i}),  0 <= i < q-1.

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "weightdist/bigint.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"
#include "weightdist/number_theory.hpp"

namespace weightdist {

struct CodeParams {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::uint32_t t = 0;
  std::uint32_t d = 0;   // gcd(m, k)
  std::uint32_t s = 0;   // m / d
  std::uint32_t m0 = 0;  // m / t
  std::uint64_t q = 0;   // p^m
  std::uint64_t q0 = 0;  // p^d
  std::uint64_t pt = 0;  // p^t
  /// p^k + 1 and p^{2k} + 1 reduced mod q - 1 (all that matters on F_q).
  std::uint64_t d1_exp = 0;
  std::uint64_t d2_exp = 0;
  /// The chosen non-square lambda of F_{p^t}, as an exponent of pi.
  std::uint64_t lambda_log = 0;
  bool lambda_is_minus_one = false;
  std::uint32_t q0_mod4 = 0;

  std::uint64_t group_order() const noexcept { return q - 1; }
  BigInt d1() const { return big_pow(p, k) + 1; }
  BigInt d2() const { return big_pow(p, 2 * std::uint64_t{k}) + 1; }
};

inline CodeParams validate_params(std::uint32_t p, std::uint32_t m, std::uint32_t k, std::uint32_t t) {
  if (m == 0 || k == 0) throw Error(ErrorKind::InvalidS, "m and k must be positive");
  if (t == 0) throw Error(ErrorKind::InvalidT, "t must be positive");
  if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorKind::EvenCharacteristic, "p must be odd");

  CodeParams c;
  c.p = p;
  c.m = m;
  c.k = k;
  c.t = t;
  c.d = std::gcd(m, k);
  c.s = m / c.d;
  if (c.s < 5 || c.s % 2 == 0)
    throw Error(ErrorKind::InvalidS, "s = m/gcd(m,k) = " + std::to_string(c.s) + " must be odd and >= 5");
  if (c.d % t != 0 || (c.d / t) % 2 == 0)
    throw Error(ErrorKind::InvalidT,
                "t = " + std::to_string(t) + " must divide d = " + std::to_string(c.d) + " with d/t odd");
  c.m0 = m / t;

  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxFieldSize) throw Error(ErrorKind::FieldTooLarge, "p^m exceeds 2^24");
  }
  c.q = q;
  c.q0 = checked_pow(p, c.d);
  c.pt = checked_pow(p, t);
  const std::uint64_t n = q - 1;
  c.d1_exp = (powmod(p, k, n) + 1) % n;
  c.d2_exp = (powmod(p, 2 * std::uint64_t{k}, n) + 1) % n;
  c.q0_mod4 = static_cast<std::uint32_t>(c.q0 % 4);
  if (c.pt % 4 == 3) {
    c.lambda_is_minus_one = true;
    c.lambda_log = n / 2;
  } else {
    // A generator of F_{p^t}^* has odd subfield log, hence is a non-square.
    c.lambda_log = n / (c.pt - 1);
  }
  return c;
}

inline FieldElement lambda_element(const CodeParams& params, const FieldCtx& ctx) {
  return ctx.exp(params.lambda_log);
}

/// Monic polynomial with coefficients (low-to-high) in the subfield F_{p^t}.
struct SubfieldPolynomial {
  std::vector<FieldElement> coeffs;
  std::uint32_t subfield_degree = 1;

  std::size_t degree() const noexcept { return coeffs.size() - 1; }
  friend bool operator==(const SubfieldPolynomial&, const SubfieldPolynomial&) = default;
};

struct CyclotomicCoset {
  std::uint64_t base = 0;
  std::vector<std::uint64_t> orbit;

  std::size_t size() const noexcept { return orbit.size(); }
};

/// Orbit of base under multiplication by multiplier modulo n.
inline CyclotomicCoset cyclotomic_coset(std::uint64_t base, std::uint64_t n, std::uint64_t multiplier) {
  CyclotomicCoset c;
  c.base = base % n;
  std::uint64_t e = c.base;
  do {
    c.orbit.push_back(e);
    e = mulmod(e, multiplier, n);
  } while (e != c.base);
  return c;
}

namespace detail {

using FqPoly = std::vector<FieldElement>;

inline void trim(const FieldCtx&, FqPoly& a) {
  while (!a.empty() && a.back().index == 0) a.pop_back();
}

inline FqPoly poly_mul(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, ctx.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ctx.add(r[i + j], ctx.mul(a[i], b[j]));
  return r;
}

/// a mod f, f monic.
inline FqPoly poly_mod(const FieldCtx& ctx, FqPoly a, const FqPoly& f) {
  trim(ctx, a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const FieldElement lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = ctx.sub(a[shift + i], ctx.mul(lead, f[i]));
    trim(ctx, a);
  }
  return a;
}

/// x^e mod f.
inline FqPoly poly_x_pow_mod(const FieldCtx& ctx, std::uint64_t e, const FqPoly& f) {
  FqPoly result = poly_mod(ctx, FqPoly{ctx.one()}, f);
  FqPoly base = poly_mod(ctx, FqPoly{ctx.zero(), ctx.one()}, f);
  while (e) {
    if (e & 1) result = poly_mod(ctx, poly_mul(ctx, result, base), f);
    base = poly_mod(ctx, poly_mul(ctx, base, base), f);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

/// Minimal polynomial of beta over F_{p^t}: the product of (x - gamma) over
/// the orbit of beta under x -> x^{p^t}.
inline SubfieldPolynomial minimal_polynomial(const CodeParams& params, const FieldCtx& ctx,
                                             FieldElement beta) {
  if (beta.index == 0) throw Error(ErrorKind::DivisionByZero, "minimal polynomial of zero");
  std::vector<FieldElement> orbit;
  FieldElement g = beta;
  do {
    orbit.push_back(g);
    g = ctx.frobenius(g, params.t);
  } while (g != beta);

  detail::FqPoly poly{ctx.one()};
  for (FieldElement root : orbit) poly = detail::poly_mul(ctx, poly, {ctx.neg(root), ctx.one()});
  for (FieldElement c : poly)
    if (!ctx.in_subfield(c, params.t))
      throw Error(ErrorKind::DegenerateFactor, "minimal polynomial coefficient outside F_{p^t}");
  return {std::move(poly), params.t};
}

/// x^e for the positive exponents used here (0^e = 0).
inline FieldElement power_of(const FieldCtx& ctx, FieldElement x, std::uint64_t e) {
  if (x.index == 0) return x;
  return ctx.pow(x, e);
}

/// Q_{a,b,c}(x) = Tr^{q}_{q0}(a x^2 + b x^{p^k+1} + c x^{p^{2k}+1}), evaluated from the definition.
inline FieldElement quadratic_form_value(const CodeParams& params, const FieldCtx& ctx, FieldElement a,
                                         FieldElement b, FieldElement c, FieldElement x) {
  FieldElement v = ctx.mul(a, power_of(ctx, x, 2));
  v = ctx.add(v, ctx.mul(b, power_of(ctx, x, params.d1_exp)));
  v = ctx.add(v, ctx.mul(c, power_of(ctx, x, params.d2_exp)));
  return ctx.trace(v, params.d);
}

struct ParityCheck {
  SubfieldPolynomial h0;
  SubfieldPolynomial h1;
  SubfieldPolynomial h2;
  SubfieldPolynomial product;
};

/// Exponents e with h_i the minimal polynomial of pi^{-e}: 2, p^k+1, p^{2k}+1.
inline std::array<std::uint64_t, 3> parity_check_exponents(const CodeParams& params) {
  return {2 % params.group_order(), params.d1_exp, params.d2_exp};
}

inline ParityCheck parity_check_polynomial(const CodeParams& params, const FieldCtx& ctx) {
  const std::uint64_t n = params.group_order();
  std::array<SubfieldPolynomial, 3> h;
  const auto exps = parity_check_exponents(params);
  for (std::size_t i = 0; i < 3; ++i) {
    h[i] = minimal_polynomial(params, ctx, ctx.exp((n - exps[i]) % n));
    if (h[i].degree() != params.m0)
      throw Error(ErrorKind::DegenerateFactor, "h" + std::to_string(i) + " has degree " +
                                                   std::to_string(h[i].degree()) + ", expected m0 = " +
                                                   std::to_string(params.m0));
  }
  if (h[0] == h[1] || h[0] == h[2] || h[1] == h[2])
    throw Error(ErrorKind::DegenerateFactor, "parity-check factors coincide");

  auto prod = detail::poly_mul(ctx, detail::poly_mul(ctx, h[0].coeffs, h[1].coeffs), h[2].coeffs);
  if (prod.size() != 3 * std::size_t{params.m0} + 1)
    throw Error(ErrorKind::DegenerateFactor, "product degree is not 3*m0");
  // x^{q-1} - 1 = 0 mod h  <=>  x^{q-1} = 1 mod h.
  if (detail::poly_x_pow_mod(ctx, n, prod) != detail::FqPoly{ctx.one()})
    throw Error(ErrorKind::DegenerateFactor, "h0*h1*h2 does not divide x^(q-1) - 1");
  return {h[0], h[1], h[2], {std::move(prod), params.t}};
}

/// Codeword symbol c_i.
inline FieldElement codeword_symbol(const CodeParams& params, const FieldCtx& ctx, FieldElement a,
                                    FieldElement b, FieldElement c, std::uint64_t i) {
  const std::uint64_t n = params.group_order();
  FieldElement v = ctx.mul(a, ctx.exp(mulmod(2, i, n)));
  v = ctx.add(v, ctx.mul(b, ctx.exp(mulmod(params.d1_exp, i, n))));
  v = ctx.add(v, ctx.mul(c, ctx.exp(mulmod(params.d2_exp, i, n))));
  return ctx.trace(v, params.t);
}

inline std::vector<FieldElement> codeword(const CodeParams& params, const FieldCtx& ctx, FieldElement a,
                                          FieldElement b, FieldElement c) {
  std::vector<FieldElement> word(params.group_order());
  for (std::uint64_t i = 0; i < word.size(); ++i) word[i] = codeword_symbol(params, ctx, a, b, c, i);
  return word;
}

/// Hamming weight of c_(a,b,c), streamed without materializing the word.
inline std::uint64_t codeword_weight_direct(const CodeParams& params, const FieldCtx& ctx, FieldElement a,
                                            FieldElement b, FieldElement c) {
  std::uint64_t weight = 0;
  for (std::uint64_t i = 0; i < params.group_order(); ++i)
    weight += codeword_symbol(params, ctx, a, b, c, i).index != 0;
  return weight;
}

/// True iff word(x) * h(x) = 0 mod x^n - 1, i.e. sum_j h_j c_{i-j} = 0 for
/// every i with indices taken cyclically.
inline bool satisfies_parity_check(const FieldCtx& ctx, const SubfieldPolynomial& h,
                                   std::span<const FieldElement> word) {
  const std::size_t n = word.size();
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement acc = ctx.zero();
    for (std::size_t j = 0; j < h.coeffs.size(); ++j)
      acc = ctx.add(acc, ctx.mul(h.coeffs[j], word[(i + n - j % n) % n]));
    if (acc.index != 0) return false;
  }
  return true;
}

inline bool lfsr_membership(const CodeParams& params, const FieldCtx& ctx, const SubfieldPolynomial& h,
                            FieldElement a, FieldElement b, FieldElement c) {
  return satisfies_parity_check(ctx, h, codeword(params, ctx, a, b, c));
}

}  // namespace weightdist
