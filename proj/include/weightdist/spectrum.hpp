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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "weightdist/bigint.hpp"
#include "weightdist/charsum.hpp"
#include "weightdist/code.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"
#include "weightdist/number_theory.hpp"
#include "weightdist/parallel.hpp"
#include "weightdist/quadform.hpp"

namespace weightdist {

/// Value of T -> number of triples (a, b, c) attaining it.
struct ValueDistribution {
  std::map<std::int64_t, BigInt> freq;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [v, f] : freq) t += f;
    return t;
  }

  BigInt power_sum(std::uint32_t j) const {
    BigInt s = 0;
    for (const auto& [v, f] : freq) s += f * boost::multiprecision::pow(BigInt(v), j);
    return s;
  }

  BigInt at(std::int64_t v) const {
    auto it = freq.find(v);
    return it == freq.end() ? BigInt(0) : it->second;
  }

  friend bool operator==(const ValueDistribution&, const ValueDistribution&) = default;
};

/// Hamming weight -> number of codewords.
struct WeightHistogram {
  std::map<std::uint64_t, BigInt> freq;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [w, f] : freq) t += f;
    return t;
  }

  std::uint64_t min_nonzero() const {
    for (const auto& [w, f] : freq)
      if (w != 0 && f != 0) return w;
    return 0;
  }

  friend bool operator==(const WeightHistogram&, const WeightHistogram&) = default;
};

/// 2 p^{(m+d)/2} and 2 p^{(m+3d)/2}.
inline std::pair<std::int64_t, std::int64_t> nonzero_magnitudes(const CodeParams& p) {
  return {2 * static_cast<std::int64_t>(checked_pow(p.p, (p.m + p.d) / 2)),
          2 * static_cast<std::int64_t>(checked_pow(p.p, (p.m + 3 * p.d) / 2))};
}

/// {2q, 0, +-2p^{(m+d)/2}, +-2p^{(m+3d)/2}}.
inline std::vector<std::int64_t> admissible_values(const CodeParams& p) {
  const auto [a, b] = nonzero_magnitudes(p);
  return {-b, -a, 0, a, b, 2 * static_cast<std::int64_t>(p.q)};
}

namespace detail {

inline BigInt exact_div(const BigInt& num, const BigInt& den, ErrorKind kind, const std::string& what) {
  if (den == 0) throw Error(ErrorKind::SingularSystem, what + ": zero denominator");
  if (num % den != 0) throw Error(kind, what + " is not an integer");
  return num / den;
}

/// The six Table 1 frequencies in the order 2q, 0, +A, -A, +B, -B.
inline std::array<BigInt, 6> table_frequencies(const CodeParams& p) {
  const std::uint64_t m = p.m, d = p.d;
  auto P = [&](std::uint64_t e) { return big_pow(p.p, e); };
  const BigInt q = P(m);
  const BigInt den = 2 * (P(2 * d) - 1);
  const BigInt zero = (q - 1) * (P(2 * m) - P(2 * m - d) + P(2 * m - 4 * d) + q - P(m - d) - P(m - 3 * d) + 1);
  const BigInt f1 = P(2 * m) - P(2 * m - 2 * d) - P(2 * m - 3 * d) + P(m - 2 * d) + P(m - 3 * d) - 1;
  const BigInt f2 = (q - 1) * (P(m - d) - 1);
  const BigInt a = P(m + d), ah = P((m + 3 * d) / 2);
  const BigInt b = P(m - 3 * d), bh = P((m - 3 * d) / 2);
  const auto k = ErrorKind::NonIntegralFrequency;
  return {BigInt(1), zero, exact_div((a + ah) * f1, den, k, "n_{1,0}"), exact_div((a - ah) * f1, den, k, "n_{1,1}"),
          exact_div((b + bh) * f2, den, k, "n_{2,0}"), exact_div((b - bh) * f2, den, k, "n_{2,1}")};
}

inline void require_distribution(const CodeParams& p, const BigInt& total, ErrorKind kind, const std::string& what) {
  if (total != big_pow(p.q, 3))
    throw Error(kind, what + " total " + to_decimal(total) + " differs from q^3 = " + to_decimal(big_pow(p.q, 3)));
}

}  // namespace detail

inline ValueDistribution table1_closed_form(const CodeParams& p) {
  const auto f = detail::table_frequencies(p);
  const auto [a, b] = nonzero_magnitudes(p);
  ValueDistribution v;
  v.freq = {{2 * static_cast<std::int64_t>(p.q), f[0]}, {0, f[1]}, {a, f[2]}, {-a, f[3]}, {b, f[4]}, {-b, f[5]}};
  for (const auto& [t, n] : v.freq)
    if (n < 0) throw Error(ErrorKind::NonIntegralFrequency, "negative frequency for T = " + std::to_string(t));
  detail::require_distribution(p, v.total(), ErrorKind::NonIntegralFrequency, "Table 1");
  return v;
}

/// Weight distribution from the weight formulas (p^t - 1)(p^{m-t} -+ p^{e}).
inline WeightHistogram table2_closed_form(const CodeParams& p) {
  const auto f = detail::table_frequencies(p);
  const std::uint64_t m = p.m, d = p.d, t = p.t;
  const std::uint64_t base = checked_pow(p.p, m - t);
  const std::uint64_t e1 = checked_pow(p.p, (m + d - 2 * t) / 2);
  const std::uint64_t e3 = checked_pow(p.p, (m + 3 * d - 2 * t) / 2);
  const std::uint64_t u = p.pt - 1;
  WeightHistogram w;
  w.freq = {{0, f[0]},
            {u * base, f[1]},
            {u * (base - e1), f[2]},
            {u * (base + e1), f[3]},
            {u * (base - e3), f[4]},
            {u * (base + e3), f[5]}};
  detail::require_distribution(p, w.total(), ErrorKind::NonIntegralFrequency, "Table 2");
  return w;
}

/// W = p^{m-t}(p^t - 1) - (p^t - 1) T / (2 p^t).
inline std::uint64_t weight_from_T(const CodeParams& p, std::int64_t t_value) {
  const BigInt num = BigInt(p.pt - 1) * t_value;
  const BigInt den = 2 * BigInt(p.pt);
  if (num % den != 0)
    throw Error(ErrorKind::NonIntegralWeight, "T = " + std::to_string(t_value) + " gives a non-integral weight");
  const BigInt w = BigInt(checked_pow(p.p, p.m - p.t)) * (p.pt - 1) - num / den;
  if (w < 0 || w > BigInt(p.q - 1))
    throw Error(ErrorKind::NonIntegralWeight, "T = " + std::to_string(t_value) + " gives weight outside [0, q-1]");
  return static_cast<std::uint64_t>(w);
}

inline WeightHistogram weights_from_distribution(const CodeParams& p, const ValueDistribution& v) {
  WeightHistogram w;
  for (const auto& [t, f] : v.freq)
    if (f != 0) w.freq[weight_from_T(p, t)] += f;
  return w;
}

inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 36;

/// Number of triples by (rank, discriminant class).
using ClassCounts = std::map<std::pair<std::uint32_t, int>, std::uint64_t>;

/// Classifies every (a, b, c) in F_q^3. Workers take contiguous ranges of a
/// and their counts are summed, so the result does not depend on scheduling.
inline ClassCounts enumerate_classes(const CodeParams& p, const FieldCtx& ctx, unsigned workers = 1) {
  const std::uint64_t q = ctx.q();
  if (q > (std::uint64_t{1} << 12) || q * q * q > kEnumerationBudget)
    throw Error(ErrorKind::BudgetExceeded, "exhaustive enumeration needs q^3 <= 2^36");
  const FormClassifier fc(p, ctx);
  const std::uint32_t s = p.s;
  const std::size_t cells = std::size_t{s} * s;
  // Role matrices for every coefficient value, flattened.
  std::vector<Subfield::Code> bmat(q * cells), cmat(q * cells);
  for (std::uint32_t e = 0; e < q; ++e) {
    const auto gb = fc.role_matrix(1, FieldElement{e});
    const auto gc = fc.role_matrix(2, FieldElement{e});
    std::copy(gb.entries.begin(), gb.entries.end(), bmat.begin() + e * cells);
    std::copy(gc.entries.begin(), gc.entries.end(), cmat.begin() + e * cells);
  }
  const Subfield& f = fc.subfield();
  // counts[w][rank * 3 + disc + 1]
  std::vector<std::vector<std::uint64_t>> counts(std::max(1u, workers),
                                                 std::vector<std::uint64_t>((s + 1) * 3, 0));
  parallel_for(std::max(1u, workers), q, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& local = counts[w];
    GramMatrix gab(s), g(s);
    for (std::uint64_t a = begin; a < end; ++a) {
      const GramMatrix ga = fc.role_matrix(0, FieldElement{static_cast<std::uint32_t>(a)});
      for (std::uint64_t b = 0; b < q; ++b) {
        const auto* mb = &bmat[b * cells];
        for (std::size_t i = 0; i < cells; ++i) gab.entries[i] = f.add(ga.entries[i], mb[i]);
        for (std::uint64_t c = 0; c < q; ++c) {
          const auto* mc = &cmat[c * cells];
          for (std::size_t i = 0; i < cells; ++i) g.entries[i] = f.add(gab.entries[i], mc[i]);
          const auto [r, disc] = rank_and_discriminant(f, g);
          if (r + 4 < s && (a | b | c) != 0)
            throw Error(ErrorKind::RankBoundViolation, "nonzero triple with rank " + std::to_string(r));
          ++local[r * 3 + (disc + 1)];
        }
      }
    }
  });
  ClassCounts out;
  for (std::uint32_t r = 0; r <= s; ++r)
    for (int disc = -1; disc <= 1; ++disc) {
      std::uint64_t n = 0;
      for (const auto& local : counts) n += local[r * 3 + (disc + 1)];
      if (n != 0) out[{r, disc}] = n;
    }
  return out;
}

inline ValueDistribution distribution_from_classes(const CodeParams& p, const ClassCounts& classes) {
  ValueDistribution v;
  for (const auto& [cls, n] : classes) v.freq[t_closed_form(p, cls.first, cls.second)] += n;
  return v;
}

inline ValueDistribution enumerate_distribution(const CodeParams& p, const FieldCtx& ctx, unsigned workers = 1) {
  return distribution_from_classes(p, enumerate_classes(p, ctx, workers));
}

struct OracleAgreement {
  std::uint64_t compared = 0;
  std::uint64_t mismatches = 0;
  /// First disagreeing triple, as canonical indices, if any.
  std::optional<std::array<std::uint32_t, 3>> first_mismatch;
};

/// Compares the character-sum oracle with the rank classifier on every
/// triple. Workers split the a-range; each keeps its earliest mismatch.
inline OracleAgreement oracle_agreement(const CodeParams& p, const FieldCtx& ctx, unsigned workers = 1) {
  const std::uint64_t q = ctx.q();
  if (q * q * q > kEnumerationBudget) throw Error(ErrorKind::BudgetExceeded, "oracle sweep needs q^3 <= 2^36");
  const OracleSweep sweep(p, ctx, lambda_element(p, ctx));
  const FormClassifier fc(p, ctx);
  workers = std::max(1u, workers);
  std::vector<OracleAgreement> local(workers);
  parallel_for(workers, q, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& acc = local[w];
    for (std::uint64_t ai = begin; ai < end; ++ai) {
      const FieldElement a{static_cast<std::uint32_t>(ai)};
      const GramMatrix ga = fc.role_matrix(0, a);
      FieldElement last_b{~std::uint32_t{0}};
      GramMatrix gab;
      sweep.for_each_bc(a, [&](FieldElement b, FieldElement c, std::int64_t t) {
        if (b != last_b) {
          gab = fc.sum(ga, fc.role_matrix(1, b));
          last_b = b;
        }
        GramMatrix g = gab;
        fc.add_role(2, c, g);
        const FormClass cls = fc.classify_gram(g, (a.index | b.index | c.index) != 0);
        ++acc.compared;
        if (cls.t_value != t) {
          ++acc.mismatches;
          if (!acc.first_mismatch) acc.first_mismatch = std::array<std::uint32_t, 3>{a.index, b.index, c.index};
        }
      });
    }
  });
  OracleAgreement out;
  for (const auto& l : local) {
    out.compared += l.compared;
    out.mismatches += l.mismatches;
    if (!out.first_mismatch) out.first_mismatch = l.first_mismatch;
  }
  return out;
}

/// Recovers the distribution from the first four power sums of T. With
/// A = 2p^{(m+d)/2}, B = 2p^{(m+3d)/2} and T0 = 2q:
///   M1 - T0   = D1 A   + D2 B,     M3 - T0^3 = D1 A^3 + D2 B^3,
///   M2 - T0^2 = S1 A^2 + S2 B^2,   M4 - T0^4 = S1 A^4 + S2 B^4,
/// where D = n_{.,0} - n_{.,1} and S = n_{.,0} + n_{.,1}.
inline ValueDistribution moment_solve_distribution(const CodeParams& p, const std::array<BigInt, 4>& moments) {
  const auto [ai, bi] = nonzero_magnitudes(p);
  const BigInt A = ai, B = bi, t0 = 2 * BigInt(p.q);
  auto cramer = [](const BigInt& a11, const BigInt& a12, const BigInt& a21, const BigInt& a22, const BigInt& r1,
                   const BigInt& r2, const std::string& what) -> std::pair<BigInt, BigInt> {
    const BigInt det = a11 * a22 - a12 * a21;
    if (det == 0) throw Error(ErrorKind::SingularSystem, what + ": singular moment system");
    const auto k = ErrorKind::NonIntegralSolution;
    return {detail::exact_div(r1 * a22 - a12 * r2, det, k, what + " first unknown"),
            detail::exact_div(a11 * r2 - a21 * r1, det, k, what + " second unknown")};
  };
  const BigInt A2 = A * A, B2 = B * B;
  const auto [d1, d2] = cramer(A, B, A2 * A, B2 * B, moments[0] - t0, moments[2] - t0 * t0 * t0, "odd moments");
  const auto [s1, s2] = cramer(A2, B2, A2 * A2, B2 * B2, moments[1] - t0 * t0, moments[3] - t0 * t0 * t0 * t0,
                               "even moments");
  const auto k = ErrorKind::NonIntegralSolution;
  const BigInt n10 = detail::exact_div(s1 + d1, 2, k, "n_{1,0}");
  const BigInt n11 = detail::exact_div(s1 - d1, 2, k, "n_{1,1}");
  const BigInt n20 = detail::exact_div(s2 + d2, 2, k, "n_{2,0}");
  const BigInt n21 = detail::exact_div(s2 - d2, 2, k, "n_{2,1}");
  const BigInt zero = big_pow(p.q, 3) - 1 - n10 - n11 - n20 - n21;
  ValueDistribution v;
  v.freq = {{2 * static_cast<std::int64_t>(p.q), BigInt(1)}, {0, zero}, {ai, n10}, {-ai, n11}, {bi, n20}, {-bi, n21}};
  for (const auto& [t, n] : v.freq)
    if (n < 0) throw Error(ErrorKind::NonIntegralSolution, "negative frequency for T = " + std::to_string(t));
  return v;
}

/// The closed-form power sums: 2p^{3m}, 4p^{4m}, 8p^{3m}N and 16p^{4m}N
/// with N = p^{m+d} + p^m - p^d.
inline std::array<BigInt, 4> moment_closed_forms(const CodeParams& p) {
  const BigInt n3 = big_pow(p.p, p.m + p.d) + big_pow(p.p, p.m) - big_pow(p.p, p.d);
  const BigInt q3 = big_pow(p.q, 3), q4 = big_pow(p.q, 4);
  return {2 * q3, 4 * q4, 8 * q3 * n3, 16 * q4 * n3};
}

struct SampleBucket {
  std::int64_t value = 0;
  std::uint64_t observed = 0;
  double expected_proportion = 0;
  double z = 0;
};

struct SampleReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t zero_triple_value = 0;
  std::vector<SampleBucket> buckets;
  double max_abs_z = 0;
  bool pass = false;
};

inline constexpr double kSampleSigmaLimit = 5.0;

/// Classifies n uniform random triples drawn from mt19937_64(seed).
/// (0, 0, 0) is classified separately and is not part of the proportions.
inline SampleReport sample_check(const CodeParams& p, const FieldCtx& ctx, std::uint64_t n, std::uint64_t seed,
                                 unsigned workers = 1) {
  if (n == 0) throw Error(ErrorKind::BudgetExceeded, "sample size must be positive");
  const FormClassifier fc(p, ctx);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, ctx.q() - 1);
  std::vector<std::array<FieldElement, 3>> triples(n);
  for (auto& t : triples) {
    t[0] = FieldElement{pick(rng)};
    t[1] = FieldElement{pick(rng)};
    t[2] = FieldElement{pick(rng)};
  }
  std::vector<std::int64_t> values(n);
  parallel_for(std::max(1u, workers), n, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i)
      values[i] = fc.classify(triples[i][0], triples[i][1], triples[i][2]).t_value;
  });

  SampleReport r;
  r.samples = n;
  r.seed = seed;
  r.zero_triple_value = fc.classify(ctx.zero(), ctx.zero(), ctx.zero()).t_value;
  const auto admissible = admissible_values(p);
  std::map<std::int64_t, std::uint64_t> observed;
  for (auto v : admissible) observed[v] = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto it = observed.find(values[i]);
    if (it == observed.end())
      throw Error(ErrorKind::InadmissibleValue, "T = " + std::to_string(values[i]) + " is not an admissible value");
    ++it->second;
  }
  const ValueDistribution table = table1_closed_form(p);
  const BigInt q3 = big_pow(p.q, 3);
  r.pass = r.zero_triple_value == 2 * static_cast<std::int64_t>(p.q);
  for (const auto& [v, count] : observed) {
    SampleBucket b;
    b.value = v;
    b.observed = count;
    b.expected_proportion = static_cast<double>(table.at(v)) / static_cast<double>(q3);
    const double mean = static_cast<double>(n) * b.expected_proportion;
    const double var = mean * (1.0 - b.expected_proportion);
    b.z = var > 0 ? (static_cast<double>(count) - mean) / std::sqrt(var) : (count == 0 ? 0.0 : HUGE_VAL);
    r.max_abs_z = std::max(r.max_abs_z, std::abs(b.z));
    r.buckets.push_back(b);
  }
  r.pass = r.pass && r.max_abs_z < kSampleSigmaLimit;
  return r;
}

}  // namespace weightdist
