#include <gtest/gtest.h>

#include <map>

#include "oracle.hpp"
#include "shardkit/error.hpp"
#include "shardkit/shamir.hpp"

using namespace shardkit;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInternal;
}

Point pt(std::uint64_t x, std::uint64_t y, const PrimeModulus& p) { return {FieldElement(x, p), FieldElement(y, p)}; }

// Every k-subset of {0..n-1} as index vectors.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    if (static_cast<std::size_t>(__builtin_popcount(m)) != k) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i & 1U) != 0) idx.push_back(i);
    }
    out.push_back(idx);
  }
  return out;
}

}  // namespace

TEST(Shamir, EvaluateExamples) {
  const PrimeModulus p(7);
  const Polynomial f{FieldElement(3, p), {FieldElement(2, p)}};
  OpCounter c;
  EXPECT_EQ(evaluate(f, FieldElement(1, p), &c).value(), 5u);
  EXPECT_EQ(evaluate(f, FieldElement(2, p), &c).value(), 0u);
  EXPECT_EQ(evaluate(f, FieldElement(0, p), &c).value(), 3u);
  EXPECT_EQ(c.multiplications, 3u);
}

TEST(Shamir, DealScriptedExample) {
  const PrimeModulus p(7);
  ReplayRandom rng({2});
  const auto d = deal_shamir(FieldElement(3, p), 2, 3, rng);
  const std::vector<Point> want{pt(1, 5, p), pt(2, 0, p), pt(3, 2, p)};
  EXPECT_EQ(d.points, want);
  EXPECT_EQ(d.polynomial.constant.value(), 3u);
}

TEST(Shamir, DegreeZeroDealing) {
  const PrimeModulus p(13);
  SeededRandom rng(5);
  const auto d = deal_shamir(FieldElement(9, p), 1, 4, rng);
  for (const auto& q : d.points) EXPECT_EQ(q.y.value(), 9u);
  const std::vector<Point> one{pt(3, 9, p)};
  EXPECT_EQ(reconstruct_shamir(one, 1).value(), 9u);
}

TEST(Shamir, DealParameterErrors) {
  const PrimeModulus p(7);
  SeededRandom rng(1);
  EXPECT_EQ(code_of([&] { deal_shamir(FieldElement(1, p), 0, 3, rng); }), Errc::kParameter);
  EXPECT_EQ(code_of([&] { deal_shamir(FieldElement(1, p), 4, 3, rng); }), Errc::kParameter);
  EXPECT_EQ(code_of([&] { deal_shamir(FieldElement(1, p), 2, 7, rng); }), Errc::kParameter);
  EXPECT_NO_THROW(deal_shamir(FieldElement(1, p), 2, 6, rng));
}

TEST(Shamir, ReconstructExamples) {
  const PrimeModulus p7(7), p11(11);
  const std::vector<Point> a{pt(1, 5, p7), pt(2, 0, p7)};
  EXPECT_EQ(reconstruct_shamir(a, 2).value(), 3u);
  const std::vector<Point> all{pt(1, 10, p11), pt(2, 2, p11), pt(3, 5, p11)};
  for (const auto& idx : combinations(3, 2)) {
    const std::vector<Point> pair{all[idx[0]], all[idx[1]]};
    EXPECT_EQ(reconstruct_shamir(pair, 2).value(), 7u);
    const std::vector<oracle::Pt> raw{{pair[0].x.value(), pair[0].y.value()}, {pair[1].x.value(), pair[1].y.value()}};
    EXPECT_EQ(oracle::brute_force_constants(raw, 2, 11), std::vector<std::uint64_t>{7});
  }
  EXPECT_EQ(reconstruct_shamir(all, 2).value(), 7u);
}

TEST(Shamir, ReconstructErrors) {
  const PrimeModulus p(11);
  const std::vector<Point> one{pt(1, 10, p)};
  EXPECT_EQ(code_of([&] { reconstruct_shamir(one, 2); }), Errc::kInsufficientShares);
  const std::vector<Point> dup{pt(1, 10, p), pt(1, 10, p)};
  EXPECT_EQ(code_of([&] { reconstruct_shamir(dup, 2); }), Errc::kInsufficientShares);
  const std::vector<Point> clash{pt(1, 10, p), pt(1, 3, p), pt(2, 2, p)};
  EXPECT_EQ(code_of([&] { reconstruct_shamir(clash, 2); }), Errc::kInconsistentShares);
  const std::vector<Point> off{pt(1, 10, p), pt(2, 2, p), pt(3, 6, p)};
  EXPECT_EQ(code_of([&] { reconstruct_shamir(off, 2); }), Errc::kInconsistentShares);
  const std::vector<Point> zero{pt(0, 1, p), pt(2, 2, p)};
  EXPECT_EQ(code_of([&] { reconstruct_shamir(zero, 2); }), Errc::kParameter);
}

TEST(ShamirProperty, RoundTripEverySubset) {
  const PrimeModulus p(11);
  SeededRandom rng(7);
  const auto d = deal_shamir(FieldElement(5, p), 3, 5, rng);
  for (const auto& idx : combinations(5, 3)) {
    std::vector<Point> sub;
    for (auto i : idx) sub.push_back(d.points[i]);
    EXPECT_EQ(reconstruct_shamir(sub, 3).value(), 5u);
  }
  for (const auto& idx : combinations(5, 2)) {
    std::vector<Point> sub;
    for (auto i : idx) sub.push_back(d.points[i]);
    EXPECT_EQ(code_of([&] { reconstruct_shamir(sub, 3); }), Errc::kInsufficientShares);
  }
}

TEST(ShamirProperty, MatchesGaussianOracleAcrossPrimes) {
  for (std::uint64_t pv : std::initializer_list<std::uint64_t>{7, 13, 8191, PrimeModulus::kDefault}) {
    const PrimeModulus p(pv);
    for (std::size_t t = 1; t <= 4; ++t) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SeededRandom rng(seed * 31 + t);
        const auto secret = sample_uniform(rng, p);
        const std::size_t n = t + 2;
        OpCounter deal_c;
        const auto d = deal_shamir(secret, t, n, rng, &deal_c);
        EXPECT_LE(deal_c.multiplications, t + t * n);
        for (const auto& idx : combinations(n, t)) {
          std::vector<Point> sub;
          std::vector<oracle::Pt> raw;
          for (auto i : idx) {
            sub.push_back(d.points[i]);
            raw.emplace_back(d.points[i].x.value(), d.points[i].y.value());
          }
          OpCounter rc;
          EXPECT_EQ(reconstruct_shamir(sub, t, &rc), secret);
          EXPECT_LE(rc.multiplications, t * t);
          EXPECT_EQ(rc.multiplications, t * (t - 1));
          EXPECT_EQ(oracle::gauss_constant(raw, pv), secret.value());
        }
      }
    }
  }
}

TEST(ShamirProperty, BruteForceAgreesOnSmallFields) {
  for (std::uint64_t pv : std::initializer_list<std::uint64_t>{5, 7}) {
    const PrimeModulus p(pv);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SeededRandom rng(seed);
      const auto secret = sample_uniform(rng, p);
      const auto d = deal_shamir(secret, 3, 4, rng);
      std::vector<oracle::Pt> raw;
      for (std::size_t i = 0; i < 3; ++i) raw.emplace_back(d.points[i].x.value(), d.points[i].y.value());
      EXPECT_EQ(oracle::brute_force_constants(raw, 3, pv), std::vector<std::uint64_t>{secret.value()});
    }
  }
}

TEST(ShamirProperty, PerfectAtDeskScale) {
  // Fix the x-coordinates of t-1 shares; for every candidate secret, count
  // the coefficient vectors that produce each observed view. The count per
  // (view, secret) must not depend on the secret.
  for (std::uint64_t pv : std::initializer_list<std::uint64_t>{5, 7, 11, 13}) {
    const PrimeModulus p(pv);
    for (std::size_t t = 2; t <= 3; ++t) {
      const std::size_t seen = t - 1;
      std::map<std::vector<std::uint64_t>, std::map<std::uint64_t, int>> table;
      std::vector<std::uint64_t> coeffs(t - 1, 0);
      for (std::uint64_t s = 0; s < pv; ++s) {
        std::fill(coeffs.begin(), coeffs.end(), 0);
        for (;;) {
          std::vector<std::uint64_t> all{s};
          all.insert(all.end(), coeffs.begin(), coeffs.end());
          std::vector<std::uint64_t> view;
          for (std::size_t i = 1; i <= seen; ++i) view.push_back(oracle::eval_poly(all, i, pv));
          ++table[view][s];
          std::size_t d = 0;
          while (d < coeffs.size() && ++coeffs[d] == pv) coeffs[d++] = 0;
          if (d == coeffs.size()) break;
        }
      }
      for (const auto& [view, per_secret] : table) {
        ASSERT_EQ(per_secret.size(), pv);
        const int first = per_secret.begin()->second;
        for (const auto& [s, c] : per_secret) EXPECT_EQ(c, first);
      }
      // The library's dealer produces the same views with the same randomness.
      ReplayRandom rng(std::vector<std::uint64_t>(t - 1, 1));
      const auto d = deal_shamir(FieldElement(2, p), t, t, rng);
      std::vector<std::uint64_t> ref{2};
      ref.insert(ref.end(), t - 1, 1);
      for (std::size_t i = 0; i < t; ++i) EXPECT_EQ(d.points[i].y.value(), oracle::eval_poly(ref, i + 1, pv));
    }
  }
}
