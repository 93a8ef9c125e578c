#include "shardkit/shamir.hpp"

#include <algorithm>
#include <string>

namespace shardkit {

FieldElement evaluate(const Polynomial& poly, const FieldElement& x, OpCounter* counter) {
  if (poly.coefficients.empty()) return poly.constant;
  FieldElement acc = poly.coefficients.back();
  for (std::size_t i = poly.coefficients.size() - 1; i-- > 0;) {
    acc = add(mul(acc, x, counter), poly.coefficients[i]);
  }
  return add(mul(acc, x, counter), poly.constant);
}

Polynomial random_polynomial(const FieldElement& constant, std::size_t degree, RandomSource& rng) {
  Polynomial poly{constant, {}};
  poly.coefficients.reserve(degree);
  for (std::size_t i = 0; i < degree; ++i) poly.coefficients.push_back(sample_uniform(rng, constant.modulus()));
  return poly;
}

ShamirDealing deal_shamir(const FieldElement& secret, std::size_t t, std::size_t n, RandomSource& rng,
                          OpCounter* counter) {
  const std::uint64_t p = secret.modulus().value();
  if (t == 0) throw Error(Errc::kParameter, "threshold must be at least 1");
  if (t > n) {
    throw Error(Errc::kParameter, "threshold " + std::to_string(t) + " exceeds share count " + std::to_string(n));
  }
  if (n >= p) {
    throw Error(Errc::kParameter,
                std::to_string(n) + " shares need more nonzero evaluation points than GF(" + std::to_string(p) + ") has");
  }

  ShamirDealing out{random_polynomial(secret, t - 1, rng), {}};
  out.points.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    FieldElement x(i, secret.modulus());
    out.points.push_back({x, evaluate(out.polynomial, x, counter)});
  }
  return out;
}

std::vector<Point> collapse_points(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return a.x.value() < b.x.value(); });
  std::vector<Point> out;
  for (const Point& pt : sorted) {
    if (pt.x.is_zero()) throw Error(Errc::kParameter, "share point has x = 0");
    if (!out.empty() && out.back().x == pt.x) {
      if (out.back().y != pt.y) {
        throw Error(Errc::kInconsistentShares, "two shares at x=" + to_string(pt.x) + " disagree");
      }
      continue;
    }
    out.push_back(pt);
  }
  return out;
}

FieldElement interpolate_at_zero(std::span<const Point> points, OpCounter* counter) {
  if (points.empty()) throw Error(Errc::kInsufficientShares, "no points to interpolate");
  FieldElement sum(0, points.front().x.modulus());
  for (std::size_t i = 0; i < points.size(); ++i) {
    FieldElement term = points[i].y;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      term = mul(term, div(neg(points[j].x), sub(points[i].x, points[j].x), counter), counter);
    }
    sum = add(sum, term);
  }
  return sum;
}

FieldElement reconstruct_shamir(std::span<const Point> points, std::size_t t, OpCounter* counter) {
  if (t == 0) throw Error(Errc::kParameter, "threshold must be at least 1");
  const std::vector<Point> distinct = collapse_points(points);
  if (distinct.size() < t) {
    throw Error(Errc::kInsufficientShares, "need " + std::to_string(t) + " distinct shares, have " +
                                               std::to_string(distinct.size()));
  }

  std::vector<Point> base(distinct.begin(), distinct.begin() + static_cast<std::ptrdiff_t>(t));
  const FieldElement secret = interpolate_at_zero(base, counter);

  // A t-set that swaps one base point for an extra point agrees with the base
  // at t-1 nodes; equal constants add x=0 as a t-th node, forcing the same
  // polynomial. So this check is exact.
  for (std::size_t e = t; e < distinct.size(); ++e) {
    base.back() = distinct[e];
    if (interpolate_at_zero(base) != secret) {
      throw Error(Errc::kInconsistentShares, "share at x=" + to_string(distinct[e].x) +
                                                 " does not lie on the polynomial of the others");
    }
  }
  return secret;
}

}  // namespace shardkit
