#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "shardkit/field.hpp"

namespace shardkit {

// f(x) = constant + coefficients[0] x + ... + coefficients[d-1] x^d
struct Polynomial {
  FieldElement constant;
  std::vector<FieldElement> coefficients;

  std::size_t degree() const noexcept { return coefficients.size(); }
};

struct Point {
  FieldElement x;  // never zero
  FieldElement y;

  friend bool operator==(const Point&, const Point&) = default;
};

// Horner evaluation; costs exactly degree() multiplications.
FieldElement evaluate(const Polynomial& poly, const FieldElement& x, OpCounter* counter = nullptr);

// Draws `degree` coefficients after the constant.
Polynomial random_polynomial(const FieldElement& constant, std::size_t degree, RandomSource& rng);

struct ShamirDealing {
  Polynomial polynomial;
  std::vector<Point> points;  // x = 1..n
};

ShamirDealing deal_shamir(const FieldElement& secret, std::size_t t, std::size_t n, RandomSource& rng,
                          OpCounter* counter = nullptr);

// Merges points with equal x. Equal x with different y is an inconsistency.
std::vector<Point> collapse_points(std::span<const Point> points);

// Constant term of the polynomial through exactly these points (distinct,
// nonzero x). Each Lagrange fraction -x_j/(x_i-x_j) is one division, and
// folding it into the running product is one multiplication, so t points
// cost t(t-1) multiplications.
FieldElement interpolate_at_zero(std::span<const Point> points, OpCounter* counter = nullptr);

// Recovers the constant term of a degree t-1 polynomial. Uses the t points
// with smallest x; every further point is checked against them (uncounted)
// and a disagreement raises kInconsistentShares.
FieldElement reconstruct_shamir(std::span<const Point> points, std::size_t t, OpCounter* counter = nullptr);

}  // namespace shardkit
