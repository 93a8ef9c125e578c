#pragma once

// Test-only reference computations. Nothing here calls into the library's
// field or interpolation code.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

__extension__ typedef unsigned __int128 u128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

// Fermat inverse, deliberately a different route from extended Euclid.
inline std::uint64_t fermat_inv(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline std::uint64_t eval_poly(const std::vector<std::uint64_t>& coeffs, std::uint64_t x, std::uint64_t p) {
  // coeffs[0] is the constant; plain power sum, no Horner.
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc = (acc + mulmod(coeffs[i] % p, powmod(x, i, p), p)) % p;
  }
  return acc;
}

using Pt = std::pair<std::uint64_t, std::uint64_t>;

// Enumerates every polynomial of degree < t over GF(p) (p^t candidates) and
// returns the constant terms of those passing through all points. Small p only.
inline std::vector<std::uint64_t> brute_force_constants(const std::vector<Pt>& points, std::size_t t, std::uint64_t p) {
  std::vector<std::uint64_t> coeffs(t, 0);
  std::vector<std::uint64_t> found;
  for (;;) {
    bool fits = true;
    for (const auto& [x, y] : points) {
      if (eval_poly(coeffs, x, p) != y % p) {
        fits = false;
        break;
      }
    }
    if (fits) found.push_back(coeffs[0]);
    std::size_t d = 0;
    while (d < t && ++coeffs[d] == p) coeffs[d++] = 0;
    if (d == t) break;
  }
  return found;
}

// Solves the t x t Vandermonde system by Gauss-Jordan elimination with
// Fermat inverses and returns the constant coefficient.
inline std::optional<std::uint64_t> gauss_constant(const std::vector<Pt>& points, std::uint64_t p) {
  const std::size_t t = points.size();
  std::vector<std::vector<std::uint64_t>> m(t, std::vector<std::uint64_t>(t + 1));
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < t; ++c) m[r][c] = powmod(points[r].first, c, p);
    m[r][t] = points[r].second % p;
  }
  for (std::size_t c = 0; c < t; ++c) {
    std::size_t pivot = c;
    while (pivot < t && m[pivot][c] == 0) ++pivot;
    if (pivot == t) return std::nullopt;
    std::swap(m[pivot], m[c]);
    const std::uint64_t iv = fermat_inv(m[c][c], p);
    for (auto& v : m[c]) v = mulmod(v, iv, p);
    for (std::size_t r = 0; r < t; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const std::uint64_t f = m[r][c];
      for (std::size_t k = 0; k <= t; ++k) m[r][k] = (m[r][k] + p - mulmod(f, m[c][k], p)) % p;
    }
  }
  return m[0][t];
}

}  // namespace oracle
