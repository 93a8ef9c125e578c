#include "shardkit/field.hpp"

#include <bit>

namespace shardkit {
namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(Errc::kParameter, "modulus mismatch: " + std::to_string(a.modulus().value()) +
                                      " vs " + std::to_string(b.modulus().value()));
  }
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kSmall) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set for n < 3.3e24.
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p), bits_(std::bit_width(p)) {
  if (p < 5) throw Error(Errc::kParameter, "prime must be at least 5, got " + std::to_string(p));
  if (!is_prime(p)) throw Error(Errc::kParameter, std::to_string(p) + " is not prime");
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  const std::uint64_t p = a.modulus().value();
  // Both operands are < p < 2^64, so compare against p - b to avoid overflow.
  std::uint64_t v = a.value() >= p - b.value() ? a.value() - (p - b.value()) : a.value() + b.value();
  return FieldElement(v, a.modulus());
}

FieldElement neg(const FieldElement& a) {
  return FieldElement(a.is_zero() ? 0 : a.modulus().value() - a.value(), a.modulus());
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return add(a, neg(b));
}

FieldElement mul(const FieldElement& a, const FieldElement& b, OpCounter* counter) {
  require_same_field(a, b);
  if (counter != nullptr) ++counter->multiplications;
  return FieldElement(mulmod(a.value(), b.value(), a.modulus().value()), a.modulus());
}

FieldElement div(const FieldElement& a, const FieldElement& b, OpCounter* counter) {
  require_same_field(a, b);
  if (b.is_zero()) throw Error(Errc::kParameter, "no inverse of zero");
  if (counter != nullptr) ++counter->inversions;

  // Extended Euclid on (p, b) carrying the Bezout coefficient of b scaled by a,
  // keeping the invariant coeff * b == a * rem (mod p).
  const std::uint64_t p = a.modulus().value();
  std::uint64_t r0 = p;
  std::uint64_t r1 = b.value();
  std::uint64_t c0 = 0;
  std::uint64_t c1 = a.value();
  while (r1 != 0) {
    const std::uint64_t q = r0 / r1;
    const std::uint64_t r2 = r0 - q * r1;
    const std::uint64_t qc = mulmod(q % p, c1, p);
    const std::uint64_t c2 = c0 >= qc ? c0 - qc : p - (qc - c0);
    r0 = r1;
    r1 = r2;
    c0 = c1;
    c1 = c2;
  }
  return FieldElement(c0, a.modulus());
}

FieldElement inv(const FieldElement& a, OpCounter* counter) {
  return div(FieldElement(1, a.modulus()), a, counter);
}

std::string to_string(const FieldElement& e) { return std::to_string(e.value()); }

SeededRandom SeededRandom::from_entropy() {
  std::random_device device;
  const std::uint64_t hi = device();
  const std::uint64_t lo = device();
  return SeededRandom((hi << 32) ^ lo);
}

std::uint64_t ReplayRandom::next_word() {
  if (pos_ >= words_.size()) {
    throw Error(Errc::kInternal, "replayed randomness exhausted after " + std::to_string(pos_) + " words");
  }
  return words_[pos_++];
}

FieldElement sample_uniform(RandomSource& rng, const PrimeModulus& p) {
  const std::uint64_t m = p.value();
  // Largest multiple of m not exceeding 2^64; words at or above it are redrawn.
  const std::uint64_t limit = m * (~std::uint64_t{0} / m);
  for (;;) {
    const std::uint64_t w = rng.next_word();
    if (w < limit) return FieldElement(w % m, p);
  }
}

}  // namespace shardkit
