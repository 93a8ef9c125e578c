#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "shardkit/error.hpp"

namespace shardkit {

// The prime p defining GF(p). Primality is checked at construction with a
// deterministic Miller-Rabin test that is exact for every 64-bit input.
class PrimeModulus {
 public:
  static constexpr std::uint64_t kDefault = (std::uint64_t{1} << 61) - 1;

  PrimeModulus() noexcept : p_(kDefault), bits_(61) {}
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  int bit_length() const noexcept { return bits_; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
  int bits_;
};

bool is_prime(std::uint64_t n) noexcept;

// Caller-owned tally used to check the multiplication bounds of dealing and
// reconstruction. `inversions` counts extended-Euclid runs, whether they
// produce a bare inverse or a quotient a/b.
struct OpCounter {
  std::uint64_t multiplications = 0;
  std::uint64_t inversions = 0;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(std::uint64_t value, PrimeModulus modulus)
      : value_(value % modulus.value()), modulus_(modulus) {}

  std::uint64_t value() const noexcept { return value_; }
  const PrimeModulus& modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  std::uint64_t value_ = 0;
  PrimeModulus modulus_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement mul(const FieldElement& a, const FieldElement& b, OpCounter* counter = nullptr);
FieldElement inv(const FieldElement& a, OpCounter* counter = nullptr);
// a * b^-1 in a single extended-Euclid pass; counted as one inversion.
FieldElement div(const FieldElement& a, const FieldElement& b, OpCounter* counter = nullptr);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

std::string to_string(const FieldElement& e);

// Source of raw 64-bit words for every randomized operation. There is no
// global generator; callers pass one explicitly.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_word() = 0;
};

// mt19937_64 is fully specified by the standard, so a seed reproduces the
// same sequence on every platform.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  static SeededRandom from_entropy();

  std::uint64_t next_word() override { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Replays a fixed list of words, then fails. Used to pin dealer randomness
// in tests and to enumerate every randomness assignment exhaustively.
class ReplayRandom final : public RandomSource {
 public:
  explicit ReplayRandom(std::vector<std::uint64_t> words) : words_(std::move(words)) {}

  std::uint64_t next_word() override;
  std::size_t consumed() const noexcept { return pos_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t pos_ = 0;
};

// Uniform draw from [0, p) by rejection on 64-bit words. Words below p are
// returned unchanged, so ReplayRandom can script exact field values.
FieldElement sample_uniform(RandomSource& rng, const PrimeModulus& p);

}  // namespace shardkit
