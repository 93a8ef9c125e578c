#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shardkit/field.hpp"
#include "shardkit/shamir.hpp"

namespace shardkit {

enum class ShareKind { kNormal, kCrucial, kRedundant };

struct ShareSlot {
  std::string holder;
  ShareKind kind = ShareKind::kNormal;
  std::string group;  // redundant slots only; members of a group share one point
};

// Shamir with crucial offsets and mutual-redundant copies.
//
// The polynomial has degree k-1, so k distinct evaluation points are needed,
// and its constant is S' = S + R_1 + ... + R_r where R_i are the crucial
// shares. An authorized set therefore holds all r crucial shares plus k
// distinct points: k + r participants in total.
struct ExtendedParams {
  std::size_t k = 1;
  std::size_t r = 0;
  PrimeModulus p;
  std::vector<ShareSlot> issuance;

  // Builds params with r taken from the number of crucial slots.
  static ExtendedParams from_slots(std::size_t k, PrimeModulus p, std::vector<ShareSlot> issuance);
};

// Where each issued slot lands: crucial slots get an index 1..r, every
// other slot gets an evaluation point. Points are numbered 1, 2, ... in
// issuance order; a redundant group takes a number at its first member.
struct SlotPlacement {
  ShareKind kind;
  std::size_t crucial_index = 0;
  std::uint64_t x = 0;
};

struct SlotLayout {
  std::vector<SlotPlacement> slots;
  std::size_t distinct_points = 0;
};

// Throws kParameter when the params are unusable.
SlotLayout plan_layout(const ExtendedParams& params);

struct CrucialValue {
  std::size_t index;  // 1..r
  FieldElement value;
};

struct PointValue {
  FieldElement x;
  FieldElement y;
  std::optional<std::string> group;
};

struct ExtendedShare {
  std::string holder;
  std::variant<CrucialValue, PointValue> payload;
};

struct ExtendedDealing {
  Polynomial polynomial;              // constant is S'
  std::vector<ExtendedShare> shares;  // one per issued slot, same order
};

// Draws R_1..R_r, then a_1..a_{k-1}, all uniform in GF(p).
ExtendedDealing deal_extended(const FieldElement& secret, const ExtendedParams& params, RandomSource& rng,
                              OpCounter* counter = nullptr);

// Errors are checked in this order: inconsistent duplicates, missing crucial
// share, too few distinct points, extra points off the polynomial.
FieldElement reconstruct_extended(std::span<const ExtendedShare> shares, const ExtendedParams& params,
                                  OpCounter* counter = nullptr);

// True iff the slots at `held` (indices into params.issuance) contain every
// crucial slot and cover at least k distinct evaluation points.
bool authorized_extended(std::span<const std::size_t> held, const ExtendedParams& params);

}  // namespace shardkit
