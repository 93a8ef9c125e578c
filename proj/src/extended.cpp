#include "shardkit/extended.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace shardkit {

ExtendedParams ExtendedParams::from_slots(std::size_t k, PrimeModulus p, std::vector<ShareSlot> issuance) {
  const auto r = static_cast<std::size_t>(std::count_if(
      issuance.begin(), issuance.end(), [](const ShareSlot& s) { return s.kind == ShareKind::kCrucial; }));
  return ExtendedParams{k, r, p, std::move(issuance)};
}

SlotLayout plan_layout(const ExtendedParams& params) {
  if (params.issuance.empty()) throw Error(Errc::kParameter, "no shares to issue");
  if (params.k == 0) {
    throw Error(Errc::kParameter,
                "k must be at least 1; a scheme of only crucial shares is plain additive sharing");
  }

  SlotLayout layout;
  layout.slots.reserve(params.issuance.size());
  std::map<std::string, std::uint64_t> group_x;
  std::map<std::string, std::size_t> group_size;
  std::size_t crucial = 0;
  for (const ShareSlot& slot : params.issuance) {
    SlotPlacement place{slot.kind};
    switch (slot.kind) {
      case ShareKind::kCrucial:
        place.crucial_index = ++crucial;
        break;
      case ShareKind::kNormal:
        place.x = ++layout.distinct_points;
        break;
      case ShareKind::kRedundant: {
        if (slot.group.empty()) throw Error(Errc::kParameter, "redundant share without a group id");
        auto [it, fresh] = group_x.try_emplace(slot.group, 0);
        if (fresh) it->second = ++layout.distinct_points;
        place.x = it->second;
        ++group_size[slot.group];
        break;
      }
    }
    layout.slots.push_back(place);
  }

  if (crucial != params.r) {
    throw Error(Errc::kParameter, "r = " + std::to_string(params.r) + " but " + std::to_string(crucial) +
                                      " crucial slots are issued");
  }
  for (const auto& [group, size] : group_size) {
    if (size < 2) throw Error(Errc::kParameter, "redundant group '" + group + "' has a single member");
  }
  if (layout.distinct_points < params.k) {
    throw Error(Errc::kParameter, "k = " + std::to_string(params.k) + " but only " +
                                      std::to_string(layout.distinct_points) + " distinct points are issued");
  }
  if (layout.distinct_points >= params.p.value()) {
    throw Error(Errc::kParameter, std::to_string(layout.distinct_points) + " distinct points do not fit in GF(" +
                                      std::to_string(params.p.value()) + ")");
  }
  return layout;
}

ExtendedDealing deal_extended(const FieldElement& secret, const ExtendedParams& params, RandomSource& rng,
                              OpCounter* counter) {
  if (secret.modulus() != params.p) throw Error(Errc::kParameter, "secret is not in the scheme's field");
  const SlotLayout layout = plan_layout(params);

  std::vector<FieldElement> crucial;
  crucial.reserve(params.r);
  FieldElement shifted = secret;
  for (std::size_t i = 0; i < params.r; ++i) {
    crucial.push_back(sample_uniform(rng, params.p));
    shifted = add(shifted, crucial.back());
  }

  ExtendedDealing out{random_polynomial(shifted, params.k - 1, rng), {}};
  // Copies of a redundant point cost nothing beyond the first evaluation.
  std::vector<std::optional<FieldElement>> evaluated(layout.distinct_points + 1);
  out.shares.reserve(params.issuance.size());
  for (std::size_t i = 0; i < params.issuance.size(); ++i) {
    const ShareSlot& slot = params.issuance[i];
    const SlotPlacement& place = layout.slots[i];
    if (place.kind == ShareKind::kCrucial) {
      out.shares.push_back({slot.holder, CrucialValue{place.crucial_index, crucial[place.crucial_index - 1]}});
      continue;
    }
    FieldElement x(place.x, params.p);
    auto& y = evaluated[place.x];
    if (!y) y = evaluate(out.polynomial, x, counter);
    std::optional<std::string> group;
    if (place.kind == ShareKind::kRedundant) group = slot.group;
    out.shares.push_back({slot.holder, PointValue{x, *y, group}});
  }
  return out;
}

FieldElement reconstruct_extended(std::span<const ExtendedShare> shares, const ExtendedParams& params,
                                  OpCounter* counter) {
  std::map<std::size_t, FieldElement> crucial;
  std::vector<Point> points;
  for (const ExtendedShare& share : shares) {
    if (const auto* c = std::get_if<CrucialValue>(&share.payload)) {
      if (c->index == 0 || c->index > params.r) {
        throw Error(Errc::kParameter, "crucial index " + std::to_string(c->index) + " outside 1.." +
                                          std::to_string(params.r));
      }
      if (c->value.modulus() != params.p) throw Error(Errc::kParameter, "crucial share from another field");
      auto [it, fresh] = crucial.try_emplace(c->index, c->value);
      if (!fresh && it->second != c->value) {
        throw Error(Errc::kInconsistentShares, "two copies of crucial share " + std::to_string(c->index) + " disagree");
      }
    } else {
      const auto& pt = std::get<PointValue>(share.payload);
      if (pt.x.modulus() != params.p || pt.y.modulus() != params.p) {
        throw Error(Errc::kParameter, "share point from another field");
      }
      points.push_back({pt.x, pt.y});
    }
  }

  const std::vector<Point> distinct = collapse_points(points);
  for (std::size_t i = 1; i <= params.r; ++i) {
    if (!crucial.contains(i)) throw Error(Errc::kCrucialMissing, "crucial share " + std::to_string(i) + " missing");
  }

  FieldElement secret = reconstruct_shamir(distinct, params.k, counter);
  for (const auto& [index, value] : crucial) secret = sub(secret, value);
  return secret;
}

bool authorized_extended(std::span<const std::size_t> held, const ExtendedParams& params) {
  std::set<std::size_t> crucial;
  std::set<std::string> groups;
  std::set<std::size_t> normals;
  for (std::size_t index : held) {
    if (index >= params.issuance.size()) continue;
    const ShareSlot& slot = params.issuance[index];
    switch (slot.kind) {
      case ShareKind::kCrucial: crucial.insert(index); break;
      case ShareKind::kNormal: normals.insert(index); break;
      case ShareKind::kRedundant: groups.insert(slot.group); break;
    }
  }
  return crucial.size() == params.r && normals.size() + groups.size() >= params.k;
}

}  // namespace shardkit
