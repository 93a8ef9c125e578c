#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shardkit/extended.hpp"
#include "shardkit/field.hpp"

namespace shardkit {

struct SchemeChild;

// A compartment tree. Internal nodes run an extended Shamir scheme over
// their children; a child's dealt value is the secret of its subtree.
// Leaves are shareholders, and a holder may sit at several leaves.
struct SchemeNode {
  bool leaf = false;
  std::string holder;                // leaves
  std::size_t k = 0;                 // internal nodes
  std::vector<SchemeChild> children;  // internal nodes

  static SchemeNode make_leaf(std::string holder);
  static SchemeNode make_threshold(std::size_t k, std::vector<SchemeChild> children);

  std::size_t crucial_count() const;
};

struct SchemeChild {
  ShareKind tag = ShareKind::kNormal;
  std::string group;  // redundant children only; scoped to the parent node
  SchemeNode node;
};

SchemeChild normal(SchemeNode node);
SchemeChild crucial(SchemeNode node);
SchemeChild redundant(std::string group, SchemeNode node);

using NodePath = std::vector<std::size_t>;

// "0.2.1", or "-" for the root.
std::string format_path(const NodePath& path);

// Checks every internal node's parameters against GF(p); errors carry the
// offending node path. The root must be an internal node.
void validate_tree(const SchemeNode& root, const PrimeModulus& p);

// Single-line canonical text of the tree; scheme_id hashes it (FNV-1a 64).
std::string canonical_form(const SchemeNode& root);
std::uint64_t scheme_id(const SchemeNode& root);
std::string format_scheme_id(std::uint64_t id);

std::set<std::string> holders(const SchemeNode& root);
std::size_t leaf_count(const SchemeNode& root);
// Uniform field elements the dealer draws: r + k - 1 per internal node.
std::size_t randomness_dimension(const SchemeNode& root);
// Parameters of one internal node, slots labelled by child index.
ExtendedParams node_params(const SchemeNode& node, const PrimeModulus& p);

struct TreeShare {
  std::string holder;
  NodePath path;  // leaf position
  ShareKind kind = ShareKind::kNormal;
  std::string group;
  std::optional<FieldElement> x;  // absent for crucial shares
  FieldElement value;

  friend bool operator==(const TreeShare&, const TreeShare&) = default;
};

struct ShareBundle {
  PrimeModulus p;
  std::uint64_t scheme_id = 0;
  std::map<std::string, std::vector<TreeShare>> shares;

  std::size_t total_shares() const;
  std::size_t max_shares_per_holder() const;
  // Shares of the listed holders only.
  ShareBundle restrict_to(const std::set<std::string>& subset) const;
};

// Pre-order: each internal node draws its randomness, then its children are
// dealt left to right.
ShareBundle deal_tree(const FieldElement& secret, const SchemeNode& root, RandomSource& rng,
                      OpCounter* counter = nullptr);

// Bottom-up reconstruction. A subtree that cannot be opened simply does not
// contribute; the failure that decides the outcome is reported with the path
// of the node where it happened.
FieldElement reconstruct_tree(const ShareBundle& subset, const SchemeNode& root, OpCounter* counter = nullptr);

bool tree_authorized(const std::set<std::string>& subset, const SchemeNode& root);

}  // namespace shardkit
