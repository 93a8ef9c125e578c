#include "shardkit/compartments.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace shardkit {
namespace {

Error at_node(const Error& e, const NodePath& path) {
  if (!e.node_path().empty()) return e;
  return Error(e.code(), e.what(), format_path(path));
}

void validate_node(const SchemeNode& node, const PrimeModulus& p, NodePath& path) {
  if (node.leaf) {
    if (node.holder.empty()) throw Error(Errc::kParameter, "leaf without a holder id", format_path(path));
    return;
  }
  try {
    plan_layout(node_params(node, p));
  } catch (const Error& e) {
    throw at_node(e, path);
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    validate_node(node.children[i].node, p, path);
    path.pop_back();
  }
}

void write_canonical(const SchemeNode& node, std::string& out) {
  if (node.leaf) {
    out += "leaf ";
    out += node.holder;
    return;
  }
  out += "threshold(k=" + std::to_string(node.k) + "){";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const SchemeChild& child = node.children[i];
    if (i != 0) out += ' ';
    if (child.tag == ShareKind::kCrucial) out += "crucial ";
    if (child.tag == ShareKind::kRedundant) out += "redundant(" + child.group + ") ";
    write_canonical(child.node, out);
  }
  out += '}';
}

const SchemeNode* node_at(const SchemeNode& root, const NodePath& path) {
  const SchemeNode* node = &root;
  for (std::size_t index : path) {
    if (node->leaf || index >= node->children.size()) return nullptr;
    node = &node->children[index].node;
  }
  return node;
}

void deal_node(const SchemeNode& node, const FieldElement& secret, NodePath& path, ShareBundle& out,
               RandomSource& rng, OpCounter* counter) {
  const ExtendedDealing dealt = deal_extended(secret, node_params(node, secret.modulus()), rng, counter);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const SchemeChild& child = node.children[i];
    const ExtendedShare& share = dealt.shares[i];
    std::optional<FieldElement> x;
    FieldElement value = secret;
    if (const auto* c = std::get_if<CrucialValue>(&share.payload)) {
      value = c->value;
    } else {
      const auto& pt = std::get<PointValue>(share.payload);
      x = pt.x;
      value = pt.y;
    }

    path.push_back(i);
    if (child.node.leaf) {
      out.shares[child.node.holder].push_back(
          TreeShare{child.node.holder, path, child.tag, child.group, x, value});
    } else {
      deal_node(child.node, value, path, out, rng, counter);
    }
    path.pop_back();
  }
}

class TreeSolver {
 public:
  TreeSolver(const ShareBundle& subset, OpCounter* counter) : p_(subset.p), counter_(counter) {
    for (const auto& [holder, list] : subset.shares) {
      for (const TreeShare& share : list) by_path_[share.path].push_back(&share);
    }
  }

  const std::map<NodePath, std::vector<const TreeShare*>>& by_path() const { return by_path_; }

  FieldElement solve(const SchemeNode& node, NodePath& path) {
    const ExtendedParams params = node_params(node, p_);
    const SlotLayout layout = plan_layout(params);

    std::vector<ExtendedShare> shares;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const SchemeChild& child = node.children[i];
      const SlotPlacement& place = layout.slots[i];
      const std::string& label = params.issuance[i].holder;
      path.push_back(i);

      std::vector<FieldElement> values;
      if (child.node.leaf) {
        if (auto it = by_path_.find(path); it != by_path_.end()) {
          for (const TreeShare* share : it->second) {
            check_binding(*share, place, path);
            values.push_back(share->value);
          }
        }
      } else {
        try {
          values.push_back(solve(child.node, path));
        } catch (const Error& e) {
          // A compartment that cannot open its secret contributes nothing.
          if (e.code() != Errc::kCrucialMissing && e.code() != Errc::kInsufficientShares) throw;
        }
      }
      path.pop_back();

      for (const FieldElement& v : values) {
        if (place.kind == ShareKind::kCrucial) {
          shares.push_back({label, CrucialValue{place.crucial_index, v}});
        } else {
          std::optional<std::string> group;
          if (place.kind == ShareKind::kRedundant) group = child.group;
          shares.push_back({label, PointValue{FieldElement(place.x, p_), v, group}});
        }
      }
    }

    try {
      return reconstruct_extended(shares, params, counter_);
    } catch (const Error& e) {
      throw at_node(e, path);
    }
  }

 private:
  void check_binding(const TreeShare& share, const SlotPlacement& place, const NodePath& path) const {
    const bool kind_ok = share.kind == place.kind;
    const bool x_ok = place.kind == ShareKind::kCrucial ? !share.x.has_value()
                                                         : share.x && share.x->value() == place.x;
    if (!kind_ok || !x_ok || share.value.modulus() != p_) {
      throw Error(Errc::kMismatch, "share of '" + share.holder + "' does not match the scheme's layout",
                  format_path(path));
    }
  }

  PrimeModulus p_;
  OpCounter* counter_;
  std::map<NodePath, std::vector<const TreeShare*>> by_path_;
};

}  // namespace

SchemeNode SchemeNode::make_leaf(std::string holder) {
  SchemeNode node;
  node.leaf = true;
  node.holder = std::move(holder);
  return node;
}

SchemeNode SchemeNode::make_threshold(std::size_t k, std::vector<SchemeChild> children) {
  SchemeNode node;
  node.k = k;
  node.children = std::move(children);
  return node;
}

std::size_t SchemeNode::crucial_count() const {
  return static_cast<std::size_t>(std::count_if(children.begin(), children.end(), [](const SchemeChild& c) {
    return c.tag == ShareKind::kCrucial;
  }));
}

SchemeChild normal(SchemeNode node) { return {ShareKind::kNormal, {}, std::move(node)}; }
SchemeChild crucial(SchemeNode node) { return {ShareKind::kCrucial, {}, std::move(node)}; }
SchemeChild redundant(std::string group, SchemeNode node) {
  return {ShareKind::kRedundant, std::move(group), std::move(node)};
}

std::string format_path(const NodePath& path) {
  if (path.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

ExtendedParams node_params(const SchemeNode& node, const PrimeModulus& p) {
  std::vector<ShareSlot> slots;
  slots.reserve(node.children.size());
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const SchemeChild& child = node.children[i];
    slots.push_back({child.node.leaf ? child.node.holder : "#" + std::to_string(i), child.tag, child.group});
  }
  return ExtendedParams::from_slots(node.k, p, std::move(slots));
}

void validate_tree(const SchemeNode& root, const PrimeModulus& p) {
  if (root.leaf) throw Error(Errc::kParameter, "the root of a scheme must be a threshold node");
  NodePath path;
  validate_node(root, p, path);
}

std::string canonical_form(const SchemeNode& root) {
  std::string out;
  write_canonical(root, out);
  return out;
}

std::uint64_t scheme_id(const SchemeNode& root) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_form(root)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string format_scheme_id(std::uint64_t id) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id));
  return buf;
}

std::set<std::string> holders(const SchemeNode& root) {
  std::set<std::string> out;
  std::function<void(const SchemeNode&)> walk = [&](const SchemeNode& node) {
    if (node.leaf) {
      out.insert(node.holder);
      return;
    }
    for (const SchemeChild& child : node.children) walk(child.node);
  };
  walk(root);
  return out;
}

std::size_t leaf_count(const SchemeNode& root) {
  if (root.leaf) return 1;
  std::size_t n = 0;
  for (const SchemeChild& child : root.children) n += leaf_count(child.node);
  return n;
}

std::size_t randomness_dimension(const SchemeNode& root) {
  if (root.leaf) return 0;
  std::size_t d = root.crucial_count() + (root.k > 0 ? root.k - 1 : 0);
  for (const SchemeChild& child : root.children) d += randomness_dimension(child.node);
  return d;
}

std::size_t ShareBundle::total_shares() const {
  std::size_t n = 0;
  for (const auto& [holder, list] : shares) n += list.size();
  return n;
}

std::size_t ShareBundle::max_shares_per_holder() const {
  std::size_t m = 0;
  for (const auto& [holder, list] : shares) m = std::max(m, list.size());
  return m;
}

ShareBundle ShareBundle::restrict_to(const std::set<std::string>& subset) const {
  ShareBundle out{p, scheme_id, {}};
  for (const auto& [holder, list] : shares) {
    if (subset.contains(holder)) out.shares.emplace(holder, list);
  }
  return out;
}

ShareBundle deal_tree(const FieldElement& secret, const SchemeNode& root, RandomSource& rng, OpCounter* counter) {
  validate_tree(root, secret.modulus());
  ShareBundle out{secret.modulus(), scheme_id(root), {}};
  NodePath path;
  deal_node(root, secret, path, out, rng, counter);
  return out;
}

FieldElement reconstruct_tree(const ShareBundle& subset, const SchemeNode& root, OpCounter* counter) {
  if (subset.scheme_id != scheme_id(root)) {
    throw Error(Errc::kMismatch, "shares belong to scheme " + format_scheme_id(subset.scheme_id) + ", not " +
                                     format_scheme_id(scheme_id(root)));
  }
  validate_tree(root, subset.p);

  TreeSolver solver(subset, counter);
  for (const auto& [path, list] : solver.by_path()) {
    const SchemeNode* node = node_at(root, path);
    for (const TreeShare* share : list) {
      if (node == nullptr || !node->leaf || node->holder != share->holder) {
        throw Error(Errc::kMismatch, "share of '" + share->holder + "' points at no matching leaf",
                    format_path(path));
      }
    }
  }
  NodePath path;
  return solver.solve(root, path);
}

bool tree_authorized(const std::set<std::string>& subset, const SchemeNode& root) {
  if (root.leaf) return subset.contains(root.holder);
  std::size_t points = 0;
  std::set<std::string> groups;
  for (const SchemeChild& child : root.children) {
    const bool ok = tree_authorized(subset, child.node);
    switch (child.tag) {
      case ShareKind::kCrucial:
        if (!ok) return false;
        break;
      case ShareKind::kNormal:
        if (ok) ++points;
        break;
      case ShareKind::kRedundant:
        if (ok) groups.insert(child.group);
        break;
    }
  }
  return points + groups.size() >= root.k;
}

}  // namespace shardkit
