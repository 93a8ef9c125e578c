#include "shardkit/access.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>

namespace shardkit {
namespace {

using Mask = std::uint32_t;

std::vector<std::string> make_universe(const std::set<std::string>& required, const std::vector<std::string>& extra) {
  std::set<std::string> all = required;
  all.insert(extra.begin(), extra.end());
  if (all.size() > kMaxUniverse) {
    throw Error(Errc::kEnumerationLimit, "universe of " + std::to_string(all.size()) +
                                             " ids exceeds the enumeration limit of " + std::to_string(kMaxUniverse));
  }
  return {all.begin(), all.end()};
}

class Indexer {
 public:
  explicit Indexer(const std::vector<std::string>& universe) {
    for (std::size_t i = 0; i < universe.size(); ++i) index_.emplace(universe[i], static_cast<int>(i));
  }
  bool has(const std::string& id, Mask mask) const {
    auto it = index_.find(id);
    return it != index_.end() && (mask >> it->second & 1U) != 0;
  }

 private:
  std::map<std::string, int> index_;
};

bool formula_holds(const AccessFormula& f, const Indexer& ix, Mask mask) {
  switch (f.op) {
    case AccessFormula::Op::kLiteral:
      return ix.has(f.id, mask);
    case AccessFormula::Op::kAnd:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const AccessFormula& c) { return formula_holds(c, ix, mask); });
    case AccessFormula::Op::kOr:
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](const AccessFormula& c) { return formula_holds(c, ix, mask); });
    case AccessFormula::Op::kThreshold: {
      std::size_t hits = 0;
      for (const AccessFormula& c : f.children) {
        if (formula_holds(c, ix, mask) && ++hits >= f.k) return true;
      }
      return false;
    }
  }
  return false;
}

bool scheme_holds(const SchemeNode& node, const Indexer& ix, Mask mask) {
  if (node.leaf) return ix.has(node.holder, mask);
  std::size_t points = 0;
  std::set<std::string> groups;
  for (const SchemeChild& child : node.children) {
    const bool ok = scheme_holds(child.node, ix, mask);
    if (child.tag == ShareKind::kCrucial && !ok) return false;
    if (child.tag == ShareKind::kNormal && ok) ++points;
    if (child.tag == ShareKind::kRedundant && ok) groups.insert(child.group);
  }
  return points + groups.size() >= node.k;
}

std::set<std::string> subset_of(const std::vector<std::string>& universe, Mask mask) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if ((mask >> i & 1U) != 0) out.insert(universe[i]);
  }
  return out;
}

Clause swapped(const Clause& clause, const std::string& a, const std::string& b) {
  Clause out;
  for (const std::string& id : clause) out.insert(id == a ? b : id == b ? a : id);
  return out;
}

bool mergeable(const std::set<Clause>& clauses, const std::string& a, const std::string& b) {
  std::set<Clause> image;
  for (const Clause& c : clauses) {
    if (c.contains(a) && c.contains(b)) return false;
    image.insert(swapped(c, a, b));
  }
  return image == clauses;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SchemeNode child_tree(const AccessFormula& f);

std::vector<SchemeChild> child_list(const AccessFormula& f) {
  std::vector<SchemeChild> out;
  for (const AccessFormula& c : f.children) {
    out.push_back(normal(c.op == AccessFormula::Op::kLiteral ? SchemeNode::make_leaf(c.id) : child_tree(c)));
  }
  return out;
}

// And -> (n,n), Or -> (1,n), Threshold(k) -> (k,n).
SchemeNode child_tree(const AccessFormula& f) {
  switch (f.op) {
    case AccessFormula::Op::kLiteral:
      return SchemeNode::make_threshold(1, {normal(SchemeNode::make_leaf(f.id))});
    case AccessFormula::Op::kAnd:
      return SchemeNode::make_threshold(f.children.size(), child_list(f));
    case AccessFormula::Op::kOr:
      return SchemeNode::make_threshold(1, child_list(f));
    case AccessFormula::Op::kThreshold:
      return SchemeNode::make_threshold(f.k, child_list(f));
  }
  throw Error(Errc::kInternal, "unknown formula operator");
}

std::optional<SchemeNode> flatten(const std::set<Clause>& clauses, std::size_t& root_points) {
  Clause core = *clauses.begin();
  for (const Clause& c : clauses) {
    Clause keep;
    std::set_intersection(core.begin(), core.end(), c.begin(), c.end(), std::inserter(keep, keep.end()));
    core = std::move(keep);
  }

  std::set<Clause> residual;
  for (const Clause& c : clauses) {
    Clause rest;
    std::set_difference(c.begin(), c.end(), core.begin(), core.end(), std::inserter(rest, rest.end()));
    residual.insert(std::move(rest));
  }

  std::vector<SchemeChild> children;
  // One clause made entirely of core ids: a plain (n,n) scheme.
  if (residual.size() == 1 && residual.begin()->empty()) {
    for (const std::string& id : core) children.push_back(normal(SchemeNode::make_leaf(id)));
    root_points = core.size();
    return SchemeNode::make_threshold(core.size(), std::move(children));
  }

  const auto groups = redundant_groups(residual);
  const std::set<Clause> merged = merge_groups(residual, groups);
  std::set<std::string> reps;
  for (const Clause& c : merged) reps.insert(c.begin(), c.end());
  const std::size_t k = merged.begin()->size();
  const bool uniform_size =
      std::all_of(merged.begin(), merged.end(), [k](const Clause& c) { return c.size() == k; });
  if (!uniform_size || merged.size() != binomial(reps.size(), k)) return std::nullopt;

  for (const std::string& id : core) children.push_back(crucial(SchemeNode::make_leaf(id)));
  std::map<std::string, const std::vector<std::string>*> group_of;
  for (const auto& g : groups) group_of.emplace(g.front(), &g);
  std::size_t group_no = 0;
  for (const std::string& rep : reps) {
    auto it = group_of.find(rep);
    if (it == group_of.end()) {
      children.push_back(normal(SchemeNode::make_leaf(rep)));
      continue;
    }
    const std::string gid = "g" + std::to_string(++group_no);
    for (const std::string& member : *it->second) children.push_back(redundant(gid, SchemeNode::make_leaf(member)));
  }
  root_points = reps.size();
  return SchemeNode::make_threshold(k, std::move(children));
}

}  // namespace

AccessFormula AccessFormula::literal(std::string id) {
  AccessFormula f;
  f.id = std::move(id);
  return f;
}

AccessFormula AccessFormula::all_of(std::vector<AccessFormula> children) {
  AccessFormula f;
  f.op = Op::kAnd;
  f.children = std::move(children);
  return f;
}

AccessFormula AccessFormula::any_of(std::vector<AccessFormula> children) {
  AccessFormula f;
  f.op = Op::kOr;
  f.children = std::move(children);
  return f;
}

AccessFormula AccessFormula::at_least(std::size_t k, std::vector<AccessFormula> children) {
  AccessFormula f;
  f.op = Op::kThreshold;
  f.k = k;
  f.children = std::move(children);
  return f;
}

void validate_formula(const AccessFormula& f) {
  switch (f.op) {
    case AccessFormula::Op::kLiteral:
      if (f.id.empty()) throw Error(Errc::kParameter, "empty literal");
      return;
    case AccessFormula::Op::kAnd:
    case AccessFormula::Op::kOr:
      if (f.children.size() < 2) throw Error(Errc::kParameter, "and/or need at least two operands");
      break;
    case AccessFormula::Op::kThreshold:
      if (f.k == 0 || f.k > f.children.size()) {
        throw Error(Errc::kParameter, "threshold " + std::to_string(f.k) + " outside 1.." +
                                          std::to_string(f.children.size()));
      }
      break;
  }
  for (const AccessFormula& c : f.children) validate_formula(c);
}

std::set<std::string> literals(const AccessFormula& f) {
  if (f.op == AccessFormula::Op::kLiteral) return {f.id};
  std::set<std::string> out;
  for (const AccessFormula& c : f.children) out.merge(literals(c));
  return out;
}

bool evaluate_formula(const AccessFormula& f, const std::set<std::string>& subset) {
  switch (f.op) {
    case AccessFormula::Op::kLiteral:
      return subset.contains(f.id);
    case AccessFormula::Op::kAnd:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const AccessFormula& c) { return evaluate_formula(c, subset); });
    case AccessFormula::Op::kOr:
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](const AccessFormula& c) { return evaluate_formula(c, subset); });
    case AccessFormula::Op::kThreshold:
      return static_cast<std::size_t>(std::count_if(f.children.begin(), f.children.end(), [&](const AccessFormula& c) {
               return evaluate_formula(c, subset);
             })) >= f.k;
  }
  return false;
}

MinimalClauseSet minimal_clauses(const AccessFormula& f, const std::vector<std::string>& universe_hint) {
  validate_formula(f);
  const std::vector<std::string> universe = make_universe(literals(f), universe_hint);
  const Indexer ix(universe);
  const Mask end = Mask{1} << universe.size();

  std::vector<bool> authorized(end);
  for (Mask m = 0; m < end; ++m) authorized[m] = formula_holds(f, ix, m);

  MinimalClauseSet out;
  for (Mask m = 0; m < end; ++m) {
    if (!authorized[m]) continue;
    bool minimal = true;
    for (Mask bit = 1; bit < end && minimal; bit <<= 1) {
      if ((m & bit) != 0 && authorized[m ^ bit]) minimal = false;
    }
    if (minimal) out.clauses.insert(subset_of(universe, m));
  }
  return out;
}

AccessFormula formula_from_clauses(const MinimalClauseSet& clauses) {
  auto term = [](const Clause& c) {
    if (c.empty()) throw Error(Errc::kParameter, "the empty clause has no formula");
    if (c.size() == 1) return AccessFormula::literal(*c.begin());
    std::vector<AccessFormula> lits;
    for (const std::string& id : c) lits.push_back(AccessFormula::literal(id));
    return AccessFormula::all_of(std::move(lits));
  };
  if (clauses.clauses.empty()) throw Error(Errc::kParameter, "empty clause set");
  if (clauses.clauses.size() == 1) return term(*clauses.clauses.begin());
  std::vector<AccessFormula> terms;
  for (const Clause& c : clauses.clauses) terms.push_back(term(c));
  return AccessFormula::any_of(std::move(terms));
}

EquivalenceResult verify_equivalence(const SchemeNode& scheme, const AccessFormula& f,
                                     const std::vector<std::string>& universe_hint) {
  validate_formula(f);
  std::set<std::string> required = literals(f);
  required.merge(holders(scheme));
  const std::vector<std::string> universe = make_universe(required, universe_hint);
  const Indexer ix(universe);
  const Mask end = Mask{1} << universe.size();

  EquivalenceResult out;
  for (Mask m = 0; m < end; ++m) {
    ++out.subsets_checked;
    if (scheme_holds(scheme, ix, m) != formula_holds(f, ix, m)) {
      out.equivalent = false;
      out.counterexample = subset_of(universe, m);
      break;
    }
  }
  return out;
}

PerfectnessResult perfectness_check(const SchemeNode& scheme, std::uint64_t p, const std::set<std::string>& subset,
                                    std::uint64_t reference_seed) {
  if (p > kMaxPerfectnessPrime) {
    throw Error(Errc::kEnumerationLimit, "perfectness enumeration needs p <= " + std::to_string(kMaxPerfectnessPrime));
  }
  const PrimeModulus modulus(p);
  validate_tree(scheme, modulus);

  PerfectnessResult out;
  out.p = p;
  out.dimension = randomness_dimension(scheme);
  out.authorized = tree_authorized(subset, scheme);
  std::uint64_t states = 1;
  for (std::size_t i = 0; i < out.dimension; ++i) {
    states *= p;
    if (states > kMaxRandomnessStates) {
      throw Error(Errc::kEnumerationLimit, "p^" + std::to_string(out.dimension) + " randomness assignments exceed " +
                                               std::to_string(kMaxRandomnessStates));
    }
  }

  auto view_of = [&](const ShareBundle& bundle) {
    std::vector<std::uint64_t> view;
    for (const std::string& holder : subset) {
      auto it = bundle.shares.find(holder);
      if (it == bundle.shares.end()) continue;
      for (const TreeShare& s : it->second) view.push_back(s.value.value());
    }
    return view;
  };

  std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> table;
  std::vector<std::uint64_t> words(out.dimension);
  for (std::uint64_t secret = 0; secret < p; ++secret) {
    std::fill(words.begin(), words.end(), 0);
    for (std::uint64_t n = 0; n < states; ++n) {
      ReplayRandom replay(words);
      const ShareBundle bundle = deal_tree(FieldElement(secret, modulus), scheme, replay);
      auto [it, fresh] = table.try_emplace(view_of(bundle), std::vector<std::uint64_t>(p, 0));
      ++it->second[secret];
      // next assignment, little-endian base p
      for (std::size_t d = 0; d < words.size(); ++d) {
        if (++words[d] < p) break;
        words[d] = 0;
      }
    }
  }

  SeededRandom rng(reference_seed);
  out.reference_secret = sample_uniform(rng, modulus).value();
  std::vector<std::uint64_t> ref_words;
  for (std::size_t i = 0; i < out.dimension; ++i) ref_words.push_back(sample_uniform(rng, modulus).value());
  ReplayRandom replay(ref_words);
  out.counts = table.at(view_of(deal_tree(FieldElement(out.reference_secret, modulus), scheme, replay)));

  auto is_uniform = [](const std::vector<std::uint64_t>& c) {
    return std::all_of(c.begin(), c.end(), [&](std::uint64_t v) { return v == c.front(); });
  };
  auto is_point_mass = [](const std::vector<std::uint64_t>& c) {
    return std::count_if(c.begin(), c.end(), [](std::uint64_t v) { return v != 0; }) == 1;
  };
  out.uniform = is_uniform(out.counts);
  out.point_mass = is_point_mass(out.counts);
  out.views = table.size();
  out.every_view_uniform = true;
  out.every_view_point_mass = true;
  for (const auto& [view, counts] : table) {
    out.every_view_uniform = out.every_view_uniform && is_uniform(counts);
    out.every_view_point_mass = out.every_view_point_mass && is_point_mass(counts);
  }
  return out;
}

NaiveCounts naive_share_counts(const MinimalClauseSet& clauses) {
  if (clauses.clauses.empty()) throw Error(Errc::kParameter, "empty clause set");
  Clause core = *clauses.clauses.begin();
  NaiveCounts out;
  for (const Clause& c : clauses.clauses) {
    out.per_clause_total += c.size();
    Clause keep;
    std::set_intersection(core.begin(), core.end(), c.begin(), c.end(), std::inserter(keep, keep.end()));
    core = std::move(keep);
  }
  out.factored_total = core.size();
  for (const Clause& c : clauses.clauses) out.factored_total += c.size() - core.size();
  return out;
}

std::vector<std::vector<std::string>> redundant_groups(const std::set<Clause>& clauses) {
  std::set<std::string> ids;
  for (const Clause& c : clauses) ids.insert(c.begin(), c.end());

  std::vector<std::vector<std::string>> groups;
  std::set<std::string> taken;
  for (auto a = ids.begin(); a != ids.end(); ++a) {
    if (taken.contains(*a)) continue;
    std::vector<std::string> group{*a};
    // Swap symmetry composes, so agreeing with the first member suffices.
    for (auto b = std::next(a); b != ids.end(); ++b) {
      if (!taken.contains(*b) && mergeable(clauses, *a, *b)) {
        group.push_back(*b);
        taken.insert(*b);
      }
    }
    if (group.size() > 1) groups.push_back(std::move(group));
  }
  return groups;
}

std::set<Clause> merge_groups(const std::set<Clause>& clauses, const std::vector<std::vector<std::string>>& groups) {
  std::map<std::string, std::string> rep;
  for (const auto& g : groups) {
    for (const std::string& id : g) rep[id] = g.front();
  }
  std::set<Clause> out;
  for (const Clause& c : clauses) {
    Clause m;
    for (const std::string& id : c) {
      auto it = rep.find(id);
      m.insert(it == rep.end() ? id : it->second);
    }
    out.insert(std::move(m));
  }
  return out;
}

std::set<Clause> expand_groups(const std::set<Clause>& merged, const std::vector<std::vector<std::string>>& groups) {
  std::map<std::string, const std::vector<std::string>*> members;
  for (const auto& g : groups) members.emplace(g.front(), &g);
  std::set<Clause> out;
  for (const Clause& c : merged) {
    std::vector<Clause> partial{{}};
    for (const std::string& id : c) {
      auto it = members.find(id);
      std::vector<Clause> next;
      for (const Clause& base : partial) {
        if (it == members.end()) {
          Clause e = base;
          e.insert(id);
          next.push_back(std::move(e));
          continue;
        }
        for (const std::string& member : *it->second) {
          Clause e = base;
          e.insert(member);
          next.push_back(std::move(e));
        }
      }
      partial = std::move(next);
    }
    out.insert(partial.begin(), partial.end());
  }
  return out;
}

CompileReport compile_formula(const AccessFormula& f, const std::vector<std::string>& universe) {
  const MinimalClauseSet minimal = minimal_clauses(f, universe);

  CompileReport report;
  report.clauses = minimal.clauses.size();
  std::size_t root_points = 0;
  if (auto flat = flatten(minimal.clauses, root_points)) {
    report.scheme = std::move(*flat);
    report.flattened = true;
  } else {
    report.scheme = child_tree(f);
    report.flattened = false;
    root_points = report.scheme.children.size() - report.scheme.crucial_count();
  }
  report.root_points = root_points;

  std::map<std::string, std::size_t> per_holder;
  std::function<void(const SchemeNode&)> walk = [&](const SchemeNode& node) {
    if (node.leaf) {
      ++per_holder[node.holder];
      return;
    }
    for (const SchemeChild& c : node.children) walk(c.node);
  };
  walk(report.scheme);
  for (const auto& [holder, n] : per_holder) {
    report.total_shares += n;
    report.max_shares_per_holder = std::max(report.max_shares_per_holder, n);
  }
  report.ideal = report.max_shares_per_holder == 1;

  if (!verify_equivalence(report.scheme, f, universe).equivalent) {
    throw Error(Errc::kInternal, "compiler produced wrong scheme");
  }
  return report;
}

}  // namespace shardkit
