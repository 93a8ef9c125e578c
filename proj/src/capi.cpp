#include "shardkit/shardkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "shardkit/access.hpp"
#include "shardkit/compartments.hpp"
#include "shardkit/text.hpp"

struct shardkit_scheme {
  shardkit::SchemeNode root;
};

struct shardkit_formula {
  shardkit::AccessFormula formula;
};

struct shardkit_bundle {
  shardkit::ShareBundle bundle;
  std::vector<std::string> holders;
};

namespace {

thread_local std::string last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
shardkit_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const shardkit::Error& e) {
    last_error = e.what();
    return static_cast<shardkit_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SHARDKIT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SHARDKIT_ERR_INTERNAL;
  }
}

shardkit_status invalid(const char* what) {
  last_error = what;
  return SHARDKIT_ERR_INVALID_ARGUMENT;
}

std::set<std::string> holder_set(const char* const* holders, size_t count) {
  std::set<std::string> out;
  for (size_t i = 0; i < count; ++i) {
    if (holders[i] == nullptr) throw shardkit::Error(shardkit::Errc::kParameter, "null holder id");
    out.insert(holders[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* shardkit_status_name(shardkit_status status) {
  switch (status) {
    case SHARDKIT_OK: return "ok";
    case SHARDKIT_ERR_INVALID_ARGUMENT: return "invalid argument";
    default: break;
  }
  static thread_local std::string name;
  name = shardkit::errc_name(static_cast<shardkit::Errc>(status));
  return name.c_str();
}

const char* shardkit_last_error(void) { return last_error.c_str(); }

void shardkit_string_free(char* s) { std::free(s); }

uint64_t shardkit_default_prime(void) { return shardkit::PrimeModulus::kDefault; }

shardkit_status shardkit_scheme_parse(const char* text, shardkit_scheme** out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new shardkit_scheme{shardkit::parse_scheme(text)};
    return SHARDKIT_OK;
  });
}

void shardkit_scheme_free(shardkit_scheme* scheme) { delete scheme; }

shardkit_status shardkit_scheme_id(const shardkit_scheme* scheme, uint64_t* out) {
  if (scheme == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = shardkit::scheme_id(scheme->root);
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_scheme_format(const shardkit_scheme* scheme, char** out_text) {
  if (scheme == nullptr || out_text == nullptr) return invalid("null argument");
  return guarded([&] {
    *out_text = copy_string(shardkit::format_scheme(scheme->root));
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_scheme_is_flat(const shardkit_scheme* scheme, int* out) {
  if (scheme == nullptr || out == nullptr) return invalid("null argument");
  bool flat = !scheme->root.leaf;
  for (const auto& child : scheme->root.children) flat = flat && child.node.leaf;
  *out = flat ? 1 : 0;
  return SHARDKIT_OK;
}

shardkit_status shardkit_scheme_authorized(const shardkit_scheme* scheme, const char* const* holders, size_t count,
                                           int* out) {
  if (scheme == nullptr || out == nullptr || (holders == nullptr && count != 0)) return invalid("null argument");
  return guarded([&] {
    *out = shardkit::tree_authorized(holder_set(holders, count), scheme->root) ? 1 : 0;
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_deal(const shardkit_scheme* scheme, uint64_t secret, uint64_t prime, const uint64_t* seed,
                              shardkit_bundle** out) {
  if (scheme == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    const shardkit::PrimeModulus p(prime == 0 ? shardkit::PrimeModulus::kDefault : prime);
    if (secret >= p.value()) {
      throw shardkit::Error(shardkit::Errc::kParameter,
                            "secret " + std::to_string(secret) + " is not below p = " + std::to_string(p.value()));
    }
    shardkit::SeededRandom rng = seed != nullptr ? shardkit::SeededRandom(*seed) : shardkit::SeededRandom::from_entropy();
    auto* bundle = new shardkit_bundle{shardkit::deal_tree(shardkit::FieldElement(secret, p), scheme->root, rng), {}};
    for (const auto& [holder, list] : bundle->bundle.shares) bundle->holders.push_back(holder);
    *out = bundle;
    return SHARDKIT_OK;
  });
}

void shardkit_bundle_free(shardkit_bundle* bundle) { delete bundle; }

size_t shardkit_bundle_holder_count(const shardkit_bundle* bundle) {
  return bundle == nullptr ? 0 : bundle->holders.size();
}

const char* shardkit_bundle_holder(const shardkit_bundle* bundle, size_t index) {
  if (bundle == nullptr || index >= bundle->holders.size()) return nullptr;
  return bundle->holders[index].c_str();
}

size_t shardkit_bundle_total_shares(const shardkit_bundle* bundle) {
  return bundle == nullptr ? 0 : bundle->bundle.total_shares();
}

shardkit_status shardkit_bundle_records(const shardkit_bundle* bundle, const char* holder, char** out_text) {
  if (bundle == nullptr || holder == nullptr || out_text == nullptr) return invalid("null argument");
  return guarded([&] {
    auto it = bundle->bundle.shares.find(holder);
    if (it == bundle->bundle.shares.end()) {
      throw shardkit::Error(shardkit::Errc::kParameter, std::string("no shares for holder '") + holder + "'");
    }
    std::string text;
    for (const auto& share : it->second) {
      text += shardkit::format_record(bundle->bundle.p.value(), bundle->bundle.scheme_id, share);
      text += '\n';
    }
    *out_text = copy_string(text);
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_bundle_metadata(const shardkit_bundle* bundle, char** out_text) {
  if (bundle == nullptr || out_text == nullptr) return invalid("null argument");
  return guarded([&] {
    std::string text = "p=" + std::to_string(bundle->bundle.p.value()) + "\n";
    text += "scheme=" + shardkit::format_scheme_id(bundle->bundle.scheme_id) + "\n";
    for (const auto& [holder, list] : bundle->bundle.shares) {
      for (const auto& share : list) text += "holder=" + holder + " path=" + shardkit::format_path(share.path) + "\n";
    }
    *out_text = copy_string(text);
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_reconstruct(const shardkit_scheme* scheme, const char* records_text, uint64_t* secret_out) {
  if (scheme == nullptr || records_text == nullptr || secret_out == nullptr) return invalid("null argument");
  return guarded([&] {
    const auto bundle = shardkit::bundle_from_records(shardkit::parse_records(records_text));
    *secret_out = shardkit::reconstruct_tree(bundle, scheme->root).value();
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_formula_parse(const char* text, shardkit_formula** out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new shardkit_formula{shardkit::parse_formula(text)};
    return SHARDKIT_OK;
  });
}

void shardkit_formula_free(shardkit_formula* formula) { delete formula; }

shardkit_status shardkit_verify(const shardkit_scheme* scheme, const shardkit_formula* formula,
                                shardkit_equivalence* out) {
  if (scheme == nullptr || formula == nullptr || out == nullptr) return invalid("null argument");
  *out = shardkit_equivalence{};
  return guarded([&] {
    const auto result = shardkit::verify_equivalence(scheme->root, formula->formula);
    out->equivalent = result.equivalent ? 1 : 0;
    out->subsets_checked = result.subsets_checked;
    if (result.counterexample) {
      std::string ids;
      for (const auto& id : *result.counterexample) {
        if (!ids.empty()) ids += ',';
        ids += id;
      }
      out->counterexample = copy_string(ids);
    }
    return SHARDKIT_OK;
  });
}

void shardkit_equivalence_clear(shardkit_equivalence* result) {
  if (result == nullptr) return;
  std::free(result->counterexample);
  result->counterexample = nullptr;
}

shardkit_status shardkit_check_perfectness(const shardkit_scheme* scheme, uint64_t prime, const char* const* subset,
                                           size_t count, uint64_t reference_seed, shardkit_perfectness* out) {
  if (scheme == nullptr || out == nullptr || (subset == nullptr && count != 0)) return invalid("null argument");
  *out = shardkit_perfectness{};
  return guarded([&] {
    const auto r = shardkit::perfectness_check(scheme->root, prime, holder_set(subset, count), reference_seed);
    out->p = r.p;
    out->dimension = r.dimension;
    out->authorized = r.authorized;
    out->reference_secret = r.reference_secret;
    out->counts_len = r.counts.size();
    for (size_t i = 0; i < r.counts.size() && i < SHARDKIT_MAX_PERFECTNESS_PRIME; ++i) out->counts[i] = r.counts[i];
    out->uniform = r.uniform;
    out->point_mass = r.point_mass;
    out->views = r.views;
    out->every_view_uniform = r.every_view_uniform;
    out->every_view_point_mass = r.every_view_point_mass;
    out->holds = r.holds();
    return SHARDKIT_OK;
  });
}

shardkit_status shardkit_compile(const shardkit_formula* formula, shardkit_compile_report* out) {
  if (formula == nullptr || out == nullptr) return invalid("null argument");
  *out = shardkit_compile_report{};
  return guarded([&] {
    const auto report = shardkit::compile_formula(formula->formula);
    out->flattened = report.flattened;
    out->ideal = report.ideal;
    out->total_shares = report.total_shares;
    out->max_shares_per_holder = report.max_shares_per_holder;
    out->clauses = report.clauses;
    out->root_points = report.root_points;
    out->scheme_text = copy_string(shardkit::format_scheme(report.scheme));
    return SHARDKIT_OK;
  });
}

void shardkit_compile_report_clear(shardkit_compile_report* report) {
  if (report == nullptr) return;
  std::free(report->scheme_text);
  report->scheme_text = nullptr;
}

shardkit_status shardkit_count(const shardkit_formula* formula, shardkit_counts* out) {
  if (formula == nullptr || out == nullptr) return invalid("null argument");
  *out = shardkit_counts{};
  return guarded([&] {
    const auto clauses = shardkit::minimal_clauses(formula->formula);
    const auto naive = shardkit::naive_share_counts(clauses);
    out->clauses = clauses.clauses.size();
    out->naive = naive.per_clause_total;
    out->factored = naive.factored_total;
    out->compiled = shardkit::compile_formula(formula->formula).total_shares;
    return SHARDKIT_OK;
  });
}

}  // extern "C"
