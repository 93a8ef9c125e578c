// Command-line front end. Talks to the library only through the C API.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shardkit/shardkit.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParameter = 3;
constexpr int kExitIo = 8;

struct SchemeDeleter {
  void operator()(shardkit_scheme* s) const { shardkit_scheme_free(s); }
};
struct FormulaDeleter {
  void operator()(shardkit_formula* f) const { shardkit_formula_free(f); }
};
struct BundleDeleter {
  void operator()(shardkit_bundle* b) const { shardkit_bundle_free(b); }
};
struct StringDeleter {
  void operator()(char* s) const { shardkit_string_free(s); }
};
using SchemePtr = std::unique_ptr<shardkit_scheme, SchemeDeleter>;
using FormulaPtr = std::unique_ptr<shardkit_formula, FormulaDeleter>;
using BundlePtr = std::unique_ptr<shardkit_bundle, BundleDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Thrown to unwind with a specific exit code after printing a message.
struct Exit {
  int code;
};

int exit_code(shardkit_status status) {
  switch (status) {
    case SHARDKIT_ERR_MISMATCH: return kExitUsage;
    case SHARDKIT_ERR_INVALID_ARGUMENT: return SHARDKIT_ERR_INTERNAL;
    default: return static_cast<int>(status);
  }
}

void check(shardkit_status status) {
  if (status == SHARDKIT_OK) return;
  std::cerr << "error: " << shardkit_status_name(status) << ": " << shardkit_last_error() << "\n";
  throw Exit{exit_code(status)};
}

[[noreturn]] void fail(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw Exit{code};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) fail(kExitIo, "cannot write " + path.string());
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ptr != s.data() + s.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) return std::numeric_limits<std::uint64_t>::max();
  if (ec != std::errc()) return std::nullopt;
  return v;
}

SchemePtr load_scheme(const std::string& path) {
  const std::string text = read_file(path);
  shardkit_scheme* raw = nullptr;
  check(shardkit_scheme_parse(text.c_str(), &raw));
  return SchemePtr(raw);
}

FormulaPtr load_formula(const std::string& path) {
  const std::string text = read_file(path);
  shardkit_formula* raw = nullptr;
  check(shardkit_formula_parse(text.c_str(), &raw));
  return FormulaPtr(raw);
}

std::optional<std::uint64_t> resolve_seed(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    if (const char* env = std::getenv("SHARDKIT_SEED")) text = env;
  }
  if (text.empty()) return std::nullopt;
  auto v = parse_u64(text);
  if (!v || text.size() > 20) fail(kExitUsage, "seed must be a 64-bit decimal integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split_ids(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (!id.empty()) out.push_back(id);
  }
  return out;
}

int cmd_deal(const std::string& spec, const std::string& secret_text, const std::string& prime_text,
             const std::string& seed_text, const std::string& out_dir) {
  auto scheme = load_scheme(spec);
  const auto secret = parse_u64(secret_text);
  if (!secret) fail(kExitUsage, "secret must be a decimal field element");
  std::uint64_t prime = 0;
  if (!prime_text.empty()) {
    auto p = parse_u64(prime_text);
    if (!p) fail(kExitUsage, "prime must be a decimal integer");
    prime = *p;
    if (prime == 0) fail(kExitParameter, "0 is not prime");
  }
  const auto seed = resolve_seed(seed_text);

  shardkit_bundle* raw = nullptr;
  check(shardkit_deal(scheme.get(), *secret, prime, seed ? &*seed : nullptr, &raw));
  BundlePtr bundle(raw);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(kExitIo, "cannot create " + out_dir + ": " + ec.message());
  const std::size_t holders = shardkit_bundle_holder_count(bundle.get());
  for (std::size_t i = 0; i < holders; ++i) {
    const char* holder = shardkit_bundle_holder(bundle.get(), i);
    char* text = nullptr;
    check(shardkit_bundle_records(bundle.get(), holder, &text));
    StringPtr owned(text);
    write_file(fs::path(out_dir) / (std::string(holder) + ".share"), owned.get());
  }
  char* meta = nullptr;
  check(shardkit_bundle_metadata(bundle.get(), &meta));
  StringPtr owned_meta(meta);
  write_file(fs::path(out_dir) / "metadata.txt", owned_meta.get());

  std::uint64_t id = 0;
  check(shardkit_scheme_id(scheme.get(), &id));
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(id));
  std::cout << "holders=" << holders << " shares=" << shardkit_bundle_total_shares(bundle.get()) << " scheme=" << hex
            << "\n";
  return 0;
}

int cmd_reconstruct(const std::string& spec, const std::vector<std::string>& files) {
  auto scheme = load_scheme(spec);
  std::string records;
  for (const std::string& f : files) {
    records += read_file(f);
    if (!records.empty() && records.back() != '\n') records += '\n';
  }
  std::uint64_t secret = 0;
  check(shardkit_reconstruct(scheme.get(), records.c_str(), &secret));
  std::cout << secret << "\n";
  return 0;
}

int cmd_verify(const std::string& spec, const std::string& formula_path) {
  auto scheme = load_scheme(spec);
  auto formula = load_formula(formula_path);
  shardkit_equivalence result{};
  check(shardkit_verify(scheme.get(), formula.get(), &result));
  int flat = 0;
  check(shardkit_scheme_is_flat(scheme.get(), &flat));
  std::cout << "equivalent=" << (result.equivalent ? "true" : "false") << " flattened=" << (flat ? "true" : "false")
            << " subsets=" << result.subsets_checked << "\n";
  if (result.counterexample != nullptr) std::cout << "counterexample={" << result.counterexample << "}\n";
  const bool ok = result.equivalent != 0;
  shardkit_equivalence_clear(&result);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_perfect(const std::string& spec, const std::string& prime_text, const std::string& subset_text,
                std::uint64_t seed) {
  auto scheme = load_scheme(spec);
  const auto prime = parse_u64(prime_text);
  if (!prime) fail(kExitUsage, "prime must be a decimal integer");
  const std::vector<std::string> ids = split_ids(subset_text);
  std::vector<const char*> ptrs;
  for (const auto& id : ids) ptrs.push_back(id.c_str());

  shardkit_perfectness r{};
  check(shardkit_check_perfectness(scheme.get(), *prime, ptrs.data(), ptrs.size(), seed, &r));
  std::cout << "p=" << r.p << " dimension=" << r.dimension << " authorized=" << (r.authorized ? "true" : "false")
            << "\n";
  std::cout << "reference_secret=" << r.reference_secret << " counts=";
  for (std::size_t i = 0; i < r.counts_len; ++i) std::cout << (i ? "," : "") << r.counts[i];
  std::cout << "\n";
  std::cout << "uniform=" << (r.uniform ? "true" : "false") << " point_mass=" << (r.point_mass ? "true" : "false")
            << "\n";
  std::cout << "views=" << r.views << " every_view_uniform=" << (r.every_view_uniform ? "true" : "false")
            << " every_view_point_mass=" << (r.every_view_point_mass ? "true" : "false") << "\n";
  std::cout << "perfect=" << (r.holds ? "true" : "false") << "\n";
  return r.holds ? 0 : kExitCheckFailed;
}

int cmd_compile(const std::string& formula_path, const std::string& out_path) {
  auto formula = load_formula(formula_path);
  shardkit_compile_report report{};
  check(shardkit_compile(formula.get(), &report));
  std::ostringstream head;
  head << "# flattened=" << (report.flattened ? "true" : "false") << "\n"
       << "# ideal=" << (report.ideal ? "true" : "false") << "\n"
       << "# total_shares=" << report.total_shares << "\n"
       << "# max_shares_per_holder=" << report.max_shares_per_holder << "\n"
       << "# clauses=" << report.clauses << "\n"
       << "# root_points=" << report.root_points << "\n";
  const std::string text = head.str() + report.scheme_text;
  shardkit_compile_report_clear(&report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cout << head.str();
  }
  return 0;
}

int cmd_count(const std::string& formula_path) {
  auto formula = load_formula(formula_path);
  shardkit_counts counts{};
  check(shardkit_count(formula.get(), &counts));
  std::cout << "clauses=" << counts.clauses << "\n";
  std::cout << "naive=" << counts.naive << " factored=" << counts.factored << " compiled=" << counts.compiled << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shardkit: threshold secret sharing with crucial and redundant shares"};
  app.require_subcommand(1);

  std::string spec, formula, secret, prime, seed, out, subset;
  std::vector<std::string> files;
  std::uint64_t ref_seed = 0;

  auto* deal = app.add_subcommand("deal", "Split a secret according to a scheme file");
  deal->add_option("spec", spec, "Scheme file")->required();
  deal->add_option("secret", secret, "Secret, a decimal element of GF(p)")->required();
  deal->add_option("--prime", prime, "Field prime (default 2^61-1)");
  deal->add_option("--seed", seed, "Seed for reproducible dealing (falls back to SHARDKIT_SEED)");
  deal->add_option("--out", out, "Output directory")->required();

  auto* rec = app.add_subcommand("reconstruct", "Recover the secret from share files");
  rec->add_option("--spec", spec, "Scheme file")->required();
  rec->add_option("shares", files, "Share files")->required();

  auto* verify = app.add_subcommand("verify", "Check a scheme against an access formula");
  verify->add_option("spec", spec, "Scheme file")->required();
  verify->add_option("formula", formula, "Formula file")->required();

  auto* perfect = app.add_subcommand("perfect", "Enumerate what a subset learns about the secret");
  perfect->add_option("spec", spec, "Scheme file")->required();
  perfect->add_option("--prime", prime, "Small prime, at most 13")->required();
  perfect->add_option("--subset", subset, "Comma-separated holder ids");
  perfect->add_option("--seed", ref_seed, "Seed for the reference dealing");

  auto* compile = app.add_subcommand("compile", "Build a scheme for an access formula");
  compile->add_option("formula", formula, "Formula file")->required();
  compile->add_option("--out", out, "Write the scheme here instead of stdout");

  auto* count = app.add_subcommand("count", "Compare share counts for an access formula");
  count->add_option("formula", formula, "Formula file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*deal) return cmd_deal(spec, secret, prime, seed, out);
    if (*rec) return cmd_reconstruct(spec, files);
    if (*verify) return cmd_verify(spec, formula);
    if (*perfect) return cmd_perfect(spec, prime, subset, ref_seed);
    if (*compile) return cmd_compile(formula, out);
    if (*count) return cmd_count(formula);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
