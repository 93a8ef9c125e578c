#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "shardkit/access.hpp"
#include "shardkit/text.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(SHARDKIT_TEST_DATA) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline shardkit::SchemeNode scheme(const std::string& name) { return shardkit::parse_scheme(read(name + ".scheme")); }
inline shardkit::AccessFormula formula(const std::string& name) {
  return shardkit::parse_formula(read(name + ".formula"));
}

// Scheme fixtures paired with the formula they should realize (empty when
// the pair is a known mismatch).
struct SchemeFixture {
  const char* scheme;
  const char* formula;
};

inline constexpr SchemeFixture kSchemes[] = {
    {"ex1", "ex1"},           {"ex3_conj", "ex3_conj"}, {"ex3_disj", "ex3_disj"},
    {"ex5", "ex5"},           {"ex6", "ex6"},           {"cnf_compartments", "cnf"},
    {"cnf_flat", nullptr},
};

inline constexpr const char* kFormulas[] = {"ex1", "ex2", "ex3_conj", "ex3_disj", "ex4",
                                            "ex5", "ex6", "cnf",      "chain"};

// All subsets of `universe` as sets, by increasing bitmask.
template <typename Fn>
void for_each_subset(const std::vector<std::string>& universe, Fn&& fn) {
  const std::uint32_t end = std::uint32_t{1} << universe.size();
  for (std::uint32_t m = 0; m < end; ++m) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if ((m >> i & 1U) != 0) s.insert(universe[i]);
    }
    fn(s);
  }
}

inline std::vector<std::string> holder_list(const shardkit::SchemeNode& root) {
  auto h = shardkit::holders(root);
  return {h.begin(), h.end()};
}

}  // namespace fixtures
