#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shardkit/access.hpp"
#include "shardkit/compartments.hpp"

namespace shardkit {

// Scheme language ('#' starts a line comment):
//
//   node  := "threshold" "(" "k" "=" INT ")" "{" child* "}" | "leaf" ID
//   child := [ "crucial" | "redundant" "(" GID ")" ] node
//
// The outermost node must be a threshold node.
SchemeNode parse_scheme(std::string_view text);
// Indented multi-line rendering; parses back to the same tree.
std::string format_scheme(const SchemeNode& root);

// Formula language:
//
//   f := ID | "and" "(" f ("," f)* ")" | "or" "(" f ("," f)* ")"
//          | "thr" "(" INT ";" f ("," f)* ")"
AccessFormula parse_formula(std::string_view text);
std::string format_formula(const AccessFormula& f);

// One share per line:
//   v1 p=<dec> scheme=<16 hex> path=<i.j.k or -> kind=<normal|crucial|redundant:GID> x=<dec or -> value=<dec> holder=<id>
struct ShareRecord {
  std::uint64_t p = 0;
  std::uint64_t scheme_id = 0;
  TreeShare share;
};

std::string format_record(std::uint64_t p, std::uint64_t scheme_id, const TreeShare& share);
ShareRecord parse_record(std::string_view line);
// Blank lines are skipped.
std::vector<ShareRecord> parse_records(std::string_view text);

// Groups records into a bundle; all must agree on p and scheme id.
ShareBundle bundle_from_records(const std::vector<ShareRecord>& records);

}  // namespace shardkit
