#include "shardkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace shardkit {
namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-'; }

struct Token {
  std::string text;
  std::size_t line = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::string_view("(){}=,;").find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c), line});
      ++i;
    } else if (is_word_char(c) && c != '-') {
      const std::size_t start = i;
      while (i < text.size() && is_word_char(text[i])) ++i;
      out.push_back({std::string(text.substr(start, i - start)), line});
    } else {
      throw Error(Errc::kParse, "line " + std::to_string(line) + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek(std::size_t ahead = 0) const {
    static const std::string kEnd;
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead].text : kEnd;
  }

  std::string next(std::string_view what) {
    if (done()) fail("expected " + std::string(what) + ", found end of input");
    return tokens_[pos_++].text;
  }

  void expect(std::string_view tok) {
    const std::string got = next("'" + std::string(tok) + "'");
    if (got != tok) fail("expected '" + std::string(tok) + "', found '" + got + "'", 1);
  }

  std::string word(std::string_view what) {
    std::string w = next(what);
    if (w.empty() || !is_word_char(w[0])) fail("expected " + std::string(what) + ", found '" + w + "'", 1);
    return w;
  }

  std::size_t integer() {
    const std::string w = next("an integer");
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) fail("expected an integer, found '" + w + "'", 1);
    return v;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t back = 0) const {
    std::size_t at = pos_ >= back ? pos_ - back : 0;
    const std::size_t line = at < tokens_.size() ? tokens_[at].line : (tokens_.empty() ? 1 : tokens_.back().line);
    throw Error(Errc::kParse, "line " + std::to_string(line) + ": " + msg);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

SchemeNode parse_node(Parser& in) {
  const std::string head = in.next("'threshold' or 'leaf'");
  if (head == "leaf") return SchemeNode::make_leaf(in.word("a holder id"));
  if (head != "threshold") in.fail("expected 'threshold' or 'leaf', found '" + head + "'", 1);

  in.expect("(");
  in.expect("k");
  in.expect("=");
  const std::size_t k = in.integer();
  in.expect(")");
  in.expect("{");
  std::vector<SchemeChild> children;
  while (in.peek() != "}") {
    if (in.done()) in.fail("unterminated threshold block");
    if (in.peek() == "crucial") {
      in.next("crucial");
      children.push_back(crucial(parse_node(in)));
    } else if (in.peek() == "redundant") {
      in.next("redundant");
      in.expect("(");
      std::string gid = in.word("a group id");
      in.expect(")");
      children.push_back(redundant(std::move(gid), parse_node(in)));
    } else {
      children.push_back(normal(parse_node(in)));
    }
  }
  in.expect("}");
  if (children.empty()) in.fail("threshold node without children");
  return SchemeNode::make_threshold(k, std::move(children));
}

void write_scheme(const SchemeNode& node, int depth, std::string& out) {
  if (node.leaf) {
    out += "leaf " + node.holder + "\n";
    return;
  }
  out += "threshold(k=" + std::to_string(node.k) + ") {\n";
  for (const SchemeChild& child : node.children) {
    out.append(static_cast<std::size_t>(depth + 1) * 2, ' ');
    if (child.tag == ShareKind::kCrucial) out += "crucial ";
    if (child.tag == ShareKind::kRedundant) out += "redundant(" + child.group + ") ";
    write_scheme(child.node, depth + 1, out);
  }
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "}\n";
}

AccessFormula parse_f(Parser& in) {
  const std::string head = in.word("a holder id or operator");
  const bool op = head == "and" || head == "or" || head == "thr";
  if (!op) return AccessFormula::literal(head);
  if (in.peek() != "(") in.fail("'" + head + "' is reserved and must be followed by '('");
  in.expect("(");
  std::size_t k = 0;
  if (head == "thr") {
    k = in.integer();
    in.expect(";");
  }
  std::vector<AccessFormula> children{parse_f(in)};
  while (in.peek() == ",") {
    in.expect(",");
    children.push_back(parse_f(in));
  }
  in.expect(")");
  if (head == "and") return AccessFormula::all_of(std::move(children));
  if (head == "or") return AccessFormula::any_of(std::move(children));
  return AccessFormula::at_least(k, std::move(children));
}

std::optional<std::uint64_t> canonical_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() <= key.size() || token[key.size()] != '=') {
    throw Error(Errc::kParse, "share record: expected field '" + std::string(key) + "=', found '" +
                                  std::string(token) + "'");
  }
  return token.substr(key.size() + 1);
}

}  // namespace

SchemeNode parse_scheme(std::string_view text) {
  Parser in(text);
  if (in.peek() == "leaf") in.fail("the outermost node must be a threshold node");
  SchemeNode root = parse_node(in);
  if (!in.done()) in.fail("trailing input after the scheme");
  return root;
}

std::string format_scheme(const SchemeNode& root) {
  std::string out;
  write_scheme(root, 0, out);
  return out;
}

AccessFormula parse_formula(std::string_view text) {
  Parser in(text);
  AccessFormula f = parse_f(in);
  if (!in.done()) in.fail("trailing input after the formula");
  try {
    validate_formula(f);
  } catch (const Error& e) {
    throw Error(Errc::kParse, e.what());
  }
  return f;
}

std::string format_formula(const AccessFormula& f) {
  if (f.op == AccessFormula::Op::kLiteral) return f.id;
  std::string out;
  switch (f.op) {
    case AccessFormula::Op::kAnd: out = "and("; break;
    case AccessFormula::Op::kOr: out = "or("; break;
    default: out = "thr(" + std::to_string(f.k) + "; "; break;
  }
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    if (i != 0) out += ", ";
    out += format_formula(f.children[i]);
  }
  return out + ")";
}

std::string format_record(std::uint64_t p, std::uint64_t scheme_id, const TreeShare& share) {
  std::string kind = "normal";
  if (share.kind == ShareKind::kCrucial) kind = "crucial";
  if (share.kind == ShareKind::kRedundant) kind = "redundant:" + share.group;
  return "v1 p=" + std::to_string(p) + " scheme=" + format_scheme_id(scheme_id) + " path=" +
         format_path(share.path) + " kind=" + kind + " x=" + (share.x ? to_string(*share.x) : "-") +
         " value=" + to_string(share.value) + " holder=" + share.holder;
}

ShareRecord parse_record(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t end = std::min(line.find(' ', start), line.size());
    tokens.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  if (tokens.size() != 8 || tokens[0] != "v1") {
    throw Error(Errc::kParse, "share record: expected 'v1' and 7 fields separated by single spaces");
  }

  ShareRecord rec;
  const auto p = canonical_decimal(field(tokens[1], "p"));
  if (!p) throw Error(Errc::kParse, "share record: bad prime");
  rec.p = *p;
  std::optional<PrimeModulus> modulus;
  try {
    modulus.emplace(rec.p);
  } catch (const Error& e) {
    throw Error(Errc::kParse, std::string("share record: ") + e.what());
  }

  const std::string_view id = field(tokens[2], "scheme");
  if (id.size() != 16 || id.find_first_not_of("0123456789abcdef") != std::string_view::npos) {
    throw Error(Errc::kParse, "share record: scheme id must be 16 lowercase hex digits");
  }
  std::from_chars(id.data(), id.data() + id.size(), rec.scheme_id, 16);

  const std::string_view path = field(tokens[3], "path");
  if (path != "-") {
    std::size_t s = 0;
    while (s <= path.size()) {
      const std::size_t e = std::min(path.find('.', s), path.size());
      const auto index = canonical_decimal(path.substr(s, e - s));
      if (!index) throw Error(Errc::kParse, "share record: bad path '" + std::string(path) + "'");
      rec.share.path.push_back(static_cast<std::size_t>(*index));
      s = e + 1;
    }
  }

  const std::string_view kind = field(tokens[4], "kind");
  if (kind == "normal") {
    rec.share.kind = ShareKind::kNormal;
  } else if (kind == "crucial") {
    rec.share.kind = ShareKind::kCrucial;
  } else if (kind.substr(0, 10) == "redundant:" && kind.size() > 10) {
    rec.share.kind = ShareKind::kRedundant;
    rec.share.group = std::string(kind.substr(10));
  } else {
    throw Error(Errc::kParse, "share record: bad kind '" + std::string(kind) + "'");
  }

  const std::string_view x = field(tokens[5], "x");
  if (rec.share.kind == ShareKind::kCrucial) {
    if (x != "-") throw Error(Errc::kParse, "share record: crucial shares have x=-");
  } else {
    const auto xv = canonical_decimal(x);
    if (!xv || *xv == 0 || *xv >= rec.p) throw Error(Errc::kParse, "share record: bad x '" + std::string(x) + "'");
    rec.share.x = FieldElement(*xv, *modulus);
  }

  const auto value = canonical_decimal(field(tokens[6], "value"));
  if (!value || *value >= rec.p) throw Error(Errc::kParse, "share record: value must be a field element");
  rec.share.value = FieldElement(*value, *modulus);

  const std::string_view holder = field(tokens[7], "holder");
  if (holder.empty() || !std::all_of(holder.begin(), holder.end(), is_word_char) || holder[0] == '-') {
    throw Error(Errc::kParse, "share record: bad holder id");
  }
  rec.share.holder = std::string(holder);
  return rec;
}

std::vector<ShareRecord> parse_records(std::string_view text) {
  std::vector<ShareRecord> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    if (!line.empty()) out.push_back(parse_record(line));
    start = end + 1;
  }
  return out;
}

ShareBundle bundle_from_records(const std::vector<ShareRecord>& records) {
  if (records.empty()) throw Error(Errc::kInsufficientShares, "no share records");
  ShareBundle bundle{PrimeModulus(records.front().p), records.front().scheme_id, {}};
  for (const ShareRecord& rec : records) {
    if (rec.p != records.front().p || rec.scheme_id != records.front().scheme_id) {
      throw Error(Errc::kMismatch, "share records come from different dealings (p or scheme id differ)");
    }
    bundle.shares[rec.share.holder].push_back(rec.share);
  }
  return bundle;
}

}  // namespace shardkit
