#include <cctype>
#include <set>
#include <optional>

#include "disembed/treepattern.h"

namespace disembed {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Characters that end a literal label. '$' and '.' may appear inside one
// (PRP$), but never start it since they open relations.
bool ends_literal(char c) {
  return is_space(c) || c == '(' || c == ')' || c == '|' || c == '=' || c == '/' || c == '<' ||
         c == '>' || c == '!';
}

bool starts_literal(char c) { return !ends_literal(c) && c != '$' && c != '.'; }

class PatternParser {
 public:
  explicit PatternParser(std::string_view src) : src_(src) {}

  TreePattern parse() {
    skip_space();
    if (pos_ >= src_.size()) error("empty pattern");
    TreePattern out;
    out.root = parse_chain();
    skip_space();
    if (pos_ != src_.size()) error("unexpected '" + std::string(1, src_[pos_]) + "'");
    out.source = std::string(src_);
    return out;
  }

 private:
  PatternNode parse_chain() {
    PatternNode head = parse_node();
    while (true) {
      skip_space();
      if (pos_ >= src_.size() || src_[pos_] == ')') break;
      Relation rel = parse_relation();
      skip_space();
      head.relations.push_back(PatternEdge{rel, parse_node()});
    }
    return head;
  }

  Relation parse_relation() {
    auto take = [&](std::string_view tok) {
      if (src_.substr(pos_, tok.size()) != tok) return false;
      pos_ += tok.size();
      return true;
    };
    if (take("<<")) return Relation::kAncestorOf;
    if (take("<1")) return Relation::kFirstChild;
    if (take("<-")) return Relation::kLastChild;
    if (take("<")) return Relation::kParentOf;
    if (take(">>")) return Relation::kDescendantOf;
    if (take(">")) return Relation::kChildOf;
    if (take("..")) return Relation::kPrecedes;
    if (take(".")) return Relation::kImmediatelyPrecedes;
    if (take("$")) return Relation::kSisterOf;
    error("expected a relation");
  }

  PatternNode parse_node() {
    skip_space();
    if (pos_ >= src_.size()) error("expected a node");
    PatternNode node;
    if (src_[pos_] == '!') {
      ++pos_;
      node.negated = true;
      if (pos_ >= src_.size() || is_space(src_[pos_])) error("'!' must be followed by a label test");
      if (src_[pos_] == '(') {
        auto alt = try_alternation();
        if (!alt) error("'!' applies to a label test, not a group");
        node.test = std::move(*alt);
      } else {
        node.test = parse_label_test();
      }
    } else if (src_[pos_] == '(') {
      if (auto alt = try_alternation()) {
        node.test = std::move(*alt);
      } else {
        ++pos_;
        node = parse_chain();
        skip_space();
        expect(')');
        return node;
      }
    } else {
      node.test = parse_label_test();
    }
    if (pos_ < src_.size() && src_[pos_] == '=') {
      std::size_t at = pos_++;
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
      if (pos_ == start) error("capture name expected after '='");
      node.capture = std::string(src_.substr(start, pos_ - start));
      if (!captures_.insert(node.capture).second)
        throw PatternError(PatternError::Kind::kDuplicateCapture, at, node.capture,
                           "duplicate capture '" + node.capture + "' at offset " +
                               std::to_string(at));
    }
    return node;
  }

  LabelTest parse_label_test() {
    if (src_[pos_] == '/') {
      std::size_t open = pos_++;
      std::string body;
      while (pos_ < src_.size() && src_[pos_] != '/') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') ++pos_;
        body += src_[pos_++];
      }
      if (pos_ >= src_.size()) error_at(open, "unterminated regular expression");
      ++pos_;
      if (body.empty()) error_at(open, "empty regular expression");
      try {
        return LabelTest::regex(body);
      } catch (const std::regex_error&) {
        error_at(open, "invalid regular expression /" + body + "/");
      }
    }
    std::string lit = read_literal();
    if (lit.empty()) error("expected a label");
    return LabelTest::literal(std::move(lit));
  }

  // "(A|B|C)" or "(A)"; leaves the position untouched when the parenthesis
  // opens a group instead.
  std::optional<LabelTest> try_alternation() {
    std::size_t saved = pos_;
    ++pos_;
    std::vector<std::string> labels;
    while (true) {
      skip_space();
      std::string lit = read_literal();
      if (lit.empty()) break;
      labels.push_back(std::move(lit));
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '|') {
        ++pos_;
        continue;
      }
      if (pos_ < src_.size() && src_[pos_] == ')') {
        ++pos_;
        return LabelTest::alternation(std::move(labels));
      }
      break;
    }
    pos_ = saved;
    return std::nullopt;
  }

  std::string read_literal() {
    if (pos_ >= src_.size() || !starts_literal(src_[pos_])) return {};
    std::size_t start = pos_;
    while (pos_ < src_.size() && !ends_literal(src_[pos_])) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= src_.size() || src_[pos_] != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void error(const std::string& msg) { error_at(pos_, msg); }

  [[noreturn]] void error_at(std::size_t at, const std::string& msg) {
    throw PatternError(PatternError::Kind::kSyntax, at, {},
                       msg + " at offset " + std::to_string(at) + " in \"" + std::string(src_) +
                           "\"");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::set<std::string> captures_;
};

void collect_captures(const PatternNode& node, std::vector<std::string>& out) {
  if (!node.capture.empty()) out.push_back(node.capture);
  for (const PatternEdge& edge : node.relations) collect_captures(edge.target, out);
}

std::size_t count_relations(const PatternNode& node) {
  std::size_t n = node.relations.size();
  for (const PatternEdge& edge : node.relations) n += count_relations(edge.target);
  return n;
}

}  // namespace

std::string_view relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::kParentOf: return "<";
    case Relation::kAncestorOf: return "<<";
    case Relation::kChildOf: return ">";
    case Relation::kDescendantOf: return ">>";
    case Relation::kImmediatelyPrecedes: return ".";
    case Relation::kPrecedes: return "..";
    case Relation::kSisterOf: return "$";
    case Relation::kFirstChild: return "<1";
    case Relation::kLastChild: return "<-";
  }
  return "?";
}

LabelTest LabelTest::literal(std::string label) {
  LabelTest t;
  t.kind_ = Kind::kLiteral;
  t.literals_.push_back(std::move(label));
  return t;
}

LabelTest LabelTest::alternation(std::vector<std::string> labels) {
  LabelTest t;
  t.kind_ = Kind::kAlternation;
  t.literals_ = std::move(labels);
  return t;
}

LabelTest LabelTest::regex(std::string source) {
  LabelTest t;
  t.kind_ = Kind::kRegex;
  t.regex_ = std::make_shared<const std::regex>(source, std::regex::ECMAScript);
  t.regex_source_ = std::move(source);
  return t;
}

bool LabelTest::matches(std::string_view label) const {
  if (kind_ == Kind::kRegex) return std::regex_match(label.begin(), label.end(), *regex_);
  for (const std::string& lit : literals_)
    if (lit == label) return true;
  return false;
}

std::vector<std::string> TreePattern::capture_names() const {
  std::vector<std::string> out;
  collect_captures(root, out);
  return out;
}

std::size_t TreePattern::relation_count() const { return count_relations(root); }

TreePattern parse_pattern(std::string_view src) { return PatternParser(src).parse(); }

}  // namespace disembed
