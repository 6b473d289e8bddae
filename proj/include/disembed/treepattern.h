#ifndef DISEMBED_TREEPATTERN_H_
#define DISEMBED_TREEPATTERN_H_

#include <cstddef>
#include <map>
#include <memory>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disembed/treebank.h"

namespace disembed {

// Tregex-style relations, read as "head REL target".
enum class Relation {
  kParentOf,             // <   head is the parent of target
  kAncestorOf,           // <<  head dominates target
  kChildOf,              // >   head is a child of target
  kDescendantOf,         // >>  head is dominated by target
  kImmediatelyPrecedes,  // .   head's last leaf is right before target's first
  kPrecedes,             // ..  head ends at or before target starts
  kSisterOf,             // $   same parent, distinct nodes
  kFirstChild,           // <1  target is head's first child
  kLastChild,            // <-  target is head's last child
};

std::string_view relation_symbol(Relation rel);

class LabelTest {
 public:
  enum class Kind { kLiteral, kAlternation, kRegex };

  static LabelTest literal(std::string label);
  static LabelTest alternation(std::vector<std::string> labels);
  static LabelTest regex(std::string source);

  Kind kind() const { return kind_; }
  const std::vector<std::string>& literals() const { return literals_; }
  const std::string& regex_source() const { return regex_source_; }

  // Regular expressions must match the whole label.
  bool matches(std::string_view label) const;

 private:
  Kind kind_ = Kind::kLiteral;
  std::vector<std::string> literals_;
  std::string regex_source_;
  std::shared_ptr<const std::regex> regex_;
};

struct PatternEdge;

struct PatternNode {
  LabelTest test;
  bool negated = false;  // "!L": any label the test rejects
  std::string capture;   // empty when not captured
  std::vector<PatternEdge> relations;

  bool accepts(std::string_view label) const { return test.matches(label) != negated; }
};

struct PatternEdge {
  Relation relation;
  PatternNode target;
};

struct TreePattern {
  PatternNode root;
  std::string source;

  // Capture names in pattern preorder.
  std::vector<std::string> capture_names() const;
  // Number of relation edges in the constraint tree.
  std::size_t relation_count() const;
};

class PatternError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kDuplicateCapture };

  PatternError(Kind kind, std::size_t position, std::string name, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position), name_(std::move(name)) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  const std::string& name() const { return name_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::string name_;
};

TreePattern parse_pattern(std::string_view src);

struct MatchResult {
  const ParseNode* anchor = nullptr;
  std::map<std::string, const ParseNode*> captures;
};

// One result per anchor node, in preorder (outermost first). Captures hold
// the first satisfying assignment, with pattern nodes filled in preorder
// and tree candidates tried in preorder.
std::vector<MatchResult> match_pattern(const TreePattern& pattern, const ParseNode& tree);

// Token interval covered by a node; how matches become deletion positions.
inline Span node_positions(const ParseNode& node) { return node.span; }

}  // namespace disembed

#endif  // DISEMBED_TREEPATTERN_H_
