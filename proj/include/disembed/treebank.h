#ifndef DISEMBED_TREEBANK_H_
#define DISEMBED_TREEBANK_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace disembed {

// Half-open token interval [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  bool contains(const Span& o) const { return o.begin >= begin && o.end <= end; }
  bool overlaps(const Span& o) const { return begin < o.end && o.begin < end; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::size_t index = 0;
  std::string text;  // decoded surface form: "(" rather than "-LRB-"
  std::string pos;
  std::string ne = "O";
  friend bool operator==(const Token&, const Token&) = default;
};

// A constituent. Preterminals are the leaves: label is the POS tag and
// leaf_text the (PTB-escaped) word.
struct ParseNode {
  std::string label;
  std::vector<ParseNode> children;
  std::string leaf_text;
  Span span;
  // Set only on a root whose functional wrapper (ROOT, TOP or an empty
  // label) was stripped during parsing; rendering puts it back.
  std::optional<std::string> top_label;

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const ParseNode&, const ParseNode&) = default;
};

struct AnnotatedSentence {
  std::vector<Token> tokens;
  ParseNode tree;
  std::string source_id;
  std::string text;                   // raw sentence when the record had one
  std::vector<std::string> warnings;  // e.g. POS overrides
};

class TreebankError : public std::runtime_error {
 public:
  enum class Kind {
    kUnbalancedBrackets,
    kEmptyConstituent,
    kTrailingGarbage,
    kUnexpectedToken,
    kLengthMismatch,
    kTokenTextMismatch,
    kInvalidToken,
  };

  TreebankError(Kind kind, std::size_t position, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position) {}

  Kind kind() const { return kind_; }
  // Character offset for parse errors, token index for annotation errors.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

ParseNode parse_ptb(std::string_view src);
std::string render_ptb(const ParseNode& tree);

// Recomputes spans of the whole tree, numbering leaves from `first`.
// Returns the index one past the last leaf.
std::size_t assign_spans(ParseNode& tree, std::size_t first = 0);

std::vector<const ParseNode*> leaves(const ParseNode& tree);
std::size_t count_nodes(const ParseNode& tree);

// PTB bracket escapes: -LRB- <-> "(", -RSB- <-> "]" and so on.
std::string decode_ptb_token(std::string_view word);
std::string encode_ptb_token(std::string_view word);

// Pairs a tree with token annotations. Token POS wins over a conflicting
// preterminal label; each override is recorded in the result's warnings.
AnnotatedSentence attach_annotations(ParseNode tree, std::vector<Token> tokens,
                                     std::string source_id = {});

// Tokens read off the tree itself (POS from preterminals, NE "O").
AnnotatedSentence annotated_from_tree(ParseNode tree, std::string source_id = {});

// One annotated JSONL record; throws TreebankError or
// nlohmann::json::exception on malformed input.
AnnotatedSentence parse_annotated_record(std::string_view line);
std::string to_annotated_record(const AnnotatedSentence& sentence);

struct MalformedRecord {
  std::size_t line = 0;  // 1-based
  std::string cause;
};

using AnnotatedItem = std::variant<AnnotatedSentence, MalformedRecord>;

// Lazily reads annotated JSONL. Blank lines are skipped; a bad line turns
// into a MalformedRecord and reading continues.
class AnnotatedJsonlReader {
 public:
  explicit AnnotatedJsonlReader(std::istream& in) : in_(in) {}

  std::optional<AnnotatedItem> next();
  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<AnnotatedItem> read_annotated_jsonl(std::istream& in);

}  // namespace disembed

#endif  // DISEMBED_TREEBANK_H_
