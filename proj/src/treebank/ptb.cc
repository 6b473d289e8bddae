#include <array>
#include <cctype>
#include <utility>

#include "disembed/treebank.h"

namespace disembed {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kEscapes = {{
    {"-LRB-", "("},
    {"-RRB-", ")"},
    {"-LSB-", "["},
    {"-RSB-", "]"},
    {"-LCB-", "{"},
    {"-RCB-", "}"},
}};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class PtbReader {
 public:
  explicit PtbReader(std::string_view src) : src_(src) {}

  ParseNode read_tree() {
    skip_space();
    if (pos_ >= src_.size()) fail(TreebankError::Kind::kUnbalancedBrackets, "empty input");
    if (src_[pos_] != '(')
      fail(TreebankError::Kind::kUnexpectedToken, "expected '(' at start of tree");
    ParseNode root = read_node();
    skip_space();
    if (pos_ != src_.size())
      fail(TreebankError::Kind::kTrailingGarbage, "unexpected text after the tree");
    return root;
  }

 private:
  ParseNode read_node() {
    std::size_t open = pos_;
    ++pos_;  // '('
    skip_space();
    ParseNode node;
    node.label = read_atom();
    skip_space();
    if (pos_ >= src_.size()) unbalanced(open);
    if (src_[pos_] == ')') {
      fail_at(TreebankError::Kind::kEmptyConstituent, open, "empty constituent");
    }
    if (src_[pos_] == '(') {
      while (true) {
        skip_space();
        if (pos_ >= src_.size()) unbalanced(open);
        if (src_[pos_] == ')') break;
        if (src_[pos_] != '(')
          fail(TreebankError::Kind::kUnexpectedToken, "word mixed with constituents");
        node.children.push_back(read_node());
      }
    } else {
      if (node.label.empty())
        fail(TreebankError::Kind::kUnexpectedToken, "preterminal without a label");
      node.leaf_text = read_atom();
      skip_space();
      if (pos_ >= src_.size()) unbalanced(open);
      if (src_[pos_] != ')')
        fail(TreebankError::Kind::kUnexpectedToken, "preterminal with more than one word");
    }
    ++pos_;  // ')'
    return node;
  }

  std::string read_atom() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '(' &&
           src_[pos_] != ')')
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  [[noreturn]] void unbalanced(std::size_t open) {
    fail_at(TreebankError::Kind::kUnbalancedBrackets, open,
            "unbalanced brackets: '(' is never closed");
  }

  [[noreturn]] void fail(TreebankError::Kind kind, const std::string& msg) {
    fail_at(kind, pos_, msg);
  }

  [[noreturn]] void fail_at(TreebankError::Kind kind, std::size_t at, const std::string& msg) {
    throw TreebankError(kind, at, msg + " (offset " + std::to_string(at) + ")");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void render_into(const ParseNode& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.is_leaf()) {
    out += ' ';
    out += node.leaf_text;
  } else {
    for (const ParseNode& child : node.children) {
      out += ' ';
      render_into(child, out);
    }
  }
  out += ')';
}

void collect_leaves(const ParseNode& node, std::vector<const ParseNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const ParseNode& child : node.children) collect_leaves(child, out);
}

}  // namespace

ParseNode parse_ptb(std::string_view src) {
  // A stray ')' after a complete tree would otherwise read as trailing text.
  int depth = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '(') ++depth;
    if (src[i] == ')' && --depth < 0)
      throw TreebankError(TreebankError::Kind::kUnbalancedBrackets, i,
                          "unbalanced brackets: unmatched ')' (offset " + std::to_string(i) + ")");
  }

  ParseNode root = PtbReader(src).read_tree();
  bool functional = root.label == "ROOT" || root.label == "TOP" || root.label.empty();
  if (functional && root.children.size() == 1 && !root.children.front().is_leaf()) {
    std::string top = std::move(root.label);
    ParseNode inner = std::move(root.children.front());
    root = std::move(inner);
    root.top_label = std::move(top);
  }
  assign_spans(root);
  return root;
}

std::string render_ptb(const ParseNode& tree) {
  std::string out;
  if (tree.top_label) {
    out += '(';
    out += *tree.top_label;
    out += ' ';
    render_into(tree, out);
    out += ')';
  } else {
    render_into(tree, out);
  }
  return out;
}

std::size_t assign_spans(ParseNode& tree, std::size_t first) {
  if (tree.is_leaf()) {
    tree.span = {first, first + 1};
    return first + 1;
  }
  std::size_t next = first;
  for (ParseNode& child : tree.children) next = assign_spans(child, next);
  tree.span = {first, next};
  return next;
}

std::vector<const ParseNode*> leaves(const ParseNode& tree) {
  std::vector<const ParseNode*> out;
  collect_leaves(tree, out);
  return out;
}

std::size_t count_nodes(const ParseNode& tree) {
  std::size_t n = 1;
  for (const ParseNode& child : tree.children) n += count_nodes(child);
  return n;
}

std::string decode_ptb_token(std::string_view word) {
  for (auto [escaped, plain] : kEscapes)
    if (word == escaped) return std::string(plain);
  return std::string(word);
}

std::string encode_ptb_token(std::string_view word) {
  for (auto [escaped, plain] : kEscapes)
    if (word == plain) return std::string(escaped);
  return std::string(word);
}

}  // namespace disembed
