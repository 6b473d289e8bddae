#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "disembed/treebank.h"

namespace disembed {

namespace {

using json = nlohmann::json;

void validate_token(const Token& token) {
  bool blank = token.text.empty() ||
               std::any_of(token.text.begin(), token.text.end(),
                           [](unsigned char c) { return std::isspace(c) != 0; });
  if (blank)
    throw TreebankError(TreebankError::Kind::kInvalidToken, token.index,
                        "token " + std::to_string(token.index) +
                            " has empty or whitespace-bearing text");
  if (token.pos.empty())
    throw TreebankError(TreebankError::Kind::kInvalidToken, token.index,
                        "token " + std::to_string(token.index) + " has no POS tag");
}

// Preterminals in left-to-right order, mutable.
void mutable_leaves(ParseNode& node, std::vector<ParseNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (ParseNode& child : node.children) mutable_leaves(child, out);
}

const json& required(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end()) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

AnnotatedSentence attach_annotations(ParseNode tree, std::vector<Token> tokens,
                                     std::string source_id) {
  std::vector<ParseNode*> preterminals;
  mutable_leaves(tree, preterminals);
  if (preterminals.size() != tokens.size())
    throw TreebankError(TreebankError::Kind::kLengthMismatch,
                        std::min(preterminals.size(), tokens.size()),
                        "tree has " + std::to_string(preterminals.size()) + " leaves but " +
                            std::to_string(tokens.size()) + " tokens were given");

  AnnotatedSentence out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& token = tokens[i];
    token.index = i;
    token.text = decode_ptb_token(token.text);
    if (token.ne.empty()) token.ne = "O";
    validate_token(token);

    ParseNode& leaf = *preterminals[i];
    if (decode_ptb_token(leaf.leaf_text) != token.text)
      throw TreebankError(TreebankError::Kind::kTokenTextMismatch, i,
                          "leaf " + std::to_string(i) + " reads \"" + leaf.leaf_text +
                              "\" but token is \"" + token.text + "\"");
    if (leaf.label != token.pos) {
      out.warnings.push_back("leaf " + std::to_string(i) + ": preterminal " + leaf.label +
                             " replaced by token POS " + token.pos);
      leaf.label = token.pos;
    }
  }
  assign_spans(tree);
  out.tokens = std::move(tokens);
  out.tree = std::move(tree);
  out.source_id = std::move(source_id);
  return out;
}

AnnotatedSentence annotated_from_tree(ParseNode tree, std::string source_id) {
  std::vector<Token> tokens;
  for (const ParseNode* leaf : leaves(tree)) {
    Token token;
    token.text = leaf->leaf_text;
    token.pos = leaf->label;
    tokens.push_back(std::move(token));
  }
  return attach_annotations(std::move(tree), std::move(tokens), std::move(source_id));
}

AnnotatedSentence parse_annotated_record(std::string_view line) {
  json record = json::parse(line);
  if (!record.is_object()) throw std::invalid_argument("record is not a JSON object");

  std::vector<Token> tokens;
  const json& raw_tokens = required(record, "tokens");
  if (!raw_tokens.is_array()) throw std::invalid_argument("\"tokens\" is not an array");
  for (const json& t : raw_tokens) {
    Token token;
    token.text = required(t, "t").get<std::string>();
    token.pos = required(t, "p").get<std::string>();
    if (auto ne = t.find("n"); ne != t.end() && !ne->is_null()) token.ne = ne->get<std::string>();
    tokens.push_back(std::move(token));
  }

  ParseNode tree = parse_ptb(required(record, "parse").get<std::string>());
  std::string id = record.value("id", std::string());
  AnnotatedSentence sentence = attach_annotations(std::move(tree), std::move(tokens), std::move(id));
  sentence.text = record.value("text", std::string());
  return sentence;
}

std::string to_annotated_record(const AnnotatedSentence& sentence) {
  nlohmann::ordered_json record;
  record["id"] = sentence.source_id;
  record["text"] = sentence.text;
  nlohmann::ordered_json tokens = nlohmann::ordered_json::array();
  for (const Token& token : sentence.tokens)
    tokens.push_back({{"t", token.text}, {"p", token.pos}, {"n", token.ne}});
  record["tokens"] = std::move(tokens);
  record["parse"] = render_ptb(sentence.tree);
  return record.dump();
}

std::optional<AnnotatedItem> AnnotatedJsonlReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; }))
      continue;
    try {
      return AnnotatedItem(parse_annotated_record(line));
    } catch (const std::exception& e) {
      return AnnotatedItem(MalformedRecord{line_, e.what()});
    }
  }
  return std::nullopt;
}

std::vector<AnnotatedItem> read_annotated_jsonl(std::istream& in) {
  AnnotatedJsonlReader reader(in);
  std::vector<AnnotatedItem> out;
  while (auto item = reader.next()) out.push_back(std::move(*item));
  return out;
}

}  // namespace disembed
