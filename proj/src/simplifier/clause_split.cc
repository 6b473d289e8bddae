#include <algorithm>

#include "disembed/simplifier.h"

namespace disembed {

namespace {

bool is_separator(const ParseNode& node) {
  return node.label == "CC" || node.label == "," || node.label == ":";
}

bool is_final_punct(const ParseNode& node) { return node.label == "."; }

struct Piece {
  const ParseNode* node;
  bool copied;  // duplicated into a later conjunct, so no origin
};

Clause make_clause(const AnnotatedSentence& s, const std::vector<Piece>& pieces,
                   const ParseNode* final_punct) {
  ParseNode root;
  root.label = "S";
  root.top_label = s.tree.top_label;
  std::vector<Token> tokens;
  std::vector<std::optional<std::size_t>> origin;
  auto take = [&](const ParseNode& node, bool copied) {
    root.children.push_back(node);
    for (std::size_t i = node.span.begin; i < node.span.end; ++i) {
      tokens.push_back(s.tokens[i]);
      origin.push_back(copied ? std::nullopt : std::optional<std::size_t>(i));
    }
  };
  for (const Piece& piece : pieces) take(*piece.node, piece.copied);
  if (final_punct) {
    take(*final_punct, false);
  } else {
    ParseNode period;
    period.label = ".";
    period.leaf_text = ".";
    root.children.push_back(period);
    tokens.push_back(Token{0, ".", ".", "O"});
    origin.push_back(std::nullopt);
  }
  Clause clause;
  clause.sentence = attach_annotations(std::move(root), std::move(tokens), s.source_id);
  clause.origin = std::move(origin);
  return clause;
}

void drop_node(const ParseNode& node, std::vector<std::size_t>& dropped) {
  for (std::size_t i = node.span.begin; i < node.span.end; ++i) dropped.push_back(i);
}

// (S (S ...) (CC and) (S ...) (. .)) and the ';' / ':' variants.
bool split_coordinated_clauses(const AnnotatedSentence& s, ClauseSplit& out) {
  const auto& kids = s.tree.children;
  const ParseNode* final_punct =
      !kids.empty() && is_final_punct(kids.back()) ? &kids.back() : nullptr;
  std::size_t body = final_punct ? kids.size() - 1 : kids.size();

  std::vector<const ParseNode*> conjuncts;
  std::vector<const ParseNode*> separators;
  for (std::size_t i = 0; i < body; ++i) {
    if (kids[i].label == "S")
      conjuncts.push_back(&kids[i]);
    else if (is_separator(kids[i]))
      separators.push_back(&kids[i]);
    else
      return false;
  }
  if (conjuncts.size() < 2 || separators.empty()) return false;

  for (std::size_t k = 0; k < conjuncts.size(); ++k) {
    bool last = k + 1 == conjuncts.size();
    std::vector<Piece> pieces;
    for (const ParseNode& child : conjuncts[k]->children) pieces.push_back({&child, false});
    out.clauses.push_back(make_clause(s, pieces, last ? final_punct : nullptr));
  }
  for (const ParseNode* sep : separators) drop_node(*sep, out.dropped);
  return true;
}

// (S (NP He) (VP (VP met Blair) (CC and) (VP signed the bill)) (. .)): the
// material before the VP is copied into every conjunct.
bool split_coordinated_predicates(const AnnotatedSentence& s, ClauseSplit& out) {
  const auto& kids = s.tree.children;
  const ParseNode* final_punct =
      !kids.empty() && is_final_punct(kids.back()) ? &kids.back() : nullptr;
  std::size_t body = final_punct ? kids.size() - 1 : kids.size();
  if (body == 0 || kids[body - 1].label != "VP") return false;
  const ParseNode& vp = kids[body - 1];

  bool has_subject = false;
  std::vector<Piece> prefix;
  for (std::size_t i = 0; i + 1 < body; ++i) {
    if (kids[i].label == "VP") return false;
    has_subject = has_subject || kids[i].label == "NP";
    prefix.push_back({&kids[i], false});
  }
  if (!has_subject) return false;

  std::vector<const ParseNode*> conjuncts;
  std::vector<const ParseNode*> separators;
  for (const ParseNode& child : vp.children) {
    if (child.label == "VP")
      conjuncts.push_back(&child);
    else if (child.label == "CC" || child.label == ",")
      separators.push_back(&child);
    else
      return false;
  }
  if (conjuncts.size() < 2 || separators.empty()) return false;

  for (std::size_t k = 0; k < conjuncts.size(); ++k) {
    std::vector<Piece> pieces = prefix;
    for (Piece& p : pieces) p.copied = k > 0;
    pieces.push_back({conjuncts[k], false});
    bool last = k + 1 == conjuncts.size();
    out.clauses.push_back(make_clause(s, pieces, last ? final_punct : nullptr));
  }
  for (const ParseNode* sep : separators) drop_node(*sep, out.dropped);
  return true;
}

bool gate_fires(const AnnotatedSentence& s, std::span<const SimplificationRule> gates,
                std::string& fired) {
  for (const SimplificationRule& gate : gates) {
    if (gate.family != RuleFamily::kClauseSplit) continue;
    for (const MatchResult& m : match_pattern(gate.pattern, s.tree)) {
      if (m.anchor == &s.tree) {
        fired = gate.name;
        return true;
      }
    }
  }
  return false;
}

Clause identity_clause(const AnnotatedSentence& s) {
  Clause clause;
  clause.sentence = s;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) clause.origin.push_back(i);
  return clause;
}

}  // namespace

ClauseSplit split_clauses(const AnnotatedSentence& sentence,
                          std::span<const SimplificationRule> gates) {
  ClauseSplit split;
  std::string fired;
  if (!gate_fires(sentence, gates, fired) ||
      !(split_coordinated_clauses(sentence, split) ||
        split_coordinated_predicates(sentence, split))) {
    ClauseSplit single;
    single.clauses.push_back(identity_clause(sentence));
    return single;
  }
  split.rule = fired;

  // Conjuncts may themselves be coordinations.
  ClauseSplit out;
  out.rule = split.rule;
  out.dropped = split.dropped;
  for (Clause& clause : split.clauses) {
    ClauseSplit inner = split_clauses(clause.sentence, gates);
    for (std::size_t d : inner.dropped)
      if (clause.origin[d]) out.dropped.push_back(*clause.origin[d]);
    for (Clause& sub : inner.clauses) {
      for (auto& o : sub.origin)
        if (o) o = clause.origin[*o];
      out.clauses.push_back(std::move(sub));
    }
  }
  std::sort(out.dropped.begin(), out.dropped.end());
  return out;
}

ClauseSplit split_clauses(const AnnotatedSentence& sentence) {
  std::vector<SimplificationRule> gates;
  for (const SimplificationRule& rule : default_catalog())
    if (rule.family == RuleFamily::kClauseSplit) gates.push_back(rule);
  return split_clauses(sentence, gates);
}

}  // namespace disembed
