#include <algorithm>
#include <cctype>
#include <numeric>

#include "disembed/simplifier.h"

namespace disembed {

namespace {

bool is_clause_final(std::string_view text) { return text == "." || text == "!" || text == "?"; }

bool is_joining_punct(std::string_view text) { return text == "," || text == ";" || text == ":"; }

bool is_finite_verb(std::string_view pos) {
  return pos == "VBD" || pos == "VBZ" || pos == "VBP" || pos == "MD";
}

bool has_capitalized_form(const Token& token) {
  return token.pos == "NNP" || token.pos == "NNPS" || token.text == "I";
}

std::string lower_first(std::string text) {
  if (!text.empty()) text[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
  return text;
}

void upper_first(Token& token) {
  for (char& c : token.text)
    if (std::isalnum(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return;
    }
}

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool contains(const std::vector<std::string>& list, std::string_view value) {
  return std::find(list.begin(), list.end(), value) != list.end();
}

const ParseNode* find_parent(const ParseNode& root, const ParseNode* target) {
  for (const ParseNode& child : root.children) {
    if (&child == target) return &root;
    if (const ParseNode* found = find_parent(child, target)) return found;
  }
  return nullptr;
}

const ParseNode* first_vp(const ParseNode& node) {
  if (node.label == "VP") return &node;
  for (const ParseNode& child : node.children)
    if (const ParseNode* vp = first_vp(child)) return vp;
  return nullptr;
}

bool family_accepts(const SimplificationRule& rule, const AnnotatedSentence& s,
                    const MatchResult& match, const ExtractionMatch& em) {
  const std::vector<Token>& toks = s.tokens;
  const Span& ex = em.extracted;
  auto comma_before = [&] { return ex.begin > 0 && toks[ex.begin - 1].text == ","; };
  auto antecedent_precedes = [&] {
    return em.antecedent != nullptr && em.antecedent->span.end <= ex.begin;
  };

  switch (rule.family) {
    case RuleFamily::kRelativeClauseNonrestrictive:
    case RuleFamily::kParticipialPhrase:
      return antecedent_precedes() && comma_before();

    case RuleFamily::kAppositiveNonrestrictive: {
      if (!antecedent_precedes() || !comma_before()) return false;
      // "apples, pears and plums" is a coordination, not an apposition.
      const ParseNode* parent = find_parent(s.tree, em.constituent);
      return parent != nullptr &&
             std::none_of(parent->children.begin(), parent->children.end(),
                          [](const ParseNode& c) { return c.label == "CC"; });
    }

    case RuleFamily::kAppositiveRestrictive: {
      if (em.antecedent == nullptr || em.antecedent->span.begin != ex.end) return false;
      if (find_parent(s.tree, em.constituent) != find_parent(s.tree, em.antecedent)) return false;
      for (std::size_t i = ex.begin; i < ex.end; ++i)
        if (toks[i].text == ",") return false;
      return rule.ne_tags.empty() || contains(rule.ne_tags, toks[em.antecedent->span.end - 1].ne);
    }

    case RuleFamily::kPrepositionalPhrase: {
      if (rule.ne_tags.empty()) return true;
      for (std::size_t i = ex.begin + 1; i < ex.end; ++i)
        if (contains(rule.ne_tags, toks[i].ne)) return true;
      return false;
    }

    case RuleFamily::kLeadNounPhrase:
      return rule.ne_tags.empty() || contains(rule.ne_tags, toks[ex.end - 1].ne);

    case RuleFamily::kAttribution: {
      if (match.anchor != &s.tree) return false;
      auto verb = em.captures.find("verb");
      if (verb == em.captures.end() || !verb->second->is_leaf()) return false;
      if (!contains(rule.words, lower(verb->second->leaf_text))) return false;
      auto that = em.captures.find("that");
      return that == em.captures.end() || lower(that->second->leaf_text) == "that";
    }

    case RuleFamily::kParenthetical:
      return em.antecedent == nullptr || antecedent_precedes();

    case RuleFamily::kAdjectiveAdverbPhrase:
      return true;

    case RuleFamily::kClauseSplit:
      return false;
  }
  return false;
}

void absorb_commas(const AnnotatedSentence& s, ExtractionMatch& em) {
  const std::vector<Token>& toks = s.tokens;
  const Span& ex = em.extracted;
  bool before = ex.begin > 0 && toks[ex.begin - 1].text == ",";
  bool after = ex.end < toks.size() && toks[ex.end].text == ",";
  if (before) em.absorbed.push_back(ex.begin - 1);
  if (after && (before || ex.begin == 0)) em.absorbed.push_back(ex.end);
}

bool disjoint(const ExtractionMatch& a, const ExtractionMatch& b) {
  std::vector<std::size_t> common;
  std::set_intersection(a.positions.begin(), a.positions.end(), b.positions.begin(),
                        b.positions.end(), std::back_inserter(common));
  return common.empty();
}

}  // namespace

std::vector<ExtractionMatch> r_extract(const SimplificationRule& rule,
                                       const AnnotatedSentence& sentence) {
  if (rule.family == RuleFamily::kClauseSplit) return {};

  std::vector<ExtractionMatch> candidates;
  for (const MatchResult& match : match_pattern(rule.pattern, sentence.tree)) {
    auto target = match.captures.find(rule.paraphrase.delete_capture);
    if (target == match.captures.end()) continue;

    ExtractionMatch em;
    em.rule = rule.name;
    em.constituent = target->second;
    em.captures = match.captures;
    if (auto ant = match.captures.find("ant"); ant != match.captures.end())
      em.antecedent = ant->second;
    // An attribution deletes everything from the clause start up to and
    // including the named capture ("He said that").
    em.extracted = rule.family == RuleFamily::kAttribution
                       ? Span{match.anchor->span.begin, em.constituent->span.end}
                       : em.constituent->span;
    if (!family_accepts(rule, sentence, match, em)) continue;

    if (contains(rule.paraphrase.trim, ",")) absorb_commas(sentence, em);
    em.positions.resize(em.extracted.size());
    std::iota(em.positions.begin(), em.positions.end(), em.extracted.begin);
    em.positions.insert(em.positions.end(), em.absorbed.begin(), em.absorbed.end());
    std::sort(em.positions.begin(), em.positions.end());
    std::sort(em.absorbed.begin(), em.absorbed.end());
    candidates.push_back(std::move(em));
  }

  // Overlaps: the larger match wins, then the leftmost.
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Span& x = candidates[a].extracted;
    const Span& y = candidates[b].extracted;
    return x.size() != y.size() ? x.size() > y.size() : x.begin < y.begin;
  });
  std::vector<ExtractionMatch> kept;
  for (std::size_t i : order) {
    bool clear = std::all_of(kept.begin(), kept.end(), [&](const ExtractionMatch& k) {
      return disjoint(k, candidates[i]);
    });
    if (clear) kept.push_back(std::move(candidates[i]));
  }
  std::sort(kept.begin(), kept.end(), [](const ExtractionMatch& a, const ExtractionMatch& b) {
    return a.extracted.begin < b.extracted.begin;
  });
  return kept;
}

Token infer_copula(const AnnotatedSentence& sentence, std::optional<Span> antecedent) {
  std::string head;
  const ParseNode* vp = nullptr;
  for (const ParseNode& child : sentence.tree.children)
    if (child.label == "VP") {
      vp = &child;
      break;
    }
  if (vp == nullptr) vp = first_vp(sentence.tree);
  if (vp != nullptr)
    for (const ParseNode& child : vp->children)
      if (is_verb_tag(child.label)) {
        head = child.label;
        break;
      }
  if (head.empty())
    for (const Token& token : sentence.tokens)
      if (is_verb_tag(token.pos)) {
        head = token.pos;
        break;
      }

  bool past = head == "VBD" || head == "VBN";
  bool plural = false;
  if (antecedent) {
    for (std::size_t i = antecedent->end; i > antecedent->begin; --i) {
      const std::string& pos = sentence.tokens[i - 1].pos;
      if (pos.starts_with("NN")) {
        plural = pos == "NNS" || pos == "NNPS";
        break;
      }
    }
  }
  if (past) return Token{0, plural ? "were" : "was", "VBD", "O"};
  return plural ? Token{0, "are", "VBP", "O"} : Token{0, "is", "VBZ", "O"};
}

ContextSentence r_paraphrase(const SimplificationRule& rule, const ExtractionMatch& match,
                             const AnnotatedSentence& sentence) {
  const ParaphraseRecipe& recipe = rule.paraphrase;
  std::vector<bool> skip(sentence.tokens.size(), false);
  for (const std::string& spec : recipe.trim) {
    if (auto cap = match.captures.find(spec); cap != match.captures.end()) {
      for (std::size_t i = cap->second->span.begin; i < cap->second->span.end; ++i) skip[i] = true;
    } else if (spec.starts_with("-")) {
      for (std::size_t i = match.extracted.begin; i < match.extracted.end; ++i)
        if (sentence.tokens[i].pos == spec) skip[i] = true;
    }
  }

  // Indices into the sentence, with -1 marking inserted tokens.
  std::vector<Token> out;
  std::vector<long> source;
  auto copy = [&](std::size_t i) {
    out.push_back(sentence.tokens[i]);
    source.push_back(static_cast<long>(i));
  };
  auto insert = [&](Token token) {
    out.push_back(std::move(token));
    source.push_back(-1);
  };

  std::vector<std::size_t> body;
  for (std::size_t i = match.extracted.begin; i < match.extracted.end; ++i)
    if (!skip[i]) body.push_back(i);
  while (!body.empty() && is_joining_punct(sentence.tokens[body.front()].text))
    body.erase(body.begin());
  while (!body.empty() && (is_joining_punct(sentence.tokens[body.back()].text) ||
                           is_clause_final(sentence.tokens[body.back()].text)))
    body.pop_back();

  ContextSentence context;
  context.rule = rule.name;
  if (rule.family == RuleFamily::kAttribution) {
    for (std::size_t i : body) copy(i);
    insert(Token{0, "this", "DT", "O"});
  } else if (recipe.strategy == Strategy::kAntecedentLink) {
    if (match.antecedent == nullptr)
      throw SimplifyError(SimplifyError::Kind::kMissingAntecedent,
                          "rule '" + rule.name + "' matched without an antecedent");
    const Span ant = match.antecedent->span;
    for (std::size_t i = ant.begin; i < ant.end; ++i) copy(i);
    while (!out.empty() && is_joining_punct(out.back().text)) {
      out.pop_back();
      source.pop_back();
    }
    bool own_verb = !body.empty() && is_finite_verb(sentence.tokens[body.front()].pos);
    if (!own_verb) {
      insert(infer_copula(sentence, ant));
      if (rule.family == RuleFamily::kAppositiveRestrictive && !body.empty()) {
        const Token& first = sentence.tokens[body.front()];
        bool determined = first.pos == "DT" || first.pos == "PRP$" || first.pos == "CD";
        if (!determined) {
          bool vowel = std::string_view("aeiouAEIOU").find(first.text.front()) != std::string_view::npos;
          insert(Token{0, vowel ? "an" : "a", "DT", "O"});
        }
      }
    }
    for (std::size_t i : body) copy(i);
  } else {
    insert(Token{0, "This", "DT", "O"});
    context.dummy_subject = 0;
    insert(infer_copula(sentence, std::nullopt));
    for (std::size_t i : body) copy(i);
  }
  insert(Token{0, ".", ".", "O"});

  // A sentence-initial word that moved inside the context loses its capital.
  for (std::size_t k = 1; k < out.size(); ++k)
    if (source[k] == 0 && !has_capitalized_form(out[k])) out[k].text = lower_first(out[k].text);
  upper_first(out.front());
  for (std::size_t k = 0; k < out.size(); ++k) out[k].index = k;

  context.text = detokenize(out);
  context.tokens = std::move(out);
  return context;
}

CoreSentence reduce_core(const AnnotatedSentence& sentence, const std::set<std::size_t>& deleted) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
    if (!deleted.count(i)) kept.push_back(i);

  CoreSentence core;
  std::vector<std::size_t> survivors;
  for (std::size_t i : kept) {
    const std::string& text = sentence.tokens[i].text;
    bool joining = is_joining_punct(text);
    bool leading = survivors.empty() && (joining || is_clause_final(text));
    bool doubled = joining && !survivors.empty() &&
                   (is_joining_punct(sentence.tokens[survivors.back()].text));
    if (leading || doubled) {
      core.repaired.push_back(i);
      continue;
    }
    // ", ." collapses to "."
    if (is_clause_final(text) && !survivors.empty() &&
        is_joining_punct(sentence.tokens[survivors.back()].text)) {
      core.repaired.push_back(survivors.back());
      survivors.pop_back();
    }
    survivors.push_back(i);
  }
  while (!survivors.empty() && is_joining_punct(sentence.tokens[survivors.back()].text)) {
    core.repaired.push_back(survivors.back());
    survivors.pop_back();
  }
  std::sort(core.repaired.begin(), core.repaired.end());

  bool has_content = std::any_of(survivors.begin(), survivors.end(), [&](std::size_t i) {
    const std::string& t = sentence.tokens[i].text;
    return !is_joining_punct(t) && !is_clause_final(t);
  });
  if (!has_content)
    throw SimplifyError(SimplifyError::Kind::kEmptyCore,
                        "deleting " + std::to_string(deleted.size()) + " of " +
                            std::to_string(sentence.tokens.size()) + " tokens leaves no core");

  for (std::size_t i : survivors) {
    core.tokens.push_back(sentence.tokens[i]);
    core.source_map.push_back(i);
  }
  if (!is_clause_final(core.tokens.back().text)) {
    core.tokens.push_back(Token{0, ".", ".", "O"});
    core.source_map.push_back(std::nullopt);
  }
  upper_first(core.tokens.front());
  for (std::size_t k = 0; k < core.tokens.size(); ++k) core.tokens[k].index = k;
  core.text = detokenize(core.tokens);
  return core;
}

AnnotatedSentence re_annotate(const ContextSentence& context) {
  ParseNode root;
  root.label = "S";
  for (const Token& token : context.tokens) {
    ParseNode leaf;
    leaf.label = token.pos;
    leaf.leaf_text = encode_ptb_token(token.text);
    root.children.push_back(std::move(leaf));
  }
  AnnotatedSentence out = attach_annotations(std::move(root), context.tokens, context.id);
  out.text = context.text;
  return out;
}

}  // namespace disembed
