#include <algorithm>
#include <array>
#include <cctype>

#include "disembed/extractor.h"

namespace disembed {

namespace {

bool is_preposition(const Token& t) { return t.pos == "IN" || t.pos == "TO"; }
bool is_adverb(const Token& t) { return t.pos.starts_with("RB"); }
bool is_modifier(const Token& t) { return is_adverb(t) || t.pos.starts_with("JJ"); }

bool is_nominal(const Token& t) {
  static constexpr std::array<std::string_view, 13> kTags = {
      "DT", "PDT", "JJ", "JJR", "JJS", "NN", "NNS", "NNP", "NNPS", "PRP", "PRP$", "CD", "POS"};
  return std::find(kTags.begin(), kTags.end(), t.pos) != kTags.end();
}

bool is_temporal(const Token& t) {
  return t.ne == "DATE" || t.ne == "TIME" || t.ne == "DURATION" || t.ne == "SET";
}

bool is_be(const Token& t) {
  static constexpr std::array<std::string_view, 11> kForms = {
      "is", "was", "are", "were", "be", "been", "being", "am", "'s", "'re", "'m"};
  std::string lower = t.text;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(kForms.begin(), kForms.end(), lower) != kForms.end();
}

Argument argument(std::span<const Token> tokens, Span span) {
  return Argument{span, detokenize(tokens.subspan(span.begin, span.size()), false)};
}

// Verb group starting at i: verbs, adverbs between verbs, infinitival "to"
// between verbs, and a trailing particle. Returns one past its end.
std::size_t verb_group_end(std::span<const Token> tokens, std::size_t i) {
  std::size_t j = i + 1;
  while (j < tokens.size()) {
    if (is_verb_tag(tokens[j].pos)) {
      ++j;
      continue;
    }
    std::size_t k = j;
    while (k < tokens.size() && (is_adverb(tokens[k]) || tokens[k].pos == "TO")) ++k;
    if (k > j && k < tokens.size() && is_verb_tag(tokens[k].pos)) {
      j = k + 1;
      continue;
    }
    break;
  }
  if (j < tokens.size() && tokens[j].pos == "RP") ++j;
  return j;
}

std::optional<Span> subject_before(std::span<const Token> tokens, std::size_t predicate) {
  if (predicate == 0) return std::nullopt;
  std::size_t r = predicate - 1;
  // "Goerne, a German baritone, offered": jump over the insertion.
  if (tokens[r].text == ",") {
    std::size_t open = r;
    while (open > 0 && tokens[open - 1].text != ",") --open;
    if (open < 2) return std::nullopt;  // no opening comma with material before it
    r = open - 2;
  }
  while (true) {
    const Token& t = tokens[r];
    if (is_nominal(t)) break;
    if (is_verb_tag(t.pos) || r == 0) return std::nullopt;
    --r;
  }
  std::size_t l = r;
  if (tokens[r].pos == "PRP") return Span{r, r + 1};  // a pronoun is a whole noun phrase
  while (l > 0 && is_nominal(tokens[l - 1]) && tokens[l - 1].pos != "PRP") --l;
  return Span{l, r + 1};
}

std::optional<Span> object_after(std::span<const Token> tokens, std::size_t start,
                                 bool allow_leading_preposition) {
  std::size_t k = start;
  std::size_t end = start;
  bool leading = true;
  while (k < tokens.size()) {
    const Token& t = tokens[k];
    if (t.pos == "PRP" && k > start && is_nominal(tokens[k - 1])) {
      break;  // "a sport he participated in": a new clause starts
    } else if (is_nominal(t) || is_adverb(t)) {
      ++k;
      end = k;
    } else if (is_preposition(t) && (!leading || allow_leading_preposition) &&
               k + 1 < tokens.size() && is_nominal(tokens[k + 1]) &&
               (leading || !is_temporal(tokens[k + 1]))) {
      // "in 2013" after an argument dates the event; it is not part of it.
      ++k;
    } else if (t.pos == "CC" && k + 1 < tokens.size() && is_nominal(tokens[k + 1])) {
      ++k;
    } else {
      break;
    }
    leading = false;
  }
  if (end == start) return std::nullopt;
  return Span{start, end};
}

}  // namespace

std::string Extraction::layer_name() const {
  if (layer == Layer::kCoreFact) return "CORE_FACT";
  return "CONTEXT(" + std::to_string(context_number) + ")";
}

std::vector<Extraction> extract_tuples(std::span<const Token> tokens) {
  std::vector<Extraction> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_verb_tag(tokens[i].pos)) {
      ++i;
      continue;
    }
    // "persecuted peoples": a participle in front of a noun is a modifier.
    bool participle = tokens[i].pos == "VBN" || tokens[i].pos == "VBG";
    if (participle && i + 1 < tokens.size() && tokens[i + 1].pos.starts_with("NN")) {
      ++i;
      continue;
    }
    std::size_t group_end = verb_group_end(tokens, i);
    std::size_t head = group_end - 1;
    while (head > i && !is_verb_tag(tokens[head].pos)) --head;
    bool copula = is_be(tokens[head]);

    // Longest relation phrase: V W+ P, then V P (not after a copula), then V.
    std::size_t pred_end = group_end;
    std::size_t w = group_end;
    while (w < tokens.size() && is_modifier(tokens[w])) ++w;
    if (w > group_end && w < tokens.size() && is_preposition(tokens[w]))
      pred_end = w + 1;
    else if (!copula && group_end < tokens.size() && is_preposition(tokens[group_end]))
      pred_end = group_end + 1;

    Extraction e;
    e.predicate = argument(tokens, Span{i, pred_end});
    auto subject = subject_before(tokens, i);
    if (subject) {
      e.subject = argument(tokens, *subject);
      if (auto object = object_after(tokens, pred_end, pred_end == group_end))
        e.object = argument(tokens, *object);
      out.push_back(std::move(e));
    }
    i = pred_end;
  }
  return out;
}

std::vector<Extraction> link_layers(const SimplificationResult& result, const RawExtractions& raw) {
  auto known = [&](const std::string& id) {
    return std::any_of(result.cores.begin(), result.cores.end(),
                       [&](const CoreSentence& c) { return c.id == id; }) ||
           std::any_of(result.contexts.begin(), result.contexts.end(),
                       [&](const ContextSentence& c) { return c.id == id; });
  };

  std::vector<Extraction> out;
  for (const CoreSentence& core : result.cores) {
    auto it = raw.find(core.id);
    if (it == raw.end()) continue;
    for (Extraction e : it->second) {
      e.layer = Layer::kCoreFact;
      e.context_number = 0;
      e.attached_to.reset();
      e.sentence_id = core.id;
      out.push_back(std::move(e));
    }
  }
  for (std::size_t k = 0; k < result.contexts.size(); ++k) {
    const ContextSentence& context = result.contexts[k];
    if (!known(context.attached_to))
      throw ExtractorError("context " + context.id + " is attached to unknown sentence '" +
                           context.attached_to + "'");
    auto it = raw.find(context.id);
    if (it == raw.end()) continue;
    for (Extraction e : it->second) {
      e.layer = Layer::kContext;
      e.context_number = k + 1;
      e.attached_to = context.attached_to;
      e.sentence_id = context.id;
      if (context.dummy_subject && e.subject.span &&
          *e.subject.span == Span{*context.dummy_subject, *context.dummy_subject + 1})
        e.subject = Argument{std::nullopt, std::string(kCoreFactReference)};
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Extraction> extract_layered(const SimplificationResult& result,
                                        const TupleExtractor& extractor) {
  RawExtractions raw;
  for (const CoreSentence& core : result.cores) raw[core.id] = extractor(core.tokens);
  for (const ContextSentence& context : result.contexts)
    raw[context.id] = extractor(context.tokens);
  return link_layers(result, raw);
}

std::string render_tuple(const Extraction& e) {
  std::string out = e.predicate.text + " (" + e.subject.text;
  if (e.object) out += "; " + e.object->text;
  out += ")";
  return out;
}

}  // namespace disembed
