#ifndef DISEMBED_SIMPLIFIER_H_
#define DISEMBED_SIMPLIFIER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disembed/treebank.h"
#include "disembed/treepattern.h"

namespace disembed {

enum class RuleFamily {
  kRelativeClauseNonrestrictive,
  kAppositiveNonrestrictive,
  kAppositiveRestrictive,
  kParticipialPhrase,
  kAdjectiveAdverbPhrase,
  kPrepositionalPhrase,
  kLeadNounPhrase,
  kAttribution,
  kParenthetical,
  kClauseSplit,
};

// Upper-case catalog spelling, e.g. "APPOSITIVE_RESTRICTIVE".
std::string_view family_name(RuleFamily family);
std::optional<RuleFamily> family_from_name(std::string_view name);
const std::vector<RuleFamily>& all_families();

enum class Strategy {
  // Antecedent, then the constituent's own verb or a copula, then the rest.
  kAntecedentLink,
  // The missing piece is made up: "This" + copula for phrases, the object
  // "this" for attributions.
  kComplementInsert,
};

std::string_view strategy_name(Strategy strategy);

struct ParaphraseRecipe {
  Strategy strategy = Strategy::kComplementInsert;
  // Capture whose token interval is disembedded.
  std::string delete_capture;
  // Each entry is either a capture name (its tokens stay out of the context
  // text), "," (absorb delimiting commas into the deleted positions) or a
  // bracket tag such as "-LRB-" (dropped from the context text).
  std::vector<std::string> trim;
};

struct SimplificationRule {
  std::string name;
  RuleFamily family = RuleFamily::kClauseSplit;
  int priority = 0;
  TreePattern pattern;
  ParaphraseRecipe paraphrase;
  std::vector<std::string> words;    // lexical triggers, e.g. speech verbs
  std::vector<std::string> ne_tags;  // NE tags the family requires
};

using Catalog = std::vector<SimplificationRule>;

class CatalogError : public std::runtime_error {
 public:
  enum class Kind { kSchema, kUnknownCapture, kDuplicateRuleName };

  CatalogError(Kind kind, std::string rule, const std::string& what)
      : std::runtime_error(what), kind_(kind), rule_(std::move(rule)) {}

  Kind kind() const { return kind_; }
  const std::string& rule() const { return rule_; }

 private:
  Kind kind_;
  std::string rule_;
};

// Parses a catalog document (a JSON array of rule objects), validates it
// and returns the rules sorted by priority, then name.
Catalog load_catalog(std::string_view document);
Catalog load_catalog_file(const std::filesystem::path& path);
std::string_view default_catalog_source();
const Catalog& default_catalog();

class SimplifyError : public std::runtime_error {
 public:
  enum class Kind { kMissingAntecedent, kEmptyCore };

  SimplifyError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A clause cut out of an input sentence. origin[i] is the input index of
// clause token i, or nullopt for tokens the split inserted (a copied
// subject, a closing period).
struct Clause {
  AnnotatedSentence sentence;
  std::vector<std::optional<std::size_t>> origin;
};

struct ClauseSplit {
  std::vector<Clause> clauses;
  std::vector<std::size_t> dropped;  // conjunctions and joining punctuation
  std::string rule;                  // gate rule that fired, empty if none
};

// Splits coordinated clauses and semicolon/colon-joined clauses, and
// shared-subject VP coordination. The gates are CLAUSE_SPLIT rules: a split
// is attempted only when one of their patterns matches at the root.
ClauseSplit split_clauses(const AnnotatedSentence& sentence,
                          std::span<const SimplificationRule> gates);
ClauseSplit split_clauses(const AnnotatedSentence& sentence);

struct ExtractionMatch {
  std::string rule;
  const ParseNode* constituent = nullptr;
  const ParseNode* antecedent = nullptr;
  Span extracted;                      // the disembedded material itself
  std::vector<std::size_t> positions;  // everything deleted, sorted
  std::vector<std::size_t> absorbed;   // delimiter subset of positions
  std::map<std::string, const ParseNode*> captures;
};

// Matches of one rule on one sentence, after the rule's family checks and
// overlap filtering (outermost first, then leftmost). Sorted by position.
std::vector<ExtractionMatch> r_extract(const SimplificationRule& rule,
                                       const AnnotatedSentence& sentence);

struct ContextSentence {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::string rule;
  std::string attached_to;
  // Index of an inserted dummy subject ("This"), if the recipe added one.
  std::optional<std::size_t> dummy_subject;
};

ContextSentence r_paraphrase(const SimplificationRule& rule, const ExtractionMatch& match,
                             const AnnotatedSentence& sentence);

// "was"/"were" after a past-tense matrix verb, "is"/"are" otherwise; plural
// when the antecedent's head noun is NNS/NNPS.
Token infer_copula(const AnnotatedSentence& sentence, std::optional<Span> antecedent);

struct CoreSentence {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  // Source index per surviving token; nullopt for an inserted period.
  std::vector<std::optional<std::size_t>> source_map;
  // Delimiters removed while repairing the reduced sentence.
  std::vector<std::size_t> repaired;
};

CoreSentence reduce_core(const AnnotatedSentence& sentence, const std::set<std::size_t>& deleted);

struct TraceEntry {
  std::string rule;
  std::string target;  // core id, context id, or "input" for the split
  // Input token indices for top-level entries; context-local for nested ones.
  std::vector<std::size_t> positions;
  std::vector<std::size_t> absorbed;
  bool nested = false;
};

struct SimplificationResult {
  std::vector<CoreSentence> cores;
  std::vector<ContextSentence> contexts;
  std::vector<TraceEntry> trace;
  std::size_t iterations = 0;
  bool iteration_limit_exceeded = false;
};

struct SimplifyConfig {
  std::size_t max_iterations = 10;
  std::set<RuleFamily> families{all_families().begin(), all_families().end()};
};

// Splits clauses, disembeds every clause with the catalog rules in priority
// order, reduces the cores, then resubmits generated contexts (flat trees)
// to the disembedding rules until nothing applies. When that would take more
// than max_iterations rounds the partial result comes back with
// iteration_limit_exceeded set.
SimplificationResult simplify(const AnnotatedSentence& sentence, const Catalog& catalog,
                              const SimplifyConfig& config = {});

// Flat S over the context's preterminals; no re-parsing.
AnnotatedSentence re_annotate(const ContextSentence& context);

// Single spaces, no space before closing punctuation or clitics, none after
// an opening bracket. Optionally upper-cases the first letter.
std::string detokenize(std::span<const Token> tokens, bool capitalize = true);

bool is_verb_tag(std::string_view pos);

}  // namespace disembed

#endif  // DISEMBED_SIMPLIFIER_H_
