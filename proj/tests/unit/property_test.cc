#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "disembed/extractor.h"
#include "disembed/simplifier.h"
#include "fixtures.h"
#include "sentence_gen.h"

using namespace disembed;
using disembed::testing::all_fixtures;
using disembed::testing::fixture_lines;
using disembed::testing::SentenceGenerator;

namespace {

constexpr std::uint32_t kFrozenSeed = 20131;
constexpr int kFrozenCount = 60;

std::vector<AnnotatedSentence> corpus() {
  std::vector<AnnotatedSentence> out = all_fixtures();
  SentenceGenerator gen(7);
  for (int i = 0; i < 500; ++i) out.push_back(gen.next("random-" + std::to_string(i)));
  return out;
}

// Counts how often each input index is accounted for by a core token, a
// disembedded position or an absorbed delimiter.
std::map<std::size_t, int> ledger(const SimplificationResult& result) {
  std::map<std::size_t, int> seen;
  for (const CoreSentence& core : result.cores)
    for (const auto& source : core.source_map)
      if (source) ++seen[*source];
  for (const TraceEntry& entry : result.trace) {
    if (entry.nested) continue;
    for (std::size_t p : entry.positions) ++seen[p];
    for (std::size_t p : entry.absorbed) ++seen[p];
  }
  return seen;
}

std::string describe(const SimplificationResult& r) {
  std::ostringstream s;
  for (const CoreSentence& c : r.cores) s << c.id << ": " << c.text << '\n';
  for (const ContextSentence& c : r.contexts) s << c.id << ": " << c.text << '\n';
  return s.str();
}

}  // namespace

TEST_CASE("frozen generated corpus matches the generator") {
  SentenceGenerator gen(kFrozenSeed);
  auto frozen = fixture_lines("generated.jsonl");
  REQUIRE(frozen.size() == kFrozenCount);
  for (int i = 0; i < kFrozenCount; ++i)
    CHECK(to_annotated_record(gen.next("generated-" + std::to_string(i + 1))) == frozen[i]);
}

TEST_CASE("simplification properties over fixtures and generated sentences") {
  const std::vector<AnnotatedSentence> sentences = corpus();
  REQUIRE(sentences.size() >= 550);
  std::size_t with_contexts = 0;

  for (const AnnotatedSentence& sentence : sentences) {
    CAPTURE(sentence.source_id);
    SimplificationResult result = simplify(sentence, default_catalog());
    CAPTURE(describe(result));
    if (!result.contexts.empty()) ++with_contexts;

    // Every input token lands in exactly one place.
    auto seen = ledger(result);
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      CAPTURE(i);
      CHECK(seen[i] == 1);
    }
    CHECK(seen.size() == sentence.tokens.size());

    CHECK(result.iterations <= 10);
    CHECK_FALSE(result.iteration_limit_exceeded);

    SimplificationResult again = simplify(sentence, default_catalog());
    CHECK(describe(again) == describe(result));

    for (const ContextSentence& context : result.contexts) {
      CAPTURE(context.text);
      CHECK(std::any_of(context.tokens.begin(), context.tokens.end(),
                        [](const Token& t) { return is_verb_tag(t.pos); }));
      CHECK(context.text.ends_with("."));
    }

    // Reduced cores are fixed points of the disembedding rules.
    for (const CoreSentence& core : result.cores) {
      CAPTURE(core.text);
      CHECK_FALSE(core.tokens.empty());
      ContextSentence as_context;
      as_context.tokens = core.tokens;
      as_context.text = core.text;
      AnnotatedSentence flat = re_annotate(as_context);
      for (const SimplificationRule& rule : default_catalog()) {
        if (rule.family == RuleFamily::kClauseSplit) continue;
        CAPTURE(rule.name);
        CHECK(r_extract(rule, flat).empty());
      }
    }

    // Layering never dangles.
    CHECK_NOTHROW(extract_layered(result));
  }
  CHECK(with_contexts > sentences.size() / 2);
}
