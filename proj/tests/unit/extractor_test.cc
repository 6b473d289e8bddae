#include <doctest.h>

#include "disembed/extractor.h"
#include "fixtures.h"

using namespace disembed;
using disembed::testing::fixture;

namespace {

// Tokens from "word/TAG" pairs.
std::vector<Token> tagged(std::initializer_list<std::pair<const char*, const char*>> words) {
  std::vector<Token> out;
  for (const auto& [w, p] : words) out.push_back(Token{out.size(), w, p, "O"});
  return out;
}

std::vector<std::string> rendered(const std::vector<Extraction>& xs) {
  std::vector<std::string> out;
  for (const Extraction& x : xs) out.push_back(render_tuple(x));
  return out;
}

}  // namespace

TEST_CASE("extract_tuples on simplified running-example sentences") {
  auto core = tagged({{"Matthias", "NNP"}, {"Goerne", "NNP"}, {"offered", "VBD"}, {"an", "DT"},
                      {"all-German", "JJ"}, {"program", "NN"}, {".", "."}});
  CHECK(rendered(extract_tuples(core)) ==
        std::vector<std::string>{"offered (Matthias Goerne; an all-German program)"});

  auto apposition = tagged({{"Matthias", "NNP"}, {"Goerne", "NNP"}, {"was", "VBD"}, {"a", "DT"},
                            {"German", "JJ"}, {"baritone", "NN"}, {".", "."}});
  auto xs = extract_tuples(apposition);
  REQUIRE(xs.size() == 1);
  CHECK(render_tuple(xs[0]) == "was (Matthias Goerne; a German baritone)");
  CHECK(xs[0].subject.span == Span{0, 2});
  CHECK(xs[0].predicate.span == Span{2, 3});
  CHECK(xs[0].object->span == Span{3, 6});
}

TEST_CASE("extract_tuples on the unsimplified running example absorbs the trailing PP") {
  AnnotatedSentence s = fixture("golden.jsonl", "goerne");
  CHECK(rendered(extract_tuples(s.tokens)) ==
        std::vector<std::string>{"offered (Matthias Goerne; an all-German program at the Frick Collection)"});
}

TEST_CASE("relation phrase shapes") {
  // V P
  CHECK(rendered(extract_tuples(tagged({{"He", "PRP"}, {"met", "VBD"}, {"with", "IN"}, {"Blair", "NNP"}}))) ==
        std::vector<std::string>{"met with (He; Blair)"});
  // V W P
  CHECK(rendered(extract_tuples(tagged({{"She", "PRP"}, {"is", "VBZ"}, {"proud", "JJ"}, {"of", "IN"}, {"him", "PRP"}}))) ==
        std::vector<std::string>{"is proud of (She; him)"});
  // verb group with particle and auxiliaries
  CHECK(rendered(extract_tuples(tagged({{"They", "PRP"}, {"have", "VBP"}, {"given", "VBN"}, {"up", "RP"}, {"hope", "NN"}}))) ==
        std::vector<std::string>{"have given up (They; hope)"});
  // copula does not swallow a following preposition
  CHECK(rendered(extract_tuples(tagged({{"This", "DT"}, {"was", "VBD"}, {"in", "IN"}, {"2012", "CD"}, {".", "."}}))) ==
        std::vector<std::string>{"was (This; in 2012)"});
  // intransitive
  auto intransitive = extract_tuples(tagged({{"The", "DT"}, {"plan", "NN"}, {"failed", "VBD"}, {".", "."}}));
  REQUIRE(intransitive.size() == 1);
  CHECK_FALSE(intransitive[0].object.has_value());
  // no verb, no tuples
  CHECK(extract_tuples(tagged({{"The", "DT"}, {"cat", "NN"}})).empty());
  // pre-nominal participle is not a relation
  CHECK(extract_tuples(tagged({{"the", "DT"}, {"persecuted", "VBN"}, {"peoples", "NNS"}})).empty());
}

TEST_CASE("temporal attachment stays out of the object") {
  std::vector<Token> t = tagged({{"The", "DT"}, {"Notre", "NNP"}, {"Dame", "NNP"}, {"Cathedral", "NNP"},
                                 {"welcomed", "VBD"}, {"14", "CD"}, {"million", "CD"}, {"visitors", "NNS"},
                                 {"in", "IN"}, {"2013", "CD"}, {".", "."}});
  t[9].ne = "DATE";
  CHECK(rendered(extract_tuples(t)) ==
        std::vector<std::string>{"welcomed (The Notre Dame Cathedral; 14 million visitors)"});
}

TEST_CASE("link_layers: running example layering") {
  SimplificationResult r = simplify(fixture("golden.jsonl", "goerne"), default_catalog());
  auto xs = extract_layered(r);
  REQUIRE(xs.size() == 4);
  CHECK(xs[0].layer_name() == "CORE_FACT");
  CHECK(render_tuple(xs[0]) == "offered (Matthias Goerne; an all-German program)");
  CHECK_FALSE(xs[0].attached_to.has_value());
  CHECK(xs[1].layer_name() == "CONTEXT(1)");
  CHECK(render_tuple(xs[1]) == "was (Matthias Goerne; a German baritone)");
  CHECK(xs[2].layer_name() == "CONTEXT(2)");
  CHECK(render_tuple(xs[2]) == "was (CORE FACT; at the Frick Collection)");
  CHECK(xs[3].layer_name() == "CONTEXT(3)");
  CHECK(render_tuple(xs[3]) == "was (CORE FACT; a few hours later)");
  for (std::size_t i = 1; i < 4; ++i) CHECK(xs[i].attached_to == "core-1");
  CHECK_FALSE(xs[2].subject.span.has_value());
}

TEST_CASE("link_layers: relative clause context keeps its subject") {
  SimplificationResult r = simplify(fixture("golden.jsonl", "relative-clause"), default_catalog());
  auto xs = extract_layered(r);
  REQUIRE(xs.size() == 2);
  CHECK(render_tuple(xs[1]) == "welcomed (The Notre Dame Cathedral; 14 million visitors)");
  CHECK(xs[1].attached_to == "core-1");
  CHECK(xs[1].layer == Layer::kContext);
}

TEST_CASE("link_layers: cores only, and dangling attachments") {
  SimplificationResult plain = simplify(fixture("extra.jsonl", "plain"), default_catalog());
  auto xs = extract_layered(plain);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].layer == Layer::kCoreFact);

  SimplificationResult broken = simplify(fixture("golden.jsonl", "goerne"), default_catalog());
  broken.contexts[0].attached_to = "core-9";
  CHECK_THROWS_AS(extract_layered(broken), ExtractorError);
}

TEST_CASE("the extractor seam accepts another implementation") {
  SimplificationResult r = simplify(fixture("golden.jsonl", "goerne"), default_catalog());
  std::size_t calls = 0;
  auto xs = extract_layered(r, [&](std::span<const Token>) {
    ++calls;
    return std::vector<Extraction>{};
  });
  CHECK(calls == 4);
  CHECK(xs.empty());
}

TEST_CASE("tuples stay inside the sentence they came from") {
  SimplificationResult r = simplify(fixture("golden.jsonl", "goerne"), default_catalog());
  for (const Extraction& x : extract_layered(r)) {
    std::size_t length = 0;
    for (const CoreSentence& c : r.cores)
      if (c.id == x.sentence_id) length = c.tokens.size();
    for (const ContextSentence& c : r.contexts)
      if (c.id == x.sentence_id) length = c.tokens.size();
    REQUIRE(length > 0);
    CHECK(x.predicate.span->end <= length);
    if (x.subject.span) CHECK(x.subject.span->end <= x.predicate.span->begin);
    if (x.object) CHECK(x.object->span->begin >= x.predicate.span->end);
    if (x.object) CHECK(x.object->span->end <= length);
  }
}
