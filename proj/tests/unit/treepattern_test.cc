#include <doctest.h>

#include <random>

#include "disembed/treepattern.h"
#include "fixtures.h"
#include "oracle.h"

using namespace disembed;
using disembed::testing::BruteForceMatcher;

namespace {

PatternError::Kind pattern_error_kind(std::string_view src) {
  try {
    parse_pattern(src);
  } catch (const PatternError& e) {
    return e.kind();
  }
  FAIL("no error for " << src);
  return PatternError::Kind::kSyntax;
}

std::vector<std::string> labels_of(const std::vector<MatchResult>& results) {
  std::vector<std::string> out;
  for (const MatchResult& r : results) out.push_back(r.anchor->label);
  return out;
}

}  // namespace

TEST_CASE("parse_pattern builds the constraint tree") {
  TreePattern single = parse_pattern("NP");
  CHECK(single.root.test.kind() == LabelTest::Kind::kLiteral);
  CHECK(single.root.relations.empty());

  TreePattern rc = parse_pattern("SBAR=rc > NP $ /,/");
  CHECK(rc.root.capture == "rc");
  REQUIRE(rc.root.relations.size() == 2);
  CHECK(rc.root.relations[0].relation == Relation::kChildOf);
  CHECK(rc.root.relations[0].target.test.literals() == std::vector<std::string>{"NP"});
  CHECK(rc.root.relations[1].relation == Relation::kSisterOf);
  CHECK(rc.root.relations[1].target.test.kind() == LabelTest::Kind::kRegex);
  CHECK(rc.root.relations[1].target.test.regex_source() == ",");
  CHECK(rc.relation_count() == 2);
}

TEST_CASE("every relation symbol parses") {
  const std::vector<std::pair<std::string, Relation>> table = {
      {"<", Relation::kParentOf},         {"<<", Relation::kAncestorOf},
      {">", Relation::kChildOf},          {">>", Relation::kDescendantOf},
      {".", Relation::kImmediatelyPrecedes}, {"..", Relation::kPrecedes},
      {"$", Relation::kSisterOf},         {"<1", Relation::kFirstChild},
      {"<-", Relation::kLastChild}};
  for (const auto& [symbol, rel] : table) {
    TreePattern p = parse_pattern("NP " + symbol + " VP");
    REQUIRE(p.root.relations.size() == 1);
    CHECK(p.root.relations[0].relation == rel);
    CHECK(relation_symbol(rel) == symbol);
  }
}

TEST_CASE("grouping, alternation, negation and captures") {
  TreePattern p = parse_pattern("S <1 ((ADVP|ADJP)=mod . /,/ <1 !NP)");
  REQUIRE(p.root.relations.size() == 1);
  const PatternNode& mod = p.root.relations[0].target;
  CHECK(mod.test.kind() == LabelTest::Kind::kAlternation);
  CHECK(mod.capture == "mod");
  REQUIRE(mod.relations.size() == 2);
  CHECK(mod.relations[1].target.negated);
  CHECK(p.capture_names() == std::vector<std::string>{"mod"});

  // "$" and "." may sit inside a literal, just not start one.
  TreePattern tag = parse_pattern("NP < PRP$");
  CHECK(tag.root.relations[0].target.test.literals() == std::vector<std::string>{"PRP$"});
}

TEST_CASE("pattern errors") {
  CHECK(pattern_error_kind("NP=app $ /,/ > NP=app") == PatternError::Kind::kDuplicateCapture);
  CHECK(pattern_error_kind("") == PatternError::Kind::kSyntax);
  CHECK(pattern_error_kind("NP <") == PatternError::Kind::kSyntax);
  CHECK(pattern_error_kind("NP < (VP") == PatternError::Kind::kSyntax);
  CHECK(pattern_error_kind("NP < /[/") == PatternError::Kind::kSyntax);
  CHECK(pattern_error_kind("NP ~ VP") == PatternError::Kind::kSyntax);
  CHECK(pattern_error_kind("NP=") == PatternError::Kind::kSyntax);
  try {
    parse_pattern("NP < VP <");
    FAIL("expected error");
  } catch (const PatternError& e) {
    CHECK(e.position() >= 8);
  }
}

TEST_CASE("match_pattern basics") {
  ParseNode cat = parse_ptb("(NP (DT the) (NN cat))");
  auto root = match_pattern(parse_pattern("NP"), cat);
  REQUIRE(root.size() == 1);
  CHECK(root[0].anchor == &cat);

  auto nn = match_pattern(parse_pattern("NN > NP"), cat);
  REQUIRE(nn.size() == 1);
  CHECK(nn[0].anchor == &cat.children[1]);

  CHECK(match_pattern(parse_pattern("/N/"), cat).empty());  // anchored regex
  CHECK(match_pattern(parse_pattern("/N.*/"), cat).size() == 2);
  CHECK(match_pattern(parse_pattern("VP"), cat).empty());
}

TEST_CASE("relations on a sentence tree") {
  ParseNode t = parse_ptb(
      "(S (NP (NP (NNP Matthias) (NNP Goerne)) (, ,) (NP (DT a) (NN baritone)) (, ,)) "
      "(VP (VBD sang)) (. .))");
  CHECK(labels_of(match_pattern(parse_pattern("NP << NN"), t)) == std::vector<std::string>{"NP", "NP"});
  CHECK(match_pattern(parse_pattern("NN >> S"), t).size() == 1);
  CHECK(match_pattern(parse_pattern("VP . /[.]/"), t).size() == 1);
  CHECK(match_pattern(parse_pattern("NP .. VP"), t).size() == 3);
  CHECK(match_pattern(parse_pattern("S <1 NP <- /[.]/"), t).size() == 1);
  CHECK(match_pattern(parse_pattern("S <- NP"), t).empty());

  auto app = match_pattern(parse_pattern("NP=app > NP $ (NP=ant . /,/)"), t);
  REQUIRE(app.size() == 2);  // both inner NPs qualify; the rule engine filters
  CHECK(app[1].captures.at("app")->span == Span{3, 5});
  CHECK(app[1].captures.at("ant")->span == Span{0, 2});
  CHECK(node_positions(*app[1].captures.at("app")) == Span{3, 5});

  // Negation never binds the excluded label.
  for (const MatchResult& r : match_pattern(parse_pattern("NP < !NP=x"), t))
    CHECK(r.captures.at("x")->label != "NP");
}

TEST_CASE("running-example appositive interval") {
  AnnotatedSentence s = disembed::testing::fixture("golden.jsonl", "goerne");
  auto matches = match_pattern(parse_pattern("NP=app > NP $ (NP=ant . /,/)"), s.tree);
  bool found = false;
  for (const MatchResult& m : matches)
    if (m.captures.at("app")->span == Span{8, 11}) found = true;
  CHECK(found);
  CHECK(node_positions(*leaves(s.tree).front()) == Span{0, 1});
  CHECK(node_positions(s.tree) == Span{0, 21});
}

TEST_CASE("matcher agrees with the exhaustive oracle on random trees and patterns") {
  std::mt19937 rng(20161211);
  std::vector<TreePattern> patterns;
  while (patterns.size() < 30) {
    std::string src = disembed::testing::random_pattern(rng);
    TreePattern p = parse_pattern(src);
    if (p.relation_count() <= 4) patterns.push_back(std::move(p));
  }
  std::size_t disagreements = 0;
  std::size_t nonempty = 0;
  for (int t = 0; t < 200; ++t) {
    int budget = 12;
    ParseNode tree = disembed::testing::random_tree(rng, 4, budget);
    assign_spans(tree);
    REQUIRE(count_nodes(tree) <= 12);
    BruteForceMatcher oracle(tree);
    for (const TreePattern& p : patterns) {
      auto got = match_pattern(p, tree);
      auto want = oracle.match(p);
      if (!got.empty()) ++nonempty;
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < got.size(); ++i)
        same = got[i].anchor == want[i].anchor && got[i].captures == want[i].captures;
      if (!same) {
        ++disagreements;
        INFO(p.source << " on " << render_ptb(tree));
        CHECK(same);
      }
    }
  }
  CHECK(disagreements == 0);
  CHECK(nonempty > 200);  // the sample actually exercises matches
}

TEST_CASE("matching is deterministic") {
  AnnotatedSentence s = disembed::testing::fixture("golden.jsonl", "relative-clause");
  TreePattern p = parse_pattern("/.*/=x .. /N.*/=y");
  auto a = match_pattern(p, s.tree);
  auto b = match_pattern(p, s.tree);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].anchor == b[i].anchor);
    CHECK(a[i].captures == b[i].captures);
  }
}
