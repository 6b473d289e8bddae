#include <array>
#include <cctype>

#include "disembed/simplifier.h"

namespace disembed {

namespace {

constexpr std::array<std::pair<RuleFamily, std::string_view>, 10> kFamilyNames = {{
    {RuleFamily::kRelativeClauseNonrestrictive, "RELATIVE_CLAUSE_NONRESTRICTIVE"},
    {RuleFamily::kAppositiveNonrestrictive, "APPOSITIVE_NONRESTRICTIVE"},
    {RuleFamily::kAppositiveRestrictive, "APPOSITIVE_RESTRICTIVE"},
    {RuleFamily::kParticipialPhrase, "PARTICIPIAL_PHRASE"},
    {RuleFamily::kAdjectiveAdverbPhrase, "ADJECTIVE_ADVERB_PHRASE"},
    {RuleFamily::kPrepositionalPhrase, "PREPOSITIONAL_PHRASE"},
    {RuleFamily::kLeadNounPhrase, "LEAD_NOUN_PHRASE"},
    {RuleFamily::kAttribution, "ATTRIBUTION"},
    {RuleFamily::kParenthetical, "PARENTHETICAL"},
    {RuleFamily::kClauseSplit, "CLAUSE_SPLIT"},
}};

bool attaches_left(std::string_view text) {
  static constexpr std::array<std::string_view, 13> kLeft = {
      ",", ".", ";", ":", ")", "]", "}", "?", "!", "%", "''", "n't", "'"};
  for (std::string_view t : kLeft)
    if (text == t) return true;
  // Possessive and contracted clitics: 's, 're, 'll, ...
  return text.size() > 1 && text.front() == '\'' &&
         std::isalpha(static_cast<unsigned char>(text[1])) != 0;
}

bool attaches_right(std::string_view text) {
  return text == "(" || text == "[" || text == "{" || text == "``";
}

}  // namespace

std::string_view family_name(RuleFamily family) {
  for (auto [f, name] : kFamilyNames)
    if (f == family) return name;
  return "?";
}

std::optional<RuleFamily> family_from_name(std::string_view name) {
  for (auto [f, n] : kFamilyNames)
    if (n == name) return f;
  return std::nullopt;
}

const std::vector<RuleFamily>& all_families() {
  static const std::vector<RuleFamily> families = [] {
    std::vector<RuleFamily> out;
    for (auto [f, name] : kFamilyNames) out.push_back(f);
    return out;
  }();
  return families;
}

std::string_view strategy_name(Strategy strategy) {
  return strategy == Strategy::kAntecedentLink ? "ANTECEDENT_LINK" : "COMPLEMENT_INSERT";
}

bool is_verb_tag(std::string_view pos) { return pos.starts_with("VB") || pos == "MD"; }

std::string detokenize(std::span<const Token> tokens, bool capitalize) {
  std::string out;
  bool glue = true;
  for (const Token& token : tokens) {
    if (!glue && !attaches_left(token.text)) out += ' ';
    out += token.text;
    glue = attaches_right(token.text);
  }
  if (capitalize) {
    for (char& c : out) {
      if (std::isalnum(static_cast<unsigned char>(c))) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        break;
      }
    }
  }
  return out;
}

}  // namespace disembed
