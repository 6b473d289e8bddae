#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "disembed/simplifier.h"

namespace disembed {

namespace {

using json = nlohmann::json;

constexpr std::string_view kBracketTags[] = {"-LRB-", "-RRB-", "-LSB-", "-RSB-", "-LCB-", "-RCB-"};

[[noreturn]] void schema_error(const std::string& rule, const std::string& msg) {
  std::string where = rule.empty() ? std::string("catalog") : "rule '" + rule + "'";
  throw CatalogError(CatalogError::Kind::kSchema, rule, where + ": " + msg);
}

bool is_capture_name(std::string_view s) {
  return !s.empty() && (std::isalpha(static_cast<unsigned char>(s.front())) != 0 || s.front() == '_');
}

std::vector<std::string> string_list(const json& entry, const char* key, const std::string& rule) {
  std::vector<std::string> out;
  auto it = entry.find(key);
  if (it == entry.end() || it->is_null()) return out;
  if (!it->is_array()) schema_error(rule, std::string("\"") + key + "\" must be an array");
  for (const json& v : *it) {
    if (!v.is_string()) schema_error(rule, std::string("\"") + key + "\" holds a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_field(const json& entry, const char* key, const std::string& rule,
                         bool required) {
  auto it = entry.find(key);
  if (it == entry.end() || it->is_null()) {
    if (required) schema_error(rule, std::string("missing \"") + key + "\"");
    return {};
  }
  if (!it->is_string()) schema_error(rule, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

void require_capture(const SimplificationRule& rule, const std::vector<std::string>& declared,
                     const std::string& name) {
  if (std::find(declared.begin(), declared.end(), name) == declared.end())
    throw CatalogError(CatalogError::Kind::kUnknownCapture, rule.name,
                       "rule '" + rule.name + "' uses capture '" + name +
                           "' which its pattern does not declare");
}

SimplificationRule parse_rule(const json& entry) {
  if (!entry.is_object()) schema_error({}, "every entry must be an object");
  SimplificationRule rule;
  rule.name = string_field(entry, "name", {}, true);
  if (rule.name.empty()) schema_error({}, "rule name is empty");

  std::string family = string_field(entry, "family", rule.name, true);
  auto parsed_family = family_from_name(family);
  if (!parsed_family) schema_error(rule.name, "unknown family \"" + family + "\"");
  rule.family = *parsed_family;

  auto priority = entry.find("priority");
  if (priority == entry.end() || !priority->is_number_integer())
    schema_error(rule.name, "\"priority\" must be an integer");
  rule.priority = priority->get<int>();

  try {
    rule.pattern = parse_pattern(string_field(entry, "pattern", rule.name, true));
  } catch (const PatternError& e) {
    schema_error(rule.name, std::string("bad pattern: ") + e.what());
  }

  rule.words = string_list(entry, "words", rule.name);
  rule.ne_tags = string_list(entry, "ne", rule.name);
  if (rule.family == RuleFamily::kClauseSplit) return rule;

  std::string strategy = string_field(entry, "strategy", rule.name, true);
  if (strategy == "ANTECEDENT_LINK")
    rule.paraphrase.strategy = Strategy::kAntecedentLink;
  else if (strategy == "COMPLEMENT_INSERT")
    rule.paraphrase.strategy = Strategy::kComplementInsert;
  else
    schema_error(rule.name, "unknown strategy \"" + strategy + "\"");
  rule.paraphrase.delete_capture = string_field(entry, "delete", rule.name, true);
  rule.paraphrase.trim = string_list(entry, "trim", rule.name);

  std::vector<std::string> declared = rule.pattern.capture_names();
  require_capture(rule, declared, rule.paraphrase.delete_capture);
  for (const std::string& spec : rule.paraphrase.trim) {
    if (is_capture_name(spec)) {
      require_capture(rule, declared, spec);
    } else if (spec != "," &&
               std::find(std::begin(kBracketTags), std::end(kBracketTags), spec) ==
                   std::end(kBracketTags)) {
      schema_error(rule.name, "unknown trim entry \"" + spec + "\"");
    }
  }
  if (rule.paraphrase.strategy == Strategy::kAntecedentLink) require_capture(rule, declared, "ant");
  if (rule.family == RuleFamily::kAttribution) {
    require_capture(rule, declared, "verb");
    if (rule.words.empty()) schema_error(rule.name, "attribution rules need a \"words\" list");
  }
  return rule;
}

}  // namespace

Catalog load_catalog(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    schema_error({}, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) schema_error({}, "document must be a JSON array of rules");

  Catalog rules;
  for (const json& entry : doc) {
    SimplificationRule rule = parse_rule(entry);
    for (const SimplificationRule& seen : rules)
      if (seen.name == rule.name)
        throw CatalogError(CatalogError::Kind::kDuplicateRuleName, rule.name,
                           "rule name '" + rule.name + "' appears twice");
    rules.push_back(std::move(rule));
  }

  bool has_split = std::any_of(rules.begin(), rules.end(), [](const SimplificationRule& r) {
    return r.family == RuleFamily::kClauseSplit;
  });
  bool has_disembedding = std::any_of(rules.begin(), rules.end(), [](const SimplificationRule& r) {
    return r.family != RuleFamily::kClauseSplit;
  });
  if (!has_split || !has_disembedding)
    schema_error({}, "a catalog needs a CLAUSE_SPLIT rule and at least one disembedding rule");

  std::sort(rules.begin(), rules.end(), [](const SimplificationRule& a, const SimplificationRule& b) {
    return a.priority != b.priority ? a.priority < b.priority : a.name < b.name;
  });
  return rules;
}

Catalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema_error({}, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_catalog(buffer.str());
}

const Catalog& default_catalog() {
  static const Catalog catalog = load_catalog(default_catalog_source());
  return catalog;
}

}  // namespace disembed
