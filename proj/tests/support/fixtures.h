#ifndef DISEMBED_TESTS_FIXTURES_H_
#define DISEMBED_TESTS_FIXTURES_H_

#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "disembed/treebank.h"

namespace disembed::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DISEMBED_FIXTURES) + "/" + name;
}

inline std::vector<AnnotatedSentence> load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::vector<AnnotatedSentence> out;
  for (auto& item : read_annotated_jsonl(in)) {
    if (auto* bad = std::get_if<MalformedRecord>(&item))
      throw std::runtime_error(name + ":" + std::to_string(bad->line) + ": " + bad->cause);
    out.push_back(std::get<AnnotatedSentence>(std::move(item)));
  }
  return out;
}

inline AnnotatedSentence fixture(const std::string& file, const std::string& id) {
  for (AnnotatedSentence& s : load_fixture(file))
    if (s.source_id == id) return s;
  throw std::runtime_error("no record " + id + " in " + file);
}

inline std::vector<std::string> fixture_lines(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

// Every committed tree: golden corpus, hand-built extras, frozen generated corpus.
inline std::vector<AnnotatedSentence> all_fixtures() {
  std::vector<AnnotatedSentence> out;
  for (const char* name : {"golden.jsonl", "extra.jsonl", "generated.jsonl"})
    for (AnnotatedSentence& s : load_fixture(name)) out.push_back(std::move(s));
  return out;
}

}  // namespace disembed::testing

#endif  // DISEMBED_TESTS_FIXTURES_H_
