#ifndef DISEMBED_EXTRACTOR_H_
#define DISEMBED_EXTRACTOR_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disembed/simplifier.h"
#include "disembed/treebank.h"

namespace disembed {

// Subject text of a context tuple whose subject is the inserted "This".
inline constexpr std::string_view kCoreFactReference = "CORE FACT";

enum class Layer { kCoreFact, kContext };

struct Argument {
  std::optional<Span> span;  // none for the CORE FACT reference
  std::string text;
  friend bool operator==(const Argument&, const Argument&) = default;
};

struct Extraction {
  Argument subject;
  Argument predicate;
  std::optional<Argument> object;
  Layer layer = Layer::kCoreFact;
  std::size_t context_number = 0;  // k in CONTEXT(k), 1-based
  std::optional<std::string> attached_to;
  std::string sentence_id;

  // "CORE_FACT" or "CONTEXT(k)".
  std::string layer_name() const;
};

class ExtractorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// POS-pattern extraction. Each verb group is a relation phrase (verb group,
// verb group + preposition, or verb group + adjectives/adverbs +
// preposition); the subject is the nearest noun-phrase run to its left
// (skipping a comma-enclosed insertion) and the object the argument chunk
// to its right, prepositional attachments included.
std::vector<Extraction> extract_tuples(std::span<const Token> tokens);

// Seam for plugging in another relation extractor.
using TupleExtractor = std::function<std::vector<Extraction>(std::span<const Token>)>;

// Raw tuples keyed by core or context id.
using RawExtractions = std::map<std::string, std::vector<Extraction>>;

// Assigns layers. Tuples whose subject is a context's inserted dummy get the
// CORE FACT reference as subject; attachedTo always names the sentence the
// context hangs off. Throws ExtractorError when an attachment dangles.
std::vector<Extraction> link_layers(const SimplificationResult& result, const RawExtractions& raw);

std::vector<Extraction> extract_layered(const SimplificationResult& result,
                                        const TupleExtractor& extractor = extract_tuples);

// "offered (Matthias Goerne; an all-German program)"
std::string render_tuple(const Extraction& extraction);

}  // namespace disembed

#endif  // DISEMBED_EXTRACTOR_H_
