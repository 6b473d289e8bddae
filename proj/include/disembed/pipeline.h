#ifndef DISEMBED_PIPELINE_H_
#define DISEMBED_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disembed/extractor.h"
#include "disembed/simplifier.h"

namespace disembed {

enum class Mode { kSimplifyOnly, kFull };

struct PipelineConfig {
  std::optional<std::filesystem::path> input_path;
  std::optional<std::string> sentence;
  std::optional<std::filesystem::path> output_path;  // console when unset
  Mode mode = Mode::kFull;
  std::optional<std::filesystem::path> catalog_path;
  std::size_t max_iterations = 10;
  std::set<RuleFamily> families{all_families().begin(), all_families().end()};
  std::size_t jobs = 1;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class PipelineError : public std::runtime_error {
 public:
  enum class Kind { kUsage, kInputUnreadable, kCatalog, kOutputUnwritable };

  PipelineError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }
  int exit_code() const { return kind_ == Kind::kUsage ? kExitUsage : kExitFailure; }

 private:
  Kind kind_;
};

// Throws PipelineError(kUsage) unless exactly one input source is set and
// max_iterations >= 1.
void validate_config(const PipelineConfig& config);

// Parses "RELATIVE_CLAUSE_NONRESTRICTIVE,PARENTHETICAL"; throws kUsage.
std::set<RuleFamily> parse_family_list(std::string_view list);

// One input line: an annotated JSON record or a bracketed parse. Raw text
// is rejected with a pointer to the annotation helper.
AnnotatedSentence parse_input_line(std::string_view line, std::size_t line_number);

struct CoreRecord {
  std::string id;
  std::string text;
  friend bool operator==(const CoreRecord&, const CoreRecord&) = default;
};

struct ContextRecord {
  std::string id;
  std::string text;
  std::string rule;
  std::string attached_to;
  friend bool operator==(const ContextRecord&, const ContextRecord&) = default;
};

struct ExtractionRecord {
  std::string predicate;
  std::string subject;
  std::optional<std::string> object;
  std::string layer;
  std::optional<std::string> attached_to;
  friend bool operator==(const ExtractionRecord&, const ExtractionRecord&) = default;
};

struct OutputRecord {
  std::string id;
  std::string input;
  std::vector<CoreRecord> cores;
  std::vector<ContextRecord> contexts;
  std::optional<std::vector<ExtractionRecord>> extractions;  // FULL mode only
  std::optional<std::string> error;                          // failed sentences
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

OutputRecord make_output_record(const std::string& id, const std::string& input,
                                const SimplificationResult& result,
                                const std::vector<Extraction>* extractions);

// One JSON line, keys in a fixed order, no trailing newline.
std::string render_output_record(const OutputRecord& record);
OutputRecord parse_output_record(std::string_view line);

std::string emit_record(const std::string& id, const std::string& input,
                        const SimplificationResult& result,
                        const std::vector<Extraction>* extractions);

struct RunSummary {
  int exit_code = kExitSuccess;
  std::size_t records = 0;
  std::size_t failures = 0;
};

// Processes every input line, writing one record per sentence in input
// order. Sentence-level failures become error records.
RunSummary run_stream(std::istream& in, std::ostream& out, const Catalog& catalog,
                      const PipelineConfig& config, std::ostream& diagnostics);

// Resolves files and the catalog, then delegates to run_stream. Problems
// with the files or catalog come back as a nonzero exit code with a message
// on `diagnostics`.
RunSummary run(const PipelineConfig& config, std::ostream& console, std::ostream& diagnostics);

}  // namespace disembed

#endif  // DISEMBED_PIPELINE_H_
