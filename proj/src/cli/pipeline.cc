#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "disembed/pipeline.h"

namespace disembed {

namespace {

using ojson = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ojson optional_string(const std::optional<std::string>& value) {
  return value ? ojson(*value) : ojson(nullptr);
}

std::optional<std::string> read_optional(const ojson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

struct Job {
  std::size_t line = 0;
  std::string text;
};

std::string process(const Job& job, const Catalog& catalog, const PipelineConfig& config,
                    bool& failed, std::string& note) {
  std::string id = "line-" + std::to_string(job.line);
  std::string input(trim(job.text));
  try {
    AnnotatedSentence sentence = parse_input_line(job.text, job.line);
    if (!sentence.source_id.empty()) id = sentence.source_id;
    input = sentence.text.empty() ? detokenize(sentence.tokens) : sentence.text;

    SimplifyConfig sc;
    sc.max_iterations = config.max_iterations;
    sc.families = config.families;
    SimplificationResult result = simplify(sentence, catalog, sc);
    if (result.iteration_limit_exceeded)
      note = id + ": iteration limit " + std::to_string(config.max_iterations) +
             " reached, emitting the partial result";

    failed = false;
    if (config.mode == Mode::kSimplifyOnly) return emit_record(id, input, result, nullptr);
    std::vector<Extraction> extractions = extract_layered(result);
    return emit_record(id, input, result, &extractions);
  } catch (const std::exception& e) {
    failed = true;
    OutputRecord record;
    record.id = id;
    record.input = input;
    record.error = e.what();
    return render_output_record(record);
  }
}

}  // namespace

void validate_config(const PipelineConfig& config) {
  if (config.input_path.has_value() == config.sentence.has_value())
    throw PipelineError(PipelineError::Kind::kUsage,
                        "exactly one of --input or --sentence is required");
  if (config.max_iterations < 1)
    throw PipelineError(PipelineError::Kind::kUsage, "--max-iterations must be at least 1");
  if (config.jobs < 1) throw PipelineError(PipelineError::Kind::kUsage, "--jobs must be at least 1");
}

std::set<RuleFamily> parse_family_list(std::string_view list) {
  std::set<RuleFamily> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = trim(list.substr(start, comma - start));
    if (!item.empty()) {
      auto family = family_from_name(item);
      if (!family)
        throw PipelineError(PipelineError::Kind::kUsage,
                            "unknown rule family '" + std::string(item) + "'");
      out.insert(*family);
    }
    start = comma + 1;
  }
  if (out.empty()) throw PipelineError(PipelineError::Kind::kUsage, "--families is empty");
  return out;
}

AnnotatedSentence parse_input_line(std::string_view line, std::size_t line_number) {
  std::string_view body = trim(line);
  if (body.starts_with("{")) return parse_annotated_record(body);
  if (body.starts_with("(")) {
    AnnotatedSentence sentence =
        annotated_from_tree(parse_ptb(body), "line-" + std::to_string(line_number));
    return sentence;
  }
  throw std::invalid_argument(
      "raw text is not accepted; annotate it first with the parse helper "
      "(annotate.py --input <txt> --output <jsonl>) or pass a bracketed parse");
}

OutputRecord make_output_record(const std::string& id, const std::string& input,
                                const SimplificationResult& result,
                                const std::vector<Extraction>* extractions) {
  OutputRecord record;
  record.id = id;
  record.input = input;
  for (const CoreSentence& core : result.cores) record.cores.push_back({core.id, core.text});
  for (const ContextSentence& context : result.contexts)
    record.contexts.push_back({context.id, context.text, context.rule, context.attached_to});
  if (extractions) {
    record.extractions.emplace();
    for (const Extraction& e : *extractions) {
      ExtractionRecord x;
      x.predicate = e.predicate.text;
      x.subject = e.subject.text;
      if (e.object) x.object = e.object->text;
      x.layer = e.layer_name();
      x.attached_to = e.attached_to;
      record.extractions->push_back(std::move(x));
    }
  }
  return record;
}

std::string render_output_record(const OutputRecord& record) {
  ojson j;
  j["id"] = record.id;
  j["input"] = record.input;
  if (record.error) {
    j["error"] = *record.error;
    return j.dump();
  }
  j["cores"] = ojson::array();
  for (const CoreRecord& core : record.cores) j["cores"].push_back({{"id", core.id}, {"text", core.text}});
  j["contexts"] = ojson::array();
  for (const ContextRecord& c : record.contexts)
    j["contexts"].push_back(
        {{"id", c.id}, {"text", c.text}, {"rule", c.rule}, {"attachedTo", c.attached_to}});
  if (record.extractions) {
    j["extractions"] = ojson::array();
    for (const ExtractionRecord& x : *record.extractions)
      j["extractions"].push_back({{"predicate", x.predicate},
                                  {"subject", x.subject},
                                  {"object", optional_string(x.object)},
                                  {"layer", x.layer},
                                  {"attachedTo", optional_string(x.attached_to)}});
  }
  return j.dump();
}

OutputRecord parse_output_record(std::string_view line) {
  ojson j = ojson::parse(line);
  OutputRecord record;
  record.id = j.at("id").get<std::string>();
  record.input = j.at("input").get<std::string>();
  record.error = read_optional(j, "error");
  if (record.error) return record;
  for (const ojson& c : j.at("cores"))
    record.cores.push_back({c.at("id").get<std::string>(), c.at("text").get<std::string>()});
  for (const ojson& c : j.at("contexts"))
    record.contexts.push_back({c.at("id").get<std::string>(), c.at("text").get<std::string>(),
                               c.at("rule").get<std::string>(),
                               c.at("attachedTo").get<std::string>()});
  if (auto it = j.find("extractions"); it != j.end()) {
    record.extractions.emplace();
    for (const ojson& x : *it)
      record.extractions->push_back({x.at("predicate").get<std::string>(),
                                     x.at("subject").get<std::string>(), read_optional(x, "object"),
                                     x.at("layer").get<std::string>(),
                                     read_optional(x, "attachedTo")});
  }
  return record;
}

std::string emit_record(const std::string& id, const std::string& input,
                        const SimplificationResult& result,
                        const std::vector<Extraction>* extractions) {
  return render_output_record(make_output_record(id, input, result, extractions));
}

RunSummary run_stream(std::istream& in, std::ostream& out, const Catalog& catalog,
                      const PipelineConfig& config, std::ostream& diagnostics) {
  RunSummary summary;
  struct Done {
    std::string line;
    bool failed = false;
    std::string note;
  };
  auto finish = [&](Done done) {
    out << done.line << '\n';
    ++summary.records;
    if (done.failed) ++summary.failures;
    if (!done.note.empty()) diagnostics << "warning: " << done.note << '\n';
  };
  auto work = [&catalog, &config](Job job) {
    Done done;
    done.line = process(job, catalog, config, done.failed, done.note);
    return done;
  };

  // Bounded window of in-flight sentences, drained in input order.
  std::deque<std::future<Done>> window;
  std::size_t limit = config.jobs * 4;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    Job job{line, std::move(text)};
    if (config.jobs <= 1) {
      finish(work(std::move(job)));
      continue;
    }
    window.push_back(std::async(std::launch::async, work, std::move(job)));
    if (window.size() >= limit) {
      finish(window.front().get());
      window.pop_front();
    }
  }
  while (!window.empty()) {
    finish(window.front().get());
    window.pop_front();
  }
  out.flush();
  summary.exit_code =
      summary.records > 0 && summary.failures == summary.records ? kExitFailure : kExitSuccess;
  return summary;
}

RunSummary run(const PipelineConfig& config, std::ostream& console, std::ostream& diagnostics) {
  RunSummary failure;
  try {
    validate_config(config);

    Catalog catalog;
    try {
      catalog = config.catalog_path ? load_catalog_file(*config.catalog_path) : default_catalog();
    } catch (const CatalogError& e) {
      throw PipelineError(PipelineError::Kind::kCatalog, std::string("catalog error: ") + e.what());
    }

    std::ifstream file;
    std::istringstream inline_input;
    std::istream* in = &inline_input;
    if (config.input_path) {
      file.open(*config.input_path);
      if (!file)
        throw PipelineError(PipelineError::Kind::kInputUnreadable,
                            "cannot read input file " + config.input_path->string());
      in = &file;
    } else {
      std::string one_line = *config.sentence;
      std::replace(one_line.begin(), one_line.end(), '\n', ' ');
      inline_input.str(one_line);
    }

    std::ofstream out_file;
    std::ostream* out = &console;
    if (config.output_path) {
      out_file.open(*config.output_path, std::ios::binary);
      if (!out_file)
        throw PipelineError(PipelineError::Kind::kOutputUnwritable,
                            "cannot write output file " + config.output_path->string());
      out = &out_file;
    }

    RunSummary summary = run_stream(*in, *out, catalog, config, diagnostics);
    if (config.output_path && !out_file)
      throw PipelineError(PipelineError::Kind::kOutputUnwritable,
                          "writing " + config.output_path->string() + " failed");
    if (summary.exit_code != kExitSuccess)
      diagnostics << "error: all " << summary.records << " sentence(s) failed\n";
    return summary;
  } catch (const PipelineError& e) {
    diagnostics << "error: " << e.what() << '\n';
    failure.exit_code = e.exit_code();
    return failure;
  }
}

}  // namespace disembed
