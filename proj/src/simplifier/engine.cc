#include <algorithm>

#include "disembed/simplifier.h"

namespace disembed {

namespace {

struct Disembedding {
  std::vector<ContextSentence> contexts;
  std::vector<TraceEntry> trace;  // positions local to the sentence
  std::set<std::size_t> deleted;
};

// Algorithm body: every rule in priority order contributes its matches;
// a match touching an already deleted position is skipped.
Disembedding disembed(const AnnotatedSentence& sentence, std::span<const SimplificationRule> rules,
                      const std::string& target) {
  Disembedding out;
  for (const SimplificationRule& rule : rules) {
    for (const ExtractionMatch& match : r_extract(rule, sentence)) {
      bool overlaps = std::any_of(match.positions.begin(), match.positions.end(),
                                  [&](std::size_t p) { return out.deleted.count(p) != 0; });
      if (overlaps) continue;
      ContextSentence context = r_paraphrase(rule, match, sentence);
      context.attached_to = target;
      out.contexts.push_back(std::move(context));

      TraceEntry entry;
      entry.rule = rule.name;
      entry.target = target;
      for (std::size_t p : match.positions) {
        out.deleted.insert(p);
        bool delimiter = std::binary_search(match.absorbed.begin(), match.absorbed.end(), p);
        (delimiter ? entry.absorbed : entry.positions).push_back(p);
      }
      out.trace.push_back(std::move(entry));
    }
  }
  return out;
}

std::vector<std::size_t> to_source(const std::vector<std::size_t>& local,
                                   const std::vector<std::optional<std::size_t>>& origin) {
  std::vector<std::size_t> out;
  for (std::size_t i : local)
    if (origin[i]) out.push_back(*origin[i]);
  return out;
}

}  // namespace

SimplificationResult simplify(const AnnotatedSentence& sentence, const Catalog& catalog,
                              const SimplifyConfig& config) {
  std::vector<SimplificationRule> gates;
  std::vector<SimplificationRule> rules;
  for (const SimplificationRule& rule : catalog) {
    if (!config.families.count(rule.family)) continue;
    (rule.family == RuleFamily::kClauseSplit ? gates : rules).push_back(rule);
  }

  SimplificationResult result;
  ClauseSplit split = split_clauses(sentence, gates);
  if (!split.dropped.empty())
    result.trace.push_back(TraceEntry{split.rule, "input", {}, split.dropped, false});

  std::vector<std::size_t> pending;
  for (std::size_t k = 0; k < split.clauses.size(); ++k) {
    const Clause& clause = split.clauses[k];
    std::string core_id = "core-" + std::to_string(k + 1);
    Disembedding d = disembed(clause.sentence, rules, core_id);

    CoreSentence core = reduce_core(clause.sentence, d.deleted);
    core.id = core_id;
    for (auto& source : core.source_map)
      if (source) source = clause.origin[*source];
    core.repaired = to_source(core.repaired, clause.origin);
    std::vector<std::size_t> repaired = core.repaired;
    result.cores.push_back(std::move(core));

    for (TraceEntry& entry : d.trace) {
      entry.positions = to_source(entry.positions, clause.origin);
      entry.absorbed = to_source(entry.absorbed, clause.origin);
      result.trace.push_back(std::move(entry));
    }
    // Delimiters the core repair dropped are accounted for like absorbed ones.
    if (!repaired.empty())
      result.trace.push_back(TraceEntry{"reduce_core", core_id, {}, std::move(repaired), false});
    for (ContextSentence& context : d.contexts) {
      context.id = "context-" + std::to_string(result.contexts.size() + 1);
      pending.push_back(result.contexts.size());
      result.contexts.push_back(std::move(context));
    }
  }
  result.iterations = 1;

  // Generated contexts go back through the disembedding rules until a
  // round changes nothing.
  for (std::size_t round = 2; !pending.empty(); ++round) {
    std::vector<std::size_t> next;
    for (std::size_t idx : pending) {
      AnnotatedSentence flat = re_annotate(result.contexts[idx]);
      Disembedding d = disembed(flat, rules, result.contexts[idx].id);
      if (d.contexts.empty()) continue;
      if (round > config.max_iterations) {
        result.iteration_limit_exceeded = true;
        return result;
      }
      result.iterations = round;

      CoreSentence reduced = reduce_core(flat, d.deleted);
      ContextSentence& host = result.contexts[idx];
      std::optional<std::size_t> dummy;
      for (std::size_t k = 0; k < reduced.source_map.size(); ++k)
        if (host.dummy_subject && reduced.source_map[k] == host.dummy_subject) dummy = k;
      host.dummy_subject = dummy;
      host.tokens = std::move(reduced.tokens);
      host.text = std::move(reduced.text);

      for (TraceEntry& entry : d.trace) {
        entry.nested = true;
        result.trace.push_back(std::move(entry));
      }
      for (ContextSentence& context : d.contexts) {
        context.id = "context-" + std::to_string(result.contexts.size() + 1);
        next.push_back(result.contexts.size());
        result.contexts.push_back(std::move(context));
      }
    }
    pending = std::move(next);
  }
  return result;
}

}  // namespace disembed
