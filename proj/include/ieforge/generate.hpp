#pragma once

// Batched instruction generation and per-dataset records.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ieforge/errors.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"
#include "ieforge/rng.hpp"
#include "ieforge/schema.hpp"
#include "ieforge/text.hpp"

namespace ieforge {

enum class GenerationMode { HardNegative, TraditionalFullSchema };

inline GenerationMode parse_generation_mode(std::string_view s) {
  if (s == "hard_negative") return GenerationMode::HardNegative;
  if (s == "traditional" || s == "traditional_full_schema") return GenerationMode::TraditionalFullSchema;
  throw ConfigError("unknown generation mode '" + std::string(s) + "' (expected hard_negative or traditional)");
}

inline std::string_view to_string(GenerationMode m) {
  return m == GenerationMode::HardNegative ? "hard_negative" : "traditional";
}

inline const std::map<TaskKind, std::string>& default_english_templates() {
  static const std::map<TaskKind, std::string> templates = {
      {TaskKind::NER,
       "You are an expert in named entity recognition. Please extract entities that match the schema definition "
       "from the input. Return an empty list if the entity type does not exist. Please respond in the format of a "
       "JSON string."},
      {TaskKind::RE,
       "You are an expert in relationship extraction. Please extract relationship triples that match the schema "
       "definition from the input. Return an empty list for relationships that do not exist. Please respond in the "
       "format of a JSON string."},
      {TaskKind::EE,
       "You are an expert in event extraction. Please extract events from the input that conform to the schema "
       "definition. Return an empty list for events that do not exist, and return NAN for arguments that do not "
       "exist. If an argument has multiple values, please return a list. Respond in the format of a JSON string."},
  };
  return templates;
}

struct GenerationConfig {
  std::map<TaskKind, std::size_t> split_num = {{TaskKind::NER, 6}, {TaskKind::RE, 4}, {TaskKind::EE, 4}};
  GenerationMode mode = GenerationMode::HardNegative;
  /// Task descriptions keyed by (task, language). English defaults are
  /// bundled; other languages must be configured.
  std::map<std::pair<TaskKind, Language>, std::string> templates = [] {
    std::map<std::pair<TaskKind, Language>, std::string> t;
    for (const auto& [task, text] : default_english_templates()) t[{task, Language::En}] = text;
    return t;
  }();

  std::size_t split_num_for(TaskKind task) const {
    const auto it = split_num.find(task);
    if (it == split_num.end()) throw ConfigError("no split_num for task " + std::string(to_string(task)));
    return it->second;
  }

  const std::string& template_for(TaskKind task, Language lang) const {
    const auto it = templates.find({task, lang});
    if (it == templates.end() || it->second.empty())
      throw TemplateError("no task description template for " + std::string(to_string(task)) + "/" +
                          std::string(to_string(lang)));
    return it->second;
  }

  void validate() const {
    for (const auto& [task, n] : split_num) {
      if (n < 1) throw ConfigError("split_num for " + std::string(to_string(task)) + " must be at least 1");
    }
    for (const auto& [key, text] : templates) {
      if (text.empty()) throw ConfigError("empty template for " + std::string(to_string(key.first)));
    }
  }
};

/// Allowed batch sizes [split_num/2, split_num + split_num/2] (integer halves).
inline std::pair<std::size_t, std::size_t> batch_size_range(std::size_t split_num) {
  return {split_num / 2, split_num + split_num / 2};
}

/// Cuts the pool into consecutive chunks of split_num. A final chunk smaller
/// than split_num/2 is folded into the previous chunk. Concatenating the
/// result gives back the pool.
template <typename T>
std::vector<std::vector<T>> split_batches(std::span<const T> pool, std::size_t split_num) {
  if (split_num < 1) throw ConfigError("split_num must be at least 1");
  std::vector<std::vector<T>> batches;
  for (std::size_t begin = 0; begin < pool.size(); begin += split_num) {
    const std::size_t end = std::min(pool.size(), begin + split_num);
    batches.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(begin),
                         pool.begin() + static_cast<std::ptrdiff_t>(end));
  }
  if (batches.size() >= 2 && batches.back().size() < split_num / 2) {
    auto tail = std::move(batches.back());
    batches.pop_back();
    batches.back().insert(batches.back().end(), tail.begin(), tail.end());
  }
  return batches;
}

template <typename T>
std::vector<std::vector<T>> split_batches(const std::vector<T>& pool, std::size_t split_num) {
  return split_batches(std::span<const T>(pool), split_num);
}

/// Serialized instruction: {"instruction": ..., "schema": [...], "input": ...}.
/// EE schemas are rendered as event_type/trigger/arguments objects.
inline std::string render_instruction(const LabelSet& labels, Language language, std::span<const std::string> batch,
                                      std::string_view input, const GenerationConfig& config) {
  if (batch.empty()) throw ConfigError("cannot render an instruction for an empty schema batch");
  Json schema = Json::array();
  for (const auto& label : batch) {
    if (labels.task() == TaskKind::EE) {
      const EventSchema* e = labels.find_event(label);
      if (e == nullptr) throw ConfigError("event type '" + label + "' is not in the label set");
      schema.push_back(event_schema_to_json(*e));
    } else {
      schema.push_back(label);
    }
  }
  Json payload = Json::object();
  payload["instruction"] = config.template_for(labels.task(), language);
  payload["schema"] = std::move(schema);
  payload["input"] = std::string(input);
  return json_io::dump_canonical(payload);
}

/// Gold answer for one batch, keyed by the batch in order. Labels without
/// annotations map to []. EE roles missing from an event render as "NAN";
/// a role with several values renders as a list.
inline std::string render_output(const LabelSet& labels, std::span<const std::string> batch,
                                 const Annotations& annotations) {
  Json out = Json::object();
  for (const auto& label : batch) out[label] = Json::array();

  switch (labels.task()) {
    case TaskKind::NER:
      for (const auto& m : annotations.entities) {
        if (const auto it = out.find(m.type); it != out.end()) it->push_back(m.text);
      }
      break;
    case TaskKind::RE:
      for (const auto& t : annotations.relations) {
        if (const auto it = out.find(t.relation); it != out.end()) it->push_back({{"head", t.head}, {"tail", t.tail}});
      }
      break;
    case TaskKind::EE:
      for (const auto& e : annotations.events) {
        const auto it = out.find(e.event_type);
        if (it == out.end()) continue;
        const EventSchema* schema = labels.find_event(e.event_type);
        Json event = Json::object();
        if (schema == nullptr || schema->trigger) event["trigger"] = e.trigger;
        Json args = Json::object();
        const std::vector<std::string> no_roles;
        for (const auto& role : schema ? schema->arguments : no_roles) {
          const auto found = std::find_if(e.arguments.begin(), e.arguments.end(),
                                          [&](const EventArgument& a) { return a.role == role; });
          if (found == e.arguments.end() || found->values.empty()) {
            args[role] = std::string(kMissingArgument);
          } else if (found->values.size() == 1) {
            args[role] = found->values.front();
          } else {
            args[role] = found->values;
          }
        }
        event["arguments"] = std::move(args);
        it->push_back(std::move(event));
      }
      break;
  }
  return json_io::dump_canonical(out);
}

/// Generates every instruction instance of one sample. Hard-negative mode
/// batches the sample's assembled pool; traditional mode batches the whole
/// label set in declared order.
inline std::vector<InstructionInstance> generate_instances(const UnifiedSample& sample, const LabelSet& labels,
                                                           const HardNegativeDictionary& dict,
                                                           const GenerationConfig& config, RngStream& rng) {
  const std::size_t split_num = config.split_num_for(sample.task);
  std::vector<std::string> pool;
  if (config.mode == GenerationMode::HardNegative) {
    pool = assemble_schema_pool(sample, labels, dict, split_num, rng).pool;
  } else {
    pool = labels.labels();
  }

  std::vector<InstructionInstance> out;
  std::size_t index = 0;
  for (auto& batch : split_batches(pool, split_num)) {
    InstructionInstance inst;
    inst.dataset_name = sample.dataset;
    inst.sample_id = sample.id;
    inst.split = sample.split;
    inst.task = sample.task;
    inst.language = sample.language;
    inst.instruction_payload = render_instruction(labels, sample.language, batch, sample.text, config);
    inst.output_payload = render_output(labels, batch, sample.annotations);
    inst.schema_batch = std::move(batch);
    inst.batch_index = index++;
    out.push_back(std::move(inst));
  }
  return out;
}

/// Corpus line: exactly {"instruction", "output"}, both holding payload text.
inline Json corpus_line(const InstructionInstance& inst) {
  return Json{{"instruction", inst.instruction_payload}, {"output", inst.output_payload}};
}

/// Sidecar line aligned with the corpus line of the same position.
inline Json metadata_line(const InstructionInstance& inst) {
  return Json{{"dataset", inst.dataset_name},     {"sample_id", inst.sample_id},
              {"split", to_string(inst.split)},   {"batch_index", inst.batch_index},
              {"task", to_string(inst.task)},     {"language", to_string(inst.language)},
              {"schema", inst.schema_batch}};
}

using TokenCounter = std::function<std::size_t(std::string_view)>;

/// Each maximal run of non-space, non-CJK characters is one token; each CJK
/// character is one token.
inline std::size_t default_token_count(std::string_view s) {
  std::size_t count = 0;
  bool in_run = false;
  for (const char32_t cp : text::decode(s)) {
    if (text::is_space(cp)) {
      in_run = false;
    } else if (text::is_cjk(cp)) {
      in_run = false;
      ++count;
    } else if (!in_run) {
      in_run = true;
      ++count;
    }
  }
  return count;
}

inline std::size_t count_tokens(std::span<const std::string> payloads, const TokenCounter& counter = default_token_count) {
  std::size_t total = 0;
  for (const auto& p : payloads) total += counter(p);
  return total;
}

struct RecordInputs {
  std::string dataset_name;
  std::string domain;
  Language language = Language::En;
  const LabelSet* labels = nullptr;
  std::span<const UnifiedSample> samples;
  std::span<const InstructionInstance> instances;
};

inline DatasetRecord build_dataset_record(const RecordInputs& in, const GenerationConfig& config,
                                          const TokenCounter& counter = default_token_count) {
  if (in.labels == nullptr) throw ConfigError("dataset record needs a label set");
  DatasetRecord r;
  r.dataset_name = in.dataset_name;
  r.domain = in.domain;
  r.task = in.labels->task();
  r.language = in.language;
  r.schema_count = in.labels->size();
  r.schema_details = label_set_to_json(*in.labels);
  r.sample_count = in.samples.size();
  for (const auto split : kAllSplits) r.split_sample_counts[std::string(to_string(split))] = 0;
  for (const auto& s : in.samples) ++r.split_sample_counts[std::string(to_string(s.split))];
  r.split_num = config.split_num_for(r.task);
  r.histogram_range = batch_size_range(r.split_num);
  r.instruction_count = in.instances.size();
  std::vector<std::string> payloads;
  payloads.reserve(in.instances.size() * 2);
  for (const auto& inst : in.instances) {
    ++r.split_size_histogram[inst.schema_batch.size()];
    payloads.push_back(inst.instruction_payload);
    payloads.push_back(inst.output_payload);
  }
  r.token_count = count_tokens(payloads, counter);
  return r;
}

}  // namespace ieforge
