#pragma once

// Adapters that map raw dataset files onto UnifiedSample. An adapter is a
// declarative description: input format, task, language, field paths, and an
// optional raw-label -> schema-label map.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ieforge/errors.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"

namespace ieforge {

enum class InputFormat {
  Unified,  // interchange records, one per line
  Jsonl,    // arbitrary objects, fields located by dotted paths
  Conll,    // token/tag columns, blank line between sentences
};

struct FieldPaths {
  std::string id;  // empty: ids are generated as "<split>-<index>"
  std::string text = "text";
  /// When set, this field already holds annotations in the unified shape.
  std::string annotations;
  // NER: list of {type, text} objects.
  std::string entities = "entities";
  std::string entity_type = "type";
  std::string entity_text = "text";
  // RE: list of {relation, head, tail} objects.
  std::string relations = "relations";
  std::string relation = "relation";
  std::string head = "head";
  std::string tail = "tail";
  // EE: list of {event_type, trigger, arguments: [{role, text}]} objects.
  std::string events = "events";
  std::string event_type = "event_type";
  std::string trigger = "trigger";
  std::string arguments = "arguments";
  std::string argument_role = "role";
  std::string argument_text = "text";
};

struct AdapterDescriptor {
  InputFormat format = InputFormat::Unified;
  TaskKind task = TaskKind::NER;
  Language language = Language::En;
  FieldPaths fields;
  int conll_token_column = 0;
  int conll_tag_column = -1;  // negative counts from the last column
  std::map<std::string, std::string> label_map;

  std::string map_label(const std::string& raw) const {
    const auto it = label_map.find(raw);
    return it == label_map.end() ? raw : it->second;
  }
};

struct UnifyContext {
  std::string dataset;
  Split split = Split::Train;
  const LabelSet* labels = nullptr;
};

struct AdapterIssue {
  std::size_t record_index;
  std::string message;
};

struct UnifyResult {
  std::vector<UnifiedSample> samples;
  std::vector<AdapterIssue> skipped;
};

inline InputFormat parse_input_format(std::string_view s) {
  if (s == "unified") return InputFormat::Unified;
  if (s == "jsonl") return InputFormat::Jsonl;
  if (s == "conll") return InputFormat::Conll;
  throw ConfigError("unknown adapter format '" + std::string(s) + "' (expected unified, jsonl or conll)");
}

inline AdapterDescriptor adapter_from_json(const Json& j, TaskKind task, Language language) {
  AdapterDescriptor a;
  a.task = task;
  a.language = language;
  if (j.is_null()) return a;
  if (!j.is_object()) throw ConfigError("adapter must be an object");
  a.format = parse_input_format(j.value("format", std::string("unified")));
  if (const auto f = j.find("fields"); f != j.end()) {
    auto& p = a.fields;
    auto take = [&](const char* key, std::string& dst) {
      if (const auto it = f->find(key); it != f->end()) dst = it->get<std::string>();
    };
    take("id", p.id);
    take("text", p.text);
    take("annotations", p.annotations);
    take("entities", p.entities);
    take("entity_type", p.entity_type);
    take("entity_text", p.entity_text);
    take("relations", p.relations);
    take("relation", p.relation);
    take("head", p.head);
    take("tail", p.tail);
    take("events", p.events);
    take("event_type", p.event_type);
    take("trigger", p.trigger);
    take("arguments", p.arguments);
    take("argument_role", p.argument_role);
    take("argument_text", p.argument_text);
  }
  a.conll_token_column = j.value("token_column", 0);
  a.conll_tag_column = j.value("tag_column", -1);
  if (const auto m = j.find("label_map"); m != j.end()) {
    for (const auto& [raw, mapped] : m->items()) a.label_map[raw] = mapped.get<std::string>();
  }
  if (a.format == InputFormat::Conll && task != TaskKind::NER)
    throw ConfigError("conll adapter only supports NER datasets");
  return a;
}

namespace detail {

inline std::string field_string(const Json& record, const std::string& path, const char* what) {
  const Json* v = json_io::find_path(record, path);
  if (v == nullptr) throw Error(std::string("missing ") + what + " field '" + path + "'");
  if (!v->is_string()) throw Error(std::string(what) + " field '" + path + "' is not a string");
  return v->get<std::string>();
}

inline const Json& field_list(const Json& record, const std::string& path, const char* what) {
  static const Json kEmpty = Json::array();
  const Json* v = json_io::find_path(record, path);
  if (v == nullptr || v->is_null()) return kEmpty;
  if (!v->is_array()) throw Error(std::string(what) + " field '" + path + "' is not a list");
  return *v;
}

inline Annotations map_fields(const Json& record, const AdapterDescriptor& a) {
  const auto& f = a.fields;
  if (!f.annotations.empty()) {
    const Json* v = json_io::find_path(record, f.annotations);
    if (v == nullptr) throw Error("missing annotations field '" + f.annotations + "'");
    Annotations ann = annotations_from_json(a.task, *v);
    for (auto& m : ann.entities) m.type = a.map_label(m.type);
    for (auto& t : ann.relations) t.relation = a.map_label(t.relation);
    for (auto& e : ann.events) e.event_type = a.map_label(e.event_type);
    return ann;
  }
  Annotations ann;
  switch (a.task) {
    case TaskKind::NER:
      for (const auto& item : field_list(record, f.entities, "entities"))
        ann.entities.push_back({a.map_label(field_string(item, f.entity_type, "entity type")),
                                field_string(item, f.entity_text, "entity text"), std::nullopt});
      break;
    case TaskKind::RE:
      for (const auto& item : field_list(record, f.relations, "relations"))
        ann.relations.push_back({a.map_label(field_string(item, f.relation, "relation")),
                                 field_string(item, f.head, "head"), field_string(item, f.tail, "tail")});
      break;
    case TaskKind::EE:
      for (const auto& item : field_list(record, f.events, "events")) {
        EventMention ev{a.map_label(field_string(item, f.event_type, "event type")), "", {}};
        if (const Json* t = json_io::find_path(item, f.trigger); t != nullptr && t->is_string())
          ev.trigger = t->get<std::string>();
        for (const auto& arg : field_list(item, f.arguments, "arguments")) {
          const auto role = field_string(arg, f.argument_role, "argument role");
          const auto value = field_string(arg, f.argument_text, "argument text");
          auto it = std::find_if(ev.arguments.begin(), ev.arguments.end(),
                                 [&](const EventArgument& x) { return x.role == role; });
          if (it == ev.arguments.end()) {
            ev.arguments.push_back({role, {value}});
          } else {
            it->values.push_back(value);
          }
        }
        ann.events.push_back(std::move(ev));
      }
      break;
  }
  return ann;
}

/// Canonicalizes and validates; returns an error message when the sample
/// must be skipped.
inline std::optional<std::string> admit(UnifiedSample& sample, const UnifyContext& ctx) {
  sample.annotations = canonicalize(sample.annotations);
  if (ctx.labels == nullptr) return std::nullopt;
  const auto violations = validate_sample(sample, *ctx.labels);
  if (violations.empty()) return std::nullopt;
  std::string msg;
  for (const auto& v : violations) {
    if (!msg.empty()) msg += "; ";
    msg += std::string(to_string(v.kind)) + ": " + v.detail;
  }
  return msg;
}

inline std::string generated_id(Split split, std::size_t index) {
  return std::string(to_string(split)) + "-" + std::to_string(index);
}

}  // namespace detail

namespace detail {

/// positions[i] is the record's index in its source file; it keys generated
/// ids and skip reports.
inline UnifyResult unify_at(std::span<const Json> records, std::span<const std::size_t> positions,
                            const AdapterDescriptor& adapter, const UnifyContext& ctx) {
  if (adapter.format == InputFormat::Conll) throw ConfigError("conll input must go through unify_conll");
  UnifyResult result;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Json& record = records[i];
    const std::size_t at = positions[i];
    try {
      UnifiedSample s;
      if (adapter.format == InputFormat::Unified) {
        s = sample_from_json(record);
        if (s.dataset != ctx.dataset) throw Error("dataset '" + s.dataset + "' does not match '" + ctx.dataset + "'");
        if (s.task != adapter.task) throw Error("task " + std::string(to_string(s.task)) + " does not match dataset");
        if (s.split != ctx.split)
          throw Error("split '" + std::string(to_string(s.split)) + "' found in " + std::string(to_string(ctx.split)) +
                      " input");
        for (auto& m : s.annotations.entities) m.type = adapter.map_label(m.type);
        for (auto& t : s.annotations.relations) t.relation = adapter.map_label(t.relation);
        for (auto& e : s.annotations.events) e.event_type = adapter.map_label(e.event_type);
      } else {
        if (!record.is_object()) throw Error("record is not an object");
        s.id = adapter.fields.id.empty() ? generated_id(ctx.split, at) : field_string(record, adapter.fields.id, "id");
        s.dataset = ctx.dataset;
        s.split = ctx.split;
        s.language = adapter.language;
        s.task = adapter.task;
        s.text = field_string(record, adapter.fields.text, "text");
        s.annotations = map_fields(record, adapter);
      }
      if (auto problem = admit(s, ctx)) throw Error(*problem);
      result.samples.push_back(std::move(s));
    } catch (const Error& e) {
      result.skipped.push_back({at, e.what()});
    } catch (const Json::exception& e) {
      result.skipped.push_back({at, e.what()});
    }
  }
  return result;
}

}  // namespace detail

/// Maps JSON records (unified or field-mapped) onto samples. Unmappable or
/// invalid records are skipped and reported with their index; input order
/// is preserved.
inline UnifyResult unify(std::span<const Json> records, const AdapterDescriptor& adapter, const UnifyContext& ctx) {
  std::vector<std::size_t> positions(records.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  return detail::unify_at(records, positions, adapter, ctx);
}

/// Decodes CoNLL-style token/tag rows (BIO, IOB1, or BIOES tags) into NER
/// samples, one per blank-line separated sentence. Tokens are joined by a
/// single space; mention offsets are code-point offsets into that text.
inline UnifyResult unify_conll(std::string_view content, const AdapterDescriptor& adapter, const UnifyContext& ctx) {
  UnifyResult result;
  std::vector<std::pair<std::string, std::string>> rows;
  std::size_t sentence_index = 0;
  std::optional<std::string> row_error;

  auto flush = [&]() {
    if (rows.empty() && !row_error) return;
    const std::size_t index = sentence_index++;
    if (row_error) {
      result.skipped.push_back({index, *row_error});
      row_error.reset();
      rows.clear();
      return;
    }
    UnifiedSample s;
    s.id = detail::generated_id(ctx.split, index);
    s.dataset = ctx.dataset;
    s.split = ctx.split;
    s.language = adapter.language;
    s.task = TaskKind::NER;

    std::size_t cursor = 0;  // code points
    std::string open_type;
    std::vector<std::string> open_tokens;
    std::size_t open_start = 0;
    auto close = [&]() {
      if (open_type.empty()) return;
      std::string mention;
      for (std::size_t k = 0; k < open_tokens.size(); ++k) {
        if (k > 0) mention.push_back(' ');
        mention += open_tokens[k];
      }
      const std::size_t end = open_start + text::codepoint_count(mention);
      s.annotations.entities.push_back({adapter.map_label(open_type), mention, std::make_pair(open_start, end)});
      open_type.clear();
      open_tokens.clear();
    };

    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& [token, tag] = rows[k];
      if (k > 0) {
        s.text.push_back(' ');
        ++cursor;
      }
      const std::size_t start = cursor;
      s.text += token;
      cursor += text::codepoint_count(token);

      const char prefix = tag.size() >= 2 && tag[1] == '-' ? tag[0] : 'O';
      const std::string type = prefix == 'O' ? "" : tag.substr(2);
      const bool begins = prefix == 'B' || prefix == 'S' || prefix == 'U' || type != open_type;
      if (prefix == 'O') {
        close();
        continue;
      }
      if (begins) {
        close();
        open_type = type;
        open_start = start;
      }
      open_tokens.push_back(token);
      if (prefix == 'E' || prefix == 'L' || prefix == 'S' || prefix == 'U') close();
    }
    close();
    rows.clear();
    if (auto problem = detail::admit(s, ctx)) {
      result.skipped.push_back({index, *problem});
      return;
    }
    result.samples.push_back(std::move(s));
  };

  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cols = text::split_whitespace(line);
    if (cols.empty()) {
      flush();
      continue;
    }
    if (cols[0] == "-DOCSTART-") continue;
    const auto pick = [&](int column) -> std::optional<std::string> {
      const int n = static_cast<int>(cols.size());
      const int at = column < 0 ? n + column : column;
      if (at < 0 || at >= n) return std::nullopt;
      return cols[static_cast<std::size_t>(at)];
    };
    const auto token = pick(adapter.conll_token_column);
    const auto tag = pick(adapter.conll_tag_column);
    if (!token || !tag || cols.size() < 2) {
      if (!row_error) row_error = "row has too few columns: '" + line + "'";
      continue;
    }
    rows.emplace_back(*token, *tag);
  }
  flush();
  return result;
}

/// Reads one split file with the adapter's format.
inline UnifyResult load_split(const std::filesystem::path& path, const AdapterDescriptor& adapter,
                              const UnifyContext& ctx) {
  if (adapter.format == InputFormat::Conll) return unify_conll(json_io::read_file(path), adapter, ctx);

  std::vector<Json> records;
  std::vector<std::size_t> positions;
  std::vector<AdapterIssue> parse_issues;
  std::istringstream in(json_io::read_file(path));
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      records.push_back(Json::parse(line));
      positions.push_back(index);
    } catch (const Json::parse_error& e) {
      parse_issues.push_back({index, std::string("unparseable line: ") + e.what()});
    }
    ++index;
  }
  UnifyResult result = detail::unify_at(records, positions, adapter, ctx);
  result.skipped.insert(result.skipped.end(), parse_issues.begin(), parse_issues.end());
  std::sort(result.skipped.begin(), result.skipped.end(),
            [](const AdapterIssue& a, const AdapterIssue& b) { return a.record_index < b.record_index; });
  return result;
}

}  // namespace ieforge
