#pragma once

// Shared data model: samples, label sets, schema partitions, instruction
// instances, dataset records, extraction tuples, and score reports.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ieforge/errors.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/text.hpp"

namespace ieforge {

enum class TaskKind { NER, RE, EE };
enum class Language { En, Zh };
enum class Split { Train, Val, Test };

inline constexpr std::string_view kMissingArgument = "NAN";

inline std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::NER: return "NER";
    case TaskKind::RE: return "RE";
    case TaskKind::EE: return "EE";
  }
  return "?";
}

inline std::string_view to_string(Language lang) { return lang == Language::En ? "en" : "zh"; }

inline std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

inline TaskKind parse_task(std::string_view s) {
  const std::string up = text::to_lower(s);
  if (up == "ner") return TaskKind::NER;
  if (up == "re") return TaskKind::RE;
  if (up == "ee") return TaskKind::EE;
  throw ConfigError("unknown task '" + std::string(s) + "' (expected NER, RE or EE)");
}

inline Language parse_language(std::string_view s) {
  if (s == "en") return Language::En;
  if (s == "zh") return Language::Zh;
  throw ConfigError("unknown language '" + std::string(s) + "' (expected en or zh)");
}

inline Split parse_split(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "val") return Split::Val;
  if (s == "test") return Split::Test;
  throw ConfigError("unknown split '" + std::string(s) + "' (expected train, val or test)");
}

inline constexpr Split kAllSplits[] = {Split::Train, Split::Val, Split::Test};

// ---------------------------------------------------------------------------
// Annotations

struct EntityMention {
  std::string type;
  std::string text;
  /// Character offsets are carried through untouched; nothing aligns on them.
  std::optional<std::pair<std::size_t, std::size_t>> offset;

  bool operator==(const EntityMention& o) const { return type == o.type && text == o.text; }
};

struct RelationTriple {
  std::string relation;
  std::string head;
  std::string tail;

  auto operator<=>(const RelationTriple&) const = default;
};

struct EventArgument {
  std::string role;
  std::vector<std::string> values;

  auto operator<=>(const EventArgument&) const = default;
};

struct EventMention {
  std::string event_type;
  std::string trigger;
  std::vector<EventArgument> arguments;

  auto operator<=>(const EventMention&) const = default;
};

/// Task-specific gold annotations. Only the vector matching the sample's
/// task is populated.
struct Annotations {
  std::vector<EntityMention> entities;
  std::vector<RelationTriple> relations;
  std::vector<EventMention> events;

  bool empty() const { return entities.empty() && relations.empty() && events.empty(); }
};

struct UnifiedSample {
  std::string id;
  std::string dataset;
  Split split = Split::Train;
  Language language = Language::En;
  TaskKind task = TaskKind::NER;
  std::string text;
  Annotations annotations;
};

// ---------------------------------------------------------------------------
// Schemas

struct EventSchema {
  std::string event_type;
  bool trigger = true;
  std::vector<std::string> arguments;

  bool operator==(const EventSchema&) const = default;
};

/// The predefined schema space of one dataset. For EE the label of each
/// schema is its event type.
class LabelSet {
 public:
  LabelSet() = default;

  static LabelSet of_names(TaskKind task, std::vector<std::string> names) {
    if (task == TaskKind::EE) throw ConfigError("EE label sets must be built from event schemas");
    LabelSet set;
    set.task_ = task;
    set.labels_ = std::move(names);
    set.index();
    return set;
  }

  static LabelSet of_events(std::vector<EventSchema> events) {
    LabelSet set;
    set.task_ = TaskKind::EE;
    for (const auto& e : events) {
      std::unordered_set<std::string> roles;
      for (const auto& r : e.arguments) {
        if (!roles.insert(r).second)
          throw ConfigError("duplicate role '" + r + "' in event schema '" + e.event_type + "'");
      }
      set.labels_.push_back(e.event_type);
    }
    set.events_ = std::move(events);
    set.index();
    return set;
  }

  TaskKind task() const { return task_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<EventSchema>& events() const { return events_; }
  std::size_t size() const { return labels_.size(); }
  bool contains(const std::string& label) const { return positions_.count(label) != 0; }

  /// Position of a label in the declared order; npos when absent.
  std::size_t index_of(const std::string& label) const {
    const auto it = positions_.find(label);
    return it == positions_.end() ? npos : it->second;
  }

  const EventSchema* find_event(const std::string& event_type) const {
    const auto i = index_of(event_type);
    return (task_ == TaskKind::EE && i != npos) ? &events_[i] : nullptr;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  void index() {
    if (labels_.empty()) throw ConfigError("label set is empty");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw ConfigError("label set contains an empty label");
      if (!positions_.emplace(labels_[i], i).second)
        throw ConfigError("duplicate label '" + labels_[i] + "' in label set");
    }
  }

  TaskKind task_ = TaskKind::NER;
  std::vector<std::string> labels_;
  std::vector<EventSchema> events_;
  std::unordered_map<std::string, std::size_t> positions_;
};

/// Pos_L, Hard_L, the sampled part of Other_L, and the shuffled pool L'.
struct SchemaPartition {
  std::vector<std::string> positive;
  std::vector<std::string> hard_negative;
  std::vector<std::string> other_negative_sampled;
  std::vector<std::string> pool;
};

struct InstructionInstance {
  std::string dataset_name;
  std::string sample_id;
  Split split = Split::Train;
  TaskKind task = TaskKind::NER;
  Language language = Language::En;
  std::string instruction_payload;
  std::string output_payload;
  std::vector<std::string> schema_batch;
  std::size_t batch_index = 0;
};

struct DatasetRecord {
  std::string dataset_name;
  std::string domain;
  TaskKind task = TaskKind::NER;
  Language language = Language::En;
  std::size_t schema_count = 0;
  Json schema_details = Json::array();
  std::size_t sample_count = 0;
  std::map<std::string, std::size_t> split_sample_counts;
  std::size_t split_num = 0;
  std::size_t instruction_count = 0;
  std::pair<std::size_t, std::size_t> histogram_range{0, 0};
  std::map<std::size_t, std::size_t> split_size_histogram;
  std::size_t token_count = 0;
};

// ---------------------------------------------------------------------------
// Scoring types

enum class Facet { Entity, Relation, Trigger, Argument };

inline std::string_view to_string(Facet facet) {
  switch (facet) {
    case Facet::Entity: return "entity";
    case Facet::Relation: return "relation";
    case Facet::Trigger: return "trigger";
    case Facet::Argument: return "argument";
  }
  return "?";
}

inline Facet parse_facet(std::string_view s) {
  if (s == "entity") return Facet::Entity;
  if (s == "relation") return Facet::Relation;
  if (s == "trigger") return Facet::Trigger;
  if (s == "argument") return Facet::Argument;
  throw ConfigError("unknown facet '" + std::string(s) + "'");
}

/// One scorable unit. Field meaning per facet:
///   Entity   (label=type,       first=mention)
///   Relation (label=relation,   first=head,  second=tail)
///   Trigger  (label=event type, first=trigger)
///   Argument (label=event type, first=role,  second=value)
struct ExtractionTuple {
  Facet facet = Facet::Entity;
  std::string label;
  std::string first;
  std::string second;

  auto operator<=>(const ExtractionTuple&) const = default;

  /// Normalizes every component; returns nullopt when a required component
  /// is empty after normalization or an argument value is the NAN sentinel.
  static std::optional<ExtractionTuple> make(Facet facet, std::string_view label, std::string_view first,
                                             std::string_view second = {}) {
    ExtractionTuple t{facet, text::normalize(label), text::normalize(first), text::normalize(second)};
    const bool two_part = facet == Facet::Entity || facet == Facet::Trigger;
    if (t.label.empty() || t.first.empty()) return std::nullopt;
    if (!two_part && t.second.empty()) return std::nullopt;
    if (two_part) t.second.clear();
    if (facet == Facet::Argument && t.second == kMissingArgument) return std::nullopt;
    return t;
  }
};

using TupleSet = std::set<ExtractionTuple>;

struct ScoreReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static ScoreReport from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    ScoreReport r{tp, fp, fn};
    r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
  }
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind {
    TaskMismatch,
    EmptyText,
    UnknownLabel,
    UnknownRole,
    EmptyComponent,
    DuplicateMention,
    DuplicateTriple,
    DuplicateEvent,
  };
  Kind kind;
  std::string detail;
};

inline std::string_view to_string(Violation::Kind kind) {
  using K = Violation::Kind;
  switch (kind) {
    case K::TaskMismatch: return "task_mismatch";
    case K::EmptyText: return "empty_text";
    case K::UnknownLabel: return "unknown_label";
    case K::UnknownRole: return "unknown_role";
    case K::EmptyComponent: return "empty_component";
    case K::DuplicateMention: return "duplicate_mention";
    case K::DuplicateTriple: return "duplicate_triple";
    case K::DuplicateEvent: return "duplicate_event";
  }
  return "?";
}

/// Collects every invariant violation of a sample against its label set.
/// An empty result means the sample is valid.
inline std::vector<Violation> validate_sample(const UnifiedSample& sample, const LabelSet& labels) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  auto add = [&](K kind, std::string detail) { out.push_back({kind, std::move(detail)}); };
  auto blank = [](const std::string& s) { return text::normalize(s).empty(); };

  if (sample.task != labels.task()) {
    add(K::TaskMismatch, "sample task " + std::string(to_string(sample.task)) + " vs label set task " +
                             std::string(to_string(labels.task())));
    return out;
  }
  if (blank(sample.text)) add(K::EmptyText, "text is empty");

  const auto& ann = sample.annotations;
  switch (sample.task) {
    case TaskKind::NER: {
      std::set<std::pair<std::string, std::string>> seen;
      for (const auto& m : ann.entities) {
        if (!labels.contains(m.type)) add(K::UnknownLabel, "entity type '" + m.type + "'");
        if (blank(m.text)) add(K::EmptyComponent, "empty mention of type '" + m.type + "'");
        if (!seen.emplace(m.type, text::normalize(m.text)).second)
          add(K::DuplicateMention, "(" + m.type + ", " + m.text + ")");
      }
      break;
    }
    case TaskKind::RE: {
      std::set<RelationTriple> seen;
      for (const auto& t : ann.relations) {
        if (!labels.contains(t.relation)) add(K::UnknownLabel, "relation '" + t.relation + "'");
        if (blank(t.head)) add(K::EmptyComponent, "empty head in relation '" + t.relation + "'");
        if (blank(t.tail)) add(K::EmptyComponent, "empty tail in relation '" + t.relation + "'");
        const RelationTriple key{t.relation, text::normalize(t.head), text::normalize(t.tail)};
        if (!seen.insert(key).second)
          add(K::DuplicateTriple, "(" + t.relation + ", " + t.head + ", " + t.tail + ")");
      }
      break;
    }
    case TaskKind::EE: {
      std::set<EventMention> seen;
      for (const auto& e : ann.events) {
        const EventSchema* schema = labels.find_event(e.event_type);
        if (schema == nullptr) {
          add(K::UnknownLabel, "event type '" + e.event_type + "'");
        } else {
          if (schema->trigger && blank(e.trigger))
            add(K::EmptyComponent, "empty trigger for event '" + e.event_type + "'");
          std::set<std::string> roles_seen;
          for (const auto& a : e.arguments) {
            if (std::find(schema->arguments.begin(), schema->arguments.end(), a.role) == schema->arguments.end())
              add(K::UnknownRole, "role '" + a.role + "' of event '" + e.event_type + "'");
            if (!roles_seen.insert(a.role).second)
              add(K::DuplicateMention, "role '" + a.role + "' repeated in event '" + e.event_type + "'");
            for (const auto& v : a.values) {
              if (blank(v)) add(K::EmptyComponent, "empty value for role '" + a.role + "'");
            }
          }
        }
        if (!seen.insert(e).second) add(K::DuplicateEvent, "event '" + e.event_type + "' repeated");
      }
      break;
    }
  }
  return out;
}

/// Distinct labels occurring in the annotations, in first-occurrence order.
inline std::vector<std::string> positive_labels(const UnifiedSample& sample) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& l) {
    if (seen.insert(l).second) out.push_back(l);
  };
  for (const auto& m : sample.annotations.entities) add(m.type);
  for (const auto& t : sample.annotations.relations) add(t.relation);
  for (const auto& e : sample.annotations.events) add(e.event_type);
  return out;
}

/// Normalizes annotation texts, drops NAN/empty argument values and empty
/// roles, and collapses duplicates while keeping first-occurrence order.
inline Annotations canonicalize(const Annotations& in) {
  Annotations out;
  std::set<std::pair<std::string, std::string>> mention_seen;
  for (const auto& m : in.entities) {
    EntityMention c{m.type, text::normalize(m.text), m.offset};
    if (mention_seen.emplace(c.type, c.text).second) out.entities.push_back(std::move(c));
  }
  std::set<RelationTriple> triple_seen;
  for (const auto& t : in.relations) {
    RelationTriple c{t.relation, text::normalize(t.head), text::normalize(t.tail)};
    if (triple_seen.insert(c).second) out.relations.push_back(std::move(c));
  }
  std::set<EventMention> event_seen;
  for (const auto& e : in.events) {
    EventMention c{e.event_type, text::normalize(e.trigger), {}};
    for (const auto& a : e.arguments) {
      EventArgument arg{a.role, {}};
      for (const auto& v : a.values) {
        auto n = text::normalize(v);
        if (n.empty() || n == kMissingArgument) continue;
        if (std::find(arg.values.begin(), arg.values.end(), n) == arg.values.end()) arg.values.push_back(std::move(n));
      }
      if (arg.values.empty()) continue;
      auto existing = std::find_if(c.arguments.begin(), c.arguments.end(),
                                   [&](const EventArgument& x) { return x.role == arg.role; });
      if (existing == c.arguments.end()) {
        c.arguments.push_back(std::move(arg));
      } else {
        for (auto& v : arg.values) {
          if (std::find(existing->values.begin(), existing->values.end(), v) == existing->values.end())
            existing->values.push_back(std::move(v));
        }
      }
    }
    if (event_seen.insert(c).second) out.events.push_back(std::move(c));
  }
  return out;
}

/// Order-insensitive identity of an annotation set, used to decide whether
/// two copies of a text are consistently annotated.
inline std::string annotation_key(const Annotations& raw) {
  const Annotations a = canonicalize(raw);
  std::vector<std::string> parts;
  for (const auto& m : a.entities) parts.push_back(json_io::dump_canonical(Json::array({"E", m.type, m.text})));
  for (const auto& t : a.relations)
    parts.push_back(json_io::dump_canonical(Json::array({"R", t.relation, t.head, t.tail})));
  for (const auto& e : a.events) {
    std::vector<std::string> args;
    for (const auto& arg : e.arguments) {
      auto values = arg.values;
      std::sort(values.begin(), values.end());
      args.push_back(json_io::dump_canonical(Json{{arg.role, values}}));
    }
    std::sort(args.begin(), args.end());
    parts.push_back(json_io::dump_canonical(Json::array({"V", e.event_type, e.trigger, args})));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) {
    key += p;
    key.push_back('\n');
  }
  return key;
}

// ---------------------------------------------------------------------------
// Interchange format: one JSON object per line with fields
// {id, dataset, split, language, task, text, annotations}.

inline Json annotations_to_json(TaskKind task, const Annotations& a) {
  switch (task) {
    case TaskKind::NER: {
      Json obj = Json::object();
      for (const auto& m : a.entities) {
        Json mention = m.text;
        if (m.offset) mention = Json{{"text", m.text}, {"offset", {m.offset->first, m.offset->second}}};
        obj[m.type].push_back(std::move(mention));
      }
      return obj;
    }
    case TaskKind::RE: {
      Json arr = Json::array();
      for (const auto& t : a.relations) arr.push_back({{"relation", t.relation}, {"head", t.head}, {"tail", t.tail}});
      return arr;
    }
    case TaskKind::EE: {
      Json arr = Json::array();
      for (const auto& e : a.events) {
        Json args = Json::object();
        for (const auto& arg : e.arguments) args[arg.role] = arg.values;
        arr.push_back({{"event_type", e.event_type}, {"trigger", e.trigger}, {"arguments", std::move(args)}});
      }
      return arr;
    }
  }
  return nullptr;
}

namespace detail {

inline const std::string& require_string(const Json& obj, const char* key, const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw FormatError(std::string(where) + ": field '" + key + "' missing or not a string");
  return it->get_ref<const std::string&>();
}

inline std::vector<std::string> string_or_list(const Json& v, const std::string& where) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) throw FormatError(where + ": expected a string or a list of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw FormatError(where + ": expected a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline Annotations annotations_from_json(TaskKind task, const Json& j) {
  Annotations a;
  switch (task) {
    case TaskKind::NER: {
      if (!j.is_object()) throw FormatError("NER annotations must map entity type to mentions");
      for (const auto& [type, mentions] : j.items()) {
        if (!mentions.is_array()) throw FormatError("mentions of '" + type + "' must be a list");
        for (const auto& m : mentions) {
          if (m.is_string()) {
            a.entities.push_back({type, m.get<std::string>(), std::nullopt});
          } else if (m.is_object()) {
            EntityMention em{type, detail::require_string(m, "text", "mention"), std::nullopt};
            if (const auto off = m.find("offset"); off != m.end()) {
              if (!off->is_array() || off->size() != 2) throw FormatError("mention offset must be [start, end]");
              em.offset = std::make_pair((*off)[0].get<std::size_t>(), (*off)[1].get<std::size_t>());
            }
            a.entities.push_back(std::move(em));
          } else {
            throw FormatError("mention of '" + type + "' must be a string or object");
          }
        }
      }
      break;
    }
    case TaskKind::RE: {
      if (!j.is_array()) throw FormatError("RE annotations must be a list of triples");
      for (const auto& t : j) {
        if (!t.is_object()) throw FormatError("relation triple must be an object");
        a.relations.push_back({detail::require_string(t, "relation", "triple"), detail::require_string(t, "head", "triple"),
                               detail::require_string(t, "tail", "triple")});
      }
      break;
    }
    case TaskKind::EE: {
      if (!j.is_array()) throw FormatError("EE annotations must be a list of events");
      for (const auto& e : j) {
        if (!e.is_object()) throw FormatError("event must be an object");
        EventMention ev{detail::require_string(e, "event_type", "event"), "", {}};
        if (const auto trig = e.find("trigger"); trig != e.end() && !trig->is_null()) {
          if (!trig->is_string()) throw FormatError("event trigger must be a string");
          ev.trigger = trig->get<std::string>();
        }
        if (const auto args = e.find("arguments"); args != e.end() && !args->is_null()) {
          if (!args->is_object()) throw FormatError("event arguments must map role to values");
          for (const auto& [role, values] : args->items())
            ev.arguments.push_back({role, detail::string_or_list(values, "role '" + role + "'")});
        }
        a.events.push_back(std::move(ev));
      }
      break;
    }
  }
  return a;
}

inline Json sample_to_json(const UnifiedSample& s) {
  return Json{{"id", s.id},
              {"dataset", s.dataset},
              {"split", to_string(s.split)},
              {"language", to_string(s.language)},
              {"task", to_string(s.task)},
              {"text", s.text},
              {"annotations", annotations_to_json(s.task, s.annotations)}};
}

inline UnifiedSample sample_from_json(const Json& j) {
  static const std::set<std::string> kFields = {"id", "dataset", "split", "language", "task", "text", "annotations"};
  if (!j.is_object()) throw FormatError("sample must be an object");
  for (const auto& [key, _] : j.items()) {
    if (kFields.count(key) == 0) throw FormatError("unexpected sample field '" + key + "'");
  }
  if (!j.contains("annotations")) throw FormatError("sample: field 'annotations' missing");
  UnifiedSample s;
  try {
    s.id = detail::require_string(j, "id", "sample");
    s.dataset = detail::require_string(j, "dataset", "sample");
    s.split = parse_split(detail::require_string(j, "split", "sample"));
    s.language = parse_language(detail::require_string(j, "language", "sample"));
    s.task = parse_task(detail::require_string(j, "task", "sample"));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
  s.text = detail::require_string(j, "text", "sample");
  s.annotations = annotations_from_json(s.task, j.at("annotations"));
  return s;
}

// ---------------------------------------------------------------------------
// Label set files: a list of label names (NER/RE) or of event schemas (EE),
// optionally wrapped as {"labels": [...]}.

inline LabelSet label_set_from_json(TaskKind task, const Json& j) {
  const Json& list = (j.is_object() && j.contains("labels")) ? j.at("labels") : j;
  if (!list.is_array()) throw ConfigError("label set must be a list");
  if (task != TaskKind::EE) {
    std::vector<std::string> names;
    for (const auto& item : list) {
      if (!item.is_string()) throw ConfigError("NER/RE label set entries must be strings");
      names.push_back(item.get<std::string>());
    }
    return LabelSet::of_names(task, std::move(names));
  }
  std::vector<EventSchema> events;
  for (const auto& item : list) {
    if (!item.is_object()) throw ConfigError("EE label set entries must be event schema objects");
    EventSchema e;
    try {
      e.event_type = detail::require_string(item, "event_type", "event schema");
    } catch (const FormatError& err) {
      throw ConfigError(err.what());
    }
    e.trigger = item.value("trigger", true);
    if (const auto args = item.find("arguments"); args != item.end()) {
      for (const auto& r : *args) {
        if (!r.is_string()) throw ConfigError("event schema roles must be strings");
        e.arguments.push_back(r.get<std::string>());
      }
    }
    events.push_back(std::move(e));
  }
  return LabelSet::of_events(std::move(events));
}

inline Json event_schema_to_json(const EventSchema& e) {
  return Json{{"event_type", e.event_type}, {"trigger", e.trigger}, {"arguments", e.arguments}};
}

inline Json label_set_to_json(const LabelSet& set) {
  Json arr = Json::array();
  if (set.task() == TaskKind::EE) {
    for (const auto& e : set.events()) arr.push_back(event_schema_to_json(e));
  } else {
    for (const auto& l : set.labels()) arr.push_back(l);
  }
  return arr;
}

inline Json record_to_json(const DatasetRecord& r) {
  Json hist = Json::object();
  for (const auto& [size, count] : r.split_size_histogram) hist[std::to_string(size)] = count;
  Json splits = Json::object();
  for (const auto split : kAllSplits) {
    const auto it = r.split_sample_counts.find(std::string(to_string(split)));
    splits[std::string(to_string(split))] = it == r.split_sample_counts.end() ? 0 : it->second;
  }
  return Json{{"dataset", r.dataset_name},
              {"domain", r.domain},
              {"task", to_string(r.task)},
              {"language", to_string(r.language)},
              {"schema_count", r.schema_count},
              {"schemas", r.schema_details},
              {"sample_count", r.sample_count},
              {"split_sample_counts", std::move(splits)},
              {"split_num", r.split_num},
              {"instruction_count", r.instruction_count},
              {"split_size_range", {r.histogram_range.first, r.histogram_range.second}},
              {"split_size_histogram", std::move(hist)},
              {"token_count", r.token_count}};
}

inline Json score_to_json(const ScoreReport& r) {
  return Json{{"tp", r.tp}, {"fp", r.fp}, {"fn", r.fn}, {"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

}  // namespace ieforge
