#pragma once

// Span-based micro-F1 over exact-match extraction tuples.
//
// Completions are parsed back into tuples (with a recovery pass for objects
// wrapped in prose or code fences), gold samples are flattened into tuples per
// facet, and counts are summed over samples before P/R/F1 are computed.
// EE triggers and EE arguments are scored as independent facets.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ieforge/errors.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"

namespace ieforge {

enum class ParseStatus { Clean, Recovered, Failed };

inline std::string_view to_string(ParseStatus s) {
  switch (s) {
    case ParseStatus::Clean: return "clean";
    case ParseStatus::Recovered: return "recovered";
    case ParseStatus::Failed: return "failed";
  }
  return "?";
}

struct ParseOutcome {
  TupleSet tuples;
  ParseStatus status = ParseStatus::Failed;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline void add_tuple(TupleSet& out, std::optional<ExtractionTuple> t) {
  if (t) out.insert(std::move(*t));
}

inline void extract_tuples(TaskKind task, const std::string& label, const Json& value, ParseOutcome& out) {
  if (!value.is_array()) {
    out.diagnostics.push_back("value of '" + label + "' is not a list");
    return;
  }
  for (const auto& item : value) {
    switch (task) {
      case TaskKind::NER:
        if (item.is_string()) {
          add_tuple(out.tuples, ExtractionTuple::make(Facet::Entity, label, item.get<std::string>()));
        } else {
          out.diagnostics.push_back("non-string mention under '" + label + "'");
        }
        break;
      case TaskKind::RE: {
        const auto head = item.is_object() ? item.find("head") : item.end();
        const auto tail = item.is_object() ? item.find("tail") : item.end();
        if (!item.is_object() || head == item.end() || tail == item.end() || !head->is_string() ||
            !tail->is_string()) {
          out.diagnostics.push_back("malformed triple under '" + label + "'");
          break;
        }
        add_tuple(out.tuples,
                  ExtractionTuple::make(Facet::Relation, label, head->get<std::string>(), tail->get<std::string>()));
        break;
      }
      case TaskKind::EE: {
        if (!item.is_object()) {
          out.diagnostics.push_back("malformed event under '" + label + "'");
          break;
        }
        if (const auto trig = item.find("trigger"); trig != item.end() && trig->is_string())
          add_tuple(out.tuples, ExtractionTuple::make(Facet::Trigger, label, trig->get<std::string>()));
        const auto args = item.find("arguments");
        if (args == item.end() || !args->is_object()) break;
        for (const auto& [role, v] : args->items()) {
          if (v.is_string()) {
            add_tuple(out.tuples, ExtractionTuple::make(Facet::Argument, label, role, v.get<std::string>()));
          } else if (v.is_array()) {
            for (const auto& x : v) {
              if (x.is_string()) add_tuple(out.tuples, ExtractionTuple::make(Facet::Argument, label, role, x.get<std::string>()));
            }
          }
        }
        break;
      }
    }
  }
}

inline std::optional<Json> parse_object(std::string_view raw) {
  try {
    Json j = Json::parse(raw);
    if (j.is_object()) return j;
  } catch (const Json::parse_error&) {
  }
  return std::nullopt;
}

}  // namespace detail

/// Parses a model completion. A well-formed object is "clean"; otherwise the
/// outermost {...} region is re-parsed ("recovered"); otherwise "failed" with
/// no tuples. When queried is given, labels outside it are dropped and noted.
inline ParseOutcome parse_prediction(TaskKind task, std::optional<std::span<const std::string>> queried,
                                     std::string_view raw) {
  ParseOutcome out;
  std::optional<Json> obj = detail::parse_object(raw);
  if (obj) {
    out.status = ParseStatus::Clean;
  } else {
    const auto open = raw.find('{');
    const auto close = raw.rfind('}');
    if (open != std::string_view::npos && close != std::string_view::npos && close > open)
      obj = detail::parse_object(raw.substr(open, close - open + 1));
    if (!obj) {
      out.status = ParseStatus::Failed;
      out.diagnostics.push_back("completion is not a JSON object");
      return out;
    }
    out.status = ParseStatus::Recovered;
  }

  std::unordered_set<std::string> allowed;
  if (queried) allowed.insert(queried->begin(), queried->end());
  for (const auto& [label, value] : obj->items()) {
    if (queried && allowed.count(label) == 0) {
      out.diagnostics.push_back("label '" + label + "' was not queried");
      continue;
    }
    detail::extract_tuples(task, label, value, out);
  }
  return out;
}

inline TupleSet filter_facet(const TupleSet& tuples, Facet facet) {
  TupleSet out;
  for (const auto& t : tuples) {
    if (t.facet == facet) out.insert(t);
  }
  return out;
}

/// Gold tuples of one facet. Multi-valued EE roles yield one tuple per value.
inline TupleSet tuples_of_gold(const UnifiedSample& sample, Facet facet) {
  TupleSet out;
  const auto& a = sample.annotations;
  switch (facet) {
    case Facet::Entity:
      for (const auto& m : a.entities) detail::add_tuple(out, ExtractionTuple::make(Facet::Entity, m.type, m.text));
      break;
    case Facet::Relation:
      for (const auto& t : a.relations)
        detail::add_tuple(out, ExtractionTuple::make(Facet::Relation, t.relation, t.head, t.tail));
      break;
    case Facet::Trigger:
      for (const auto& e : a.events) detail::add_tuple(out, ExtractionTuple::make(Facet::Trigger, e.event_type, e.trigger));
      break;
    case Facet::Argument:
      for (const auto& e : a.events) {
        for (const auto& arg : e.arguments) {
          for (const auto& v : arg.values)
            detail::add_tuple(out, ExtractionTuple::make(Facet::Argument, e.event_type, arg.role, v));
        }
      }
      break;
  }
  return out;
}

using TupleSetsById = std::map<std::string, TupleSet>;

/// Micro-averaged counts over samples aligned by id. Samples without a
/// prediction count as empty predictions.
inline ScoreReport micro_f1(const TupleSetsById& gold, const TupleSetsById& pred) {
  for (const auto& [id, _] : pred) {
    if (gold.count(id) == 0) throw AlignmentError("prediction for unknown sample id '" + id + "'");
  }
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  static const TupleSet kEmpty;
  for (const auto& [id, g] : gold) {
    const auto it = pred.find(id);
    const TupleSet& p = it == pred.end() ? kEmpty : it->second;
    std::size_t hit = 0;
    for (const auto& t : p) hit += g.count(t);
    tp += hit;
    fp += p.size() - hit;
    fn += g.size() - hit;
  }
  return ScoreReport::from_counts(tp, fp, fn);
}

inline std::vector<Facet> default_facets(TaskKind task) {
  switch (task) {
    case TaskKind::NER: return {Facet::Entity};
    case TaskKind::RE: return {Facet::Relation};
    case TaskKind::EE: return {Facet::Trigger, Facet::Argument};
  }
  return {};
}

/// Column name of a facet in the averaged summary.
inline std::string task_group(Facet facet) {
  switch (facet) {
    case Facet::Entity: return "NER";
    case Facet::Relation: return "RE";
    case Facet::Trigger: return "EE-trigger";
    case Facet::Argument: return "EE-argument";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Manifests

struct ManifestDataset {
  std::string name;
  TaskKind task = TaskKind::NER;
  std::vector<Facet> facets;
  std::filesystem::path gold;
  std::filesystem::path predictions;
  std::optional<std::filesystem::path> metadata;
  std::optional<std::filesystem::path> label_set;
};

struct EvalManifest {
  std::string benchmark;
  std::vector<ManifestDataset> datasets;
};

/// Relative paths resolve against base_dir.
inline EvalManifest manifest_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("manifest must be an object");
  EvalManifest m;
  m.benchmark = j.value("benchmark", std::string("benchmark"));
  const auto list = j.find("datasets");
  if (list == j.end() || !list->is_array() || list->empty()) throw ConfigError("manifest lists no datasets");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  for (const auto& d : *list) {
    ManifestDataset ds;
    try {
      ds.name = d.at("name").get<std::string>();
      ds.task = parse_task(d.at("task").get<std::string>());
      ds.gold = resolve(d.at("gold").get<std::string>());
      ds.predictions = resolve(d.at("predictions").get<std::string>());
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("manifest dataset entry: ") + e.what());
    }
    if (const auto f = d.find("facets"); f != d.end()) {
      for (const auto& x : *f) ds.facets.push_back(parse_facet(x.get<std::string>()));
    } else {
      ds.facets = default_facets(ds.task);
    }
    if (const auto md = d.find("metadata"); md != d.end()) ds.metadata = resolve(md->get<std::string>());
    if (const auto ls = d.find("label_set"); ls != d.end()) ds.label_set = resolve(ls->get<std::string>());
    m.datasets.push_back(std::move(ds));
  }
  return m;
}

struct DatasetScore {
  std::string name;
  TaskKind task = TaskKind::NER;
  std::vector<std::pair<Facet, ScoreReport>> facets;
  std::map<ParseStatus, std::size_t> parse_counts;
  std::size_t diagnostics = 0;
};

struct ManifestReport {
  std::string benchmark;
  std::vector<DatasetScore> datasets;
  /// Unweighted mean of per-dataset F1 within each task group.
  std::map<std::string, double> average;
};

/// Scores one dataset: gold is a unified-sample file, predictions are lines
/// {sample_id, batch_index, completion[, schema]}. The queried schema of a
/// prediction comes from its own "schema" field, else the generation
/// metadata, else the label set; with none of these no label is dropped.
inline DatasetScore score_dataset(const ManifestDataset& ds) {
  DatasetScore out;
  out.name = ds.name;
  out.task = ds.task;

  std::map<std::string, UnifiedSample> gold_samples;
  for (const auto& row : json_io::read_jsonl(ds.gold)) {
    UnifiedSample s = sample_from_json(row);
    if (s.task != ds.task) throw ConfigError(ds.gold.string() + ": sample task does not match manifest task");
    s.annotations = canonicalize(s.annotations);
    const std::string id = s.id;
    if (!gold_samples.emplace(id, std::move(s)).second)
      throw AlignmentError(ds.gold.string() + ": duplicate gold sample id '" + id + "'");
  }

  std::map<std::pair<std::string, std::size_t>, std::vector<std::string>> batch_schemas;
  if (ds.metadata) {
    for (const auto& row : json_io::read_jsonl(*ds.metadata)) {
      batch_schemas[{row.at("sample_id").get<std::string>(), row.at("batch_index").get<std::size_t>()}] =
          row.at("schema").get<std::vector<std::string>>();
    }
  }
  std::optional<std::vector<std::string>> label_names;
  if (ds.label_set) label_names = label_set_from_json(ds.task, json_io::read_json_file(*ds.label_set)).labels();

  TupleSetsById predicted;
  for (const auto& row : json_io::read_jsonl(ds.predictions)) {
    std::string id;
    std::size_t batch = 0;
    std::string completion;
    try {
      id = row.at("sample_id").get<std::string>();
      batch = row.value("batch_index", std::size_t{0});
      completion = row.at("completion").get<std::string>();
    } catch (const Json::exception& e) {
      throw ConfigError(ds.predictions.string() + ": " + e.what());
    }
    if (gold_samples.count(id) == 0)
      throw AlignmentError(ds.predictions.string() + ": prediction for unknown sample id '" + id + "'");

    std::optional<std::vector<std::string>> queried;
    if (const auto sch = row.find("schema"); sch != row.end()) {
      queried = sch->get<std::vector<std::string>>();
    } else if (const auto it = batch_schemas.find({id, batch}); it != batch_schemas.end()) {
      queried = it->second;
    } else if (label_names) {
      queried = label_names;
    }
    const auto outcome = queried ? parse_prediction(ds.task, std::span<const std::string>(*queried), completion)
                                 : parse_prediction(ds.task, std::nullopt, completion);
    ++out.parse_counts[outcome.status];
    out.diagnostics += outcome.diagnostics.size();
    predicted[id].insert(outcome.tuples.begin(), outcome.tuples.end());
  }

  for (const auto facet : ds.facets) {
    TupleSetsById g;
    TupleSetsById p;
    for (const auto& [id, s] : gold_samples) g[id] = tuples_of_gold(s, facet);
    for (const auto& [id, tuples] : predicted) p[id] = filter_facet(tuples, facet);
    out.facets.emplace_back(facet, micro_f1(g, p));
  }
  return out;
}

/// Scores every dataset of the manifest. All referenced files are checked
/// before any scoring, so a missing file yields no partial report.
inline ManifestReport run_manifest(const EvalManifest& manifest) {
  for (const auto& ds : manifest.datasets) {
    std::vector<std::filesystem::path> files = {ds.gold, ds.predictions};
    if (ds.metadata) files.push_back(*ds.metadata);
    if (ds.label_set) files.push_back(*ds.label_set);
    for (const auto& f : files) {
      if (!std::filesystem::is_regular_file(f))
        throw IoError("dataset '" + ds.name + "': file not found: " + f.string());
    }
  }

  ManifestReport report;
  report.benchmark = manifest.benchmark;
  std::map<std::string, std::vector<double>> by_group;
  for (const auto& ds : manifest.datasets) {
    report.datasets.push_back(score_dataset(ds));
    for (const auto& [facet, score] : report.datasets.back().facets) by_group[task_group(facet)].push_back(score.f1);
  }
  for (const auto& [group, values] : by_group) {
    double sum = 0.0;
    for (const double v : values) sum += v;
    report.average[group] = sum / static_cast<double>(values.size());
  }
  return report;
}

inline Json manifest_report_to_json(const ManifestReport& r) {
  Json datasets = Json::array();
  for (const auto& ds : r.datasets) {
    Json facets = Json::object();
    for (const auto& [facet, score] : ds.facets) facets[std::string(to_string(facet))] = score_to_json(score);
    Json parse = Json::object();
    for (const auto status : {ParseStatus::Clean, ParseStatus::Recovered, ParseStatus::Failed}) {
      const auto it = ds.parse_counts.find(status);
      parse[std::string(to_string(status))] = it == ds.parse_counts.end() ? 0 : it->second;
    }
    datasets.push_back({{"name", ds.name},
                        {"task", to_string(ds.task)},
                        {"facets", std::move(facets)},
                        {"parse", std::move(parse)},
                        {"diagnostics", ds.diagnostics}});
  }
  Json avg = Json::object();
  for (const auto& [group, value] : r.average) avg[group] = value;
  return Json{{"benchmark", r.benchmark}, {"datasets", std::move(datasets)}, {"Avg", std::move(avg)}};
}

}  // namespace ieforge
