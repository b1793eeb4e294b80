#pragma once

// Config-driven orchestration: ingest -> clean -> dict -> generate -> record
// per dataset, plus scoring from a manifest. Artifacts are a pure function of
// (config, inputs, seed); they are staged in a scratch directory and moved
// into place only after every requested dataset succeeded.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ieforge/clean.hpp"
#include "ieforge/errors.hpp"
#include "ieforge/evaluate.hpp"
#include "ieforge/generate.hpp"
#include "ieforge/ingest.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"
#include "ieforge/rng.hpp"
#include "ieforge/schema.hpp"

namespace ieforge {

namespace fs = std::filesystem;

struct DatasetEntry {
  std::string name;
  std::string domain;
  TaskKind task = TaskKind::NER;
  Language language = Language::En;
  AdapterDescriptor adapter;
  std::map<Split, fs::path> inputs;
  fs::path label_set;
  std::optional<fs::path> hard_negatives;
};

struct PipelineConfig {
  uint64_t seed = 0;
  fs::path output_dir = "out";
  std::vector<DatasetEntry> datasets;
  CleaningConfig cleaning;
  SimilarityConfig similarity;
  GenerationConfig generation;
};

enum class Stage { Ingest, Clean, Dict, Generate, Record };

inline Stage parse_stage(std::string_view s) {
  if (s == "ingest") return Stage::Ingest;
  if (s == "clean") return Stage::Clean;
  if (s == "dict") return Stage::Dict;
  if (s == "generate") return Stage::Generate;
  if (s == "record") return Stage::Record;
  throw ConfigError("unknown stage '" + std::string(s) + "'");
}

namespace detail {

template <typename T>
T config_value(const Json& obj, const char* key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

inline fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

inline uint64_t parse_seed(const Json& v) {
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer()) return static_cast<uint64_t>(v.get<int64_t>());
  if (v.is_string()) return std::stoull(v.get<std::string>(), nullptr, 0);
  throw ConfigError("seed must be an integer");
}

}  // namespace detail

/// Parses a pipeline config. Relative paths resolve against base_dir.
inline PipelineConfig config_from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be an object");
  PipelineConfig c;
  if (const auto s = j.find("seed"); s != j.end()) c.seed = detail::parse_seed(*s);
  c.output_dir = detail::resolve(base_dir, detail::config_value<std::string>(j, "output_dir", "out"));

  if (const auto cl = j.find("cleaning"); cl != j.end()) {
    auto& cc = c.cleaning;
    cc.non_alpha_threshold = detail::config_value(*cl, "non_alpha_threshold", cc.non_alpha_threshold);
    cc.min_text_chars = detail::config_value(*cl, "min_text_chars", cc.min_text_chars);
    cc.stopword_threshold = detail::config_value(*cl, "stopword_threshold", cc.stopword_threshold);
    cc.keep_first_on_consistent_duplicate =
        detail::config_value(*cl, "keep_first_on_consistent_duplicate", cc.keep_first_on_consistent_duplicate);
    if (const auto sw = cl->find("stopwords"); sw != cl->end()) {
      for (const auto& [lang, words] : sw->items()) {
        std::set<std::string> list;
        for (const auto& w : words) list.insert(text::to_lower(w.get<std::string>()));
        cc.stopwords[parse_language(lang)] = std::move(list);
      }
    }
  }
  c.cleaning.validate();

  if (const auto sim = j.find("similarity"); sim != j.end()) {
    c.similarity.mode = parse_similarity_mode(detail::config_value<std::string>(*sim, "mode", "lexical_plus_curated"));
    c.similarity.lexical_threshold = detail::config_value(*sim, "lexical_threshold", c.similarity.lexical_threshold);
    c.similarity.max_neighbors_per_key =
        detail::config_value(*sim, "max_neighbors_per_key", c.similarity.max_neighbors_per_key);
    if (c.similarity.lexical_threshold < 0.0 || c.similarity.lexical_threshold > 1.0)
      throw ConfigError("lexical_threshold must lie in [0, 1]");
  }

  if (const auto gen = j.find("generation"); gen != j.end()) {
    auto& g = c.generation;
    g.mode = parse_generation_mode(detail::config_value<std::string>(*gen, "mode", "hard_negative"));
    if (const auto sn = gen->find("split_num"); sn != gen->end()) {
      for (const auto& [task, n] : sn->items()) {
        if (!n.is_number_integer() || n.get<int64_t>() < 1)
          throw ConfigError("split_num for " + task + " must be a positive integer");
        g.split_num[parse_task(task)] = n.get<std::size_t>();
      }
    }
    if (const auto tp = gen->find("templates"); tp != gen->end()) {
      for (const auto& [task, by_lang] : tp->items()) {
        for (const auto& [lang, text] : by_lang.items())
          g.templates[{parse_task(task), parse_language(lang)}] = text.get<std::string>();
      }
    }
  }
  c.generation.validate();

  const auto list = j.find("datasets");
  if (list == j.end() || !list->is_array()) throw ConfigError("config lists no datasets");
  std::set<std::string> names;
  for (const auto& d : *list) {
    DatasetEntry e;
    try {
      e.name = d.at("name").get<std::string>();
      e.task = parse_task(d.at("task").get<std::string>());
      e.language = parse_language(d.value("language", std::string("en")));
      e.label_set = detail::resolve(base_dir, d.at("label_set").get<std::string>());
    } catch (const Json::exception& ex) {
      throw ConfigError(std::string("dataset entry: ") + ex.what());
    }
    if (!names.insert(e.name).second) throw ConfigError("dataset '" + e.name + "' declared twice");
    e.domain = d.value("domain", std::string());
    e.adapter = adapter_from_json(d.value("adapter", Json()), e.task, e.language);
    const auto inputs = d.find("inputs");
    if (inputs == d.end() || !inputs->is_object() || inputs->empty())
      throw ConfigError("dataset '" + e.name + "' has no inputs");
    for (const auto& [split, path] : inputs->items()) e.inputs[parse_split(split)] = detail::resolve(base_dir, path);
    if (const auto hn = d.find("hard_negatives"); hn != d.end() && !hn->is_null())
      e.hard_negatives = detail::resolve(base_dir, hn->get<std::string>());
    c.datasets.push_back(std::move(e));
  }
  if (c.datasets.empty()) throw ConfigError("config lists no datasets");
  return c;
}

inline PipelineConfig load_config(const fs::path& path) {
  return config_from_json(json_io::read_json_file(path), path.parent_path());
}

struct RunOptions {
  std::optional<uint64_t> seed;
  std::optional<fs::path> output_dir;
  std::vector<std::string> datasets;  // empty: all
  std::optional<GenerationMode> mode;
  Stage stop_after = Stage::Record;
};

struct DatasetSummary {
  std::string name;
  std::size_t samples_in = 0;
  std::size_t samples_out = 0;
  std::size_t skipped_records = 0;
  std::size_t instances = 0;
  std::size_t tokens = 0;
  std::string corpus_digest;
};

struct RunSummary {
  std::vector<DatasetSummary> datasets;
  fs::path output_dir;
};

namespace detail {

inline std::vector<const DatasetEntry*> select(const PipelineConfig& config, const std::vector<std::string>& filter) {
  std::vector<const DatasetEntry*> out;
  for (const auto& name : filter) {
    const bool known = std::any_of(config.datasets.begin(), config.datasets.end(),
                                   [&](const DatasetEntry& e) { return e.name == name; });
    if (!known) throw ConfigError("unknown dataset '" + name + "' in --datasets");
  }
  for (const auto& e : config.datasets) {
    if (filter.empty() || std::find(filter.begin(), filter.end(), e.name) != filter.end()) out.push_back(&e);
  }
  return out;
}

/// Scratch directory that is deleted unless committed.
class Staging {
 public:
  explicit Staging(fs::path final_dir) : final_(std::move(final_dir)), scratch_(final_ / ".staging") {
    fs::remove_all(scratch_);
    fs::create_directories(scratch_);
  }
  Staging(const Staging&) = delete;
  Staging& operator=(const Staging&) = delete;
  ~Staging() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(scratch_, ec);
    }
  }

  const fs::path& dir() const { return scratch_; }

  void commit() {
    for (const auto& entry : fs::directory_iterator(scratch_)) {
      const fs::path target = final_ / entry.path().filename();
      fs::remove_all(target);
      fs::rename(entry.path(), target);
    }
    fs::remove_all(scratch_);
    committed_ = true;
  }

 private:
  fs::path final_;
  fs::path scratch_;
  bool committed_ = false;
};

struct PreparedDataset {
  LabelSet labels;
  std::vector<UnifiedSample> raw;
  CleanResult cleaned;
  Json ingest_report;
};

inline PreparedDataset ingest_and_clean(const DatasetEntry& entry, const CleaningConfig& cleaning, bool clean) {
  PreparedDataset p;
  p.labels = label_set_from_json(entry.task, json_io::read_json_file(entry.label_set));
  Json skipped = Json::array();
  for (const auto split : kAllSplits) {
    const auto it = entry.inputs.find(split);
    if (it == entry.inputs.end()) continue;
    const UnifyContext ctx{entry.name, split, &p.labels};
    auto result = load_split(it->second, entry.adapter, ctx);
    for (const auto& issue : result.skipped)
      skipped.push_back({{"split", to_string(split)}, {"record_index", issue.record_index}, {"error", issue.message}});
    for (auto& s : result.samples) p.raw.push_back(std::move(s));
  }
  std::set<std::string> ids;
  for (const auto& s : p.raw) {
    if (!ids.insert(s.id).second) throw Error("dataset '" + entry.name + "': duplicate sample id '" + s.id + "'");
  }
  p.ingest_report = Json{{"dataset", entry.name}, {"accepted", p.raw.size()}, {"skipped", std::move(skipped)}};
  if (clean) {
    p.cleaned = clean_dataset(p.raw, cleaning);
  } else {
    p.cleaned.samples = p.raw;
    p.cleaned.report.input_count = p.cleaned.report.output_count = p.raw.size();
  }
  return p;
}

/// Canonical corpus order: split, then sample id, then batch index.
inline void sort_canonical(std::vector<UnifiedSample>& samples) {
  std::stable_sort(samples.begin(), samples.end(), [](const UnifiedSample& a, const UnifiedSample& b) {
    if (a.split != b.split) return a.split < b.split;
    return a.id < b.id;
  });
}

}  // namespace detail

/// Runs the pipeline (or its prefix up to options.stop_after) for every
/// selected dataset. With generate=false only ingest, clean, and record run.
inline RunSummary run_pipeline(const PipelineConfig& config, const RunOptions& options, bool generate,
                               std::ostream* log = nullptr) {
  const uint64_t seed = options.seed.value_or(config.seed);
  GenerationConfig gen = config.generation;
  if (options.mode) gen.mode = *options.mode;
  const fs::path out_dir = options.output_dir.value_or(config.output_dir);
  fs::create_directories(out_dir);

  RunSummary summary;
  summary.output_dir = out_dir;
  detail::Staging staging(out_dir);
  std::vector<Json> records;

  for (const DatasetEntry* entry : detail::select(config, options.datasets)) {
    const fs::path dir = staging.dir() / entry->name;
    fs::create_directories(dir);
    DatasetSummary ds;
    ds.name = entry->name;

    const bool clean = options.stop_after >= Stage::Clean;
    auto prepared = detail::ingest_and_clean(*entry, config.cleaning, clean);
    ds.samples_in = prepared.raw.size();
    ds.skipped_records = prepared.ingest_report["skipped"].size();
    json_io::write_pretty(dir / "ingest_report.json", prepared.ingest_report);

    auto samples = prepared.cleaned.samples;
    detail::sort_canonical(samples);
    ds.samples_out = samples.size();
    if (clean) json_io::write_pretty(dir / "cleaning_report.json", report_to_json(prepared.cleaned.report));
    if (generate || options.stop_after == Stage::Ingest || options.stop_after == Stage::Clean) {
      std::vector<Json> rows;
      for (const auto& s : samples) rows.push_back(sample_to_json(s));
      json_io::write_jsonl(dir / "samples.jsonl", rows);
    }

    std::vector<InstructionInstance> instances;
    if (generate && options.stop_after >= Stage::Dict) {
      SimilarityConfig sim = config.similarity;
      if (entry->hard_negatives) sim.curated_overrides = curated_from_json(json_io::read_json_file(*entry->hard_negatives));
      const auto dict = build_hard_neg_dict(prepared.labels, sim);
      json_io::write_pretty(dir / "hard_negatives.json", dictionary_to_json(dict, prepared.labels));

      if (options.stop_after >= Stage::Generate) {
        std::map<Split, std::vector<InstructionInstance>> by_split;
        for (const auto& s : samples) {
          RngStream rng(seed, s.dataset, s.id);
          for (auto& inst : generate_instances(s, prepared.labels, dict, gen, rng)) by_split[s.split].push_back(std::move(inst));
        }
        uint64_t digest = json_io::fnv1a64("");
        for (const auto& [split, list] : by_split) {
          std::vector<Json> corpus;
          std::vector<Json> meta;
          for (const auto& inst : list) {
            corpus.push_back(corpus_line(inst));
            meta.push_back(metadata_line(inst));
          }
          const std::string name(to_string(split));
          json_io::write_jsonl(dir / "corpus" / (name + ".jsonl"), corpus);
          json_io::write_jsonl(dir / "corpus" / (name + ".meta.jsonl"), meta);
          digest = json_io::fnv1a64(json_io::read_file(dir / "corpus" / (name + ".jsonl")), digest);
          instances.insert(instances.end(), list.begin(), list.end());
        }
        ds.corpus_digest = json_io::hex64(digest);
      }
    }

    if (options.stop_after >= Stage::Record || !generate) {
      const RecordInputs in{entry->name, entry->domain, entry->language, &prepared.labels, samples, instances};
      const auto record = build_dataset_record(in, gen);
      ds.instances = record.instruction_count;
      ds.tokens = record.token_count;
      Json rj = record_to_json(record);
      json_io::write_pretty(dir / "record.json", rj);
      records.push_back(std::move(rj));
    } else {
      ds.instances = instances.size();
    }

    if (log != nullptr) {
      *log << ds.name << ": samples " << ds.samples_in << " -> " << ds.samples_out;
      if (ds.skipped_records > 0) *log << " (" << ds.skipped_records << " records skipped at ingest)";
      if (generate) *log << ", instances " << ds.instances << ", tokens ~" << ds.tokens;
      if (!ds.corpus_digest.empty()) *log << ", corpus digest " << ds.corpus_digest;
      *log << "\n";
    }
    summary.datasets.push_back(std::move(ds));
  }

  if (!records.empty()) json_io::write_jsonl(staging.dir() / "records.jsonl", records);
  staging.commit();
  return summary;
}

inline RunSummary run_build(const PipelineConfig& config, const RunOptions& options, std::ostream* log = nullptr) {
  return run_pipeline(config, options, true, log);
}

/// Ingest, clean, and record only; no instructions are generated.
inline RunSummary run_audit(const PipelineConfig& config, const RunOptions& options, std::ostream* log = nullptr) {
  RunOptions audit = options;
  audit.stop_after = Stage::Record;
  return run_pipeline(config, audit, false, log);
}

inline ManifestReport run_score(const fs::path& manifest_path, const fs::path& report_path,
                                std::ostream* log = nullptr) {
  const auto manifest = manifest_from_json(json_io::read_json_file(manifest_path), manifest_path.parent_path());
  const auto report = run_manifest(manifest);
  json_io::write_pretty(report_path, manifest_report_to_json(report));
  if (log != nullptr) {
    std::ostringstream table;
    table << std::fixed << std::setprecision(4);
    table << std::left << std::setw(24) << "dataset" << std::setw(12) << "facet" << std::right << std::setw(8) << "P"
          << std::setw(8) << "R" << std::setw(8) << "F1" << "\n";
    for (const auto& ds : report.datasets) {
      for (const auto& [facet, s] : ds.facets) {
        table << std::left << std::setw(24) << ds.name << std::setw(12) << to_string(facet) << std::right
              << std::setw(8) << s.precision << std::setw(8) << s.recall << std::setw(8) << s.f1 << "\n";
      }
    }
    for (const auto& [group, avg] : report.average)
      table << std::left << std::setw(24) << "Avg" << std::setw(12) << group << std::right << std::setw(24) << avg << "\n";
    *log << table.str();
  }
  return report;
}

}  // namespace ieforge
