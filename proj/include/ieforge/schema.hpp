#pragma once

// Hard-negative schema dictionary and per-sample schema pools.
//
// The dictionary maps each label to labels that are easy to confuse with it.
// A sample's pool is its positive labels, the dictionary neighbours of those
// positives, and a few uniformly sampled other labels, shuffled together.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ieforge/errors.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"
#include "ieforge/rng.hpp"
#include "ieforge/text.hpp"

namespace ieforge {

enum class SimilarityMode { CuratedOnly, Lexical, LexicalPlusCurated };

inline SimilarityMode parse_similarity_mode(std::string_view s) {
  if (s == "curated_only") return SimilarityMode::CuratedOnly;
  if (s == "lexical") return SimilarityMode::Lexical;
  if (s == "lexical_plus_curated") return SimilarityMode::LexicalPlusCurated;
  throw ConfigError("unknown similarity mode '" + std::string(s) + "'");
}

struct SimilarityConfig {
  SimilarityMode mode = SimilarityMode::LexicalPlusCurated;
  double lexical_threshold = 0.5;
  std::size_t max_neighbors_per_key = 5;
  std::map<std::string, std::vector<std::string>> curated_overrides;
};

class HardNegativeDictionary {
 public:
  HardNegativeDictionary() = default;
  explicit HardNegativeDictionary(TaskKind task) : task_(task) {}

  TaskKind task() const { return task_; }
  const std::map<std::string, std::vector<std::string>>& entries() const { return entries_; }

  const std::vector<std::string>& neighbors(const std::string& label) const {
    static const std::vector<std::string> kNone;
    const auto it = entries_.find(label);
    return it == entries_.end() ? kNone : it->second;
  }

  void set(const std::string& label, std::vector<std::string> neighbors) { entries_[label] = std::move(neighbors); }

  /// Keys and values must be labels of the set; no key lists itself.
  void check_against(const LabelSet& labels) const {
    for (const auto& [key, values] : entries_) {
      if (!labels.contains(key)) throw ConfigError("hard-negative key '" + key + "' is not in the label set");
      for (const auto& v : values) {
        if (!labels.contains(v))
          throw ConfigError("hard-negative value '" + v + "' (under '" + key + "') is not in the label set");
        if (v == key) throw ConfigError("hard-negative entry '" + key + "' lists itself");
      }
    }
  }

 private:
  TaskKind task_ = TaskKind::NER;
  std::map<std::string, std::vector<std::string>> entries_;
};

/// Lowercased tokens of a label name, split on whitespace and underscores.
inline std::set<std::string> label_tokens(const std::string& label) {
  std::string spaced = text::to_lower(label);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  const auto tokens = text::split_whitespace(spaced);
  return {tokens.begin(), tokens.end()};
}

/// Jaccard similarity of the label-name token sets.
inline double label_similarity(const std::string& a, const std::string& b) {
  const auto ta = label_tokens(a);
  const auto tb = label_tokens(b);
  if (ta.empty() && tb.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& t : ta) shared += tb.count(t);
  return static_cast<double>(shared) / static_cast<double>(ta.size() + tb.size() - shared);
}

/// Builds the dictionary for a label set. Lexical neighbours are labels with
/// similarity >= threshold (and > 0), strongest first with ties in label-set
/// order, capped at max_neighbors_per_key. Curated entries come first and are
/// never capped.
inline HardNegativeDictionary build_hard_neg_dict(const LabelSet& labels, const SimilarityConfig& sim = {}) {
  for (const auto& [key, values] : sim.curated_overrides) {
    if (!labels.contains(key)) throw ConfigError("curated hard-negative key '" + key + "' is not in the label set");
    for (const auto& v : values) {
      if (!labels.contains(v))
        throw ConfigError("curated hard-negative value '" + v + "' (under '" + key + "') is not in the label set");
    }
  }

  const bool use_lexical = sim.mode != SimilarityMode::CuratedOnly;
  const bool use_curated = sim.mode != SimilarityMode::Lexical;
  const auto& names = labels.labels();

  HardNegativeDictionary dict(labels.task());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& key = names[i];
    std::vector<std::string> neighbors;
    std::unordered_set<std::string> seen{key};
    auto add = [&](const std::string& label) {
      if (seen.insert(label).second) neighbors.push_back(label);
    };

    if (use_curated) {
      if (const auto it = sim.curated_overrides.find(key); it != sim.curated_overrides.end()) {
        for (const auto& v : it->second) add(v);
      }
    }
    if (use_lexical) {
      std::vector<std::pair<double, std::size_t>> scored;
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (j == i) continue;
        const double score = label_similarity(key, names[j]);
        if (score > 0.0 && score >= sim.lexical_threshold) scored.emplace_back(score, j);
      }
      std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      if (scored.size() > sim.max_neighbors_per_key) scored.resize(sim.max_neighbors_per_key);
      for (const auto& [_, j] : scored) add(names[j]);
    }
    dict.set(key, std::move(neighbors));
  }
  return dict;
}

/// Parses a curated dictionary file: one object mapping label -> labels.
inline std::map<std::string, std::vector<std::string>> curated_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("curated hard-negative dictionary must be an object");
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [key, values] : j.items()) {
    if (!values.is_array()) throw ConfigError("curated entry '" + key + "' must be a list");
    auto& dst = out[key];
    for (const auto& v : values) {
      if (!v.is_string()) throw ConfigError("curated entry '" + key + "' must list strings");
      dst.push_back(v.get<std::string>());
    }
  }
  return out;
}

/// Serializes in label-set order for auditing.
inline Json dictionary_to_json(const HardNegativeDictionary& dict, const LabelSet& labels) {
  Json obj = Json::object();
  for (const auto& label : labels.labels()) obj[label] = dict.neighbors(label);
  return obj;
}

/// Builds the schema pool of one sample. Positives and hard negatives are
/// collected in label-set order; others are sampled without replacement,
/// min(split_num, |Other_L|) of them; the union is then shuffled.
inline SchemaPartition assemble_schema_pool(const UnifiedSample& sample, const LabelSet& labels,
                                            const HardNegativeDictionary& dict, std::size_t split_num,
                                            RngStream& rng) {
  if (split_num < 1) throw ConfigError("split_num must be at least 1");
  auto by_position = [&](const std::unordered_set<std::string>& set) {
    std::vector<std::string> out(set.begin(), set.end());
    std::sort(out.begin(), out.end(),
              [&](const std::string& a, const std::string& b) { return labels.index_of(a) < labels.index_of(b); });
    return out;
  };

  const auto positives = positive_labels(sample);
  const std::unordered_set<std::string> pos(positives.begin(), positives.end());
  std::unordered_set<std::string> hard;
  for (const auto& p : positives) {
    for (const auto& n : dict.neighbors(p)) {
      if (pos.count(n) == 0 && labels.contains(n)) hard.insert(n);
    }
  }

  SchemaPartition part;
  part.positive = by_position(pos);
  part.hard_negative = by_position(hard);

  std::vector<std::string> other;
  for (const auto& l : labels.labels()) {
    if (pos.count(l) == 0 && hard.count(l) == 0) other.push_back(l);
  }
  part.other_negative_sampled = rng.sample(std::span<const std::string>(other), split_num);

  part.pool = part.positive;
  part.pool.insert(part.pool.end(), part.hard_negative.begin(), part.hard_negative.end());
  part.pool.insert(part.pool.end(), part.other_negative_sampled.begin(), part.other_negative_sampled.end());
  rng.shuffle(part.pool);
  return part;
}

}  // namespace ieforge
