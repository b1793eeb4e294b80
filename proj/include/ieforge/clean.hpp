#pragma once

// Dataset cleaning. The stages always run in this order:
//   1. dedup_within_split: a text repeated inside one split with different
//      annotations is dropped entirely; consistent copies collapse to one.
//   2. remove_cross_split_leakage: texts that also occur in test are dropped
//      from train and val. Test is never modified.
//   3. quality_filter: three heuristic rules (non-letter share, short and
//      unlabeled, stopword share).
// Text equality is exact after NFC normalization and trimming.

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ieforge/errors.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"
#include "ieforge/text.hpp"

namespace ieforge {

enum class RemovalReason {
  InconsistentDuplicate,
  CrossSplitLeak,
  RuleNonAlpha,
  RuleShortUnlabeled,
  RuleStopword,
  ConsistentDuplicateCollapsed,
};

inline constexpr RemovalReason kAllRemovalReasons[] = {
    RemovalReason::InconsistentDuplicate, RemovalReason::CrossSplitLeak,     RemovalReason::RuleNonAlpha,
    RemovalReason::RuleShortUnlabeled,    RemovalReason::RuleStopword, RemovalReason::ConsistentDuplicateCollapsed,
};

inline std::string_view to_string(RemovalReason r) {
  switch (r) {
    case RemovalReason::InconsistentDuplicate: return "inconsistent_duplicate";
    case RemovalReason::CrossSplitLeak: return "cross_split_leak";
    case RemovalReason::RuleNonAlpha: return "rule_non_alpha";
    case RemovalReason::RuleShortUnlabeled: return "rule_short_unlabeled";
    case RemovalReason::RuleStopword: return "rule_stopword";
    case RemovalReason::ConsistentDuplicateCollapsed: return "consistent_duplicate_collapsed";
  }
  return "?";
}

/// English stopwords used by the stopword-share rule when no list is configured.
inline const std::set<std::string>& default_english_stopwords() {
  static const std::set<std::string> words = {
      "a",       "about",   "above",   "after",   "again",   "against", "all",     "am",      "an",
      "and",     "any",     "are",     "as",      "at",      "be",      "because", "been",    "before",
      "being",   "below",   "between", "both",    "but",     "by",      "can",     "could",   "did",
      "do",      "does",    "doing",   "down",    "during",  "each",    "few",     "for",     "from",
      "further", "had",     "has",     "have",    "having",  "he",      "her",     "here",    "hers",
      "herself", "him",     "himself", "his",     "how",     "i",       "if",      "in",      "into",
      "is",      "it",      "its",     "itself",  "just",    "me",      "more",    "most",    "my",
      "myself",  "no",      "nor",     "not",     "now",     "of",      "off",     "on",      "once",
      "only",    "or",      "other",   "our",     "ours",    "ourselves", "out",   "over",    "own",
      "same",    "she",     "should",  "so",      "some",    "such",    "than",    "that",    "the",
      "their",   "theirs",  "them",    "themselves", "then", "there",   "these",   "they",    "this",
      "those",   "through", "to",      "too",     "under",   "until",   "up",      "very",    "was",
      "we",      "were",    "what",    "when",    "where",   "which",   "while",   "who",     "whom",
      "why",     "will",    "with",    "would",   "you",     "your",    "yours",   "yourself", "yourselves",
  };
  return words;
}

struct CleaningConfig {
  double non_alpha_threshold = 0.80;
  std::size_t min_text_chars = 5;
  double stopword_threshold = 0.80;
  /// Per-language stopword lists, compared against lowercased tokens. A
  /// language without a list skips the stopword rule.
  std::map<Language, std::set<std::string>> stopwords = {{Language::En, default_english_stopwords()}};
  bool keep_first_on_consistent_duplicate = true;

  void validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(non_alpha_threshold)) throw ConfigError("non_alpha_threshold must lie in (0, 1]");
    if (!in_unit(stopword_threshold)) throw ConfigError("stopword_threshold must lie in (0, 1]");
    if (min_text_chars < 1) throw ConfigError("min_text_chars must be at least 1");
  }
};

struct Rejection {
  std::string sample_id;
  Split split;
  RemovalReason reason;
};

struct CleaningReport {
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  std::map<RemovalReason, std::size_t> counts;
  std::vector<Rejection> rejections;

  void reject(const UnifiedSample& s, RemovalReason reason) {
    ++counts[reason];
    rejections.push_back({s.id, s.split, reason});
  }

  std::size_t count(RemovalReason reason) const {
    const auto it = counts.find(reason);
    return it == counts.end() ? 0 : it->second;
  }

  std::size_t removed_total() const {
    std::size_t n = 0;
    for (const auto& [_, c] : counts) n += c;
    return n;
  }

  /// input = output + every removal (collapsed duplicates included).
  bool conserves_counts() const { return input_count == output_count + removed_total(); }

  /// Folds a stage delta in. Input/output counts are owned by the caller.
  CleaningReport& absorb(const CleaningReport& delta) {
    for (const auto& [reason, c] : delta.counts) counts[reason] += c;
    rejections.insert(rejections.end(), delta.rejections.begin(), delta.rejections.end());
    return *this;
  }
};

inline Json report_to_json(const CleaningReport& r) {
  Json counts = Json::object();
  for (const auto reason : kAllRemovalReasons) counts[std::string(to_string(reason))] = r.count(reason);
  Json log = Json::array();
  for (const auto& rej : r.rejections)
    log.push_back({{"sample_id", rej.sample_id}, {"split", to_string(rej.split)}, {"reason", to_string(rej.reason)}});
  return Json{{"input_count", r.input_count}, {"output_count", r.output_count}, {"removed", std::move(counts)},
              {"rejections", std::move(log)}};
}

struct StageResult {
  std::vector<UnifiedSample> kept;
  CleaningReport delta;
};

/// Removes within-split duplicates. All samples must share one (dataset, split).
inline StageResult dedup_within_split(const std::vector<UnifiedSample>& samples, const CleaningConfig& config = {}) {
  StageResult out;
  if (samples.empty()) return out;
  for (const auto& s : samples) {
    if (s.dataset != samples.front().dataset || s.split != samples.front().split)
      throw Error("dedup_within_split requires samples from a single dataset split");
  }

  std::vector<std::string> keys;
  keys.reserve(samples.size());
  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    keys.push_back(text::normalize(samples[i].text));
    groups[keys.back()].push_back(i);
  }

  std::vector<bool> keep(samples.size(), true);
  for (const auto& [_, members] : groups) {
    if (members.size() < 2) continue;
    const std::string first_key = annotation_key(samples[members.front()].annotations);
    bool consistent = true;
    for (std::size_t k = 1; k < members.size() && consistent; ++k)
      consistent = annotation_key(samples[members[k]].annotations) == first_key;
    if (!consistent) {
      for (const auto i : members) keep[i] = false;
      continue;
    }
    const std::size_t survivor = config.keep_first_on_consistent_duplicate ? members.front() : members.back();
    for (const auto i : members) keep[i] = i == survivor;
  }

  // Report in input order; the reason is fixed per group.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (keep[i]) {
      out.kept.push_back(samples[i]);
      continue;
    }
    const auto& members = groups.at(keys[i]);
    const bool collapsed = std::any_of(members.begin(), members.end(), [&](std::size_t m) { return keep[m]; });
    out.delta.reject(samples[i],
                     collapsed ? RemovalReason::ConsistentDuplicateCollapsed : RemovalReason::InconsistentDuplicate);
  }
  return out;
}

struct LeakageResult {
  std::vector<UnifiedSample> train;
  std::vector<UnifiedSample> val;
  CleaningReport delta;
};

/// Drops train/val samples whose normalized text also occurs in test.
inline LeakageResult remove_cross_split_leakage(const std::vector<UnifiedSample>& train,
                                                const std::vector<UnifiedSample>& val,
                                                const std::vector<UnifiedSample>& test) {
  std::unordered_set<std::string> test_texts;
  for (const auto& s : test) test_texts.insert(text::normalize(s.text));
  LeakageResult out;
  auto sieve = [&](const std::vector<UnifiedSample>& in, std::vector<UnifiedSample>& kept) {
    for (const auto& s : in) {
      if (test_texts.count(text::normalize(s.text)) != 0) {
        out.delta.reject(s, RemovalReason::CrossSplitLeak);
      } else {
        kept.push_back(s);
      }
    }
  };
  sieve(train, out.train);
  sieve(val, out.val);
  return out;
}

struct QualityVerdict {
  bool keep = true;
  std::optional<RemovalReason> reason;
};

namespace detail {

/// Lowercased token with leading/trailing non-letters stripped.
inline std::string word_core(const std::string& token) {
  const auto cps = text::decode(token);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && !text::is_letter(cps[b])) ++b;
  while (e > b && !text::is_letter(cps[e - 1])) --e;
  std::string core;
  for (std::size_t i = b; i < e; ++i) text::append_utf8(core, cps[i]);
  return text::to_lower(core);
}

}  // namespace detail

/// Applies the three heuristic rules; thresholds are strict ("more than").
///   a. non-letter code points / non-whitespace code points > non_alpha_threshold
///   b. fewer than min_text_chars code points and no annotations
///   c. stopword tokens / word tokens > stopword_threshold, where word tokens
///      are whitespace-delimited tokens containing a letter. Skipped when the
///      language has no stopword list or the text uses an unsegmented script.
inline QualityVerdict quality_filter(const UnifiedSample& sample, const CleaningConfig& config = {}) {
  const std::string normalized = text::normalize(sample.text);
  const auto cps = text::decode(normalized);

  std::size_t visible = 0;
  std::size_t letters = 0;
  bool unsegmented = false;
  for (const char32_t cp : cps) {
    if (text::is_space(cp)) continue;
    ++visible;
    if (text::is_letter(cp)) ++letters;
    if (text::is_unsegmented_script(cp)) unsegmented = true;
  }
  if (visible > 0) {
    const double non_letter = static_cast<double>(visible - letters) / static_cast<double>(visible);
    if (non_letter > config.non_alpha_threshold) return {false, RemovalReason::RuleNonAlpha};
  }

  if (cps.size() < config.min_text_chars && sample.annotations.empty())
    return {false, RemovalReason::RuleShortUnlabeled};

  const auto list = config.stopwords.find(sample.language);
  if (list != config.stopwords.end() && !list->second.empty() && !unsegmented) {
    std::size_t words = 0;
    std::size_t stop = 0;
    for (const auto& token : text::split_whitespace(normalized)) {
      const std::string core = detail::word_core(token);
      if (core.empty()) continue;
      ++words;
      if (list->second.count(core) != 0) ++stop;
    }
    if (words > 0 && static_cast<double>(stop) / static_cast<double>(words) > config.stopword_threshold)
      return {false, RemovalReason::RuleStopword};
  }
  return {true, std::nullopt};
}

struct CleanResult {
  std::vector<UnifiedSample> samples;  // train, then val, then test; input order within each
  CleaningReport report;
};

/// Runs dedup -> leakage -> quality filter over one dataset's samples.
/// Re-running on the output is a no-op.
inline CleanResult clean_dataset(const std::vector<UnifiedSample>& samples, const CleaningConfig& config = {}) {
  config.validate();
  CleanResult out;
  out.report.input_count = samples.size();

  std::map<Split, std::vector<UnifiedSample>> by_split;
  for (const auto& s : samples) by_split[s.split].push_back(s);

  std::map<Split, std::vector<UnifiedSample>> deduped;
  for (const auto split : kAllSplits) {
    auto stage = dedup_within_split(by_split[split], config);
    out.report.absorb(stage.delta);
    deduped[split] = std::move(stage.kept);
  }

  auto leak = remove_cross_split_leakage(deduped[Split::Train], deduped[Split::Val], deduped[Split::Test]);
  out.report.absorb(leak.delta);
  deduped[Split::Train] = std::move(leak.train);
  deduped[Split::Val] = std::move(leak.val);

  for (const auto split : kAllSplits) {
    for (auto& s : deduped[split]) {
      const auto verdict = quality_filter(s, config);
      if (verdict.keep) {
        out.samples.push_back(std::move(s));
      } else {
        out.report.reject(s, *verdict.reason);
      }
    }
  }
  out.report.output_count = out.samples.size();
  return out;
}

}  // namespace ieforge
