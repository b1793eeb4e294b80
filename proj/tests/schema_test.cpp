#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ieforge/schema.hpp"
#include "test_support.hpp"

namespace ieforge {
namespace {

using testing::ner_sample;
using testing::numbered_labels;
using testing::re_sample;

TEST(LabelSimilarity, JaccardOverLowercasedTokens) {
  EXPECT_EQ(label_tokens("Country_of  Birth"), (std::set<std::string>{"country", "of", "birth"}));
  // {country, capital} vs {country, of, administrative, divisions}: 1 / 5
  EXPECT_DOUBLE_EQ(label_similarity("country capital", "country of administrative divisions"), 0.2);
  EXPECT_DOUBLE_EQ(label_similarity("country capital", "company"), 0.0);
  EXPECT_DOUBLE_EQ(label_similarity("a b", "B A"), 1.0);
}

TEST(HardNegDict, CuratedOverridesReflected) {
  const auto labels = LabelSet::of_events(
      {{"layoffs", true, {}}, {"depart", true, {}}, {"dismissals", true, {}}, {"sue", true, {}}});
  SimilarityConfig sim;
  sim.curated_overrides["layoffs"] = {"depart", "dismissals"};
  const auto dict = build_hard_neg_dict(labels, sim);
  const auto& n = dict.neighbors("layoffs");
  EXPECT_EQ(n, (std::vector<std::string>{"depart", "dismissals"}));
  EXPECT_TRUE(dict.neighbors("sue").empty());
  EXPECT_TRUE(dict.neighbors("depart").empty());  // not symmetrised
}

TEST(HardNegDict, LexicalPicksSharedToken) {
  const auto labels =
      LabelSet::of_names(TaskKind::RE, {"country capital", "country of administrative divisions", "company"});
  SimilarityConfig sim;
  sim.mode = SimilarityMode::Lexical;
  sim.lexical_threshold = 0.2;
  const auto dict = build_hard_neg_dict(labels, sim);
  EXPECT_EQ(dict.neighbors("country capital"), std::vector<std::string>{"country of administrative divisions"});
  EXPECT_TRUE(dict.neighbors("company").empty());

  sim.lexical_threshold = 0.5;
  EXPECT_TRUE(build_hard_neg_dict(labels, sim).neighbors("country capital").empty());
}

TEST(HardNegDict, SingletonMapsToEmpty) {
  const auto labels = LabelSet::of_names(TaskKind::NER, {"person"});
  const auto dict = build_hard_neg_dict(labels);
  EXPECT_TRUE(dict.neighbors("person").empty());
  EXPECT_EQ(dict.entries().size(), 1u);
}

TEST(HardNegDict, ModesAndCap) {
  const auto labels = LabelSet::of_names(TaskKind::NER, {"a x", "a y", "a z", "a w", "b"});
  SimilarityConfig sim;
  sim.lexical_threshold = 0.3;
  sim.max_neighbors_per_key = 2;
  sim.curated_overrides["b"] = {"a x", "a y", "a z"};
  const auto both = build_hard_neg_dict(labels, sim);
  EXPECT_EQ(both.neighbors("a x").size(), 2u);
  EXPECT_EQ(both.neighbors("b").size(), 3u);  // curated is uncapped

  sim.mode = SimilarityMode::CuratedOnly;
  const auto curated = build_hard_neg_dict(labels, sim);
  EXPECT_TRUE(curated.neighbors("a x").empty());
  EXPECT_EQ(curated.neighbors("b").size(), 3u);

  sim.mode = SimilarityMode::Lexical;
  EXPECT_TRUE(build_hard_neg_dict(labels, sim).neighbors("b").empty());
}

TEST(HardNegDict, UnknownCuratedLabelIsConfigError) {
  const auto labels = LabelSet::of_names(TaskKind::NER, {"person"});
  SimilarityConfig sim;
  sim.curated_overrides["person"] = {"nobody"};
  EXPECT_THROW(build_hard_neg_dict(labels, sim), ConfigError);
  sim.curated_overrides = {{"nobody", {}}};
  EXPECT_THROW(build_hard_neg_dict(labels, sim), ConfigError);
}

TEST(HardNegDict, DeterministicAndSelfFree) {
  const auto labels = LabelSet::of_names(TaskKind::NER, numbered_labels(30));
  SimilarityConfig sim;
  sim.lexical_threshold = 0.0;
  const auto a = dictionary_to_json(build_hard_neg_dict(labels, sim), labels);
  const auto b = dictionary_to_json(build_hard_neg_dict(labels, sim), labels);
  EXPECT_EQ(a, b);
  for (const auto& [key, values] : a.items())
    for (const auto& v : values) EXPECT_NE(v.get<std::string>(), key);
}

// |L| = 48, two positives, four curated hard negatives.
struct PoolFixture {
  LabelSet labels = LabelSet::of_names(TaskKind::NER, numbered_labels(48));
  HardNegativeDictionary dict{TaskKind::NER};
  UnifiedSample sample = ner_sample("s1", "x y", {{"L03", "x"}, {"L17", "y"}});
  PoolFixture() {
    dict.set("L03", {"L04", "L05", "L17"});
    dict.set("L17", {"L18", "L19"});
  }
};

TEST(SchemaPool, AcceptanceShape) {
  PoolFixture f;
  RngStream rng(42, "ds", "s1");
  const auto part = assemble_schema_pool(f.sample, f.labels, f.dict, 4, rng);
  EXPECT_EQ(part.positive, (std::vector<std::string>{"L03", "L17"}));
  EXPECT_EQ(part.hard_negative, (std::vector<std::string>{"L04", "L05", "L18", "L19"}));
  EXPECT_EQ(part.other_negative_sampled.size(), 4u);
  EXPECT_EQ(part.pool.size(), 10u);
}

TEST(SchemaPool, UnannotatedSampleGetsNegativesOnly) {
  PoolFixture f;
  const auto s = ner_sample("s2", "nothing", {});
  RngStream rng(1, "ds", "s2");
  const auto part = assemble_schema_pool(s, f.labels, f.dict, 4, rng);
  EXPECT_TRUE(part.positive.empty());
  EXPECT_TRUE(part.hard_negative.empty());
  EXPECT_EQ(part.pool.size(), 4u);
}

TEST(SchemaPool, AllPositiveIsShuffledLabelSet) {
  const auto labels = LabelSet::of_names(TaskKind::NER, {"a", "b", "c"});
  const auto s = ner_sample("s", "a b c", {{"c", "c"}, {"a", "a"}, {"b", "b"}});
  RngStream rng(5, "ds", "s");
  auto part = assemble_schema_pool(s, labels, HardNegativeDictionary(TaskKind::NER), 4, rng);
  EXPECT_TRUE(part.other_negative_sampled.empty());
  std::sort(part.pool.begin(), part.pool.end());
  EXPECT_EQ(part.pool, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(SchemaPool, RejectsZeroSplitNum) {
  PoolFixture f;
  RngStream rng(1, "ds", "s1");
  EXPECT_THROW(assemble_schema_pool(f.sample, f.labels, f.dict, 0, rng), ConfigError);
}

// Random label sets, dictionaries and samples.
TEST(SchemaPool, Invariants) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    const auto names = numbered_labels(n);
    const auto labels = LabelSet::of_names(TaskKind::RE, names);
    HardNegativeDictionary dict(TaskKind::RE);
    for (const auto& key : names) {
      std::vector<std::string> nb;
      for (std::size_t k = gen() % 5; k > 0; --k) nb.push_back(names[gen() % n]);
      dict.set(key, nb);
    }
    std::vector<RelationTriple> triples;
    for (std::size_t k = gen() % 4; k > 0; --k) triples.push_back({names[gen() % n], "h", "t" + std::to_string(k)});
    const auto sample = re_sample("s" + std::to_string(trial), "h t", triples);
    const std::size_t split_num = 1 + gen() % 6;

    RngStream r1(99, "ds", sample.id);
    RngStream r2(99, "ds", sample.id);
    const auto a = assemble_schema_pool(sample, labels, dict, split_num, r1);
    const auto b = assemble_schema_pool(sample, labels, dict, split_num, r2);
    ASSERT_EQ(a.pool, b.pool);

    const std::set<std::string> pool(a.pool.begin(), a.pool.end());
    EXPECT_EQ(pool.size(), a.pool.size());
    EXPECT_LE(a.pool.size(), n);
    for (const auto& p : positive_labels(sample)) EXPECT_EQ(pool.count(p), 1u);
    const std::size_t others = n - a.positive.size() - a.hard_negative.size();
    EXPECT_EQ(a.other_negative_sampled.size(), std::min(split_num, others));
  }
}

}  // namespace
}  // namespace ieforge
