#include <gtest/gtest.h>

#include <numeric>

#include "ieforge/generate.hpp"
#include "test_support.hpp"

namespace ieforge {
namespace {

using testing::ee_sample;
using testing::ner_sample;
using testing::numbered_labels;
using testing::re_sample;

std::vector<std::size_t> sizes(const std::vector<std::vector<int>>& batches) {
  std::vector<std::size_t> out;
  for (const auto& b : batches) out.push_back(b.size());
  return out;
}

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(SplitBatches, Examples) {
  EXPECT_EQ(sizes(split_batches(iota(12), 4)), (std::vector<std::size_t>{4, 4, 4}));
  EXPECT_EQ(sizes(split_batches(iota(9), 4)), (std::vector<std::size_t>{4, 5}));
  EXPECT_EQ(sizes(split_batches(iota(48), 4)), std::vector<std::size_t>(12, 4));
  EXPECT_EQ(sizes(split_batches(iota(3), 6)), (std::vector<std::size_t>{3}));
  EXPECT_EQ(sizes(split_batches(iota(10), 6)), (std::vector<std::size_t>{6, 4}));
  EXPECT_EQ(sizes(split_batches(iota(8), 6)), (std::vector<std::size_t>{8}));
}

TEST(SplitBatches, ConcatenationAndBounds) {
  for (std::size_t split_num = 1; split_num <= 8; ++split_num) {
    const auto [lo, hi] = batch_size_range(split_num);
    for (int n = 1; n <= 60; ++n) {
      const auto pool = iota(n);
      const auto batches = split_batches(pool, split_num);
      std::vector<int> joined;
      for (const auto& b : batches) joined.insert(joined.end(), b.begin(), b.end());
      ASSERT_EQ(joined, pool);
      if (static_cast<std::size_t>(n) < lo) continue;
      for (const auto& b : batches) {
        EXPECT_GE(b.size(), lo) << n << "/" << split_num;
        EXPECT_LE(b.size(), hi) << n << "/" << split_num;
      }
    }
  }
}

const std::string kNerText =
    "The objective of the Basic Course on War is to provide for combatants of the EPR basic military knowledge for "
    "the armed conflict against the police and military apparatus of the bourgeoisie.";

TEST(Render, NerRowGolden) {
  const auto labels = LabelSet::of_names(TaskKind::NER, {"location", "else", "organization", "person"});
  const std::vector<std::string> batch = {"location", "else", "organization", "person"};
  const auto s = ner_sample("1", kNerText, {{"organization", "EPR"}});
  EXPECT_EQ(render_instruction(labels, Language::En, batch, s.text, GenerationConfig{}),
            "{\"instruction\": \"You are an expert in named entity recognition. Please extract entities that match "
            "the schema definition from the input. Return an empty list if the entity type does not exist. Please "
            "respond in the format of a JSON string.\", \"schema\": [\"location\", \"else\", \"organization\", "
            "\"person\"], \"input\": \"" +
                kNerText + "\"}");
  EXPECT_EQ(render_output(labels, batch, s.annotations),
            "{\"location\": [], \"else\": [], \"organization\": [\"EPR\"], \"person\": []}");
}

TEST(Render, ReRowGolden) {
  const auto labels = LabelSet::of_names(
      TaskKind::RE, {"place of birth", "country capital", "country of administrative divisions", "company"});
  const std::vector<std::string> batch = labels.labels();
  const auto s = re_sample("1", "Mr. Bertini worked in Paris", {{"place of birth", "Mr. Bertini", "Paris"}});
  EXPECT_EQ(render_output(labels, batch, s.annotations),
            "{\"place of birth\": [{\"head\": \"Mr. Bertini\", \"tail\": \"Paris\"}], \"country capital\": [], "
            "\"country of administrative divisions\": [], \"company\": []}");
  const auto instr = render_instruction(labels, Language::En, batch, s.text, GenerationConfig{});
  EXPECT_NE(instr.find("\"schema\": [\"place of birth\", \"country capital\", \"country of administrative divisions\", "
                       "\"company\"]"),
            std::string::npos);
}

TEST(Render, EeRowGolden) {
  const auto labels = testing::table_event_labels();
  const std::vector<std::string> batch = labels.labels();
  const auto s = ee_sample("1", "Ethical and legal issues in hiring Marinello",
                           {{"start position", "hiring", {{"person", {"Marinello"}}}}});
  EXPECT_EQ(render_instruction(labels, Language::En, batch, s.text, GenerationConfig{}),
            "{\"instruction\": \"You are an expert in event extraction. Please extract events from the input that "
            "conform to the schema definition. Return an empty list for events that do not exist, and return NAN for "
            "arguments that do not exist. If an argument has multiple values, please return a list. Respond in the "
            "format of a JSON string.\", \"schema\": [{\"event_type\": \"pardon\", \"trigger\": true, \"arguments\": "
            "[\"defendant\"]}, {\"event_type\": \"extradite\", \"trigger\": true, \"arguments\": [\"person\", "
            "\"agent\", \"destination\", \"origin\"]}, {\"event_type\": \"sue\", \"trigger\": true, \"arguments\": "
            "[\"place\", \"plaintiff\"]}, {\"event_type\": \"start position\", \"trigger\": true, \"arguments\": "
            "[\"person\", \"entity\", \"place\"]}], \"input\": \"Ethical and legal issues in hiring Marinello\"}");
  EXPECT_EQ(render_output(labels, batch, s.annotations),
            "{\"pardon\": [], \"extradite\": [], \"sue\": [], \"start position\": [{\"trigger\": \"hiring\", "
            "\"arguments\": {\"person\": \"Marinello\", \"entity\": \"NAN\", \"place\": \"NAN\"}}]}");
}

TEST(Render, MultiValuedRoleAndHiddenTrigger) {
  const auto labels = LabelSet::of_events({{"attack", true, {"target"}}, {"merge", false, {"party"}}});
  const auto s = ee_sample("1", "t", {{"attack", "hit", {{"target", {"convoy", "embassy"}}}},
                                      {"merge", "joined", {{"party", {"A"}}}}});
  EXPECT_EQ(render_output(labels, labels.labels(), s.annotations),
            "{\"attack\": [{\"trigger\": \"hit\", \"arguments\": {\"target\": [\"convoy\", \"embassy\"]}}], "
            "\"merge\": [{\"arguments\": {\"party\": \"A\"}}]}");
}

TEST(Render, NegativeBatchAndErrors) {
  const auto labels = LabelSet::of_names(TaskKind::NER, {"a", "b"});
  const std::vector<std::string> batch = {"b", "a"};
  EXPECT_EQ(render_output(labels, batch, Annotations{}), "{\"b\": [], \"a\": []}");
  EXPECT_THROW(render_instruction(labels, Language::En, {}, "x", GenerationConfig{}), ConfigError);
  EXPECT_THROW(render_instruction(labels, Language::Zh, batch, "x", GenerationConfig{}), TemplateError);
}

struct AcceptanceFixture {
  LabelSet labels = LabelSet::of_names(TaskKind::RE, numbered_labels(48));
  HardNegativeDictionary dict{TaskKind::RE};
  UnifiedSample sample = re_sample("s1", "h t", {{"L03", "h", "t"}, {"L17", "h", "t"}});
  AcceptanceFixture() {
    dict.set("L03", {"L04", "L05"});
    dict.set("L17", {"L18", "L19"});
  }
};

TEST(GenerateInstances, HardNegativeVersusTraditional) {
  AcceptanceFixture f;
  GenerationConfig config;
  RngStream rng(3, "ds", "s1");
  const auto hn = generate_instances(f.sample, f.labels, f.dict, config, rng);
  ASSERT_EQ(hn.size(), 3u);
  std::size_t total = 0;
  for (std::size_t i = 0; i < hn.size(); ++i) {
    EXPECT_EQ(hn[i].batch_index, i);
    total += hn[i].schema_batch.size();
  }
  EXPECT_EQ(total, 10u);

  config.mode = GenerationMode::TraditionalFullSchema;
  RngStream rng2(3, "ds", "s1");
  const auto trad = generate_instances(f.sample, f.labels, f.dict, config, rng2);
  ASSERT_EQ(trad.size(), 12u);
  EXPECT_EQ(trad[0].schema_batch, (std::vector<std::string>{"L00", "L01", "L02", "L03"}));
}

TEST(GenerateInstances, EveryPositiveInExactlyOneBatch) {
  AcceptanceFixture f;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RngStream rng(seed, "ds", "s1");
    const auto out = generate_instances(f.sample, f.labels, f.dict, GenerationConfig{}, rng);
    for (const auto& p : positive_labels(f.sample)) {
      int hits = 0;
      for (const auto& inst : out) hits += std::count(inst.schema_batch.begin(), inst.schema_batch.end(), p);
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(GenerateInstances, PoolOfFourGivesOneInstance) {
  const auto labels = LabelSet::of_names(TaskKind::RE, {"a", "b", "c", "d"});
  const auto s = re_sample("s", "h t", {{"a", "h", "t"}});
  RngStream rng(1, "ds", "s");
  EXPECT_EQ(generate_instances(s, labels, HardNegativeDictionary(TaskKind::RE), GenerationConfig{}, rng).size(), 1u);
}

TEST(CorpusLines, ExactKeys) {
  InstructionInstance inst;
  inst.instruction_payload = "{}";
  inst.output_payload = "{}";
  inst.schema_batch = {"a"};
  EXPECT_EQ(json_io::dump_canonical(corpus_line(inst)), "{\"instruction\": \"{}\", \"output\": \"{}\"}");
  const auto meta = metadata_line(inst);
  EXPECT_EQ(meta["schema"], Json::array({"a"}));
  EXPECT_EQ(meta["batch_index"], 0);
}

DatasetRecord record_for(const LabelSet& labels, std::span<const UnifiedSample> samples, Language lang) {
  GenerationConfig config;
  std::vector<InstructionInstance> instances;
  const auto dict = build_hard_neg_dict(labels);
  for (const auto& s : samples) {
    RngStream rng(7, s.dataset, s.id);
    auto more = generate_instances(s, labels, dict, config, rng);
    instances.insert(instances.end(), more.begin(), more.end());
  }
  return build_dataset_record({"ds", "news", lang, &labels, samples, instances}, config);
}

TEST(DatasetRecord, OntonotesShaped) {
  const std::vector<std::string> names = {"cardinal", "date",    "event",   "fac",      "gpe",      "language",
                                          "law",      "loc",     "money",   "norp",     "ordinal",  "org",
                                          "percent",  "person",  "product", "quantity", "time",     "work_of_art"};
  const auto labels = LabelSet::of_names(TaskKind::NER, names);
  std::vector<UnifiedSample> samples = {ner_sample("a", "Bob in Rome", {{"person", "Bob"}, {"gpe", "Rome"}}),
                                        ner_sample("b", "nothing here", {}, Split::Test)};
  const auto r = record_for(labels, samples, Language::En);
  EXPECT_EQ(r.schema_count, 18u);
  EXPECT_EQ(r.split_num, 6u);
  EXPECT_EQ(r.histogram_range, (std::pair<std::size_t, std::size_t>{3, 9}));
  std::size_t sum = 0;
  for (const auto& [size, count] : r.split_size_histogram) sum += count;
  EXPECT_EQ(sum, r.instruction_count);
  EXPECT_EQ(r.split_sample_counts.at("train"), 1u);
  EXPECT_EQ(r.split_sample_counts.at("test"), 1u);
  EXPECT_GT(r.token_count, 0u);
}

TEST(DatasetRecord, DuieShapedAndEmpty) {
  const auto labels = LabelSet::of_names(TaskKind::RE, numbered_labels(49));
  const auto r = record_for(labels, {}, Language::Zh);
  EXPECT_EQ(r.schema_count, 49u);
  EXPECT_EQ(r.language, Language::Zh);
  EXPECT_EQ(r.sample_count, 0u);
  EXPECT_EQ(r.instruction_count, 0u);
  EXPECT_TRUE(r.split_size_histogram.empty());
  EXPECT_EQ(r.token_count, 0u);
}

TEST(CountTokens, DefaultCounter) {
  EXPECT_EQ(default_token_count("a b c"), 3u);
  EXPECT_EQ(default_token_count(""), 0u);
  EXPECT_EQ(default_token_count("北京 is 首都"), 5u);
  const std::string x = "Bob met 北京", y = "again, here";
  EXPECT_EQ(default_token_count(x + " " + y), default_token_count(x) + default_token_count(y));
  const std::vector<std::string> payloads = {x, y};
  EXPECT_EQ(count_tokens(payloads), 6u);
  EXPECT_EQ(count_tokens(payloads, [](std::string_view s) { return s.size(); }), x.size() + y.size());
}

TEST(GenerationConfig, Validation) {
  GenerationConfig c;
  EXPECT_NO_THROW(c.validate());
  c.split_num[TaskKind::NER] = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(parse_generation_mode("traditional"), GenerationMode::TraditionalFullSchema);
  EXPECT_THROW(parse_generation_mode("fast"), ConfigError);
}

}  // namespace
}  // namespace ieforge
