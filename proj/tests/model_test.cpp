#include <gtest/gtest.h>

#include <algorithm>

#include "ieforge/model.hpp"
#include "test_support.hpp"

namespace ieforge {
namespace {

using testing::ee_sample;
using testing::ner_sample;
using testing::re_sample;
using K = Violation::Kind;

bool has(const std::vector<Violation>& vs, K kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

const LabelSet& conll_labels() {
  static const LabelSet set = LabelSet::of_names(TaskKind::NER, {"location", "else", "organization", "person"});
  return set;
}

TEST(ValidateSample, AcceptsKnownLabel) {
  const auto s = ner_sample("1", "The EPR said so.", {{"organization", "EPR"}});
  EXPECT_TRUE(validate_sample(s, conll_labels()).empty());
}

TEST(ValidateSample, UnknownLabel) {
  const auto s = ner_sample("1", "Bob ran.", {{"personn", "Bob"}});
  const auto v = validate_sample(s, conll_labels());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, K::UnknownLabel);
}

TEST(ValidateSample, EmptyHeadInTriple) {
  const auto labels = LabelSet::of_names(TaskKind::RE, {"company"});
  const auto s = re_sample("1", "x y z", {{"company", "  ", "Acme"}});
  EXPECT_TRUE(has(validate_sample(s, labels), K::EmptyComponent));
}

TEST(ValidateSample, DuplicateTripleAfterNormalization) {
  const auto labels = LabelSet::of_names(TaskKind::RE, {"company"});
  const auto s = re_sample("1", "x y z", {{"company", "Bob", "Acme"}, {"company", " Bob", "Acme "}});
  EXPECT_TRUE(has(validate_sample(s, labels), K::DuplicateTriple));
}

TEST(ValidateSample, EventRolesChecked) {
  const auto labels = testing::table_event_labels();
  const auto ok = ee_sample("1", "t", {{"sue", "sued", {{"plaintiff", {"Ann"}}}}});
  EXPECT_TRUE(validate_sample(ok, labels).empty());
  const auto bad_role = ee_sample("2", "t", {{"sue", "sued", {{"judge", {"Ann"}}}}});
  EXPECT_TRUE(has(validate_sample(bad_role, labels), K::UnknownRole));
  const auto no_trigger = ee_sample("3", "t", {{"sue", "", {}}});
  EXPECT_TRUE(has(validate_sample(no_trigger, labels), K::EmptyComponent));
}

TEST(ValidateSample, TaskMismatchAndEmptyText) {
  const auto s = ner_sample("1", "  ", {});
  EXPECT_TRUE(has(validate_sample(s, conll_labels()), K::EmptyText));
  const auto labels = LabelSet::of_names(TaskKind::RE, {"company"});
  EXPECT_TRUE(has(validate_sample(s, labels), K::TaskMismatch));
}

TEST(ValidateSample, PureAndRepeatable) {
  const auto s = ner_sample("1", "", {{"personn", ""}, {"personn", ""}});
  const auto before = sample_to_json(s);
  const auto a = validate_sample(s, conll_labels());
  const auto b = validate_sample(s, conll_labels());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].detail, b[i].detail);
  }
  EXPECT_EQ(sample_to_json(s), before);
}

TEST(PositiveLabels, OnlyAnnotatedRelation) {
  const auto s = re_sample("1", "t", {{"location contains", "US", "Ohio"}});
  EXPECT_EQ(positive_labels(s), std::vector<std::string>{"location contains"});
}

TEST(PositiveLabels, EmptyAnnotations) { EXPECT_TRUE(positive_labels(ner_sample("1", "text", {})).empty()); }

TEST(PositiveLabels, EventTypesAreSet) {
  const auto s = ee_sample("1", "t", {{"sue", "sued", {}}, {"sue", "filed", {}}});
  EXPECT_EQ(positive_labels(s), std::vector<std::string>{"sue"});
}

TEST(PositiveLabels, SubsetOfLabelSet) {
  const auto s = ner_sample("1", "a b", {{"person", "a"}, {"location", "b"}, {"person", "c"}});
  ASSERT_TRUE(validate_sample(s, conll_labels()).empty());
  for (const auto& l : positive_labels(s)) EXPECT_TRUE(conll_labels().contains(l));
}

TEST(LabelSet, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(LabelSet::of_names(TaskKind::NER, {"a", "a"}), ConfigError);
  EXPECT_THROW(LabelSet::of_names(TaskKind::NER, {}), ConfigError);
  EXPECT_THROW(LabelSet::of_events({{"e", true, {"r", "r"}}}), ConfigError);
}

TEST(LabelSet, FromJsonForEachTask) {
  const auto ner = label_set_from_json(TaskKind::NER, Json::parse(R"(["a", "b"])"));
  EXPECT_EQ(ner.size(), 2u);
  const auto ee = label_set_from_json(
      TaskKind::EE, Json::parse(R"({"labels": [{"event_type": "sue", "arguments": ["place"]}]})"));
  ASSERT_NE(ee.find_event("sue"), nullptr);
  EXPECT_TRUE(ee.find_event("sue")->trigger);
  EXPECT_THROW(label_set_from_json(TaskKind::NER, Json::parse(R"([1])")), ConfigError);
}

TEST(Canonicalize, CollapsesDuplicateMentionsAndDropsNan) {
  Annotations a;
  a.entities = {{"person", " Bob ", std::nullopt}, {"person", "Bob", std::nullopt}};
  a.events = {{"sue", "sued", {{"place", {"NAN"}}, {"plaintiff", {"Ann", "Ann "}}}}};
  const auto c = canonicalize(a);
  ASSERT_EQ(c.entities.size(), 1u);
  EXPECT_EQ(c.entities[0].text, "Bob");
  ASSERT_EQ(c.events[0].arguments.size(), 1u);
  EXPECT_EQ(c.events[0].arguments[0].values, std::vector<std::string>{"Ann"});
}

TEST(AnnotationKey, OrderInsensitive) {
  Annotations a;
  a.entities = {{"person", "Bob", std::nullopt}, {"location", "Rome", std::nullopt}};
  Annotations b;
  b.entities = {{"location", "Rome", std::nullopt}, {"person", "Bob", std::nullopt}};
  EXPECT_EQ(annotation_key(a), annotation_key(b));
  b.entities.pop_back();
  EXPECT_NE(annotation_key(a), annotation_key(b));
}

TEST(Interchange, RoundTripsEveryTask) {
  std::vector<UnifiedSample> samples = {
      ner_sample("n1", "EPR is here", {{"organization", "EPR"}}),
      re_sample("r1", "Mr. Bertini in Paris", {{"place of birth", "Mr. Bertini", "Paris"}}),
      ee_sample("e1", "hiring Marinello", {{"start position", "hiring", {{"person", {"Marinello"}}}}}),
  };
  samples[0].annotations.entities[0].offset = std::make_pair(0, 3);
  samples[1].split = Split::Val;
  samples[2].language = Language::Zh;
  for (const auto& s : samples) {
    const Json j = sample_to_json(s);
    EXPECT_EQ(sample_to_json(sample_from_json(j)), j);
  }
}

TEST(Interchange, FieldSetIsExact) {
  Json j = sample_to_json(ner_sample("n1", "EPR", {}));
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"id", "dataset", "split", "language", "task", "text", "annotations"}));
  j["extra"] = 1;
  EXPECT_THROW(sample_from_json(j), FormatError);
  j.erase("extra");
  j.erase("text");
  EXPECT_THROW(sample_from_json(j), FormatError);
}

TEST(ExtractionTuple, NormalizationIdempotentAndNanExcluded) {
  const auto t = ExtractionTuple::make(Facet::Entity, " person ", "Cafe\xCC\x81 ");
  ASSERT_TRUE(t);
  const auto again = ExtractionTuple::make(t->facet, t->label, t->first, t->second);
  ASSERT_TRUE(again);
  EXPECT_EQ(*t, *again);
  EXPECT_FALSE(ExtractionTuple::make(Facet::Argument, "sue", "place", "NAN"));
  EXPECT_FALSE(ExtractionTuple::make(Facet::Relation, "r", "head", " "));
}

TEST(ScoreReport, ZeroDivisionConvention) {
  const auto r = ScoreReport::from_counts(0, 0, 3);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  const auto half = ScoreReport::from_counts(1, 1, 1);
  EXPECT_DOUBLE_EQ(half.f1, 0.5);
}

}  // namespace
}  // namespace ieforge
