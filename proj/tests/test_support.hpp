#pragma once

// Small builders shared by the unit tests.

#include <string>
#include <utility>
#include <vector>

#include "ieforge/model.hpp"

namespace ieforge::testing {

inline UnifiedSample ner_sample(std::string id, std::string text,
                                std::vector<std::pair<std::string, std::string>> mentions,
                                Split split = Split::Train, std::string dataset = "ds") {
  UnifiedSample s;
  s.id = std::move(id);
  s.dataset = std::move(dataset);
  s.split = split;
  s.task = TaskKind::NER;
  s.text = std::move(text);
  for (auto& [type, mention] : mentions) s.annotations.entities.push_back({type, mention, std::nullopt});
  return s;
}

inline UnifiedSample re_sample(std::string id, std::string text, std::vector<RelationTriple> triples) {
  UnifiedSample s;
  s.id = std::move(id);
  s.dataset = "ds";
  s.task = TaskKind::RE;
  s.text = std::move(text);
  s.annotations.relations = std::move(triples);
  return s;
}

inline UnifiedSample ee_sample(std::string id, std::string text, std::vector<EventMention> events) {
  UnifiedSample s;
  s.id = std::move(id);
  s.dataset = "ds";
  s.task = TaskKind::EE;
  s.text = std::move(text);
  s.annotations.events = std::move(events);
  return s;
}

/// Four event schemas used by the EE golden payload tests.
inline LabelSet table_event_labels() {
  return LabelSet::of_events({
      {"pardon", true, {"defendant"}},
      {"extradite", true, {"person", "agent", "destination", "origin"}},
      {"sue", true, {"place", "plaintiff"}},
      {"start position", true, {"person", "entity", "place"}},
  });
}

/// Labels "L00" .. "L{n-1}".
inline std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back((i < 10 ? "L0" : "L") + std::to_string(i));
  return out;
}

}  // namespace ieforge::testing
