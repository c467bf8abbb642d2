/*
 * Copyright 2026 The gradeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gradeval/corpus_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <system_error>
#include <utility>

#include "gradeval/errors.h"

namespace gradeval {
namespace {

// Splits one line into whitespace-separated fields, dropping any '#'
// comment and a trailing carriage return.
std::vector<std::string_view> Fields(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Calls `fn(line_number, fields)` for every non-blank line.
template <typename Fn>
void ForEachRecord(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = Fields(line);
    if (fields.empty()) continue;
    fn(line_number, fields);
  }
  if (in.bad()) throw IoError("read failure");
}

template <typename T>
bool ParseNumber(std::string_view text, T& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

int ParseLevel(std::string_view text, std::size_t line) {
  int level = 0;
  if (!ParseNumber(text, level)) {
    throw ParseError(line, "relevance level '" + std::string(text) +
                               "' is not an integer");
  }
  if (level < 0) {
    throw ParseError(line, "relevance level " + std::string(text) +
                               " is negative");
  }
  return level;
}

double ParseReal(std::string_view text, std::size_t line,
                 std::string_view what) {
  double value = 0.0;
  if (!ParseNumber(text, value) || !std::isfinite(value)) {
    throw ParseError(line, std::string(what) + " '" + std::string(text) +
                               "' is not a finite number");
  }
  return value;
}

double ParseProbability(std::string_view text, std::size_t line) {
  double p = ParseReal(text, line, "probability");
  if (p < 0.0 || p > 1.0) {
    throw ValidationError(line, "probability " + std::string(text) +
                                    " outside [0,1]");
  }
  return p;
}

void ExpectArity(const std::vector<std::string_view>& fields,
                 std::size_t min_fields, std::size_t max_fields,
                 std::size_t line, std::string_view format) {
  if (fields.size() < min_fields || fields.size() > max_fields) {
    throw ParseError(line, "expected '" + std::string(format) + "', got " +
                               std::to_string(fields.size()) + " fields");
  }
}

template <typename Fn>
auto WithSource(const std::filesystem::path& path, Fn&& parse) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw IoError(path.string() + ": cannot open file");
    in = &file;
  }
  try {
    return parse(*in);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string(), e.line(), e.detail());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string FormatReal(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// Qrels

const DocLevels* TopicQrels::intent(std::string_view intent_id) const {
  auto it = by_intent.find(intent_id);
  return it == by_intent.end() ? nullptr : &it->second;
}

DocLevels TopicQrels::topic_level() const {
  if (const DocLevels* direct = intent(kTopicLevelIntent)) return *direct;
  DocLevels merged;
  for (const auto& [intent_id, docs] : by_intent) {
    for (const auto& [doc, level] : docs) {
      auto [it, inserted] = merged.emplace(doc, level);
      if (!inserted) it->second = std::max(it->second, level);
    }
  }
  return merged;
}

bool TopicQrels::has_intent_judgments() const {
  return std::any_of(by_intent.begin(), by_intent.end(), [](const auto& kv) {
    return kv.first != kTopicLevelIntent;
  });
}

void GradedQrels::Add(Judgment judgment, std::size_t line) {
  if (judgment.level < 0) {
    throw ValidationError(line, "negative relevance level");
  }
  if (judgment.topic.empty() || judgment.intent.empty() ||
      judgment.doc.empty()) {
    throw ValidationError(line, "empty id");
  }
  DocLevels& docs = topics_[judgment.topic].by_intent[judgment.intent];
  auto [it, inserted] = docs.emplace(judgment.doc, judgment.level);
  if (!inserted) {
    throw ValidationError(line, "duplicate judgment for topic " +
                                    judgment.topic + " intent " +
                                    judgment.intent + " doc " + judgment.doc);
  }
  max_level_ = std::max(max_level_, judgment.level);
  judgments_.push_back(std::move(judgment));
}

const TopicQrels* GradedQrels::topic(std::string_view topic_id) const {
  auto it = topics_.find(topic_id);
  return it == topics_.end() ? nullptr : &it->second;
}

GradedQrels ParseQrels(std::istream& in) {
  GradedQrels qrels;
  ForEachRecord(in, [&](std::size_t line, const auto& f) {
    ExpectArity(f, 4, 4, line, "topic intent doc level");
    qrels.Add({std::string(f[0]), std::string(f[1]), std::string(f[2]),
               ParseLevel(f[3], line)},
              line);
  });
  return qrels;
}

void WriteQrels(std::ostream& out, const GradedQrels& qrels) {
  for (const Judgment& j : qrels.judgments()) {
    out << j.topic << ' ' << j.intent << ' ' << j.doc << ' ' << j.level
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// Runs

std::vector<std::string> TopicRun::ranking() const {
  std::vector<std::string> docs;
  docs.reserve(entries.size());
  for (const RunEntry& e : entries) docs.push_back(e.doc);
  return docs;
}

TopicRun& RankedRun::AddTopic(std::string_view topic_id) {
  auto it = index_.find(topic_id);
  if (it != index_.end()) return topics_[it->second];
  index_.emplace(std::string(topic_id), topics_.size());
  topics_.push_back(TopicRun{std::string(topic_id), {}});
  seen_.emplace_back();
  return topics_.back();
}

void RankedRun::Add(std::string_view topic_id, RunEntry entry,
                    std::size_t line) {
  if (topic_id.empty() || entry.doc.empty()) {
    throw ValidationError(line, "empty id");
  }
  TopicRun& topic = AddTopic(topic_id);
  auto& seen = seen_[index_.find(topic_id)->second];
  if (!seen.insert(entry.doc).second) {
    throw ValidationError(line, "document " + entry.doc +
                                    " repeated in topic " + topic.topic);
  }
  topic.entries.push_back(std::move(entry));
}

const TopicRun* RankedRun::topic(std::string_view topic_id) const {
  auto it = index_.find(topic_id);
  return it == index_.end() ? nullptr : &topics_[it->second];
}

RankedRun ParseRun(std::istream& in, std::vector<Warning>* warnings) {
  RankedRun run;
  bool have_tag = false;
  ForEachRecord(in, [&](std::size_t line, const auto& f) {
    ExpectArity(f, 6, 7, line, "topic Q0 doc rank score tag [vertical]");
    RunEntry entry;
    entry.doc = std::string(f[2]);
    if (!ParseNumber(f[3], entry.rank)) {
      throw ParseError(line, "rank '" + std::string(f[3]) +
                                 "' is not an integer");
    }
    entry.score = ParseReal(f[4], line, "score");
    if (f.size() == 7) entry.vertical = std::string(f[6]);
    if (!have_tag) {
      run.tag = std::string(f[5]);
      have_tag = true;
    } else if (f[5] != run.tag) {
      throw ValidationError(line, "run tag '" + std::string(f[5]) +
                                      "' differs from '" + run.tag + "'");
    }
    const TopicRun* existing = run.topic(f[0]);
    if (warnings != nullptr && existing != nullptr &&
        !existing->entries.empty() &&
        entry.rank <= existing->entries.back().rank) {
      warnings->push_back(
          {line, "rank " + std::to_string(entry.rank) + " for topic " +
                     std::string(f[0]) +
                     " does not increase; file order is used"});
    }
    run.Add(f[0], std::move(entry), line);
  });
  return run;
}

void WriteRun(std::ostream& out, const RankedRun& run) {
  for (const TopicRun& topic : run.topics()) {
    for (const RunEntry& e : topic.entries) {
      out << topic.topic << " Q0 " << e.doc << ' ' << e.rank << ' '
          << FormatReal(e.score) << ' ' << run.tag;
      if (e.vertical) out << ' ' << *e.vertical;
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Intents and verticals

double Intent::vertical_probability(std::string_view vertical) const {
  auto it = verticals.find(vertical);
  return it == verticals.end() ? 0.0 : it->second;
}

const Intent* TopicIntents::find(std::string_view intent_id) const {
  for (const Intent& intent : intents) {
    if (intent.id == intent_id) return &intent;
  }
  return nullptr;
}

double TopicIntents::probability_sum() const {
  double sum = 0.0;
  for (const Intent& intent : intents) sum += intent.probability;
  return sum;
}

void IntentSet::AddIntent(std::string_view topic_id, Intent intent,
                          std::size_t line) {
  if (intent.probability < 0.0 || intent.probability > 1.0 ||
      std::isnan(intent.probability)) {
    throw ValidationError(line, "intent probability outside [0,1]");
  }
  for (const auto& [vertical, p] : intent.verticals) {
    if (p < 0.0 || p > 1.0 || std::isnan(p)) {
      throw ValidationError(line, "vertical probability outside [0,1]");
    }
  }
  TopicIntents& topic = topics_[std::string(topic_id)];
  if (topic.find(intent.id) != nullptr) {
    throw ValidationError(line, "intent " + intent.id + " repeated in topic " +
                                    std::string(topic_id));
  }
  topic.intents.push_back(std::move(intent));
  if (topic.probability_sum() > 1.0 + kProbabilitySumSlack) {
    throw ValidationError(line, "intent probabilities for topic " +
                                    std::string(topic_id) + " sum to " +
                                    FormatReal(topic.probability_sum()) +
                                    " > 1");
  }
}

void IntentSet::SetVertical(std::string_view topic_id,
                            std::string_view intent_id, std::string vertical,
                            double probability, std::size_t line) {
  if (probability < 0.0 || probability > 1.0 || std::isnan(probability)) {
    throw ValidationError(line, "vertical probability outside [0,1]");
  }
  auto topic = topics_.find(topic_id);
  Intent* intent = nullptr;
  if (topic != topics_.end()) {
    for (Intent& candidate : topic->second.intents) {
      if (candidate.id == intent_id) intent = &candidate;
    }
  }
  if (intent == nullptr) {
    throw ValidationError(line, "unknown intent " + std::string(intent_id) +
                                    " for topic " + std::string(topic_id));
  }
  if (!intent->verticals.emplace(vertical, probability).second) {
    throw ValidationError(line, "vertical " + vertical + " repeated for intent " +
                                    intent->id);
  }
}

const TopicIntents* IntentSet::topic(std::string_view topic_id) const {
  auto it = topics_.find(topic_id);
  return it == topics_.end() ? nullptr : &it->second;
}

IntentSet ParseIntents(std::istream& in) {
  IntentSet set;
  ForEachRecord(in, [&](std::size_t line, const auto& f) {
    ExpectArity(f, 3, 4, line, "topic intent prob [inf|nav]");
    Intent intent;
    intent.id = std::string(f[1]);
    intent.probability = ParseProbability(f[2], line);
    if (f.size() == 4) {
      if (f[3] == "inf" || f[3] == "informational") {
        intent.kind = IntentKind::kInformational;
      } else if (f[3] == "nav" || f[3] == "navigational") {
        intent.kind = IntentKind::kNavigational;
      } else {
        throw ParseError(line, "intent tag '" + std::string(f[3]) +
                                   "' is neither inf nor nav");
      }
    }
    set.AddIntent(f[0], std::move(intent), line);
  });
  return set;
}

void ParseVerticals(std::istream& in, IntentSet& intents) {
  ForEachRecord(in, [&](std::size_t line, const auto& f) {
    ExpectArity(f, 4, 4, line, "topic intent vertical prob");
    intents.SetVertical(f[0], f[1], std::string(f[2]),
                        ParseProbability(f[3], line), line);
  });
}

void WriteIntents(std::ostream& out, const IntentSet& intents) {
  for (const auto& [topic, set] : intents.topics()) {
    for (const Intent& intent : set.intents) {
      out << topic << ' ' << intent.id << ' '
          << FormatReal(intent.probability) << ' '
          << (intent.kind == IntentKind::kNavigational ? "nav" : "inf")
          << '\n';
    }
  }
}

void WriteVerticals(std::ostream& out, const IntentSet& intents) {
  for (const auto& [topic, set] : intents.topics()) {
    for (const Intent& intent : set.intents) {
      for (const auto& [vertical, p] : intent.verticals) {
        out << topic << ' ' << intent.id << ' ' << vertical << ' '
            << FormatReal(p) << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Equivalence classes and subtopic maps

void EquivalenceClasses::Add(std::string_view topic_id, std::string class_id,
                             std::string doc, std::size_t line) {
  auto& class_of = topics_[std::string(topic_id)].class_of;
  auto [it, inserted] = class_of.emplace(doc, class_id);
  if (!inserted) {
    throw ValidationError(line, "document " + doc + " already in class " +
                                    it->second);
  }
}

const TopicClasses* EquivalenceClasses::topic(std::string_view topic_id) const {
  auto it = topics_.find(topic_id);
  return it == topics_.end() ? nullptr : &it->second;
}

EquivalenceClasses ParseClasses(std::istream& in) {
  EquivalenceClasses classes;
  ForEachRecord(in, [&](std::size_t line, const auto& f) {
    ExpectArity(f, 3, 3, line, "topic class-id doc");
    classes.Add(f[0], std::string(f[1]), std::string(f[2]), line);
  });
  return classes;
}

void WriteClasses(std::ostream& out, const EquivalenceClasses& classes) {
  for (const auto& [topic, tc] : classes.topics()) {
    for (const auto& [doc, class_id] : tc.class_of) {
      out << topic << ' ' << class_id << ' ' << doc << '\n';
    }
  }
}

void SubtopicMap::Add(std::string_view topic_id, std::string subtopic,
                      std::string intent_id, std::size_t line) {
  auto& subtopics = topics_[std::string(topic_id)];
  auto [it, inserted] = subtopics.emplace(subtopic, intent_id);
  if (!inserted) {
    throw ValidationError(line, "subtopic " + subtopic +
                                    " already belongs to intent " + it->second);
  }
}

std::optional<std::string_view> SubtopicMap::intent_of(
    std::string_view topic_id, std::string_view subtopic) const {
  auto topic = topics_.find(topic_id);
  if (topic == topics_.end()) return std::nullopt;
  auto it = topic->second.find(subtopic);
  if (it == topic->second.end()) return std::nullopt;
  return std::string_view(it->second);
}

SubtopicMap ParseSubtopicMap(std::istream& in) {
  SubtopicMap map;
  ForEachRecord(in, [&](std::size_t line, const auto& f) {
    ExpectArity(f, 3, 3, line, "topic subtopic intent");
    map.Add(f[0], std::string(f[1]), std::string(f[2]), line);
  });
  return map;
}

void WriteSubtopicMap(std::ostream& out, const SubtopicMap& map) {
  for (const auto& [topic, subtopics] : map.topics()) {
    for (const auto& [subtopic, intent] : subtopics) {
      out << topic << ' ' << subtopic << ' ' << intent << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Loaders

GradedQrels LoadQrels(const std::filesystem::path& path) {
  return WithSource(path, [](std::istream& in) { return ParseQrels(in); });
}

RankedRun LoadRun(const std::filesystem::path& path,
                  std::vector<Warning>* warnings) {
  return WithSource(path,
                    [&](std::istream& in) { return ParseRun(in, warnings); });
}

IntentSet LoadIntents(const std::filesystem::path& path) {
  return WithSource(path, [](std::istream& in) { return ParseIntents(in); });
}

void LoadVerticals(const std::filesystem::path& path, IntentSet& intents) {
  WithSource(path, [&](std::istream& in) {
    ParseVerticals(in, intents);
    return 0;
  });
}

EquivalenceClasses LoadClasses(const std::filesystem::path& path) {
  return WithSource(path, [](std::istream& in) { return ParseClasses(in); });
}

SubtopicMap LoadSubtopicMap(const std::filesystem::path& path) {
  return WithSource(path,
                    [](std::istream& in) { return ParseSubtopicMap(in); });
}

}  // namespace gradeval
