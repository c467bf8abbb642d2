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

// Readers and writers for the toolkit's line-oriented text formats.
//
//   qrels        topic intent doc level       (intent "0" = topic level)
//   run          topic Q0 doc rank score tag [vertical]
//   intents      topic intent prob [inf|nav]
//   verticals    topic intent vertical prob
//   classes      topic class-id doc
//   subtopics    topic subtopic intent
//
// Fields are separated by runs of spaces or tabs. '#' starts a comment that
// runs to end of line. Blank lines are ignored. Ids are compared byte-wise.
//
// Every parser either returns a fully validated value or throws a
// ParseError / ValidationError carrying the offending line number.

#ifndef GRADEVAL_CORPUS_IO_H_
#define GRADEVAL_CORPUS_IO_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gradeval {

// Intent token in the qrels intent column that marks topic-level judgments.
inline constexpr std::string_view kTopicLevelIntent = "0";

using DocLevels = std::map<std::string, int, std::less<>>;

// Judgments for one topic, keyed by intent id (kTopicLevelIntent included).
struct TopicQrels {
  std::map<std::string, DocLevels, std::less<>> by_intent;

  // Judgments for one intent, or nullptr.
  const DocLevels* intent(std::string_view intent_id) const;

  // Topic-level judgments. When the topic only carries per-intent
  // judgments, each document gets its maximum level across intents.
  DocLevels topic_level() const;

  // True if any intent other than the topic-level sentinel is judged.
  bool has_intent_judgments() const;
};

struct Judgment {
  std::string topic;
  std::string intent;
  std::string doc;
  int level = 0;
};

class GradedQrels {
 public:
  // Throws ValidationError on a repeated (topic, intent, doc) triple or a
  // negative level. `line` only decorates the error.
  void Add(Judgment judgment, std::size_t line = 0);

  const TopicQrels* topic(std::string_view topic_id) const;
  const std::map<std::string, TopicQrels, std::less<>>& topics() const {
    return topics_;
  }
  // Judgments in insertion order.
  const std::vector<Judgment>& judgments() const { return judgments_; }
  // Highest level over the whole collection; 0 when empty.
  int max_level() const { return max_level_; }

 private:
  std::map<std::string, TopicQrels, std::less<>> topics_;
  std::vector<Judgment> judgments_;
  int max_level_ = 0;
};

struct RunEntry {
  std::string doc;
  std::optional<std::string> vertical;
  double score = 0.0;
  long rank = 0;
};

struct TopicRun {
  std::string topic;
  // Evaluated ranking, in file order.
  std::vector<RunEntry> entries;

  std::vector<std::string> ranking() const;
};

class RankedRun {
 public:
  std::string tag;

  // Appends to the topic's ranking. Throws ValidationError on a document
  // repeated within the topic.
  void Add(std::string_view topic_id, RunEntry entry, std::size_t line = 0);
  // Ensures a (possibly empty) ranking exists for the topic.
  TopicRun& AddTopic(std::string_view topic_id);

  const TopicRun* topic(std::string_view topic_id) const;
  // Topics in order of first appearance.
  const std::vector<TopicRun>& topics() const { return topics_; }

 private:
  std::vector<TopicRun> topics_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::set<std::string, std::less<>>> seen_;
};

enum class IntentKind { kInformational, kNavigational };

struct Intent {
  std::string id;
  double probability = 0.0;  // Pr(i|q)
  IntentKind kind = IntentKind::kInformational;
  // Pr(v|i) keyed by vertical id.
  std::map<std::string, double, std::less<>> verticals;

  // Pr(v|i); 0 for an unlisted vertical.
  double vertical_probability(std::string_view vertical) const;
};

struct TopicIntents {
  std::vector<Intent> intents;

  const Intent* find(std::string_view intent_id) const;
  double probability_sum() const;
};

// Per-topic probability sums above 1 by more than this are rejected.
inline constexpr double kProbabilitySumSlack = 1e-9;

class IntentSet {
 public:
  void AddIntent(std::string_view topic_id, Intent intent,
                 std::size_t line = 0);
  // The intent must already exist for the topic.
  void SetVertical(std::string_view topic_id, std::string_view intent_id,
                   std::string vertical, double probability,
                   std::size_t line = 0);

  const TopicIntents* topic(std::string_view topic_id) const;
  const std::map<std::string, TopicIntents, std::less<>>& topics() const {
    return topics_;
  }

 private:
  std::map<std::string, TopicIntents, std::less<>> topics_;
};

// Per topic: document id -> class id.
struct TopicClasses {
  std::map<std::string, std::string, std::less<>> class_of;
};

class EquivalenceClasses {
 public:
  // Throws ValidationError if the document already belongs to a class.
  void Add(std::string_view topic_id, std::string class_id, std::string doc,
           std::size_t line = 0);

  const TopicClasses* topic(std::string_view topic_id) const;
  const std::map<std::string, TopicClasses, std::less<>>& topics() const {
    return topics_;
  }

 private:
  std::map<std::string, TopicClasses, std::less<>> topics_;
};

// Per topic: subtopic string -> the single intent it belongs to.
class SubtopicMap {
 public:
  void Add(std::string_view topic_id, std::string subtopic,
           std::string intent_id, std::size_t line = 0);

  std::optional<std::string_view> intent_of(std::string_view topic_id,
                                            std::string_view subtopic) const;
  const std::map<std::string, std::map<std::string, std::string, std::less<>>,
                 std::less<>>&
  topics() const {
    return topics_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string, std::less<>>,
           std::less<>>
      topics_;
};

// Non-fatal findings collected while parsing, e.g. a rank column that
// disagrees with file order.
struct Warning {
  std::size_t line = 0;
  std::string message;
};

GradedQrels ParseQrels(std::istream& in);
RankedRun ParseRun(std::istream& in, std::vector<Warning>* warnings = nullptr);
IntentSet ParseIntents(std::istream& in);
// Adds vertical probabilities to an already parsed IntentSet.
void ParseVerticals(std::istream& in, IntentSet& intents);
EquivalenceClasses ParseClasses(std::istream& in);
SubtopicMap ParseSubtopicMap(std::istream& in);

void WriteQrels(std::ostream& out, const GradedQrels& qrels);
// Topics are written grouped, in first-appearance order.
void WriteRun(std::ostream& out, const RankedRun& run);
void WriteIntents(std::ostream& out, const IntentSet& intents);
void WriteVerticals(std::ostream& out, const IntentSet& intents);
void WriteClasses(std::ostream& out, const EquivalenceClasses& classes);
void WriteSubtopicMap(std::ostream& out, const SubtopicMap& map);

// File loaders. Path "-" reads standard input. Open failures throw IoError;
// parse and validation errors are rethrown with the path attached.
GradedQrels LoadQrels(const std::filesystem::path& path);
RankedRun LoadRun(const std::filesystem::path& path,
                  std::vector<Warning>* warnings = nullptr);
IntentSet LoadIntents(const std::filesystem::path& path);
void LoadVerticals(const std::filesystem::path& path, IntentSet& intents);
EquivalenceClasses LoadClasses(const std::filesystem::path& path);
SubtopicMap LoadSubtopicMap(const std::filesystem::path& path);

// Shortest decimal text that reads back to exactly `value`.
std::string FormatReal(double value);

}  // namespace gradeval

#endif  // GRADEVAL_CORPUS_IO_H_
