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

#include "gradeval/gain_mapping.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "gradeval/errors.h"

namespace gradeval {
namespace {

bool ParseDouble(std::string_view text, double& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitComma(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = spec.find(',', start);
    parts.push_back(Trim(spec.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

GainScheme GainScheme::Linear(int max_level) {
  if (max_level < 1) throw ValidationError("max level must be at least 1");
  std::vector<double> gains(max_level + 1);
  std::iota(gains.begin(), gains.end(), 0.0);
  return GainScheme("linear", std::move(gains));
}

GainScheme GainScheme::Quadratic(int max_level) {
  if (max_level < 1) throw ValidationError("max level must be at least 1");
  if (max_level > 1000) throw ValidationError("max level too large");
  std::vector<double> gains(max_level + 1);
  for (int x = 0; x <= max_level; ++x) gains[x] = std::exp2(x) - 1.0;
  return GainScheme("quadratic", std::move(gains));
}

GainScheme GainScheme::FromTable(std::string name, std::vector<double> gains) {
  if (gains.empty()) throw ValidationError("gain table is empty");
  if (gains[0] != 0.0) throw ValidationError("gain for level 0 must be 0");
  for (std::size_t x = 1; x < gains.size(); ++x) {
    if (!std::isfinite(gains[x]) || gains[x] < gains[x - 1]) {
      throw ValidationError("gain for level " + std::to_string(x) +
                            " breaks monotonicity");
    }
  }
  return GainScheme(std::move(name), std::move(gains));
}

double GainScheme::gain(int level) const {
  if (level < 0 || level > max_level()) {
    throw ValidationError("relevance level " + std::to_string(level) +
                          " outside gain scheme '" + name_ + "' (max " +
                          std::to_string(max_level()) + ")");
  }
  return gains_[level];
}

GainScheme ParseGainScheme(std::string_view spec, int max_level) {
  spec = Trim(spec);
  max_level = std::max(max_level, 1);
  if (spec == "linear") return GainScheme::Linear(max_level);
  if (spec == "quadratic") return GainScheme::Quadratic(max_level);

  std::map<int, double> table;
  for (std::string_view part : SplitComma(spec)) {
    auto colon = part.find(':');
    int level = -1;
    double gain = 0.0;
    bool ok = colon != std::string_view::npos;
    if (ok) {
      auto level_text = Trim(part.substr(0, colon));
      auto [ptr, ec] = std::from_chars(
          level_text.data(), level_text.data() + level_text.size(), level);
      ok = ec == std::errc() && ptr == level_text.data() + level_text.size() &&
           level >= 0 && ParseDouble(Trim(part.substr(colon + 1)), gain);
    }
    if (!ok) {
      throw ValidationError("gain scheme entry '" + std::string(part) +
                            "' is not level:gain");
    }
    if (!table.emplace(level, gain).second) {
      throw ValidationError("gain scheme repeats level " +
                            std::to_string(level));
    }
  }
  std::vector<double> gains;
  for (const auto& [level, gain] : table) {
    if (level != static_cast<int>(gains.size())) {
      throw ValidationError("gain scheme is missing level " +
                            std::to_string(gains.size()));
    }
    gains.push_back(gain);
  }
  return GainScheme::FromTable(std::string(spec), std::move(gains));
}

DocGainTable GainsFromLevels(const DocLevels& levels,
                             const GainScheme& scheme) {
  DocGainTable table;
  for (const auto& [doc, level] : levels) {
    table.emplace(doc, DocGain{scheme.gain(level), static_cast<double>(level),
                               level > 0});
  }
  return table;
}

DocGainTable GainsFromValues(
    const std::map<std::string, double, std::less<>>& gains) {
  DocGainTable table;
  for (const auto& [doc, gain] : gains) {
    if (!(gain >= 0.0) || !std::isfinite(gain)) {
      throw ValidationError("gain for " + doc + " is not a non-negative number");
    }
    table.emplace(doc, DocGain{gain, gain, gain > 0.0});
  }
  return table;
}

// ---------------------------------------------------------------------------

void AssessorLabels::Add(std::string_view topic, std::string doc,
                         std::vector<std::string> labels, std::size_t line) {
  if (labels.empty()) throw ValidationError(line, "item has no labels");
  auto& items = topics_[std::string(topic)];
  if (!items.empty() && items.begin()->second.size() != labels.size()) {
    throw ValidationError(
        line, "topic " + std::string(topic) + " mixes " +
                  std::to_string(items.begin()->second.size()) + " and " +
                  std::to_string(labels.size()) + " assessors");
  }
  if (!items.emplace(doc, std::move(labels)).second) {
    throw ValidationError(line, "labels for " + doc + " given twice");
  }
}

AssessorLabels ParseAssessorLabels(std::istream& in) {
  AssessorLabels labels;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string topic, doc, label;
    if (!(fields >> topic)) continue;
    if (!(fields >> doc)) {
      throw ParseError(line_number, "expected 'topic doc label...'");
    }
    std::vector<std::string> item;
    while (fields >> label) item.push_back(label);
    if (item.empty()) throw ParseError(line_number, "no labels");
    labels.Add(topic, std::move(doc), std::move(item), line_number);
  }
  return labels;
}

AssessorLabels LoadAssessorLabels(const std::filesystem::path& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw IoError(path.string() + ": cannot open file");
    in = &file;
  }
  try {
    return ParseAssessorLabels(*in);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string(), e.line(), e.detail());
  }
}

LabelWeights ParseLabelWeights(std::string_view spec) {
  LabelWeights weights;
  for (std::string_view part : SplitComma(spec)) {
    auto colon = part.find(':');
    double points = 0.0;
    if (colon == std::string_view::npos || colon == 0 ||
        !ParseDouble(Trim(part.substr(colon + 1)), points)) {
      throw ValidationError("label weight '" + std::string(part) +
                            "' is not label:points");
    }
    weights[std::string(Trim(part.substr(0, colon)))] = points;
  }
  return weights;
}

std::vector<double> LabelScores(std::span<const std::string> labels,
                                const LabelWeights& weights) {
  std::vector<double> scores;
  scores.reserve(labels.size());
  for (const std::string& label : labels) {
    if (weights.empty()) {
      double value = 0.0;
      if (!ParseDouble(label, value)) {
        throw ValidationError("label '" + label + "' is not numeric");
      }
      scores.push_back(value);
      continue;
    }
    auto it = weights.find(label);
    if (it == weights.end()) {
      throw ValidationError("label '" + label + "' has no weight");
    }
    scores.push_back(it->second);
  }
  return scores;
}

int AggregateSum(std::span<const std::string> labels,
                 const LabelWeights& weights) {
  auto scores = LabelScores(labels, weights);
  double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
  if (sum < 0.0 || sum != std::floor(sum)) {
    throw ValidationError("label sum " + FormatReal(sum) +
                          " is not a relevance level");
  }
  return static_cast<int>(sum);
}

double AggregateAverage(std::span<const double> scores) {
  if (scores.empty()) throw ValidationError("no assessor scores");
  return std::accumulate(scores.begin(), scores.end(), 0.0) /
         static_cast<double>(scores.size());
}

double AggregateAverage(std::span<const std::string> labels,
                        const LabelWeights& weights) {
  auto scores = LabelScores(labels, weights);
  return AggregateAverage(scores);
}

int AggregateMajority(std::span<const int> levels, int fallback) {
  if (levels.empty()) throw ValidationError("no assessor levels");
  std::map<int, std::size_t> votes;
  for (int level : levels) ++votes[level];
  for (const auto& [level, count] : votes) {
    if (2 * count > levels.size()) return level;
  }
  return fallback;
}

double UnanimityUpgrade(double gain, double spread,
                        const UnanimityParams& params) {
  if (params.strength < 0.0) {
    throw ValidationError("upgrade strength must be non-negative");
  }
  if (params.max_score < 0.0) {
    throw ValidationError("maximum assessor score must be non-negative");
  }
  if (spread < 0.0 || spread > params.max_score) {
    throw ValidationError("score spread " + FormatReal(spread) +
                          " outside [0, " + FormatReal(params.max_score) +
                          "]");
  }
  return gain + params.strength * params.assessors *
                    (params.max_score - spread);
}

double UnanimityUpgradeFromScores(std::span<const double> scores,
                                  double strength, double max_score) {
  if (scores.empty()) throw ValidationError("no assessor scores");
  auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  double raw = std::accumulate(scores.begin(), scores.end(), 0.0);
  return UnanimityUpgrade(
      raw, *hi - *lo,
      {strength, static_cast<int>(scores.size()), max_score});
}

int ScoreFluentCoherentSubstantial(bool fluent, bool coherent,
                                   bool self_sufficient, bool substantial) {
  if (!(fluent && coherent)) return 0;
  return self_sufficient && substantial ? 2 : 1;
}

int ScoreContextInformativeScheme1(bool fluent, bool coherent,
                                   int context_dependent, int informative) {
  if (!(fluent && coherent)) return 0;
  return context_dependent == 2 && informative == 2 ? 2 : 1;
}

int ScoreContextInformativeScheme2(bool fluent, bool coherent,
                                   int context_dependent, int informative) {
  if (!(fluent && coherent)) return 0;
  if (context_dependent == 2 && informative == 2) return 2;
  if (context_dependent == 0 || informative == 0) return 0;
  return 1;
}

int ScoreEmotionConsistency(bool fluent, bool coherent,
                            bool emotion_consistent) {
  if (!(fluent && coherent)) return 0;
  return emotion_consistent ? 2 : 1;
}

void DedupEquivalence(std::span<const std::string> ranking,
                      const TopicClasses& classes,
                      std::span<DocGain> per_rank) {
  if (ranking.size() != per_rank.size()) {
    throw ValidationError("ranking and gains differ in length");
  }
  std::map<std::string_view, bool> claimed;
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    auto it = classes.class_of.find(ranking[r]);
    if (it == classes.class_of.end()) continue;
    if (!claimed.emplace(it->second, true).second) {
      per_rank[r] = DocGain{0.0, 0.0, false};
    }
  }
}

}  // namespace gradeval
