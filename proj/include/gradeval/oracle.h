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

// Brute-force reference implementations of every measure.
//
// Each measure is transcribed from its definition with no shared
// intermediate state: cumulative counts, cumulative gains and ideal lists
// are recomputed from scratch wherever a formula mentions them. Nothing
// here includes or links the production kernels, so agreement between the
// two is evidence rather than tautology. Expect quadratic running times.

#ifndef GRADEVAL_ORACLE_H_
#define GRADEVAL_ORACLE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gradeval::oracle {

struct SmallIntent {
  std::string id;
  double probability = 0.0;
  bool navigational = false;
  std::map<std::string, int> levels;
};

struct SmallInstance {
  // Topic-level judgments.
  std::map<std::string, int> levels;
  // gains[x] is the gain of level x.
  std::vector<double> gains;
  std::vector<SmallIntent> intents;
  // Top level of the collection for ERR; 0 means highest level in `levels`.
  int max_level = 0;
};

struct NaiveParams {
  std::size_t cutoff = 10;
  double beta = 1.0;
  double log_base = 2.0;  // original DCG patience
  double err_base = 2.0;
  double gamma = 0.5;
};

// Measure ids:
//   adhoc:     ap q q-cut precision r-prec rr hit1 ng1 ncg dcg ndcg ms-ndcg
//              p-plus err nerr
//   diversity: i-rec d-ndcg d-q dsharp-ndcg dsharp-q din-ndcg p-plus-q
// Cutoff-based measures read params.cutoff. nullopt marks an undefined
// value (no relevant documents). Throws std::invalid_argument on an
// unknown id.
std::optional<double> NaiveMeasure(const SmallInstance& instance,
                                   const std::vector<std::string>& ranking,
                                   std::string_view measure_id,
                                   const NaiveParams& params = {});

struct ExhaustiveResult {
  std::optional<double> best;
  std::vector<std::string> ranking;
};

inline constexpr std::size_t kMaxExhaustiveDocs = 7;

// Maximum of NaiveMeasure over every permutation of the judged documents.
// Throws std::invalid_argument above kMaxExhaustiveDocs documents.
ExhaustiveResult ExhaustiveMax(const SmallInstance& instance,
                               std::string_view measure_id,
                               const NaiveParams& params = {});

// Every judged document of the instance, sorted by id.
std::vector<std::string> JudgedDocs(const SmallInstance& instance);

}  // namespace gradeval::oracle

#endif  // GRADEVAL_ORACLE_H_
