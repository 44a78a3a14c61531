// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// Selection over exported features: load pool/target features and optional
// predicted probabilities, build exactly the kernels the chosen method
// reads, run the maximizer or baseline, and report the result as JSON.
//

#ifndef TSS_PIPELINE_HPP_
#define TSS_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "tss/baselines.hpp"
#include "tss/datastore.hpp"
#include "tss/kernel.hpp"
#include "tss/objectives.hpp"
#include "tss/optimizer.hpp"

namespace tss {

inline constexpr const char* kToolVersion = "0.1.0";

// A selection method: a set-function objective or a baseline.
using Method = std::variant<ObjectiveKind, BaselineKind>;

Method ParseMethod(std::string_view name);
std::string MethodName(const Method& method);
bool NeedsTarget(const Method& method);

struct MethodParams {
  Method method = ObjectiveKind::kGcmi;
  std::size_t budget = 0;
  double eta = 1.0;
  double gamma = 1.0;
  double lambda_gc = 0.5;
  double ridge = 1e-6;
  SimilarityMetric metric = SimilarityMetric::kCosine;
  SimilarityTransform transform = SimilarityTransform::kShiftScale;
  GreedyAlgorithm algorithm = GreedyAlgorithm::kLazy;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct SelectionInputs {
  FeatureMatrix pool;
  std::optional<FeatureMatrix> target;
  std::optional<ProbabilityMatrix> probs;
};

// Runs `params.method` on in-memory inputs. Throws kConfiguration when an
// input the method needs is absent.
SelectionResult RunMethod(const MethodParams& params,
                          const SelectionInputs& inputs);

// Everything that determines a run's output. Paths are stored as given.
struct RunManifest {
  MethodParams params;
  std::string unlabeled;
  std::string target;
  std::string probs;
  std::string version = kToolVersion;
};

nlohmann::json ManifestToJson(const RunManifest& manifest);
// Accepts either a bare manifest object or a full report (whose "manifest"
// member is used).
RunManifest ManifestFromJson(const nlohmann::json& json);

// Loads the manifest's files and runs the selection.
SelectionResult TssSelect(const RunManifest& manifest);

// {evaluations, gains, manifest, selected, total_value, truncated,
//  wall_time_ms}; nlohmann::json keeps keys sorted.
nlohmann::json MakeReport(const RunManifest& manifest,
                          const SelectionResult& result, double wall_time_ms);

}  // namespace tss

#endif  // TSS_PIPELINE_HPP_
