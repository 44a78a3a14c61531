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

#include "tss/pipeline.hpp"

#include <memory>

#include "tss/error.hpp"

namespace tss {
namespace {

using nlohmann::json;

ObjectiveSpec BuildSpec(ObjectiveKind kind, const MethodParams& params,
                        const SelectionInputs& inputs) {
  const KernelNeeds needs = NeedsFor(kind);
  if (needs.cross && !inputs.target) {
    throw Error(ErrorCode::kConfiguration,
                std::string(ToString(kind)) + " needs a target set");
  }
  KernelConfig kcfg;
  kcfg.metric = params.metric;
  kcfg.transform = params.transform;
  kcfg.workers = params.workers;

  ObjectiveSpec spec;
  spec.kind = kind;
  spec.eta = params.eta;
  spec.gamma = params.gamma;
  spec.lambda_gc = params.lambda_gc;
  spec.ridge = params.ridge;
  if (needs.within_pool) {
    spec.s_uu = std::make_shared<const SimilarityKernel>(
        BuildKernel(inputs.pool, inputs.pool, kcfg));
  }
  if (needs.cross) {
    spec.s_ut = std::make_shared<const SimilarityKernel>(
        BuildKernel(inputs.pool, *inputs.target, kcfg));
  }
  if (needs.within_target) {
    spec.s_tt = std::make_shared<const SimilarityKernel>(
        BuildKernel(*inputs.target, *inputs.target, kcfg));
  }
  return spec;
}

const ProbabilityMatrix& RequireProbs(const SelectionInputs& inputs,
                                      BaselineKind kind) {
  if (!inputs.probs) {
    throw Error(ErrorCode::kConfiguration,
                std::string(ToString(kind)) + " needs predicted probabilities");
  }
  if (inputs.probs->rows() != inputs.pool.rows()) {
    throw Error(ErrorCode::kShape,
                "probability rows (" + std::to_string(inputs.probs->rows()) +
                    ") differ from pool rows (" +
                    std::to_string(inputs.pool.rows()) + ")");
  }
  return *inputs.probs;
}

SelectionResult RunBaseline(BaselineKind kind, const MethodParams& params,
                            const SelectionInputs& inputs) {
  const std::size_t n = inputs.pool.rows();
  switch (kind) {
    case BaselineKind::kRandom:
      return RandomSelect(n, params.budget, params.seed);
    case BaselineKind::kUs:
      return UncertaintySelect(RequireProbs(inputs, kind), params.budget);
    case BaselineKind::kTus: {
      const ProbabilityMatrix& probs = RequireProbs(inputs, kind);
      if (!inputs.target) {
        throw Error(ErrorCode::kConfiguration, "tus needs a target set");
      }
      KernelConfig kcfg;
      kcfg.metric = params.metric;
      kcfg.transform = params.transform;
      kcfg.workers = params.workers;
      return TargetedUncertaintySelect(
          probs, BuildKernel(inputs.pool, *inputs.target, kcfg), params.budget);
    }
    case BaselineKind::kBadge:
      return BadgeSelect(inputs.pool, params.budget, params.seed);
  }
  throw Error(ErrorCode::kConfiguration, "unknown baseline");
}

template <typename T>
T Field(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

Method ParseMethod(std::string_view name) {
  ObjectiveKind objective;
  if (ParseObjectiveKind(name, &objective)) return objective;
  BaselineKind baseline;
  if (ParseBaselineKind(name, &baseline)) return baseline;
  throw Error(ErrorCode::kConfiguration,
              "unknown method '" + std::string(name) + "'");
}

std::string MethodName(const Method& method) {
  return std::visit([](auto kind) { return std::string(ToString(kind)); },
                    method);
}

bool NeedsTarget(const Method& method) {
  if (const auto* kind = std::get_if<ObjectiveKind>(&method)) {
    return IsTargeted(*kind);
  }
  return std::get<BaselineKind>(method) == BaselineKind::kTus;
}

SelectionResult RunMethod(const MethodParams& params,
                          const SelectionInputs& inputs) {
  if (NeedsTarget(params.method) && !inputs.target) {
    throw Error(ErrorCode::kConfiguration,
                MethodName(params.method) + " needs a target set");
  }
  if (inputs.target && inputs.target->dims() != inputs.pool.dims()) {
    throw Error(ErrorCode::kShape, "target and pool feature dimensions differ");
  }
  if (const auto* kind = std::get_if<ObjectiveKind>(&params.method)) {
    SelectionConfig cfg;
    cfg.budget = params.budget;
    cfg.algorithm = params.algorithm;
    cfg.rng_seed = params.seed;
    cfg.workers = params.workers;
    return GreedyMaximize(BuildSpec(*kind, params, inputs), cfg);
  }
  return RunBaseline(std::get<BaselineKind>(params.method), params, inputs);
}

json ManifestToJson(const RunManifest& manifest) {
  const MethodParams& p = manifest.params;
  return json{
      {"method", MethodName(p.method)},
      {"budget", p.budget},
      {"eta", p.eta},
      {"gamma", p.gamma},
      {"lambda_gc", p.lambda_gc},
      {"ridge", p.ridge},
      {"metric", ToString(p.metric)},
      {"transform", ToString(p.transform)},
      {"algorithm", ToString(p.algorithm)},
      {"seed", p.seed},
      {"unlabeled", manifest.unlabeled},
      {"target", manifest.target},
      {"probs", manifest.probs},
      {"version", manifest.version},
  };
}

RunManifest ManifestFromJson(const json& input) {
  const json& j = input.contains("manifest") ? input.at("manifest") : input;
  try {
    RunManifest manifest;
    MethodParams& p = manifest.params;
    p.method = ParseMethod(j.at("method").get<std::string>());
    p.budget = j.at("budget").get<std::size_t>();
    p.eta = Field(j, "eta", p.eta);
    p.gamma = Field(j, "gamma", p.gamma);
    p.lambda_gc = Field(j, "lambda_gc", p.lambda_gc);
    p.ridge = Field(j, "ridge", p.ridge);
    p.metric = ParseMetric(Field<std::string>(j, "metric", ToString(p.metric)));
    p.transform = ParseTransform(
        Field<std::string>(j, "transform", ToString(p.transform)));
    p.algorithm = ParseGreedyAlgorithm(
        Field<std::string>(j, "algorithm", ToString(p.algorithm)));
    p.seed = Field<std::uint64_t>(j, "seed", p.seed);
    manifest.unlabeled = Field<std::string>(j, "unlabeled", "");
    manifest.target = Field<std::string>(j, "target", "");
    manifest.probs = Field<std::string>(j, "probs", "");
    manifest.version = Field<std::string>(j, "version", kToolVersion);
    return manifest;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                std::string("invalid manifest: ") + e.what());
  }
}

SelectionResult TssSelect(const RunManifest& manifest) {
  const MethodParams& p = manifest.params;
  if (manifest.unlabeled.empty()) {
    throw Error(ErrorCode::kConfiguration, "no unlabeled pool file given");
  }
  const bool needs_target = NeedsTarget(p.method);
  if (needs_target) {
    if (manifest.target.empty()) {
      throw Error(ErrorCode::kConfiguration,
                  MethodName(p.method) + " needs a target file (--target)");
    }
    const std::string text = ReadTextFile(manifest.target);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(ErrorCode::kConfiguration, "target file '" + manifest.target +
                                                 "' is empty; " +
                                                 MethodName(p.method) +
                                                 " needs target examples");
    }
  }
  const auto* baseline = std::get_if<BaselineKind>(&p.method);
  const bool needs_probs = baseline && (*baseline == BaselineKind::kUs ||
                                        *baseline == BaselineKind::kTus);
  if (needs_probs && manifest.probs.empty()) {
    throw Error(ErrorCode::kConfiguration,
                MethodName(p.method) + " needs a probability file (--probs)");
  }

  SelectionInputs inputs{LoadFeatures(manifest.unlabeled), std::nullopt,
                         std::nullopt};
  if (needs_target) inputs.target = LoadFeatures(manifest.target);
  if (needs_probs) inputs.probs = LoadProbabilities(manifest.probs);
  return RunMethod(p, inputs);
}

json MakeReport(const RunManifest& manifest, const SelectionResult& result,
                double wall_time_ms) {
  return json{
      {"manifest", ManifestToJson(manifest)},
      {"selected", result.selected},
      {"gains", result.gains},
      {"total_value", result.total_value},
      {"evaluations", result.evaluations},
      {"truncated", result.truncated},
      {"wall_time_ms", wall_time_ms},
  };
}

}  // namespace tss
