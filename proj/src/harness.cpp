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

#include "tss/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tss/error.hpp"
#include "tss/parallel.hpp"
#include "tss/simd.hpp"

namespace tss::harness {
namespace {

using nlohmann::json;

Error ConfigError(const std::string& message) {
  return Error(ErrorCode::kConfiguration, "experiment config: " + message);
}

// Rows of `x` with a trailing 1 for the bias weight.
Matrix WithBias(const Matrix& x) {
  Matrix out(x.rows(), x.cols() + 1, 1.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::copy(x.row(i).begin(), x.row(i).end(), out.row(i).begin());
  }
  return out;
}

// Softmax of W x into `p`; x already carries the bias entry.
void SoftmaxInto(const Matrix& weights, std::span<const double> x,
                 std::span<double> p) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < weights.rows(); ++c) {
    p[c] = simd::Dot(weights.row(c), x);
    top = std::max(top, p[c]);
  }
  double total = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : p) v /= total;
}

int ArgMax(std::span<const double> p) {
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

// `train` followed by the lake rows `picked`, with their true labels.
LabeledData Augment(const LabeledData& train, const LabeledData& lake,
                    std::span<const std::size_t> picked) {
  LabeledData out;
  out.features = Matrix(train.size() + picked.size(), train.features.cols());
  std::copy(train.features.data().begin(), train.features.data().end(),
            out.features.data().begin());
  out.labels = train.labels;
  for (std::size_t r = 0; r < picked.size(); ++r) {
    const auto src = lake.features.row(picked[r]);
    std::copy(src.begin(), src.end(), out.features.row(train.size() + r).begin());
    out.labels.push_back(lake.labels[picked[r]]);
  }
  return out;
}

class BlobSampler {
 public:
  BlobSampler(const ExperimentConfig& cfg, std::mt19937_64& rng)
      : cfg_(cfg),
        rng_(rng),
        means_(static_cast<std::size_t>(cfg.num_classes), cfg.feature_dim, 0.0) {
    const std::size_t d = cfg.feature_dim;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t c = 0; c < means_.rows(); ++c) {
      auto mean = means_.row(c);
      if (cfg.axis_aligned_means) {
        mean[c % d] = c < d ? 1.0 : -1.0;
      } else {
        for (double& v : mean) v = normal(rng_);
      }
      double norm = 0.0;
      for (double v : mean) norm += v * v;
      const double scale = cfg.class_separation / std::sqrt(norm);
      for (double& v : mean) v *= scale;
    }
  }

  // Appends `count` draws of class c to `out`.
  void Draw(int c, std::size_t count, LabeledData& out) {
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t d = cfg_.feature_dim;
    const auto mean = means_.row(static_cast<std::size_t>(c));
    Matrix grown(out.features.rows() + count, d);
    std::copy(out.features.data().begin(), out.features.data().end(),
              grown.data().begin());
    for (std::size_t r = 0; r < count; ++r) {
      auto row = grown.row(out.features.rows() + r);
      for (std::size_t k = 0; k < d; ++k) {
        row[k] = mean[k] + cfg_.noise_std * noise(rng_);
      }
      out.labels.push_back(c);
    }
    out.features = std::move(grown);
  }

 private:
  const ExperimentConfig& cfg_;
  std::mt19937_64& rng_;
  Matrix means_;  // classes x feature_dim
};

std::size_t Share(std::size_t total, std::size_t parts, std::size_t index) {
  return total / parts + (index < total % parts ? 1 : 0);
}

Summary Summarize(std::vector<double> target, std::vector<double> overall) {
  auto median = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  auto mean = [](const std::vector<double>& sorted) {
    return std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(sorted.size());
  };
  Summary s;
  s.median_target_gain = median(target);
  s.mean_target_gain = mean(target);
  s.median_overall_gain = median(overall);
  s.mean_overall_gain = mean(overall);
  return s;
}

struct SeedContext {
  Splits splits;
  ToyModel base;
  double base_target = 0.0;
  double base_overall = 0.0;
  std::optional<SelectionInputs> inputs;
};

}  // namespace

void ExperimentConfig::Validate() const {
  if (num_classes < 2) throw ConfigError("num_classes must be >= 2");
  if (feature_dim < 1) throw ConfigError("feature_dim must be >= 1");
  if (axis_aligned_means && static_cast<std::size_t>(num_classes) > 2 * feature_dim) {
    throw ConfigError("axis-aligned means need num_classes <= 2 * feature_dim");
  }
  if (!target_classes.empty()) {
    if (target_classes.size() != 2 || target_classes[0] == target_classes[1]) {
      throw ConfigError("target_classes must hold two distinct classes");
    }
    for (int c : target_classes) {
      if (c < 0 || c >= num_classes) throw ConfigError("target class out of range");
    }
  }
  if (target_set_size < 1) throw ConfigError("target_set_size must be >= 1");
  if (budget > 0 && target_set_size >= budget) {
    throw ConfigError("target_set_size must be smaller than the budget");
  }
  if (test_per_class < 1) throw ConfigError("test_per_class must be >= 1");
  if (lake_size < 1) throw ConfigError("lake_size must be >= 1");
  if (budget > lake_size) {
    throw Error(ErrorCode::kSize, "experiment config: budget " +
                                      std::to_string(budget) +
                                      " exceeds lake_size " +
                                      std::to_string(lake_size));
  }
  if (!(noise_std >= 0.0) || !std::isfinite(class_separation)) {
    throw ConfigError("noise_std must be >= 0 and class_separation finite");
  }
  if (!(train.learn_rate > 0.0)) throw ConfigError("learn_rate must be > 0");
  if (!(train.train_acc_threshold > 0.0 && train.train_acc_threshold <= 1.0)) {
    throw ConfigError("train_acc_threshold must lie in (0, 1]");
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
}

json ConfigToJson(const ExperimentConfig& cfg) {
  return json{
      {"num_classes", cfg.num_classes},
      {"feature_dim", cfg.feature_dim},
      {"train_per_class", cfg.train_per_class},
      {"rare_train_per_class", cfg.rare_train_per_class},
      {"lake_size", cfg.lake_size},
      {"lake_target_classes_only", cfg.lake_target_classes_only},
      {"target_set_size", cfg.target_set_size},
      {"test_per_class", cfg.test_per_class},
      {"budget", cfg.budget},
      {"class_separation", cfg.class_separation},
      {"noise_std", cfg.noise_std},
      {"axis_aligned_means", cfg.axis_aligned_means},
      {"learn_rate", cfg.train.learn_rate},
      {"max_epochs", cfg.train.max_epochs},
      {"train_acc_threshold", cfg.train.train_acc_threshold},
      {"target_classes", cfg.target_classes},
      {"seeds", cfg.seeds},
      {"eta", cfg.eta},
      {"gamma", cfg.gamma},
      {"lambda_gc", cfg.lambda_gc},
      {"ridge", cfg.ridge},
      {"metric", ToString(cfg.metric)},
      {"transform", ToString(cfg.transform)},
      {"algorithm", ToString(cfg.algorithm)},
      {"workers", cfg.workers},
  };
}

ExperimentConfig ConfigFromJson(const json& j) {
  ExperimentConfig cfg;
  auto read = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  try {
    read("num_classes", cfg.num_classes);
    read("feature_dim", cfg.feature_dim);
    read("train_per_class", cfg.train_per_class);
    read("rare_train_per_class", cfg.rare_train_per_class);
    read("lake_size", cfg.lake_size);
    read("lake_target_classes_only", cfg.lake_target_classes_only);
    read("target_set_size", cfg.target_set_size);
    read("test_per_class", cfg.test_per_class);
    read("budget", cfg.budget);
    read("class_separation", cfg.class_separation);
    read("noise_std", cfg.noise_std);
    read("axis_aligned_means", cfg.axis_aligned_means);
    read("learn_rate", cfg.train.learn_rate);
    read("max_epochs", cfg.train.max_epochs);
    read("train_acc_threshold", cfg.train.train_acc_threshold);
    read("target_classes", cfg.target_classes);
    read("seeds", cfg.seeds);
    read("eta", cfg.eta);
    read("gamma", cfg.gamma);
    read("lambda_gc", cfg.lambda_gc);
    read("ridge", cfg.ridge);
    read("workers", cfg.workers);
    if (j.contains("metric")) cfg.metric = ParseMetric(j.at("metric").get<std::string>());
    if (j.contains("transform")) {
      cfg.transform = ParseTransform(j.at("transform").get<std::string>());
    }
    if (j.contains("algorithm")) {
      cfg.algorithm = ParseGreedyAlgorithm(j.at("algorithm").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

Splits SyntheticGenerate(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.Validate();
  std::mt19937_64 rng(seed);
  Splits s;
  if (cfg.target_classes.empty()) {
    std::uniform_int_distribution<int> pick(0, cfg.num_classes - 1);
    s.target_classes[0] = pick(rng);
    do {
      s.target_classes[1] = pick(rng);
    } while (s.target_classes[1] == s.target_classes[0]);
  } else {
    s.target_classes = {cfg.target_classes[0], cfg.target_classes[1]};
  }
  auto is_target = [&](int c) {
    return c == s.target_classes[0] || c == s.target_classes[1];
  };

  const std::size_t d = cfg.feature_dim;
  for (LabeledData* split : {&s.train, &s.lake, &s.target, &s.test}) {
    split->features = Matrix(0, d);
  }
  BlobSampler sampler(cfg, rng);
  const auto classes = static_cast<std::size_t>(cfg.num_classes);

  for (int c = 0; c < cfg.num_classes; ++c) {
    sampler.Draw(c, is_target(c) ? cfg.rare_train_per_class : cfg.train_per_class,
                 s.train);
  }

  LabeledData lake;
  lake.features = Matrix(0, d);
  if (cfg.lake_target_classes_only) {
    for (std::size_t t = 0; t < 2; ++t) {
      sampler.Draw(s.target_classes[t], Share(cfg.lake_size, 2, t), lake);
    }
  } else {
    for (std::size_t c = 0; c < classes; ++c) {
      sampler.Draw(static_cast<int>(c), Share(cfg.lake_size, classes, c), lake);
    }
  }
  // Shuffle so lake order carries no class information.
  std::vector<std::size_t> order(lake.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  s.lake.features = Matrix(lake.size(), d);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto src = lake.features.row(order[r]);
    std::copy(src.begin(), src.end(), s.lake.features.row(r).begin());
    s.lake.labels.push_back(lake.labels[order[r]]);
  }

  for (std::size_t t = 0; t < 2; ++t) {
    sampler.Draw(s.target_classes[t], Share(cfg.target_set_size, 2, t), s.target);
  }
  for (int c = 0; c < cfg.num_classes; ++c) {
    sampler.Draw(c, cfg.test_per_class, s.test);
  }
  return s;
}

std::vector<double> ToyModel::Predict(std::span<const double> x) const {
  std::vector<double> with_bias(x.begin(), x.end());
  with_bias.push_back(1.0);
  std::vector<double> p(weights.rows());
  SoftmaxInto(weights, with_bias, p);
  return p;
}

ProbabilityMatrix ToyModel::PredictAll(const Matrix& features) const {
  const Matrix x = WithBias(features);
  Matrix p(features.rows(), weights.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) SoftmaxInto(weights, x.row(i), p.row(i));
  return ProbabilityMatrix(std::move(p));
}

int ToyModel::Classify(std::span<const double> x) const {
  return ArgMax(Predict(x));
}

ToyModel TrainSoftmax(const LabeledData& data, int num_classes,
                      const TrainConfig& cfg) {
  if (data.size() == 0) {
    throw Error(ErrorCode::kEmptyInput, "training set is empty");
  }
  for (int y : data.labels) {
    if (y < 0 || y >= num_classes) {
      throw Error(ErrorCode::kRange, "training label " + std::to_string(y) +
                                         " out of range");
    }
  }
  const Matrix x = WithBias(data.features);
  const auto classes = static_cast<std::size_t>(num_classes);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  ToyModel model{Matrix(classes, x.cols(), 0.0)};
  Matrix gradient(classes, x.cols());
  std::vector<double> p(classes);

  for (std::size_t epoch = 0;; ++epoch) {
    std::fill(gradient.data().begin(), gradient.data().end(), 0.0);
    double loss = 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      SoftmaxInto(model.weights, x.row(i), p);
      const int y = data.labels[i];
      loss -= std::log(std::max(p[y], std::numeric_limits<double>::min()));
      if (ArgMax(p) == y) ++correct;
      for (std::size_t c = 0; c < classes; ++c) {
        const double residual = p[c] - (static_cast<int>(c) == y ? 1.0 : 0.0);
        simd::Axpy(residual, x.row(i), gradient.row(c));
      }
    }
    if (!std::isfinite(loss)) {
      throw Error(ErrorCode::kDivergence,
                  "training loss is not finite; use a smaller learn_rate");
    }
    const double accuracy = static_cast<double>(correct) * inv_n;
    if (epoch > 0 && accuracy >= cfg.train_acc_threshold) break;
    if (epoch == cfg.max_epochs) break;
    simd::Axpy(-cfg.learn_rate * inv_n, gradient.data(), model.weights.data());
  }
  for (double w : model.weights.data()) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kDivergence,
                  "weights diverged; use a smaller learn_rate");
    }
  }
  return model;
}

double Accuracy(const ToyModel& model, const LabeledData& data) {
  if (data.size() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (model.Classify(data.features.row(i)) == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double ClassAccuracy(const ToyModel& model, const LabeledData& data,
                     std::span<const int> classes) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::find(classes.begin(), classes.end(), data.labels[i]) ==
        classes.end()) {
      continue;
    }
    ++total;
    if (model.Classify(data.features.row(i)) == data.labels[i]) ++correct;
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

std::vector<double> OuterGradient(std::span<const double> p, int y,
                                  std::span<const double> x) {
  std::vector<double> g(p.size() * x.size());
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double residual = p[c] - (static_cast<int>(c) == y ? 1.0 : 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) g[c * x.size() + k] = residual * x[k];
  }
  return g;
}

Matrix GradientEmbeddings(const ToyModel& model, const Matrix& features,
                          const std::vector<int>* labels) {
  if (features.cols() != model.input_dims()) {
    throw Error(ErrorCode::kShape, "model expects " +
                                       std::to_string(model.input_dims()) +
                                       " features, data has " +
                                       std::to_string(features.cols()));
  }
  if (labels && labels->size() != features.rows()) {
    throw Error(ErrorCode::kShape, "label count differs from row count");
  }
  const Matrix x = WithBias(features);
  const auto classes = static_cast<std::size_t>(model.num_classes());
  Matrix out(features.rows(), classes * x.cols());
  std::vector<double> p(classes);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    SoftmaxInto(model.weights, x.row(i), p);
    const int y = labels ? (*labels)[i] : ArgMax(p);
    const auto g = OuterGradient(p, y, x.row(i));
    std::copy(g.begin(), g.end(), out.row(i).begin());
  }
  return out;
}

ExperimentReport RunExperiment(const ExperimentConfig& cfg,
                               const std::vector<Method>& methods) {
  cfg.Validate();
  const std::size_t num_seeds = cfg.seeds.size();

  std::vector<SeedContext> contexts(num_seeds);
  ParallelFor(num_seeds, cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      SeedContext& ctx = contexts[s];
      ctx.splits = SyntheticGenerate(cfg, cfg.seeds[s]);
      ctx.base = TrainSoftmax(ctx.splits.train, cfg.num_classes, cfg.train);
      ctx.base_target =
          ClassAccuracy(ctx.base, ctx.splits.test, ctx.splits.target_classes);
      ctx.base_overall = Accuracy(ctx.base, ctx.splits.test);
      ctx.inputs = SelectionInputs{
          FeatureMatrix(GradientEmbeddings(ctx.base, ctx.splits.lake.features,
                                           nullptr)),
          FeatureMatrix(GradientEmbeddings(ctx.base, ctx.splits.target.features,
                                           &ctx.splits.target.labels)),
          ctx.base.PredictAll(ctx.splits.lake.features)};
    }
  });

  ExperimentReport report;
  report.outcomes.resize(num_seeds * methods.size());
  ParallelFor(report.outcomes.size(), cfg.workers,
              [&](std::size_t begin, std::size_t end) {
    for (std::size_t cell = begin; cell < end; ++cell) {
      const std::size_t s = cell / methods.size();
      const Method& method = methods[cell % methods.size()];
      const SeedContext& ctx = contexts[s];

      MethodParams params;
      params.method = method;
      params.budget = cfg.budget;
      params.eta = cfg.eta;
      params.gamma = cfg.gamma;
      params.lambda_gc = cfg.lambda_gc;
      params.ridge = cfg.ridge;
      params.metric = cfg.metric;
      params.transform = cfg.transform;
      params.algorithm = cfg.algorithm;
      params.seed = cfg.seeds[s];
      const SelectionResult picked = RunMethod(params, *ctx.inputs);

      const LabeledData augmented =
          Augment(ctx.splits.train, ctx.splits.lake, picked.selected);
      Outcome& out = report.outcomes[cell];
      for (std::size_t index : picked.selected) {
        const int label = ctx.splits.lake.labels[index];
        if (label == ctx.splits.target_classes[0] ||
            label == ctx.splits.target_classes[1]) {
          ++out.selected_target_class;
        }
      }
      const ToyModel retrained =
          TrainSoftmax(augmented, cfg.num_classes, cfg.train);

      out.method = MethodName(method);
      out.seed = cfg.seeds[s];
      out.target_classes = ctx.splits.target_classes;
      out.base_target_accuracy = ctx.base_target;
      out.base_overall_accuracy = ctx.base_overall;
      out.post_target_accuracy =
          ClassAccuracy(retrained, ctx.splits.test, ctx.splits.target_classes);
      out.post_overall_accuracy = Accuracy(retrained, ctx.splits.test);
      out.target_gain = out.post_target_accuracy - out.base_target_accuracy;
      out.overall_gain = out.post_overall_accuracy - out.base_overall_accuracy;
      out.selected = picked.selected.size();
    }
  });

  for (const Method& method : methods) {
    const std::string name = MethodName(method);
    std::vector<double> target, overall;
    for (const Outcome& o : report.outcomes) {
      if (o.method != name) continue;
      target.push_back(o.target_gain);
      overall.push_back(o.overall_gain);
    }
    report.summary[name] = Summarize(std::move(target), std::move(overall));
  }
  return report;
}

json ReportToJson(const ExperimentConfig& cfg, const ExperimentReport& report) {
  json outcomes = json::array();
  for (const Outcome& o : report.outcomes) {
    outcomes.push_back(json{
        {"method", o.method},
        {"seed", o.seed},
        {"target_classes", o.target_classes},
        {"base_target_accuracy", o.base_target_accuracy},
        {"base_overall_accuracy", o.base_overall_accuracy},
        {"post_target_accuracy", o.post_target_accuracy},
        {"post_overall_accuracy", o.post_overall_accuracy},
        {"target_gain", o.target_gain},
        {"overall_gain", o.overall_gain},
        {"selected", o.selected},
        {"selected_target_class", o.selected_target_class},
    });
  }
  json summary = json::object();
  for (const auto& [name, s] : report.summary) {
    summary[name] = json{
        {"median_target_gain", s.median_target_gain},
        {"mean_target_gain", s.mean_target_gain},
        {"median_overall_gain", s.median_overall_gain},
        {"mean_overall_gain", s.mean_overall_gain},
    };
  }
  return json{{"config", ConfigToJson(cfg)},
              {"outcomes", std::move(outcomes)},
              {"summary", std::move(summary)}};
}

}  // namespace tss::harness
