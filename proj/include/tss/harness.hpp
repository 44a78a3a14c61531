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
// End-to-end targeted selection experiment on synthetic data.
//
// Gaussian class blobs are split into a labeled training set in which two
// target classes are rare, an unlabeled lake, a small target set drawn from
// the target classes, and a balanced test set. A softmax-regression model
// trained on the labeled set supplies last-layer gradient embeddings; each
// method selects `budget` lake points, their true labels are revealed, and
// the model is retrained from scratch on the augmented set. The report holds
// target-class and overall test accuracy gains per method and seed.
//

#ifndef TSS_HARNESS_HPP_
#define TSS_HARNESS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tss/datastore.hpp"
#include "tss/kernel.hpp"
#include "tss/matrix.hpp"
#include "tss/pipeline.hpp"

namespace tss::harness {

struct TrainConfig {
  double learn_rate = 0.5;
  std::size_t max_epochs = 300;
  double train_acc_threshold = 0.99;
};

struct ExperimentConfig {
  int num_classes = 10;
  std::size_t feature_dim = 16;
  // Labeled examples per ordinary class and per target class.
  std::size_t train_per_class = 100;
  std::size_t rare_train_per_class = 5;
  std::size_t lake_size = 2000;  // balanced over classes
  bool lake_target_classes_only = false;
  std::size_t target_set_size = 10;
  std::size_t test_per_class = 100;
  std::size_t budget = 100;
  // Class means have norm class_separation. With axis-aligned means class c
  // sits on axis c mod d (negated for c >= d), so all classes are equally far
  // apart; otherwise each seed draws uniformly random directions, giving some
  // class pairs more overlap than others. Noise is isotropic Gaussian with
  // standard deviation noise_std.
  double class_separation = 3.0;
  double noise_std = 1.0;
  bool axis_aligned_means = true;
  TrainConfig train;
  // Fixed target classes; when empty, two are drawn per seed.
  std::vector<int> target_classes;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  // Selection parameters shared by every method.
  double eta = 1.0;
  double gamma = 1.0;
  double lambda_gc = 0.5;
  double ridge = 1e-6;
  SimilarityMetric metric = SimilarityMetric::kCosine;
  SimilarityTransform transform = SimilarityTransform::kShiftScale;
  GreedyAlgorithm algorithm = GreedyAlgorithm::kLazy;
  std::size_t workers = 1;

  // Throws kConfiguration when the config is inconsistent.
  void Validate() const;
};

nlohmann::json ConfigToJson(const ExperimentConfig& cfg);
// Missing keys keep their defaults.
ExperimentConfig ConfigFromJson(const nlohmann::json& json);

struct LabeledData {
  Matrix features;  // rows x feature_dim (may have zero rows)
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
};

struct Splits {
  LabeledData train;
  LabeledData lake;    // labels hidden from selection, revealed on pick
  LabeledData target;
  LabeledData test;
  std::array<int, 2> target_classes{};
};

Splits SyntheticGenerate(const ExperimentConfig& cfg, std::uint64_t seed);

// Multinomial logistic regression; weights are classes x (dims + 1), the
// last column being the bias.
struct ToyModel {
  Matrix weights;

  int num_classes() const { return static_cast<int>(weights.rows()); }
  std::size_t input_dims() const { return weights.cols() - 1; }
  std::vector<double> Predict(std::span<const double> x) const;
  ProbabilityMatrix PredictAll(const Matrix& features) const;
  int Classify(std::span<const double> x) const;
};

// Full-batch gradient descent on mean cross-entropy from zero weights, until
// training accuracy reaches the threshold or max_epochs steps have run.
// Throws kDivergence on a non-finite loss.
ToyModel TrainSoftmax(const LabeledData& data, int num_classes,
                      const TrainConfig& cfg);

double Accuracy(const ToyModel& model, const LabeledData& data);
// Accuracy over rows whose label is one of `classes`; 0 if there are none.
double ClassAccuracy(const ToyModel& model, const LabeledData& data,
                     std::span<const int> classes);

// flatten((p - e_y) x x) in class-major order.
std::vector<double> OuterGradient(std::span<const double> p, int y,
                                  std::span<const double> x);

// Last-layer gradient embeddings (dims classes * (d + 1)). With `labels`
// the true labels are used; without, the model's argmax prediction.
Matrix GradientEmbeddings(const ToyModel& model, const Matrix& features,
                          const std::vector<int>* labels);

struct Outcome {
  std::string method;
  std::uint64_t seed = 0;
  std::array<int, 2> target_classes{};
  double base_target_accuracy = 0.0;
  double base_overall_accuracy = 0.0;
  double post_target_accuracy = 0.0;
  double post_overall_accuracy = 0.0;
  double target_gain = 0.0;   // post - base
  double overall_gain = 0.0;  // post - base
  std::size_t selected = 0;
  std::size_t selected_target_class = 0;
};

struct Summary {
  double median_target_gain = 0.0;
  double mean_target_gain = 0.0;
  double median_overall_gain = 0.0;
  double mean_overall_gain = 0.0;
};

struct ExperimentReport {
  std::vector<Outcome> outcomes;  // seed-major, methods in request order
  std::map<std::string, Summary> summary;
};

ExperimentReport RunExperiment(const ExperimentConfig& cfg,
                               const std::vector<Method>& methods);

nlohmann::json ReportToJson(const ExperimentConfig& cfg,
                            const ExperimentReport& report);

}  // namespace tss::harness

#endif  // TSS_HARNESS_HPP_
