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

// Command-line front end.
//
//   tss select --method fl2mi --budget 100 --unlabeled pool.csv
//              --target target.csv --out report.json
//   tss select --manifest report.json --out again.json
//   tss experiment --config experiment.json --out results.json
//
// Exit codes: 0 success, 2 input/format error, 3 configuration error,
// 4 numerical failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tss/datastore.hpp"
#include "tss/error.hpp"
#include "tss/harness.hpp"
#include "tss/pipeline.hpp"
#include "tss/simd.hpp"

namespace {

using nlohmann::json;

constexpr int kConfigExit = 3;

const std::vector<std::string> kDefaultExperimentMethods = {
    "fl2mi", "logdetmi", "gcmi_div", "gcmi", "fl1mi", "fl",    "gc",
    "logdet", "dsum",   "random",   "us",   "tus",   "badge",
};

void WriteJson(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw tss::Error(tss::ErrorCode::kIo, "cannot write '" + path + "'");
  }
}

json ReadJson(const std::string& path) {
  const std::string text = tss::ReadTextFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw tss::Error(tss::ErrorCode::kFormat,
                     path + ": invalid JSON: " + e.what());
  }
}

struct SelectOptions {
  std::string manifest_path;
  std::string method;
  std::size_t budget = 0;
  std::string unlabeled;
  std::string target;
  std::string probs;
  double eta = 1.0;
  double gamma = 1.0;
  double lambda_gc = 0.5;
  double ridge = 1e-6;
  std::string metric = "cosine";
  std::string transform = "shift-scale";
  std::string algorithm = "lazy";
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
};

int RunSelect(const SelectOptions& opt) {
  tss::RunManifest manifest;
  if (!opt.manifest_path.empty()) {
    manifest = tss::ManifestFromJson(ReadJson(opt.manifest_path));
  } else {
    if (opt.method.empty()) {
      throw tss::Error(tss::ErrorCode::kConfiguration,
                       "--method is required (or --manifest)");
    }
    tss::MethodParams& p = manifest.params;
    p.method = tss::ParseMethod(opt.method);
    p.budget = opt.budget;
    p.eta = opt.eta;
    p.gamma = opt.gamma;
    p.lambda_gc = opt.lambda_gc;
    p.ridge = opt.ridge;
    p.metric = tss::ParseMetric(opt.metric);
    p.transform = tss::ParseTransform(opt.transform);
    p.algorithm = tss::ParseGreedyAlgorithm(opt.algorithm);
    p.seed = opt.seed;
    manifest.unlabeled = opt.unlabeled;
    manifest.target = opt.target;
    manifest.probs = opt.probs;
  }
  manifest.params.workers = opt.workers;

  const auto start = std::chrono::steady_clock::now();
  const tss::SelectionResult result = tss::TssSelect(manifest);
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  WriteJson(tss::MakeReport(manifest, result, wall_ms), opt.out);
  return 0;
}

struct ExperimentOptions {
  std::string config;
  std::string out;
  std::vector<std::string> methods;
  std::size_t workers = 0;
};

int RunExperiment(const ExperimentOptions& opt) {
  json config_json = opt.config.empty() ? json::object() : ReadJson(opt.config);
  tss::harness::ExperimentConfig cfg = tss::harness::ConfigFromJson(config_json);
  if (opt.workers > 0) cfg.workers = opt.workers;

  std::vector<std::string> names = opt.methods;
  if (names.empty()) {
    names = config_json.contains("methods")
                ? config_json.at("methods").get<std::vector<std::string>>()
                : kDefaultExperimentMethods;
  }
  std::vector<tss::Method> methods;
  for (const std::string& name : names) methods.push_back(tss::ParseMethod(name));

  const auto report = tss::harness::RunExperiment(cfg, methods);
  json doc = tss::harness::ReportToJson(cfg, report);
  doc["methods"] = names;
  WriteJson(doc, opt.out);
  for (const auto& [name, s] : report.summary) {
    std::cerr << name << ": median target gain " << s.median_target_gain
              << ", median overall gain " << s.median_overall_gain << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Targeted subset selection with submodular mutual information"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tss::kToolVersion);

  SelectOptions sel;
  CLI::App* select = app.add_subcommand("select", "Select a subset of a pool");
  select->add_option("--manifest", sel.manifest_path,
                     "Re-run the manifest of a previous report (other flags "
                     "except --out/--workers are ignored)");
  select->add_option("--method", sel.method,
                     "gcmi|fl1mi|fl2mi|logdetmi|gcmi_div|fl|gc|logdet|dsum|"
                     "random|us|tus|badge");
  select->add_option("--budget", sel.budget, "Number of points to select");
  select->add_option("--unlabeled", sel.unlabeled, "Pool features (CSV)");
  select->add_option("--target", sel.target, "Target features (CSV)");
  select->add_option("--probs", sel.probs, "Pool class probabilities (CSV)");
  select->add_option("--eta", sel.eta, "Query-relevance weight")
      ->capture_default_str();
  select->add_option("--gamma", sel.gamma, "Diversity weight (gcmi_div)")
      ->capture_default_str();
  select->add_option("--lambda-gc", sel.lambda_gc, "Graph-cut redundancy weight")
      ->capture_default_str();
  select->add_option("--ridge", sel.ridge, "Diagonal ridge for log-det kinds")
      ->capture_default_str();
  select->add_option("--metric", sel.metric, "cosine|dot")->capture_default_str();
  select->add_option("--transform", sel.transform, "none|shift-scale|clip")
      ->capture_default_str();
  select->add_option("--algorithm", sel.algorithm, "naive|lazy|exhaustive")
      ->capture_default_str();
  select->add_option("--seed", sel.seed, "Seed for random and badge")
      ->capture_default_str();
  select->add_option("--workers", sel.workers, "Threads for gain probes")
      ->capture_default_str();
  select->add_option("--out", sel.out, "Report path (stdout if omitted)");

  ExperimentOptions exp;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run the synthetic selection experiment");
  experiment->add_option("--config", exp.config, "Experiment config (JSON)");
  experiment->add_option("--out", exp.out, "Report path (stdout if omitted)");
  experiment->add_option("--methods", exp.methods, "Methods to compare")
      ->delimiter(',');
  experiment->add_option("--workers", exp.workers, "Override config workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (select->parsed()) return RunSelect(sel);
    return RunExperiment(exp);
  } catch (const tss::Error& e) {
    std::cerr << "tss: " << tss::ToString(e.code()) << ": " << e.what() << "\n";
    return tss::ExitCodeFor(e.code());
  } catch (const json::exception& e) {
    std::cerr << "tss: configuration error: " << e.what() << "\n";
    return kConfigExit;
  }
}
