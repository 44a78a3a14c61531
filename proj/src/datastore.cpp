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

#include "tss/datastore.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "tss/error.hpp"

namespace tss {
namespace {

std::string Where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Lines of `text` without their terminators; a single trailing newline does
// not produce an extra empty line.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

bool IsBlank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

double ParseReal(std::string_view token, std::string_view source,
                 std::size_t line) {
  token = Trim(token);
  // from_chars does not accept a leading '+'.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() ||
      ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kParse, Where(source, line) + ": '" +
                                       std::string(token) +
                                       "' is not a decimal number");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kParse, Where(source, line) +
                                       ": non-finite value '" +
                                       std::string(token) + "'");
  }
  return value;
}

// Rectangular CSV of finite reals.
Matrix ParseCsv(std::string_view text, std::string_view source) {
  if (IsBlank(text)) {
    throw Error(ErrorCode::kEmptyInput, std::string(source) + ": empty input");
  }
  const auto lines = SplitLines(text);
  std::size_t cols = 0;
  std::vector<double> values;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::size_t fields = 0;
    std::string_view rest = lines[ln];
    if (Trim(rest).empty()) {
      throw Error(ErrorCode::kFormat,
                  Where(source, ln + 1) + ": blank line inside data");
    }
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(ParseReal(rest.substr(0, comma), source, ln + 1));
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (ln == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw Error(ErrorCode::kFormat,
                  Where(source, ln + 1) + ": ragged row with " +
                      std::to_string(fields) + " fields, expected " +
                      std::to_string(cols));
    }
  }
  Matrix m(lines.size(), cols);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

std::string FormatReal(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() +
                                    "' for writing");
  }
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

std::string MatrixCsv(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += FormatReal(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

FeatureMatrix::FeatureMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorCode::kEmptyInput, "feature matrix needs n >= 1 and d >= 1");
  }
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    for (double v : values_.row(i)) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kParse, "feature row " + std::to_string(i) +
                                           " has a non-finite entry");
      }
    }
  }
}

FeatureMatrix FeatureMatrix::Select(
    std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), dims());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= rows()) {
      throw Error(ErrorCode::kBounds, "row " + std::to_string(indices[r]) +
                                          " out of range");
    }
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return FeatureMatrix(std::move(out));
}

LabelVector::LabelVector(std::vector<int> labels, int num_classes)
    : labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 1) {
    throw Error(ErrorCode::kConfiguration, "number of classes must be >= 1");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= num_classes_) {
      throw Error(ErrorCode::kRange,
                  "label " + std::to_string(labels_[i]) + " at position " +
                      std::to_string(i) + " outside [0, " +
                      std::to_string(num_classes_) + ")");
    }
  }
}

ProbabilityMatrix::ProbabilityMatrix(Matrix values)
    : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorCode::kEmptyInput, "probability matrix is empty");
  }
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    double sum = 0.0;
    for (double p : values_.row(i)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kRange, "probability row " + std::to_string(i) +
                                           " has entry " + FormatReal(p) +
                                           " outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::kNormalization,
                  "probability row " + std::to_string(i) + " sums to " +
                      FormatReal(sum));
    }
  }
}

FeatureMatrix ParseFeatures(std::string_view text, std::string_view source) {
  return FeatureMatrix(ParseCsv(text, source));
}

LabelVector ParseLabels(std::string_view text, int num_classes,
                        std::string_view source) {
  if (IsBlank(text)) {
    throw Error(ErrorCode::kEmptyInput, std::string(source) + ": empty input");
  }
  const auto lines = SplitLines(text);
  std::vector<int> labels;
  labels.reserve(lines.size());
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view token = Trim(lines[ln]);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw Error(ErrorCode::kParse, Where(source, ln + 1) + ": '" +
                                         std::string(token) +
                                         "' is not an integer label");
    }
    if (value < 0 || value >= num_classes) {
      throw Error(ErrorCode::kRange, Where(source, ln + 1) + ": label " +
                                         std::to_string(value) +
                                         " outside [0, " +
                                         std::to_string(num_classes) + ")");
    }
    labels.push_back(value);
  }
  return LabelVector(std::move(labels), num_classes);
}

ProbabilityMatrix ParseProbabilities(std::string_view text,
                                     std::string_view source) {
  return ProbabilityMatrix(ParseCsv(text, source));
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FeatureMatrix LoadFeatures(const std::filesystem::path& path) {
  return ParseFeatures(ReadTextFile(path), path.string());
}

LabelVector LoadLabels(const std::filesystem::path& path, int num_classes) {
  return ParseLabels(ReadTextFile(path), num_classes, path.string());
}

ProbabilityMatrix LoadProbabilities(const std::filesystem::path& path) {
  return ParseProbabilities(ReadTextFile(path), path.string());
}

void WriteFeatures(const std::filesystem::path& path, const FeatureMatrix& m) {
  WriteText(path, MatrixCsv(m.values()));
}

void WriteProbabilities(const std::filesystem::path& path,
                        const ProbabilityMatrix& m) {
  WriteText(path, MatrixCsv(m.values()));
}

void WriteLabels(const std::filesystem::path& path, const LabelVector& labels) {
  std::string out;
  for (int label : labels.values()) {
    out += std::to_string(label);
    out += '\n';
  }
  WriteText(path, out);
}

}  // namespace tss
