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

#ifndef TSS_ERROR_HPP_
#define TSS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tss {

enum class ErrorCode {
  kFormat,             // ragged rows, malformed structure
  kParse,              // non-numeric or non-finite token
  kEmptyInput,
  kRange,              // value outside its admissible interval
  kNormalization,      // probability row does not sum to one
  kShape,              // dimension mismatch between operands
  kDegenerateFeature,  // zero-norm row under cosine similarity
  kConfiguration,
  kDuplicate,
  kBounds,
  kSize,
  kIndefiniteKernel,
  kDivergence,
  kIo,
};

const char* ToString(ErrorCode code);

// Process exit code for the command-line tool: 2 input, 3 configuration,
// 4 numerical failure.
int ExitCodeFor(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tss

#endif  // TSS_ERROR_HPP_
