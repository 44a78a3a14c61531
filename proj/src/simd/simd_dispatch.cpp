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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "tss/simd.hpp"

namespace tss::simd {
namespace {

bool CpuSupports(Level level) {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2::Table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Level::kNeon:
      return neon::Table() != nullptr;
  }
  return false;
}

Level InitialLevel() {
  if (const char* env = std::getenv("TSS_SIMD")) {
    const std::string_view requested(env);
    for (Level level : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
      if (requested == ToString(level) && CpuSupports(level)) return level;
    }
  }
  return DetectLevel();
}

struct ActiveState {
  std::atomic<Level> level;
  std::atomic<const KernelTable*> table;
};

ActiveState& Slot() {
  static ActiveState state{InitialLevel(), nullptr};
  static const bool initialized = [] {
    state.table.store(&TableFor(state.level.load()));
    return true;
  }();
  (void)initialized;
  return state;
}

}  // namespace

const char* ToString(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
    case Level::kNeon:
      return "neon";
  }
  return "unknown";
}

Level DetectLevel() {
  if (CpuSupports(Level::kAvx2)) return Level::kAvx2;
  if (CpuSupports(Level::kNeon)) return Level::kNeon;
  return Level::kScalar;
}

std::vector<Level> AvailableLevels() {
  std::vector<Level> levels;
  for (Level level : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
    if (CpuSupports(level)) levels.push_back(level);
  }
  return levels;
}

Level ActiveLevel() { return Slot().level.load(std::memory_order_acquire); }

bool SetLevel(Level level) {
  if (!CpuSupports(level)) return false;
  ActiveState& state = Slot();
  state.table.store(&TableFor(level), std::memory_order_release);
  state.level.store(level, std::memory_order_release);
  return true;
}

const KernelTable& TableFor(Level level) {
  switch (level) {
    case Level::kAvx2:
      if (CpuSupports(level)) return *avx2::Table();
      break;
    case Level::kNeon:
      if (CpuSupports(level)) return *neon::Table();
      break;
    case Level::kScalar:
      break;
  }
  return scalar::Table();
}

const KernelTable& Active() {
  return *Slot().table.load(std::memory_order_acquire);
}

}  // namespace tss::simd
