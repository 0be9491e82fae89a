// Copyright 2026 The bhcycle Authors
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

// Seeded stress harness shared by the command line tool and the acceptance
// runner. Reports are plain JSON with sorted keys and no clock readings.

#ifndef BHCYCLE_TOOLS_STRESS_HPP_
#define BHCYCLE_TOOLS_STRESS_HPP_

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "bhcycle/construct.hpp"

namespace bhc::stress {

enum class Generator { kRandom, kClustered, kLoaded };

Generator parse_generator(const std::string& name);
const char* to_string(Generator g);

struct Config {
  int n = 3;
  int trials = 100;
  int fault_size = -1;  // -1: 4n-5
  int edges_per_trial = 5;
  std::uint64_t seed = 1;
  Generator generator = Generator::kRandom;
  int jobs = 1;
  // n=2 only: every conditional subset of size <= fault_size, every edge.
  bool exhaustive = false;
  // Search for each vocabulary label not reached by the trials.
  bool targets = false;
  int target_attempts = 3000;
  ConstructOptions construct;
};

// Exit code per the tool's convention: 0 clean, 3 verification or oracle
// failure, 4 when the only failures were budget exhaustion.
int exit_code(const nlohmann::json& report);

nlohmann::json run(const Config& cfg);

}  // namespace bhc::stress

#endif  // BHCYCLE_TOOLS_STRESS_HPP_
