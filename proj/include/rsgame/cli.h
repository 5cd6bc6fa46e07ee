// Copyright 2026 The rsgame Authors.
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

#ifndef RSGAME_CLI_H_
#define RSGAME_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsgame/io.h"

namespace rsgame {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,   // assumption failure or non-convergence
  kExitUsage = 2,
  kExitIo = 3,
};

// Every flag of every subcommand with its default; reports embed the whole
// resolved set.
struct RunConfig {
  std::string command;
  std::string instance_path;
  std::string phi = "uniform";
  std::string psi = "uniform";
  std::string opponent = "uniform";
  std::string output_path;
  int player = 2;
  double tol = 1e-12;
  long max_iter = 100000;
  double beta = 0.5;
  double tau0 = 0.1;
  double tau_min = 1e-4;
  bool smoothing = true;
  long rounds = 500;
  double grid = 0.05;
  int horizon = 200;
  long paths = 10000;
  bool mc = false;
  int start = -1;  // -1: anchor state
  std::uint64_t seed = 0;
  double eps = 1e-6;
  std::optional<double> theta;
  double min_prob = kDefaultMinProb;
  int threads = 1;
  long limit = 0;  // brute: certificates listed, 0 = all
  // gen
  int states = 2;
  int actions_a = 2;
  int actions_b = 2;
  bool arat = false;
  double c_bar = 1.0;
  double gen_min_prob = 0.02;
};

Json config_to_json(const RunConfig& config);

// Executes one resolved command; writes the report to config.output_path or
// `out`, diagnostics to `err`. For gen, output_path receives the instance and
// the report goes to `out`; without output_path the instance alone is printed.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to run().
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace rsgame

#endif  // RSGAME_CLI_H_
