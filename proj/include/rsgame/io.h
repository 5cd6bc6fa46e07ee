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

// JSON documents: instance files, strategy files and report payloads.
//
// Instance file:
//   {"theta": 1, "anchor_state": 0, "states": 2, "actions_a": 2,
//    "actions_b": 2, "transition": [x][a][b][y], "cost1": [x][a][b],
//    "cost2": [x][a][b],
//    "arat": {"p1": [x][a][y], "p2": [x][b][y], "c11": [x][a],
//             "c21": [x][a], "c12": [x][b], "c22": [x][b]}}   (optional)
//
// Strategy file:
//   {"player": 1, "rows": [[...], ...]}  or  {"player": 1, "rows": "uniform"}

#ifndef RSGAME_IO_H_
#define RSGAME_IO_H_

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rsgame/bellman.h"
#include "rsgame/game_model.h"
#include "rsgame/nash.h"
#include "rsgame/sim.h"

namespace rsgame {

using Json = nlohmann::ordered_json;

// Unreadable or unparseable input.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serializes with every floating-point number printed to 17 significant
// digits. indent < 0 gives the compact form.
std::string dump_json(const Json& j, int indent = 2);

Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json instance_to_json(const GameInstance& game);
// Throws InvalidArgument on a schema or invariant violation.
GameInstance instance_from_json(const Json& j);
GameInstance load_instance(const std::string& path);

// 16 hex digits of FNV-1a over the compact canonical instance document.
std::string instance_digest(const GameInstance& game);

Json strategy_to_json(Player player, const StationaryStrategy& s);
StationaryStrategy strategy_from_json(const Json& j, const GameInstance& game,
                                      Player player);
// `spec` is either the literal "uniform" or a strategy file path.
StationaryStrategy load_strategy(const std::string& spec,
                                 const GameInstance& game, Player player);

Json diagnostics_to_json(const ModelDiagnostics& d);
Json solve_result_to_json(const SolveResult& r);
Json certificate_to_json(const NashCertificate& c);
NashCertificate certificate_from_json(const Json& j, const GameInstance& game);
Json mc_estimate_to_json(const McEstimate& e);

}  // namespace rsgame

#endif  // RSGAME_IO_H_
