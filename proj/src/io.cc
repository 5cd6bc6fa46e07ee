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

#include "rsgame/io.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace rsgame {
namespace {

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent) * d, ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out.push_back('[');
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_rec(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidArgument(where + ": expected a number");
  return j.get<double>();
}

int as_count(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidArgument(std::string("instance: missing integer field '") +
                          key + "'");
  }
  return j[key].get<int>();
}

const Json& as_array(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) {
    throw InvalidArgument(where + ": expected an array of length " +
                          std::to_string(n));
  }
  return j;
}

// Flattens a nested array with the given shape into row-major order.
void flatten(const Json& j, const std::vector<int>& shape, std::size_t level,
             const std::string& where, Vector& out) {
  as_array(j, static_cast<std::size_t>(shape[level]), where);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (level + 1 == shape.size()) {
      out.push_back(as_number(j[i], w));
    } else {
      flatten(j[i], shape, level + 1, w, out);
    }
  }
}

Vector read_table(const Json& doc, const char* key, std::vector<int> shape,
                  const std::string& prefix = "") {
  if (!doc.contains(key)) {
    throw InvalidArgument(prefix + "missing field '" + key + "'");
  }
  Vector out;
  flatten(doc[key], shape, 0, prefix + key, out);
  return out;
}

Json table_json(const Vector& flat, const std::vector<int>& shape) {
  std::size_t pos = 0;
  std::function<Json(std::size_t)> rec = [&](std::size_t level) -> Json {
    Json arr = Json::array();
    for (int i = 0; i < shape[level]; ++i) {
      if (level + 1 == shape.size()) {
        arr.push_back(flat[pos++]);
      } else {
        arr.push_back(rec(level + 1));
      }
    }
    return arr;
  };
  return rec(0);
}

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw IoError(source + ": parse error at " + position_of(text, e.byte) +
                  ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw IoError(path + ": write failed");
}

Json instance_to_json(const GameInstance& g) {
  const int ns = g.n_states();
  const int na = g.n_actions_a();
  const int nb = g.n_actions_b();
  Json j;
  j["theta"] = g.theta();
  j["anchor_state"] = g.anchor_state();
  j["states"] = ns;
  j["actions_a"] = na;
  j["actions_b"] = nb;
  j["transition"] = table_json(g.transition(), {ns, na, nb, ns});
  j["cost1"] = table_json(g.cost_table(Player::kOne), {ns, na, nb});
  j["cost2"] = table_json(g.cost_table(Player::kTwo), {ns, na, nb});
  if (const auto& arat = g.arat()) {
    Json a;
    a["p1"] = table_json(arat->p1, {ns, na, ns});
    a["p2"] = table_json(arat->p2, {ns, nb, ns});
    a["c11"] = table_json(arat->c11, {ns, na});
    a["c21"] = table_json(arat->c21, {ns, na});
    a["c12"] = table_json(arat->c12, {ns, nb});
    a["c22"] = table_json(arat->c22, {ns, nb});
    j["arat"] = std::move(a);
  }
  return j;
}

GameInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("instance: expected an object");
  const int ns = as_count(j, "states");
  const int na = as_count(j, "actions_a");
  const int nb = as_count(j, "actions_b");
  if (ns < 1 || na < 1 || nb < 1) {
    throw InvalidArgument("instance: dimensions must be positive");
  }
  const double theta =
      j.contains("theta") ? as_number(j["theta"], "theta") : 1.0;
  const int anchor = j.contains("anchor_state") ? as_count(j, "anchor_state") : 0;
  Vector transition = read_table(j, "transition", {ns, na, nb, ns});
  Vector cost1 = read_table(j, "cost1", {ns, na, nb});
  Vector cost2 = read_table(j, "cost2", {ns, na, nb});
  std::optional<AratStructure> arat;
  if (j.contains("arat") && !j["arat"].is_null()) {
    const Json& a = j["arat"];
    AratStructure s;
    s.n_states = ns;
    s.n_actions_a = na;
    s.n_actions_b = nb;
    s.p1 = read_table(a, "p1", {ns, na, ns}, "arat.");
    s.p2 = read_table(a, "p2", {ns, nb, ns}, "arat.");
    s.c11 = read_table(a, "c11", {ns, na}, "arat.");
    s.c21 = read_table(a, "c21", {ns, na}, "arat.");
    s.c12 = read_table(a, "c12", {ns, nb}, "arat.");
    s.c22 = read_table(a, "c22", {ns, nb}, "arat.");
    arat = std::move(s);
  }
  return GameInstance(ns, na, nb, std::move(transition), std::move(cost1),
                      std::move(cost2), theta, anchor, std::move(arat));
}

GameInstance load_instance(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return instance_from_json(j);
  } catch (const InvalidArgument& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string instance_digest(const GameInstance& game) {
  const std::string text = dump_json(instance_to_json(game), -1);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

Json strategy_to_json(Player player, const StationaryStrategy& s) {
  Json j;
  j["player"] = player_index(player);
  j["rows"] = table_json(s.data(), {s.n_states(), s.n_actions()});
  return j;
}

StationaryStrategy strategy_from_json(const Json& j, const GameInstance& game,
                                      Player player) {
  const int ns = game.n_states();
  const int n = game.n_actions(player);
  if (!j.is_object() || !j.contains("rows")) {
    throw InvalidArgument("strategy: expected an object with 'rows'");
  }
  if (j.contains("player")) {
    if (!j["player"].is_number_integer() ||
        j["player"].get<int>() != player_index(player)) {
      throw InvalidArgument("strategy: file is for a different player");
    }
  }
  if (j["rows"].is_string()) {
    if (j["rows"].get<std::string>() != "uniform") {
      throw InvalidArgument("strategy: the only literal is \"uniform\"");
    }
    return StationaryStrategy::uniform(ns, n);
  }
  Vector rows;
  flatten(j["rows"], {ns, n}, 0, "rows", rows);
  return StationaryStrategy(ns, n, std::move(rows));
}

StationaryStrategy load_strategy(const std::string& spec,
                                 const GameInstance& game, Player player) {
  if (spec == "uniform") {
    return StationaryStrategy::uniform(game.n_states(), game.n_actions(player));
  }
  const Json j = read_json_file(spec);
  try {
    return strategy_from_json(j, game, player);
  } catch (const InvalidArgument& e) {
    throw IoError(spec + ": " + e.what());
  }
}

Json diagnostics_to_json(const ModelDiagnostics& d) {
  Json j;
  j["passed"] = d.passed();
  j["delta"] = d.delta;
  if (std::isfinite(d.kappa)) {
    j["kappa"] = d.kappa;
    j["span_bound"] = d.span_bound;
  } else {
    j["kappa"] = "inf";
    j["span_bound"] = "inf";
  }
  j["c_bar"] = d.c_bar;
  j["theta"] = d.theta;
  j["min_prob"] = d.min_prob;
  j["min_entry"] = d.min_entry;
  Json checks = Json::array();
  for (const auto& c : d.checks) {
    Json e;
    e["id"] = c.id;
    e["condition"] = c.description;
    e["status"] = c.passed ? "PASS" : "FAIL";
    if (!c.passed) {
      e["message"] = c.message;
      e["violations"] = c.violations;
    }
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json solve_result_to_json(const SolveResult& r) {
  Json j;
  j["player"] = player_index(r.player);
  j["rho"] = r.rho;
  j["v"] = r.v;
  j["selector"] = r.selector;
  j["tied_actions"] = r.tied_actions;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  return j;
}

Json certificate_to_json(const NashCertificate& c) {
  Json j;
  j["phi"] = strategy_to_json(Player::kOne, c.phi);
  j["psi"] = strategy_to_json(Player::kTwo, c.psi);
  j["J1"] = c.j1;
  j["J2"] = c.j2;
  j["rho1_star"] = c.rho1_star;
  j["rho2_star"] = c.rho2_star;
  j["eps1"] = c.eps1;
  j["eps2"] = c.eps2;
  j["max_gap"] = c.max_gap();
  j["rounds"] = c.rounds;
  j["converged"] = c.converged;
  return j;
}

NashCertificate certificate_from_json(const Json& j, const GameInstance& game) {
  NashCertificate c;
  try {
    c.phi = strategy_from_json(j.at("phi"), game, Player::kOne);
    c.psi = strategy_from_json(j.at("psi"), game, Player::kTwo);
    c.j1 = j.at("J1").get<double>();
    c.j2 = j.at("J2").get<double>();
    c.rho1_star = j.at("rho1_star").get<double>();
    c.rho2_star = j.at("rho2_star").get<double>();
    c.eps1 = j.at("eps1").get<double>();
    c.eps2 = j.at("eps2").get<double>();
    c.rounds = j.value("rounds", 0L);
    c.converged = j.value("converged", false);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("certificate: ") + e.what());
  }
  return c;
}

Json mc_estimate_to_json(const McEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["std_error"] = e.std_error;
  j["n_paths"] = e.n_paths;
  j["horizon"] = e.horizon;
  j["seed"] = e.seed;
  return j;
}

}  // namespace rsgame
