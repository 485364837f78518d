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

// Instance file format (JSON):
//
//   {
//     "resources": [ {"id": "a", "value": "3/2"}, ... ],
//     "players":   [ {"id": "p1", "desires": ["a", ...]}, ... ]
//   }
//
// Values are rational literals written as JSON strings ("5", "3/2"); plain
// JSON integers are accepted as well. Floats are rejected.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "santa/model.hpp"

namespace santa {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ParseError(where + ": expected a rational literal string");
}

inline nlohmann::json rational_to_json(const Rational& q) { return q.str(); }

// Throws ParseError for syntax/shape problems and ModelError for semantic ones
// (duplicate ids, nonpositive values, unknown resources).
inline Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  for (const char* key : {"resources", "players"})
    if (!doc.contains(key) || !doc[key].is_array())
      throw ParseError(std::string("missing array '") + key + "'");

  std::vector<Resource> resources;
  for (std::size_t k = 0; k < doc["resources"].size(); ++k) {
    const auto& r = doc["resources"][k];
    const std::string where = "resources[" + std::to_string(k) + "]";
    if (!r.is_object() || !r.contains("id") || !r["id"].is_string() || !r.contains("value"))
      throw ParseError(where + ": expected {\"id\": string, \"value\": rational}");
    resources.push_back({r["id"].get<std::string>(), rational_from_json(r["value"], where + ".value")});
  }
  std::vector<Player> players;
  for (std::size_t k = 0; k < doc["players"].size(); ++k) {
    const auto& p = doc["players"][k];
    const std::string where = "players[" + std::to_string(k) + "]";
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string() || !p.contains("desires") ||
        !p["desires"].is_array())
      throw ParseError(where + ": expected {\"id\": string, \"desires\": [string]}");
    Player player{p["id"].get<std::string>(), {}};
    for (const auto& d : p["desires"]) {
      if (!d.is_string()) throw ParseError(where + ".desires: resource ids must be strings");
      player.desires.push_back(d.get<std::string>());
    }
    players.push_back(std::move(player));
  }
  return Instance(std::move(resources), std::move(players));
}

inline nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json doc;
  doc["resources"] = nlohmann::json::array();
  for (const auto& r : instance.resources())
    doc["resources"].push_back({{"id", r.id}, {"value", r.value.str()}});
  doc["players"] = nlohmann::json::array();
  for (const auto& p : instance.players())
    doc["players"].push_back({{"id", p.id}, {"desires", p.desires}});
  return doc;
}

inline std::string format_instance(const Instance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

// FNV-1a 64 over the compact canonical serialization, as 16 hex digits.
inline std::string fingerprint(const Instance& instance) {
  const std::string canonical = instance_to_json(instance).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

}  // namespace santa
