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

// JSON serialization for witnesses, allocations, audits and gap reports, plus
// the line-per-event search trace. Every rational is written as "p/q" in
// lowest terms ("p" for integers).

#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "json.hpp"
#include "santa/certificate.hpp"
#include "santa/instance_io.hpp"
#include "santa/oracle.hpp"

namespace santa {

inline nlohmann::json resource_ids(const Instance& instance, const ResourceSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (ResourceIndex j : s) out.push_back(instance.resource_id(j));
  return out;
}

inline nlohmann::json witness_to_json(const Instance& instance, const DualWitness& w) {
  nlohmann::json doc;
  doc["fingerprint"] = fingerprint(instance);
  doc["tau"] = w.tau.str();
  doc["y"] = nlohmann::json::object();
  doc["z"] = nlohmann::json::object();
  for (PlayerIndex i = 0; i < w.y.size(); ++i)
    if (!w.y[i].is_zero()) doc["y"][instance.player_id(i)] = w.y[i].str();
  for (ResourceIndex j = 0; j < w.z.size(); ++j)
    if (!w.z[j].is_zero()) doc["z"][instance.resource_id(j)] = w.z[j].str();
  return doc;
}

struct ParsedWitness {
  DualWitness witness;
  std::string fingerprint;
};

// Entries absent from "y"/"z" are zero.
inline ParsedWitness parse_witness(const std::string& text, const Instance& instance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("witness syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("tau") || !doc.contains("y") || !doc.contains("z") ||
      !doc["y"].is_object() || !doc["z"].is_object())
    throw ParseError("witness must be an object with \"tau\", \"y\" and \"z\"");
  ParsedWitness out;
  out.fingerprint = doc.value("fingerprint", std::string{});
  out.witness.tau = rational_from_json(doc["tau"], "tau");
  out.witness.y.assign(instance.num_players(), Rational(0));
  out.witness.z.assign(instance.num_resources(), Rational(0));
  for (const auto& [id, v] : doc["y"].items()) {
    auto i = instance.find_player(id);
    if (!i) throw ParseError("witness names unknown player '" + id + "'");
    out.witness.y[*i] = rational_from_json(v, "y." + id);
  }
  for (const auto& [id, v] : doc["z"].items()) {
    auto j = instance.find_resource(id);
    if (!j) throw ParseError("witness names unknown resource '" + id + "'");
    out.witness.z[*j] = rational_from_json(v, "z." + id);
  }
  return out;
}

inline nlohmann::json allocation_to_json(const Instance& instance, const Allocation& a) {
  nlohmann::json out = nlohmann::json::array();
  for (PlayerIndex i = 0; i < a.bundles.size(); ++i)
    out.push_back({{"player", instance.player_id(i)},
                   {"resources", resource_ids(instance, a.bundles[i])},
                   {"value", bundle_value(instance, a.bundles[i]).str()}});
  return out;
}

inline nlohmann::json witness_check_to_json(const Instance& instance, const WitnessCheck& c) {
  nlohmann::json out{{"valid", c.ok},
                     {"nonnegative", c.nonnegative},
                     {"objective_positive", c.objective_positive},
                     {"constraints_hold", c.constraints_hold},
                     {"sum_y", c.sum_y.str()},
                     {"sum_z", c.sum_z.str()}};
  if (c.violated)
    out["violated_configuration"] = {{"player", instance.player_id(c.violated->player)},
                                     {"resources", resource_ids(instance, c.violated->resources)}};
  if (!c.reason.empty()) out["reason"] = c.reason;
  return out;
}

inline nlohmann::json audit_to_json(const Instance& instance, const StuckAudit& a) {
  nlohmann::json out{{"passed", a.ok()},
                     {"fat_blocking", a.fat_blocking},
                     {"thin_blocking", a.thin_blocking},
                     {"fat_z", a.fat_z.str()},
                     {"sum_y", a.sum_y.str()},
                     {"sum_z", a.sum_z.str()}};
  out["thin_edges"] = nlohmann::json::array();
  for (const auto& r : a.thin_edges) {
    out["thin_edges"].push_back({{"index", r.index},
                                 {"player", instance.player_id(r.edge.player)},
                                 {"resources", resource_ids(instance, r.edge.resources)},
                                 {"blockers", r.blockers.size()},
                                 {"union_z", r.union_z.str()},
                                 {"min_value", r.min_value.str()},
                                 {"case", r.case_label ? to_string(*r.case_label) : "none"}});
  }
  out["failures"] = nlohmann::json::array();
  for (const auto& s : a.failures()) out["failures"].push_back({{"step", s.label}, {"detail", s.detail}});
  return out;
}

inline nlohmann::json gap_report_to_json(const Instance& instance, const oracle::GapReport& g) {
  return {{"fingerprint", g.fingerprint},
          {"opt_integral", g.opt_integral.str()},
          {"opt_star", g.opt_star.str()},
          {"gap", g.gap.str()},
          {"anomaly", g.anomaly},
          {"allocation", allocation_to_json(instance, g.allocation)}};
}

// Trace lines:
//   call <i0> |M|=<n> sig=<s>
//   add <player> {<resources>} blocked-by [<players>]
//   swap <player> {<old>} -> {<new>} keep=<l>
//   match <player> {<resources>}
//   iteration <main> sig=<s>
//   stuck iteration=<main> sig=<s>
class TraceWriter : public SearchObserver {
 public:
  TraceWriter(std::ostream& out, const Instance& instance) : out_(out), instance_(instance) {}

  void on_call_start(const SearchState& s) override {
    out_ << "call " << instance_.player_id(s.root) << " |M|=" << s.matching.size()
         << " sig=" << format_signature(signature(s)) << "\n";
  }
  void on_addable(const SearchState& s, const Hyperedge& e) override {
    out_ << "add " << instance_.player_id(e.player) << " " << set(e.resources) << " blocked-by [";
    const auto& b = s.blocking.back();
    for (std::size_t k = 0; k < b.size(); ++k) out_ << (k ? "," : "") << instance_.player_id(b[k]);
    out_ << "]\n";
  }
  void on_swap(const SearchState&, const Hyperedge& removed, const Hyperedge& inserted,
               std::size_t kept) override {
    out_ << "swap " << instance_.player_id(removed.player) << " " << set(removed.resources) << " -> "
         << set(inserted.resources) << " keep=" << kept << "\n";
  }
  void on_matched(const SearchState&, const Hyperedge& e) override {
    out_ << "match " << instance_.player_id(e.player) << " " << set(e.resources) << "\n";
  }
  void on_iteration_end(const SearchState& s) override {
    out_ << "iteration " << s.main_iterations << " sig=" << format_signature(signature(s)) << "\n";
  }
  void on_stuck(const SearchState& s) override {
    out_ << "stuck iteration=" << s.main_iterations << " sig=" << format_signature(signature(s)) << "\n";
  }

 private:
  std::string set(const ResourceSet& r) const {
    std::string out = "{";
    for (std::size_t k = 0; k < r.size(); ++k) out += (k ? "," : "") + instance_.resource_id(r[k]);
    return out + "}";
  }

  std::ostream& out_;
  const Instance& instance_;
};

}  // namespace santa
