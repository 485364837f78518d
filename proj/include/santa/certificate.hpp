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

// Dual witnesses from stuck local-search states.
//
// When the search at threshold t cannot find an addable edge, set T = alpha*t
// and
//
//   y_i = 1                       for i in B_P ∪ {i0},          else 0,
//   z_j = 1                       for fat j (v_j >= t) in A_R ∪ B_R,
//   z_j = min(1/3, beta*v_j/T)    for thin j in A_R ∪ B_R,      else 0.
//
// With alpha = 23/6 and beta = 23/15 this (y, z) always certifies that the
// configuration LP is infeasible at T, i.e. OPT* < alpha*t. The audit below
// re-derives every inequality that argument relies on, per addable edge.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "santa/config_lp.hpp"
#include "santa/local_search.hpp"

namespace santa {

inline Rational alpha() { return Rational(23, 6); }
inline Rational beta() { return Rational(23, 15); }

inline bool is_fat_resource(const Instance& instance, ResourceIndex j, const Rational& t) {
  return instance.value(j) >= t;
}

// Throws std::logic_error if `state` is not genuinely stuck.
inline DualWitness build_certificate(const Instance& instance, const SearchState& state) {
  const Rational& t = state.threshold;
  if (t.sign() <= 0) throw std::invalid_argument("stuck state has a nonpositive threshold");
  if (state.matching.contains(state.root))
    throw std::logic_error("root player is matched; state is not stuck");
  if (find_addable_edge(instance, state))
    throw std::logic_error("an addable edge still exists; state is not stuck");

  DualWitness w;
  w.tau = alpha() * t;
  w.y.assign(instance.num_players(), Rational(0));
  w.z.assign(instance.num_resources(), Rational(0));
  for (PlayerIndex p : state.blocking_players()) w.y[p] = Rational(1);
  w.y[state.root] = Rational(1);

  const Rational third(1, 3);
  for (ResourceIndex j : state.covered_resources()) {
    if (is_fat_resource(instance, j, t))
      w.z[j] = Rational(1);
    else
      w.z[j] = min(third, beta() * instance.value(j) / w.tau);
  }
  return w;
}

enum class ThinCase { kManyBlockers, kOneBlockerSmallMin, kOneBlockerLargeMin };

inline const char* to_string(ThinCase c) {
  switch (c) {
    case ThinCase::kManyBlockers: return "many-blockers";
    case ThinCase::kOneBlockerSmallMin: return "one-blocker-small-min";
    case ThinCase::kOneBlockerLargeMin: return "one-blocker-large-min";
  }
  return "?";
}

struct ThinEdgeRecord {
  std::size_t index = 0;  // position in A
  Hyperedge edge;
  std::vector<Hyperedge> blockers;
  Rational edge_value;   // v(e_R)
  Rational union_value;  // v(e_R ∪ B(e)_R)
  Rational union_z;      // z(e_R ∪ B(e)_R)
  Rational min_value;    // smallest v_j in e_R ∪ B(e)_R
  std::optional<ThinCase> case_label;
};

struct AuditStep {
  std::string label;
  bool ok = true;
  std::string detail;
};

struct StuckAudit {
  std::size_t fat_blocking = 0;   // |B^f|
  std::size_t thin_blocking = 0;  // |B^t|
  Rational fat_z;                 // sum of z over fat resources
  Rational sum_y;
  Rational sum_z;
  std::vector<ThinEdgeRecord> thin_edges;
  std::vector<AuditStep> steps;

  bool ok() const {
    return std::all_of(steps.begin(), steps.end(), [](const AuditStep& s) { return s.ok; });
  }
  std::vector<AuditStep> failures() const {
    std::vector<AuditStep> out;
    for (const auto& s : steps)
      if (!s.ok) out.push_back(s);
    return out;
  }
};

// Recomputes each step of the negativity argument for w on `state`. Never
// throws on a failed inequality; failures are recorded with their label.
inline StuckAudit audit_stuck_state(const Instance& instance, const SearchState& state,
                                    const DualWitness& w) {
  StuckAudit a;
  auto step = [&](std::string label, bool ok, std::string detail = {}) {
    a.steps.push_back({std::move(label), ok, std::move(detail)});
  };
  if (w.y.size() != instance.num_players() || w.z.size() != instance.num_resources()) {
    step("witness-arity", false, "witness does not match the instance");
    return a;
  }
  const Rational& t = state.threshold;
  const Rational T = alpha() * t;
  step("tau", w.tau == T, "tau = " + w.tau.str() + ", alpha*t = " + T.str());

  for (const auto& q : w.y) a.sum_y += q;
  for (const auto& q : w.z) a.sum_z += q;

  // Blocker types and counts.
  for (std::size_t k = 0; k < state.addable.size(); ++k) {
    const bool fat = is_fat(instance, state.addable[k], t);
    for (const auto& b : state.blocking_edges(k)) {
      const bool b_fat = is_fat(instance, b, t);
      if (b_fat) ++a.fat_blocking; else ++a.thin_blocking;
      if (b_fat != fat)
        step("blocker-type", false, "addable edge " + std::to_string(k) + " and a blocker differ in fatness");
    }
  }

  // (a) total z on fat resources is at most |B^f|.
  for (ResourceIndex j = 0; j < instance.num_resources(); ++j)
    if (is_fat_resource(instance, j, t)) a.fat_z += w.z[j];
  step("fat-z-bound", a.fat_z <= Rational(static_cast<std::int64_t>(a.fat_blocking)),
       "sum z over fat = " + a.fat_z.str() + ", |B^f| = " + std::to_string(a.fat_blocking));

  // (b) every addable edge is blocked.
  for (std::size_t k = 0; k < state.addable.size(); ++k)
    if (state.blocking[k].empty())
      step(is_fat(instance, state.addable[k], t) ? "fat-addable-blocked" : "thin-addable-blocked", false,
           "addable edge " + std::to_string(k) + " has no blocking edge");

  const Rational third(1, 3);
  Rational thin_union_z;
  std::size_t thin_union_blockers = 0;
  for (std::size_t k = 0; k < state.addable.size(); ++k) {
    const Hyperedge& e = state.addable[k];
    if (is_fat(instance, e, t)) continue;
    ThinEdgeRecord rec;
    rec.index = k;
    rec.edge = e;
    rec.blockers = state.blocking_edges(k);
    const std::string where = "thin addable edge " + std::to_string(k);

    ResourceSet u = e.resources;
    for (const auto& b : rec.blockers) u = set_union(u, b.resources);
    rec.edge_value = bundle_value(instance, e.resources);
    rec.union_value = bundle_value(instance, u);
    for (ResourceIndex j : u) rec.union_z += w.z[j];
    if (!u.empty()) {
      rec.min_value = instance.value(u.front());
      for (ResourceIndex j : u) rec.min_value = min(rec.min_value, instance.value(j));
    }
    thin_union_z += rec.union_z;
    thin_union_blockers += rec.blockers.size();

    // Structural facts from minimality.
    step("thin-edge-value", rec.edge_value <= Rational(2) * t,
         where + ": v(e) = " + rec.edge_value.str() + " vs 2t = " + (Rational(2) * t).str());
    for (const auto& b : rec.blockers) {
      const Rational outside = bundle_value(instance, set_difference(b.resources, e.resources));
      step("blocker-excess", outside <= t,
           where + ": blocker of '" + instance.player_id(b.player) + "' adds " + outside.str());
    }
    for (ResourceIndex j : u)
      if (w.z[j] > beta() * instance.value(j) / T)
        step("thin-z-bound", false, where + ": z of '" + instance.resource_id(j) + "' exceeds beta*v/T");

    const std::size_t nb = rec.blockers.size();
    const Rational nb_q(static_cast<std::int64_t>(nb));
    if (nb >= 2) {
      rec.case_label = ThinCase::kManyBlockers;
      const Rational v_bound = (Rational(2) + nb_q) * t;
      const Rational z_bound = beta() * v_bound / T;
      step("many-blockers:value", rec.union_value <= v_bound,
           where + ": v = " + rec.union_value.str() + " vs (2+|B|)t = " + v_bound.str());
      step("many-blockers:z", rec.union_z <= z_bound && z_bound <= Rational(4, 5) * nb_q && z_bound < nb_q,
           where + ": z = " + rec.union_z.str() + ", bound " + z_bound.str());
    } else if (nb == 1 && rec.min_value <= t / Rational(2)) {
      rec.case_label = ThinCase::kOneBlockerSmallMin;
      const Rational v_bound = Rational(2) * t + rec.min_value;
      const Rational z_bound = beta() * v_bound / T;
      step("one-blocker-small-min:value", rec.union_value <= v_bound,
           where + ": v = " + rec.union_value.str() + " vs 2t + v_min = " + v_bound.str());
      step("one-blocker-small-min:z", rec.union_z <= z_bound && z_bound <= Rational(1),
           where + ": z = " + rec.union_z.str() + ", bound " + z_bound.str());
    } else if (nb == 1) {
      rec.case_label = ThinCase::kOneBlockerLargeMin;
      const auto& b = rec.blockers.front().resources;
      const auto only = set_difference(e.resources, b);
      const auto shared = set_intersection(e.resources, b);
      const auto extra = set_difference(b, e.resources);
      // e and its blocker may carry identical resources, so the outer parts
      // can be empty; minimality caps the union at three elements.
      step("one-blocker-large-min:parts",
           only.size() <= 1 && extra.size() <= 1 && !shared.empty() && u.size() <= 3,
           where + ": parts of sizes " + std::to_string(only.size()) + "/" + std::to_string(shared.size()) +
               "/" + std::to_string(extra.size()));
      bool thirds = true;
      for (ResourceIndex j : u) thirds = thirds && w.z[j] <= third;
      step("one-blocker-large-min:z", thirds && rec.union_z <= Rational(1),
           where + ": z = " + rec.union_z.str());
    }
    if (nb >= 1)
      step("thin-edge-z", rec.union_z <= nb_q,
           where + ": z(e ∪ B(e)) = " + rec.union_z.str() + " vs |B(e)| = " + std::to_string(nb));
    a.thin_edges.push_back(std::move(rec));
  }

  // (d) the chain  sum y = |B^f| + |B^t| + 1 > |B^f| + sum |B(e)| >= sum z.
  const Rational counted(static_cast<std::int64_t>(a.fat_blocking + a.thin_blocking + 1));
  step("sum-y", a.sum_y == counted,
       "sum y = " + a.sum_y.str() + ", |B^f| + |B^t| + 1 = " + counted.str());
  step("thin-blockers-partition", thin_union_blockers == a.thin_blocking,
       "sum |B(e)| over thin e = " + std::to_string(thin_union_blockers) + ", |B^t| = " +
           std::to_string(a.thin_blocking));
  step("sum-z-partition", a.sum_z == a.fat_z + thin_union_z,
       "sum z = " + a.sum_z.str() + ", fat part + thin unions = " + (a.fat_z + thin_union_z).str());
  step("negativity", a.sum_z < a.sum_y, "sum z = " + a.sum_z.str() + " < sum y = " + a.sum_y.str());
  return a;
}

// z(C) >= y_i for every player with y_i > 0 and every C in C(i, w.tau).
inline bool check_claim_feasibility(const Instance& instance, const DualWitness& w, const Limits& limits = {}) {
  for (PlayerIndex i = 0; i < instance.num_players(); ++i)
    if (w.y[i].sign() > 0 && price_configuration(instance, i, w.tau, w.z, w.y[i], limits)) return false;
  return true;
}

inline bool check_claim_negativity(const DualWitness& w) {
  Rational sy, sz;
  for (const auto& q : w.y) sy += q;
  for (const auto& q : w.z) sz += q;
  return sz < sy;
}

}  // namespace santa
