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

// Brute-force ground truth. Nothing here shares solving code with
// config_lp.hpp or local_search.hpp; only the instance model and the LP
// engine are common.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "santa/instance_io.hpp"
#include "santa/lp.hpp"
#include "santa/model.hpp"

namespace santa::oracle {

class OracleGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_nodes = 10'000'000;
  std::size_t max_desires = 20;  // per player, for subset enumeration
};

struct IntegralOptimum {
  Rational value;
  Allocation allocation;
  std::size_t nodes = 0;
};

// Exact max-min value over all assignments of resources to desiring players
// (or to nobody). Depth-first over resources in canonical order, trying
// desiring players in ascending order before "unassigned"; the first optimum
// met in that order is returned.
inline IntegralOptimum brute_force_opt(const Instance& instance, const OracleLimits& limits = {}) {
  const std::size_t np = instance.num_players();
  const std::size_t nr = instance.num_resources();
  IntegralOptimum out;
  out.allocation.bundles.assign(np, {});
  if (np == 0) return out;

  std::vector<std::vector<PlayerIndex>> takers(nr);
  for (PlayerIndex i = 0; i < np; ++i)
    for (ResourceIndex j : instance.desires(i)) takers[j].push_back(i);
  // remaining[k][i]: value of resources k.. desired by i.
  std::vector<std::vector<Rational>> remaining(nr + 1, std::vector<Rational>(np));
  for (std::size_t k = nr; k-- > 0;) {
    remaining[k] = remaining[k + 1];
    for (PlayerIndex i : takers[k]) remaining[k][i] += instance.value(k);
  }
  Rational ceiling = remaining[0][0];
  for (PlayerIndex i = 1; i < np; ++i) ceiling = min(ceiling, remaining[0][i]);

  std::vector<Rational> load(np);
  std::vector<std::optional<PlayerIndex>> owner(nr);
  std::optional<Rational> best;
  std::vector<std::optional<PlayerIndex>> best_owner;

  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (++out.nodes > limits.max_nodes)
      throw OracleGuardExceeded("integral search exceeded " + std::to_string(limits.max_nodes) + " nodes");
    if (best && *best == ceiling) return;
    Rational bound = load[0] + remaining[k][0];
    for (PlayerIndex i = 1; i < np; ++i) bound = min(bound, load[i] + remaining[k][i]);
    if (best && bound <= *best) return;
    if (k == nr) {
      Rational v = load[0];
      for (PlayerIndex i = 1; i < np; ++i) v = min(v, load[i]);
      best = v;
      best_owner = owner;
      return;
    }
    for (PlayerIndex i : takers[k]) {
      owner[k] = i;
      load[i] += instance.value(k);
      self(self, k + 1);
      load[i] -= instance.value(k);
    }
    owner[k].reset();
    self(self, k + 1);
  };
  recurse(recurse, 0);

  out.value = *best;
  for (ResourceIndex j = 0; j < nr; ++j)
    if (best_owner[j]) out.allocation.bundles[*best_owner[j]].push_back(j);
  return out;
}

namespace detail {

inline std::vector<std::uint32_t> subset_masks(const Instance& instance, PlayerIndex i,
                                               const OracleLimits& limits) {
  const std::size_t n = instance.desires(i).size();
  if (n > limits.max_desires || n >= 32)
    throw OracleGuardExceeded("player '" + instance.player_id(i) + "' desires too many resources to enumerate");
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  return masks;
}

inline Rational mask_value(const Instance& instance, PlayerIndex i, std::uint32_t mask) {
  Rational v;
  const auto& d = instance.desires(i);
  for (std::size_t b = 0; b < d.size(); ++b)
    if (mask >> b & 1u) v += instance.value(d[b]);
  return v;
}

// Feasibility of the LP over every (not only minimal) configuration.
inline bool full_lp_feasible(const Instance& instance, const Rational& tau, const OracleLimits& limits) {
  const std::size_t np = instance.num_players();
  const std::size_t nr = instance.num_resources();
  std::vector<std::pair<PlayerIndex, std::uint32_t>> columns;
  for (PlayerIndex i = 0; i < np; ++i)
    for (std::uint32_t m : subset_masks(instance, i, limits))
      if (mask_value(instance, i, m) >= tau) columns.emplace_back(i, m);
  if (columns.size() > limits.max_nodes)
    throw OracleGuardExceeded("too many configurations for the oracle LP");

  lp::Problem p;
  p.sense = lp::Sense::kMaximize;
  p.objective.assign(columns.size(), Rational(0));
  for (PlayerIndex i = 0; i < np; ++i) {
    lp::Constraint c{std::vector<Rational>(columns.size()), lp::Relation::kGreaterEqual, Rational(1)};
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (columns[k].first == i) c.coefficients[k] = Rational(1);
    p.constraints.push_back(std::move(c));
  }
  for (ResourceIndex j = 0; j < nr; ++j) {
    lp::Constraint c{std::vector<Rational>(columns.size()), lp::Relation::kLessEqual, Rational(1)};
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const auto& d = instance.desires(columns[k].first);
      for (std::size_t b = 0; b < d.size(); ++b)
        if ((columns[k].second >> b & 1u) && d[b] == j) c.coefficients[k] = Rational(1);
    }
    p.constraints.push_back(std::move(c));
  }
  return lp::solve(p).status == lp::Status::kOptimal;
}

}  // namespace detail

// OPT* from the full configuration LP, one fresh LP per probed threshold.
inline Rational brute_force_opt_star(const Instance& instance, const OracleLimits& limits = {}) {
  const std::size_t np = instance.num_players();
  if (np == 0) return Rational(0);
  std::vector<Rational> sums;
  for (PlayerIndex i = 0; i < np; ++i)
    for (std::uint32_t m : detail::subset_masks(instance, i, limits))
      if (m != 0) sums.push_back(detail::mask_value(instance, i, m));
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  auto first_infeasible = std::partition_point(sums.begin(), sums.end(), [&](const Rational& tau) {
    return detail::full_lp_feasible(instance, tau, limits);
  });
  return first_infeasible == sums.begin() ? Rational(0) : *std::prev(first_infeasible);
}

struct GapReport {
  Rational opt_integral;
  Rational opt_star;
  Rational gap;
  // Set when OPT* > 0 but no allocation reaches a positive value; ruled out
  // by Hall's theorem, so seeing it means a bug.
  bool anomaly = false;
  Allocation allocation;
  std::string fingerprint;
};

inline GapReport integrality_gap(const Instance& instance, const OracleLimits& limits = {}) {
  GapReport r;
  auto integral = brute_force_opt(instance, limits);
  r.opt_integral = integral.value;
  r.allocation = std::move(integral.allocation);
  r.opt_star = brute_force_opt_star(instance, limits);
  r.fingerprint = fingerprint(instance);
  if (r.opt_integral.sign() > 0) {
    r.gap = r.opt_star / r.opt_integral;
  } else if (r.opt_star.is_zero()) {
    r.gap = Rational(1);
  } else {
    r.anomaly = true;
    r.gap = Rational(0);
  }
  return r;
}

}  // namespace santa::oracle
