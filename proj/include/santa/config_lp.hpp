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

// Configuration LP for restricted max-min allocation.
//
// For a threshold tau > 0, a configuration of player i is a set C of desired
// resources with v(C) >= tau. The LP asks for x_{i,C} >= 0 with
//
//   sum_C x_{i,C} >= 1            for every player i,
//   sum_{(i,C) : j in C} x_{i,C} <= 1   for every resource j.
//
// OPT* is the largest tau for which this system is feasible. Infeasibility is
// certified by a dual witness (y, z) >= 0 with sum y > sum z and z(C) >= y_i
// for every configuration C of every player i.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "santa/lp.hpp"
#include "santa/model.hpp"

namespace santa {

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::size_t max_configurations = std::size_t{1} << 20;
  std::size_t max_candidates = std::size_t{1} << 20;
  std::size_t max_pricing_nodes = std::size_t{1} << 24;
};

// Work counters, accumulated across calls when the same object is passed in.
struct LpCounters {
  std::size_t configurations = 0;
  std::size_t lp_solves = 0;
  std::size_t pivots = 0;
  std::size_t priced_columns = 0;
  std::size_t feasibility_checks = 0;
};

enum class SolveMode { kEnumeration, kColumnGeneration };

inline const char* to_string(SolveMode m) {
  return m == SolveMode::kEnumeration ? "enum" : "colgen";
}

struct Configuration {
  PlayerIndex player = 0;
  ResourceSet resources;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct DualWitness {
  Rational tau;
  std::vector<Rational> y;  // per player
  std::vector<Rational> z;  // per resource
};

namespace detail {

inline void require_positive(const Rational& tau) {
  if (tau.sign() <= 0) throw std::invalid_argument("threshold must be positive, got " + tau.str());
}

inline Rational sum(const std::vector<Rational>& v) {
  return std::accumulate(v.begin(), v.end(), Rational(0));
}

}  // namespace detail

// All inclusion-minimal C within R(i) with v(C) >= tau, in lexicographic order
// of their sorted index lists.
inline std::vector<Configuration> enumerate_minimal_configs(const Instance& instance, PlayerIndex i,
                                                            const Rational& tau,
                                                            const Limits& limits = {},
                                                            LpCounters* counters = nullptr) {
  detail::require_positive(tau);
  const ResourceSet& items = instance.desires(i);
  std::vector<Rational> suffix(items.size() + 1);
  for (std::size_t k = items.size(); k-- > 0;) suffix[k] = suffix[k + 1] + instance.value(items[k]);

  std::vector<Configuration> out;
  ResourceSet chosen;
  std::function<void(std::size_t, const Rational&)> dfs = [&](std::size_t k, const Rational& value) {
    if (value >= tau) {
      Rational smallest = instance.value(chosen.front());
      for (ResourceIndex j : chosen) smallest = min(smallest, instance.value(j));
      if (value - smallest < tau) {
        if (out.size() >= limits.max_configurations)
          throw GuardExceeded("more than " + std::to_string(limits.max_configurations) +
                              " minimal configurations for player '" + instance.player_id(i) + "'");
        out.push_back({i, chosen});
      }
      return;
    }
    if (k == items.size() || value + suffix[k] < tau) return;
    chosen.push_back(items[k]);
    dfs(k + 1, value + instance.value(items[k]));
    chosen.pop_back();
    dfs(k + 1, value);
  };
  dfs(0, Rational(0));
  if (counters) counters->configurations += out.size();
  return out;
}

// A configuration of player i at tau minimizing z(C), returned only when
// z(C) < y_i. Branch-and-bound over R(i) sorted by z ascending (ties by
// canonical index), include-first; the first minimizer found wins.
inline std::optional<Configuration> price_configuration(const Instance& instance, PlayerIndex i,
                                                        const Rational& tau,
                                                        const std::vector<Rational>& z,
                                                        const Rational& y_i,
                                                        const Limits& limits = {},
                                                        LpCounters* counters = nullptr) {
  detail::require_positive(tau);
  if (z.size() != instance.num_resources())
    throw std::invalid_argument("z has wrong arity");
  if (y_i.sign() <= 0) return std::nullopt;

  std::vector<ResourceIndex> items(instance.desires(i).begin(), instance.desires(i).end());
  std::stable_sort(items.begin(), items.end(),
                   [&](ResourceIndex a, ResourceIndex b) { return z[a] < z[b]; });
  std::vector<Rational> suffix(items.size() + 1);
  for (std::size_t k = items.size(); k-- > 0;) suffix[k] = suffix[k + 1] + instance.value(items[k]);

  std::optional<Rational> best;
  ResourceSet best_set;
  ResourceSet chosen;
  std::size_t nodes = 0;
  std::function<void(std::size_t, const Rational&, const Rational&)> dfs =
      [&](std::size_t k, const Rational& value, const Rational& cost) {
        if (++nodes > limits.max_pricing_nodes)
          throw GuardExceeded("pricing search exceeded " + std::to_string(limits.max_pricing_nodes) +
                              " nodes");
        if (best && cost >= *best) return;
        if (value >= tau) {
          best = cost;
          best_set = chosen;
          return;
        }
        if (k == items.size() || value + suffix[k] < tau) return;
        chosen.push_back(items[k]);
        dfs(k + 1, value + instance.value(items[k]), cost + z[items[k]]);
        chosen.pop_back();
        dfs(k + 1, value, cost);
      };
  dfs(0, Rational(0), Rational(0));
  if (!best || !(*best < y_i)) return std::nullopt;
  if (counters) ++counters->priced_columns;
  return Configuration{i, make_set(std::move(best_set))};
}

struct WitnessCheck {
  bool ok = false;
  bool nonnegative = false;
  bool objective_positive = false;  // sum y > sum z
  bool constraints_hold = false;    // z(C) >= y_i for all configurations
  Rational sum_y;
  Rational sum_z;
  std::optional<Configuration> violated;  // a configuration with z(C) < y_i
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Checks both conditions that certify OPT* < w.tau.
inline WitnessCheck verify_unbounded_dual(const Instance& instance, const DualWitness& w,
                                          const Limits& limits = {}) {
  WitnessCheck r;
  if (w.y.size() != instance.num_players() || w.z.size() != instance.num_resources()) {
    r.reason = "witness arity does not match the instance";
    return r;
  }
  if (w.tau.sign() <= 0) {
    r.reason = "tau must be positive";
    return r;
  }
  r.nonnegative = std::all_of(w.y.begin(), w.y.end(), [](const Rational& q) { return q.sign() >= 0; }) &&
                  std::all_of(w.z.begin(), w.z.end(), [](const Rational& q) { return q.sign() >= 0; });
  r.sum_y = detail::sum(w.y);
  r.sum_z = detail::sum(w.z);
  r.objective_positive = r.sum_y > r.sum_z;
  r.constraints_hold = true;
  for (PlayerIndex i = 0; i < instance.num_players() && r.constraints_hold; ++i) {
    if (auto c = price_configuration(instance, i, w.tau, w.z, w.y[i], limits)) {
      r.constraints_hold = false;
      r.violated = std::move(c);
    }
  }
  r.ok = r.nonnegative && r.objective_positive && r.constraints_hold;
  if (!r.nonnegative) r.reason = "negative entry in y or z";
  else if (!r.objective_positive) r.reason = "sum of y (" + r.sum_y.str() + ") does not exceed sum of z (" + r.sum_z.str() + ")";
  else if (!r.constraints_hold) r.reason = "configuration of player '" + instance.player_id(r.violated->player) + "' has z(C) < y_i";
  return r;
}

struct WeightedConfiguration {
  Configuration configuration;
  Rational weight;
};

struct Feasibility {
  bool feasible = false;
  std::vector<WeightedConfiguration> primal;  // nonzero x_{i,C} when feasible
  std::optional<DualWitness> witness;         // when infeasible
};

namespace detail {

inline lp::Problem covering_lp(const Instance& instance, const std::vector<Configuration>& columns,
                               bool with_slack) {
  const std::size_t np = instance.num_players();
  const std::size_t nr = instance.num_resources();
  lp::Problem p;
  p.sense = lp::Sense::kMinimize;
  const std::size_t nvars = columns.size() + (with_slack ? np : 0);
  p.objective.assign(nvars, Rational(0));
  for (std::size_t i = 0; i < np; ++i)
    p.constraints.push_back({std::vector<Rational>(nvars), lp::Relation::kGreaterEqual, Rational(1)});
  for (std::size_t j = 0; j < nr; ++j)
    p.constraints.push_back({std::vector<Rational>(nvars), lp::Relation::kLessEqual, Rational(1)});
  for (std::size_t k = 0; k < columns.size(); ++k) {
    p.constraints[columns[k].player].coefficients[k] = Rational(1);
    for (ResourceIndex j : columns[k].resources) p.constraints[np + j].coefficients[k] = Rational(1);
  }
  if (with_slack) {
    for (std::size_t i = 0; i < np; ++i) {
      const std::size_t k = columns.size() + i;
      p.objective[k] = Rational(1);
      p.constraints[i].coefficients[k] = Rational(1);
    }
  }
  return p;
}

inline std::vector<WeightedConfiguration> positive_columns(const std::vector<Configuration>& columns,
                                                           const std::vector<Rational>& x) {
  std::vector<WeightedConfiguration> out;
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (x[k].sign() > 0) out.push_back({columns[k], x[k]});
  return out;
}

inline Feasibility feasible_by_enumeration(const Instance& instance, const Rational& tau,
                                           const Limits& limits, LpCounters* counters) {
  std::vector<Configuration> columns;
  for (PlayerIndex i = 0; i < instance.num_players(); ++i) {
    auto cs = enumerate_minimal_configs(instance, i, tau, limits, counters);
    if (columns.size() + cs.size() > limits.max_configurations)
      throw GuardExceeded("more than " + std::to_string(limits.max_configurations) + " configurations in total");
    columns.insert(columns.end(), cs.begin(), cs.end());
  }
  const lp::Problem p = covering_lp(instance, columns, false);
  const lp::Outcome o = lp::solve(p);
  if (counters) {
    ++counters->lp_solves;
    counters->pivots += o.pivots;
  }
  Feasibility f;
  if (o.status == lp::Status::kOptimal) {
    f.feasible = true;
    f.primal = positive_columns(columns, o.primal);
    return f;
  }
  // Farkas multipliers: nonpositive on the covering rows, nonnegative on the
  // capacity rows; negating the former gives y.
  DualWitness w{tau, {}, {}};
  const std::size_t np = instance.num_players();
  for (std::size_t i = 0; i < np; ++i) w.y.push_back(-o.farkas[i]);
  for (std::size_t j = 0; j < instance.num_resources(); ++j) w.z.push_back(o.farkas[np + j]);
  f.witness = std::move(w);
  return f;
}

// Restricted master: min sum_i s_i with a slack s_i on every covering row.
// Columns are added while some player prices out a configuration.
inline Feasibility feasible_by_column_generation(const Instance& instance, const Rational& tau,
                                                 const Limits& limits, LpCounters* counters) {
  const std::size_t np = instance.num_players();
  const std::size_t nr = instance.num_resources();
  std::vector<Configuration> columns;
  for (;;) {
    const lp::Problem p = covering_lp(instance, columns, true);
    const lp::Outcome o = lp::solve(p);
    if (counters) {
      ++counters->lp_solves;
      counters->pivots += o.pivots;
    }
    if (o.status != lp::Status::kOptimal)
      throw std::logic_error("restricted master is always feasible and bounded");
    std::vector<Rational> y(o.dual.begin(), o.dual.begin() + static_cast<std::ptrdiff_t>(np));
    std::vector<Rational> z;
    for (std::size_t j = 0; j < nr; ++j) z.push_back(-o.dual[np + j]);

    bool added = false;
    for (PlayerIndex i = 0; i < np; ++i) {
      if (auto c = price_configuration(instance, i, tau, z, y[i], limits, counters)) {
        if (std::find(columns.begin(), columns.end(), *c) != columns.end())
          throw std::logic_error("priced column already in the restricted master");
        columns.push_back(std::move(*c));
        added = true;
      }
    }
    if (columns.size() > limits.max_configurations)
      throw GuardExceeded("column generation exceeded " + std::to_string(limits.max_configurations) + " columns");
    if (added) continue;

    if (counters) counters->configurations += columns.size();
    Feasibility f;
    if (o.objective_value.is_zero()) {
      f.feasible = true;
      std::vector<Rational> x(o.primal.begin(), o.primal.begin() + static_cast<std::ptrdiff_t>(columns.size()));
      f.primal = positive_columns(columns, x);
    } else {
      f.witness = DualWitness{tau, std::move(y), std::move(z)};
    }
    return f;
  }
}

}  // namespace detail

// Decides the configuration LP at tau. Restricting to minimal
// configurations loses nothing since every configuration contains one.
inline Feasibility feasible_at(const Instance& instance, const Rational& tau,
                               SolveMode mode = SolveMode::kEnumeration, const Limits& limits = {},
                               LpCounters* counters = nullptr) {
  detail::require_positive(tau);
  if (counters) ++counters->feasibility_checks;
  return mode == SolveMode::kEnumeration
             ? detail::feasible_by_enumeration(instance, tau, limits, counters)
             : detail::feasible_by_column_generation(instance, tau, limits, counters);
}

// Distinct positive subset sums of each R(i), pooled, capped at
// min_i v(R(i)), ascending. OPT* is always one of these (or 0).
inline std::vector<Rational> opt_star_candidates(const Instance& instance, const Limits& limits = {}) {
  if (instance.num_players() == 0) return {};
  Rational cap = desire_value(instance, 0);
  for (PlayerIndex i = 1; i < instance.num_players(); ++i) cap = min(cap, desire_value(instance, i));
  std::vector<Rational> pooled;
  for (PlayerIndex i = 0; i < instance.num_players(); ++i) {
    std::vector<Rational> sums{Rational(0)};
    for (ResourceIndex j : instance.desires(i)) {
      const std::size_t n = sums.size();
      for (std::size_t k = 0; k < n; ++k) {
        Rational s = sums[k] + instance.value(j);
        if (s <= cap) sums.push_back(std::move(s));
      }
      std::sort(sums.begin(), sums.end());
      sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
      if (sums.size() > limits.max_candidates)
        throw GuardExceeded("more than " + std::to_string(limits.max_candidates) + " candidate thresholds");
    }
    pooled.insert(pooled.end(), sums.begin() + 1, sums.end());
  }
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
  if (pooled.size() > limits.max_candidates)
    throw GuardExceeded("more than " + std::to_string(limits.max_candidates) + " candidate thresholds");
  return pooled;
}

// Exact OPT*: binary search for the last feasible candidate. Returns 0 when
// no positive threshold is feasible, and for instances without players.
inline Rational opt_star(const Instance& instance, SolveMode mode = SolveMode::kEnumeration,
                         const Limits& limits = {}, LpCounters* counters = nullptr) {
  const auto candidates = opt_star_candidates(instance, limits);
  std::size_t lo = 0;                  // candidates[0, lo) known feasible
  std::size_t hi = candidates.size();  // candidates[hi, end) known infeasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible_at(instance, candidates[mid], mode, limits, counters).feasible)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo == 0 ? Rational(0) : candidates[lo - 1];
}

}  // namespace santa
