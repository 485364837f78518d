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

// Problem instances of restricted max-min allocation: every resource j has a
// single value v_j > 0 and every player i desires a subset R(i) of resources.
// Players and resources are addressed by their position in declaration order;
// that order is the canonical tie-breaking order everywhere in the library.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "santa/rational.hpp"

namespace santa {

using PlayerIndex = std::size_t;
using ResourceIndex = std::size_t;

// Sorted, duplicate-free list of resource indices.
using ResourceSet = std::vector<ResourceIndex>;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline ResourceSet make_set(std::vector<ResourceIndex> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

inline bool set_contains(const ResourceSet& s, ResourceIndex j) {
  return std::binary_search(s.begin(), s.end(), j);
}

inline bool sets_intersect(const ResourceSet& a, const ResourceSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia; else ++ib;
  }
  return false;
}

inline ResourceSet set_union(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ResourceSet set_difference(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ResourceSet set_intersection(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Resource {
  std::string id;
  Rational value;
};

struct Player {
  std::string id;
  std::vector<std::string> desires;
};

class Instance {
 public:
  Instance() = default;

  // Validates ids, values and desire references; throws ModelError.
  Instance(std::vector<Resource> resources, std::vector<Player> players)
      : resources_(std::move(resources)) {
    for (ResourceIndex j = 0; j < resources_.size(); ++j) {
      const auto& r = resources_[j];
      if (r.id.empty()) throw ModelError("empty resource id");
      if (r.value.sign() <= 0)
        throw ModelError("nonpositive value " + r.value.str() + " for resource '" + r.id + "'");
      if (!resource_by_id_.emplace(r.id, j).second)
        throw ModelError("duplicate resource id '" + r.id + "'");
    }
    desired_.assign(players.size(), std::vector<char>(resources_.size(), 0));
    for (PlayerIndex i = 0; i < players.size(); ++i) {
      const auto& p = players[i];
      if (p.id.empty()) throw ModelError("empty player id");
      if (!player_by_id_.emplace(p.id, i).second)
        throw ModelError("duplicate player id '" + p.id + "'");
      ResourceSet desires;
      for (const auto& rid : p.desires) {
        auto it = resource_by_id_.find(rid);
        if (it == resource_by_id_.end())
          throw ModelError("unknown resource '" + rid + "' desired by player '" + p.id + "'");
        desires.push_back(it->second);
        desired_[i][it->second] = 1;
      }
      player_ids_.push_back(p.id);
      desires_.push_back(make_set(std::move(desires)));
    }
  }

  std::size_t num_players() const { return player_ids_.size(); }
  std::size_t num_resources() const { return resources_.size(); }

  const std::string& player_id(PlayerIndex i) const { return player_ids_.at(i); }
  const std::string& resource_id(ResourceIndex j) const { return resources_.at(j).id; }
  const Rational& value(ResourceIndex j) const { return resources_.at(j).value; }
  const std::vector<Resource>& resources() const { return resources_; }

  // R(i), in canonical order.
  const ResourceSet& desires(PlayerIndex i) const { return desires_.at(i); }
  bool desires(PlayerIndex i, ResourceIndex j) const { return desired_.at(i).at(j) != 0; }

  std::optional<PlayerIndex> find_player(const std::string& id) const {
    auto it = player_by_id_.find(id);
    if (it == player_by_id_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<ResourceIndex> find_resource(const std::string& id) const {
    auto it = resource_by_id_.find(id);
    if (it == resource_by_id_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Player> players() const {
    std::vector<Player> out;
    for (PlayerIndex i = 0; i < num_players(); ++i) {
      Player p{player_ids_[i], {}};
      for (ResourceIndex j : desires_[i]) p.desires.push_back(resources_[j].id);
      out.push_back(std::move(p));
    }
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    if (a.player_ids_ != b.player_ids_ || a.desires_ != b.desires_) return false;
    if (a.resources_.size() != b.resources_.size()) return false;
    for (std::size_t j = 0; j < a.resources_.size(); ++j)
      if (a.resources_[j].id != b.resources_[j].id || a.resources_[j].value != b.resources_[j].value)
        return false;
    return true;
  }

 private:
  std::vector<Resource> resources_;
  std::vector<std::string> player_ids_;
  std::vector<ResourceSet> desires_;
  std::vector<std::vector<char>> desired_;
  std::unordered_map<std::string, ResourceIndex> resource_by_id_;
  std::unordered_map<std::string, PlayerIndex> player_by_id_;
};

// v(S).
inline Rational bundle_value(const Instance& instance, std::span<const ResourceIndex> s) {
  Rational total;
  for (ResourceIndex j : s) {
    if (j >= instance.num_resources())
      throw ModelError("unknown resource index " + std::to_string(j));
    total += instance.value(j);
  }
  return total;
}

inline Rational desire_value(const Instance& instance, PlayerIndex i) {
  return bundle_value(instance, instance.desires(i));
}

// One bundle per player, indexed by PlayerIndex.
struct Allocation {
  std::vector<ResourceSet> bundles;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws ModelError on overlapping bundles, undesired resources, or a
// bundle count that does not match the instance.
inline void validate_allocation(const Instance& instance, const Allocation& a) {
  if (a.bundles.size() != instance.num_players())
    throw ModelError("allocation has " + std::to_string(a.bundles.size()) + " bundles for " +
                     std::to_string(instance.num_players()) + " players");
  std::vector<std::optional<PlayerIndex>> owner(instance.num_resources());
  for (PlayerIndex i = 0; i < a.bundles.size(); ++i) {
    for (ResourceIndex j : a.bundles[i]) {
      if (j >= instance.num_resources())
        throw ModelError("unknown resource index " + std::to_string(j));
      if (!instance.desires(i, j))
        throw ModelError("resource '" + instance.resource_id(j) + "' assigned to player '" +
                         instance.player_id(i) + "' who does not desire it");
      if (owner[j])
        throw ModelError("resource '" + instance.resource_id(j) + "' assigned to both '" +
                         instance.player_id(*owner[j]) + "' and '" + instance.player_id(i) + "'");
      owner[j] = i;
    }
  }
}

// min_i v(bundle_i); 0 for an instance without players.
inline Rational allocation_value(const Instance& instance, const Allocation& a) {
  validate_allocation(instance, a);
  if (a.bundles.empty()) return Rational(0);
  std::optional<Rational> worst;
  for (const auto& b : a.bundles) {
    Rational v = bundle_value(instance, b);
    if (!worst || v < *worst) worst = std::move(v);
  }
  return *worst;
}

}  // namespace santa
