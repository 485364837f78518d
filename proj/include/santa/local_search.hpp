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

// Alternating-tree local search on the hypergraph whose edges are a player
// together with an inclusion-minimal bundle of value at least t.
//
// A call to extend_matching grows a partial matching M by one player i0. It
// keeps an ordered list A of addable edges and, for every addable edge, the
// set B(k) of matching edges that overlap it. New addable edges must avoid all
// resources of A and B(A) and belong to i0 or to a player owning a blocking
// edge. Whenever the newest addable edge is unblocked it replaces the matching
// edge of its player (and everything added after the addable edge that edge
// blocked is discarded), or, for i0, it is inserted and the call returns.
//
// If no addable edge exists while i0 is unmatched the search is stuck; the
// surrendered state is what certificate.hpp turns into a dual witness.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "santa/model.hpp"

namespace santa {

struct Hyperedge {
  PlayerIndex player = 0;
  ResourceSet resources;

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// Fat: a single resource that alone reaches the threshold.
inline bool is_fat(const Instance& instance, const Hyperedge& e, const Rational& t) {
  return e.resources.size() == 1 && instance.value(e.resources.front()) >= t;
}

inline bool is_minimal(const Instance& instance, const ResourceSet& c, const Rational& t) {
  if (c.empty()) return false;
  const Rational total = bundle_value(instance, c);
  if (total < t) return false;
  return std::all_of(c.begin(), c.end(),
                     [&](ResourceIndex j) { return total - instance.value(j) < t; });
}

// Partial matching: at most one edge per player, edges pairwise disjoint.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t num_players) : edges_(num_players) {}

  std::size_t num_players() const { return edges_.size(); }
  bool contains(PlayerIndex i) const { return edges_.at(i).has_value(); }
  const ResourceSet& edge(PlayerIndex i) const { return edges_.at(i).value(); }
  void set(PlayerIndex i, ResourceSet c) { edges_.at(i) = std::move(c); }
  void erase(PlayerIndex i) { edges_.at(i).reset(); }

  std::size_t size() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const auto& e) { return e.has_value(); }));
  }

  std::vector<Hyperedge> edges() const {
    std::vector<Hyperedge> out;
    for (PlayerIndex i = 0; i < edges_.size(); ++i)
      if (edges_[i]) out.push_back({i, *edges_[i]});
    return out;
  }

  Allocation to_allocation() const {
    Allocation a;
    for (const auto& e : edges_) a.bundles.push_back(e.value_or(ResourceSet{}));
    return a;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::optional<ResourceSet>> edges_;
};

struct SearchState {
  Rational threshold;
  PlayerIndex root = 0;  // the player being inserted
  Matching matching;
  std::vector<Hyperedge> addable;
  // blocking[k]: players whose matching edge meets addable[k], ascending.
  std::vector<std::vector<PlayerIndex>> blocking;
  std::size_t main_iterations = 0;
  std::size_t inner_iterations = 0;

  void recompute_blocking() {
    blocking.assign(addable.size(), {});
    for (std::size_t k = 0; k < addable.size(); ++k)
      for (PlayerIndex p = 0; p < matching.num_players(); ++p)
        if (matching.contains(p) && sets_intersect(matching.edge(p), addable[k].resources))
          blocking[k].push_back(p);
  }

  // B(A)_P, ascending.
  std::vector<PlayerIndex> blocking_players() const {
    std::vector<PlayerIndex> out;
    for (const auto& b : blocking) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Hyperedge> blocking_edges(std::size_t k) const {
    std::vector<Hyperedge> out;
    for (PlayerIndex p : blocking.at(k)) out.push_back({p, matching.edge(p)});
    return out;
  }

  // (A ∪ B(A))_R.
  ResourceSet covered_resources() const {
    ResourceSet out;
    for (const auto& e : addable) out = set_union(out, e.resources);
    for (PlayerIndex p : blocking_players()) out = set_union(out, matching.edge(p));
    return out;
  }
};

// Lexicographic potential (|B(1)|, ..., |B(l)|, inf); kInfinity stands for inf.
inline constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();
using Signature = std::vector<std::size_t>;

inline Signature signature(const SearchState& state) {
  Signature s;
  for (const auto& b : state.blocking) s.push_back(b.size());
  s.push_back(kInfinity);
  return s;
}

inline bool signature_less(const Signature& a, const Signature& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::string format_signature(const Signature& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += s[k] == kInfinity ? "inf" : std::to_string(s[k]);
  }
  return out + ")";
}

class SearchInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Throws SearchInvariantError on the first violated invariant.
inline void check_matching(const Instance& instance, const Matching& m, const Rational& t) {
  if (m.num_players() != instance.num_players())
    throw SearchInvariantError("matching sized for a different instance");
  std::vector<char> used(instance.num_resources(), 0);
  for (const auto& e : m.edges()) {
    for (ResourceIndex j : e.resources) {
      if (!instance.desires(e.player, j))
        throw SearchInvariantError("matching edge of '" + instance.player_id(e.player) +
                                   "' holds an undesired resource");
      if (used[j]) throw SearchInvariantError("resource '" + instance.resource_id(j) + "' matched twice");
      used[j] = 1;
    }
    if (!is_minimal(instance, e.resources, t))
      throw SearchInvariantError("matching edge of '" + instance.player_id(e.player) + "' is not minimal");
  }
}

inline void check_invariants(const Instance& instance, const SearchState& s) {
  check_matching(instance, s.matching, s.threshold);
  if (s.blocking.size() != s.addable.size())
    throw SearchInvariantError("blocking sets out of sync with addable edges");
  for (std::size_t k = 0; k < s.addable.size(); ++k) {
    const auto& e = s.addable[k];
    for (ResourceIndex j : e.resources)
      if (!instance.desires(e.player, j))
        throw SearchInvariantError("addable edge holds an undesired resource");
    if (!is_minimal(instance, e.resources, s.threshold))
      throw SearchInvariantError("addable edge " + std::to_string(k) + " is not minimal");
    std::vector<PlayerIndex> expected;
    for (PlayerIndex p = 0; p < instance.num_players(); ++p)
      if (s.matching.contains(p) && sets_intersect(s.matching.edge(p), e.resources)) expected.push_back(p);
    if (expected != s.blocking[k])
      throw SearchInvariantError("blocking set " + std::to_string(k) + " is stale");
    for (std::size_t k2 = 0; k2 < s.addable.size(); ++k2) {
      if (k2 == k) continue;
      if (k2 > k && sets_intersect(e.resources, s.addable[k2].resources))
        throw SearchInvariantError("addable edges overlap");
      for (PlayerIndex p : s.blocking[k2]) {
        if (std::find(s.blocking[k].begin(), s.blocking[k].end(), p) != s.blocking[k].end())
          throw SearchInvariantError("blocking sets of two addable edges intersect");
        if (sets_intersect(e.resources, s.matching.edge(p)))
          throw SearchInvariantError("addable edge meets a blocking edge of another addable edge");
      }
    }
  }
}

// Shrinks c to an inclusion-minimal subset of value >= t by scanning its
// elements in ascending value (ties by canonical index) and dropping each one
// whose removal keeps the value at or above t.
inline ResourceSet minimize_edge(const Instance& instance, const ResourceSet& c, const Rational& t) {
  Rational total = bundle_value(instance, c);
  if (total < t)
    throw std::invalid_argument("cannot minimize a bundle of value " + total.str() + " below " + t.str());
  std::vector<ResourceIndex> order(c.begin(), c.end());
  std::stable_sort(order.begin(), order.end(), [&](ResourceIndex a, ResourceIndex b) {
    return instance.value(a) < instance.value(b);
  });
  std::vector<char> keep(order.size(), 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (total - instance.value(order[k]) >= t) {
      total -= instance.value(order[k]);
      keep[k] = 0;
    }
  }
  ResourceSet out;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (keep[k]) out.push_back(order[k]);
  return make_set(std::move(out));
}

// An edge for some player of B(A)_P ∪ {i0} avoiding (A ∪ B(A))_R, or nullopt
// when none exists. Players are tried in canonical order; a player offers its
// cheapest admissible fat resource, else the greedy descending-value collection
// of admissible thin resources, minimized. The nullopt answer is exact: if the
// whole admissible thin pool misses t, no edge exists for that player.
inline std::optional<Hyperedge> find_addable_edge(const Instance& instance, const SearchState& state) {
  const Rational& t = state.threshold;
  const ResourceSet forbidden = state.covered_resources();
  std::vector<PlayerIndex> candidates = state.blocking_players();
  candidates.push_back(state.root);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (PlayerIndex p : candidates) {
    const ResourceSet admissible = set_difference(instance.desires(p), forbidden);
    std::optional<ResourceIndex> fat;
    for (ResourceIndex j : admissible)
      if (instance.value(j) >= t && (!fat || instance.value(j) < instance.value(*fat))) fat = j;
    if (fat) return Hyperedge{p, {*fat}};

    std::vector<ResourceIndex> thin(admissible.begin(), admissible.end());
    std::stable_sort(thin.begin(), thin.end(), [&](ResourceIndex a, ResourceIndex b) {
      return instance.value(a) > instance.value(b);
    });
    Rational collected;
    ResourceSet bundle;
    for (ResourceIndex j : thin) {
      bundle.push_back(j);
      collected += instance.value(j);
      if (collected >= t) break;
    }
    if (collected >= t) return Hyperedge{p, minimize_edge(instance, make_set(std::move(bundle)), t)};
  }
  return std::nullopt;
}

// Hooks into extend_matching; every callback sees the state after the event.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  virtual void on_call_start(const SearchState&) {}
  virtual void on_addable(const SearchState&, const Hyperedge&) {}
  virtual void on_swap(const SearchState&, const Hyperedge& /*removed*/, const Hyperedge& /*inserted*/,
                       std::size_t /*kept*/) {}
  virtual void on_matched(const SearchState&, const Hyperedge&) {}
  virtual void on_iteration_end(const SearchState&) {}
  virtual void on_stuck(const SearchState&) {}
};

struct SearchOptions {
#ifdef NDEBUG
  bool check_invariants = false;
#else
  bool check_invariants = true;
#endif
  SearchObserver* observer = nullptr;
};

enum class ExtendStatus { kMatched, kStuck };

struct ExtendResult {
  ExtendStatus status = ExtendStatus::kStuck;
  // On kMatched, state.matching covers the old players plus the root. On
  // kStuck, the full search state at the point no addable edge remained.
  SearchState state;

  bool stuck() const { return status == ExtendStatus::kStuck; }
};

inline ExtendResult extend_matching(const Instance& instance, Matching m, PlayerIndex i0,
                                    const Rational& t, const SearchOptions& options = {}) {
  if (t.sign() <= 0) throw std::invalid_argument("threshold must be positive, got " + t.str());
  if (i0 >= instance.num_players()) throw std::out_of_range("player index out of range");
  if (m.num_players() == 0) m = Matching(instance.num_players());
  check_matching(instance, m, t);
  if (m.contains(i0))
    throw std::invalid_argument("player '" + instance.player_id(i0) + "' is already matched");

  SearchObserver* obs = options.observer;
  SearchState st;
  st.threshold = t;
  st.root = i0;
  st.matching = std::move(m);
  if (obs) obs->on_call_start(st);

  for (;;) {
    ++st.main_iterations;
    auto e = find_addable_edge(instance, st);
    if (!e) {
      if (obs) obs->on_stuck(st);
      return {ExtendStatus::kStuck, std::move(st)};
    }
    st.addable.push_back(*e);
    st.recompute_blocking();
    if (options.check_invariants) check_invariants(instance, st);
    if (obs) obs->on_addable(st, *e);

    while (st.blocking.back().empty()) {
      ++st.inner_iterations;
      const Hyperedge last = st.addable.back();
      if (st.matching.contains(last.player)) {
        std::size_t k = 0;
        while (k < st.blocking.size() &&
               std::find(st.blocking[k].begin(), st.blocking[k].end(), last.player) == st.blocking[k].end())
          ++k;
        if (k == st.blocking.size())
          throw SearchInvariantError("addable edge of a matched player that blocks nothing");
        const Hyperedge removed{last.player, st.matching.edge(last.player)};
        st.matching.set(last.player, last.resources);
        st.addable.resize(k + 1);
        st.recompute_blocking();
        if (options.check_invariants) check_invariants(instance, st);
        if (obs) obs->on_swap(st, removed, last, k + 1);
      } else {
        if (last.player != i0)
          throw SearchInvariantError("unblocked addable edge of an unmatched player other than the root");
        st.matching.set(i0, last.resources);
        st.addable.clear();
        st.blocking.clear();
        if (options.check_invariants) check_invariants(instance, st);
        if (obs) obs->on_matched(st, last);
        return {ExtendStatus::kMatched, std::move(st)};
      }
    }
    if (obs) obs->on_iteration_end(st);
  }
}

struct CallStats {
  PlayerIndex player = 0;
  std::size_t matching_size = 0;  // |M| at call start
  std::size_t main_iterations = 0;
  std::size_t inner_iterations = 0;
};

struct SolveResult {
  std::optional<Allocation> allocation;
  std::optional<SearchState> stuck;  // set iff allocation is not
  std::vector<CallStats> calls;

  bool ok() const { return allocation.has_value(); }
};

// Inserts players one by one in canonical order.
inline SolveResult solve(const Instance& instance, const Rational& t, const SearchOptions& options = {}) {
  if (t.sign() <= 0) throw std::invalid_argument("threshold must be positive, got " + t.str());
  SolveResult out;
  Matching m(instance.num_players());
  for (PlayerIndex i = 0; i < instance.num_players(); ++i) {
    const std::size_t before = m.size();
    ExtendResult r = extend_matching(instance, std::move(m), i, t, options);
    out.calls.push_back({i, before, r.state.main_iterations, r.state.inner_iterations});
    if (r.stuck()) {
      out.stuck = std::move(r.state);
      return out;
    }
    m = std::move(r.state.matching);
  }
  out.allocation = m.to_allocation();
  return out;
}

}  // namespace santa
