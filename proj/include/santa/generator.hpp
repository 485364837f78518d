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

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "santa/model.hpp"

namespace santa {

// Values are drawn uniformly from {1/D, 2/D, ..., D/D}; every (player,
// resource) pair is a desire with probability `density`.
struct GeneratorSpec {
  std::size_t players = 2;
  std::size_t resources = 3;
  double density = 1.0;
  std::int64_t grid = 1;  // D
  std::uint64_t seed = 0;

  void validate() const {
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
    if (grid < 1) throw std::invalid_argument("grid denominator must be at least 1");
  }
};

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so both draws are done by hand to keep files identical across toolchains.
inline Instance generate_instance(const GeneratorSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::vector<Resource> resources;
  for (std::size_t j = 0; j < spec.resources; ++j) {
    const auto num = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(spec.grid)) + 1;
    resources.push_back({"r" + std::to_string(j + 1), Rational(num, spec.grid)});
  }
  std::vector<Player> players;
  for (std::size_t i = 0; i < spec.players; ++i) {
    Player p{"p" + std::to_string(i + 1), {}};
    for (std::size_t j = 0; j < spec.resources; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < spec.density) p.desires.push_back(resources[j].id);
    }
    players.push_back(std::move(p));
  }
  return Instance(std::move(resources), std::move(players));
}

// Seed of the k-th instance of a campaign (splitmix64 step).
inline std::uint64_t campaign_seed(std::uint64_t base, std::uint64_t k) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace santa
