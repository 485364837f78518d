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

#include <gtest/gtest.h>

#include <random>

#include "santa/instance_io.hpp"
#include "test_util.hpp"

namespace santa {
namespace {

using testing::ids;
using testing::q;

TEST(RationalTest, LowestTermsAndSign) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(RationalTest, ParseRejectsMalformed) {
  for (const char* bad : {"", "/", "1/", "/2", "1.5", "1/0", "a", "1/-2", " 1", "1/2/3"})
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(RationalTest, ExactArithmetic) {
  EXPECT_EQ(q("1/3") + q("1/6"), q("1/2"));
  EXPECT_EQ(q("2/3") * q("3/4"), q("1/2"));
  EXPECT_EQ(q("1") / q("3") - q("1/3"), Rational(0));
  EXPECT_LT(q("1/3"), q("334/1000"));
  EXPECT_THROW(q("1") / Rational(0), std::domain_error);
}

TEST(RationalTest, FormatParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const auto n = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const auto d = static_cast<std::int64_t>(rng() % 997) + 1;
    Rational r = Rational(n, d) * Rational(static_cast<std::int64_t>(rng() % 50) + 1, 7);
    EXPECT_EQ(Rational::parse(r.str()), r);
  }
}

TEST(ParseInstanceTest, MinimalFile) {
  const Instance inst = parse_instance(
      R"({"resources": [{"id": "r1", "value": "2"}], "players": [{"id": "p1", "desires": ["r1"]}]})");
  EXPECT_EQ(inst.num_players(), 1u);
  EXPECT_EQ(inst.num_resources(), 1u);
  EXPECT_EQ(inst.value(0), Rational(2));
  EXPECT_TRUE(inst.desires(0, 0));
}

TEST(ParseInstanceTest, RationalLiteralStoredExactly) {
  const Instance inst = parse_instance(
      R"({"resources": [{"id": "r1", "value": "3/2"}, {"id": "r2", "value": 4}], "players": []})");
  EXPECT_EQ(inst.value(0), Rational(3, 2));
  EXPECT_EQ(inst.value(1), Rational(4));
}

TEST(ParseInstanceTest, OrderPreserved) {
  const Instance inst = parse_instance(R"({"resources": [{"id": "z", "value": "1"}, {"id": "a", "value": "1"}],
      "players": [{"id": "q", "desires": ["a", "z"]}, {"id": "b", "desires": []}]})");
  EXPECT_EQ(inst.resource_id(0), "z");
  EXPECT_EQ(inst.player_id(0), "q");
  EXPECT_EQ(inst.desires(0), (ResourceSet{0, 1}));
  EXPECT_TRUE(inst.desires(1).empty());
}

TEST(ParseInstanceTest, Errors) {
  EXPECT_THROW(parse_instance(R"({"resources": [{"id": "r1", "value": "1"}], "players": [{"id": "p1", "desires": ["rX"]}]})"),
               ModelError);
  try {
    parse_instance(R"({"resources": [{"id": "r1", "value": "1"}], "players": [{"id": "p1", "desires": ["rX"]}]})");
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown resource"), std::string::npos);
  }
  EXPECT_THROW(parse_instance(R"({"resources": [{"id": "r1", "value": "0"}], "players": []})"), ModelError);
  EXPECT_THROW(parse_instance(R"({"resources": [{"id": "r1", "value": "-1/2"}], "players": []})"), ModelError);
  EXPECT_THROW(parse_instance(R"({"resources": [{"id": "r1", "value": "1"}, {"id": "r1", "value": "2"}], "players": []})"),
               ModelError);
  EXPECT_THROW(parse_instance(R"({"resources": [], "players": [{"id": "p", "desires": []}, {"id": "p", "desires": []}]})"),
               ModelError);
  EXPECT_THROW(parse_instance(R"({"resources": [{"id": "r1", "value": 1.5}], "players": []})"), ParseError);
  EXPECT_THROW(parse_instance(R"({"resources": []})"), ParseError);
  try {
    parse_instance("{\"resources\": [,]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(ParseInstanceTest, FormatRoundTrip) {
  const Instance inst = testing::make_instance({{"a", "1/2"}, {"b", "7/3"}}, {{"p", {"b"}}, {"q", {"a", "b"}}});
  EXPECT_EQ(parse_instance(format_instance(inst)), inst);
  EXPECT_EQ(fingerprint(parse_instance(format_instance(inst))), fingerprint(inst));
}

TEST(BundleValueTest, Examples) {
  const Instance inst = testing::make_instance({{"a", "1"}, {"b", "1/2"}}, {});
  EXPECT_EQ(bundle_value(inst, ResourceSet{}), Rational(0));
  EXPECT_EQ(bundle_value(inst, ResourceSet{0, 1}), Rational(3, 2));
  EXPECT_EQ(bundle_value(testing::t1(), ResourceSet{0, 1, 2}), Rational(3));
  EXPECT_THROW(bundle_value(inst, ResourceSet{5}), ModelError);
}

TEST(BundleValueTest, AdditiveOverDisjointUnions) {
  std::mt19937_64 rng(3);
  std::vector<std::pair<std::string, std::string>> rs;
  for (int j = 0; j < 10; ++j)
    rs.push_back({"r" + std::to_string(j), std::to_string(rng() % 9 + 1) + "/" + std::to_string(rng() % 5 + 1)});
  const Instance inst = testing::make_instance(rs, {});
  for (int k = 0; k < 200; ++k) {
    ResourceSet s, t;
    for (ResourceIndex j = 0; j < 10; ++j) {
      const auto r = rng() % 3;
      if (r == 0) s.push_back(j);
      if (r == 1) t.push_back(j);
    }
    EXPECT_EQ(bundle_value(inst, set_union(s, t)), bundle_value(inst, s) + bundle_value(inst, t));
  }
}

TEST(AllocationValueTest, T1SplitIsOptimal) {
  const Instance inst = testing::t1();
  const Allocation a{{ids(inst, {"a", "b"}), ids(inst, {"c"})}};
  EXPECT_EQ(allocation_value(inst, a), Rational(1));
  EXPECT_EQ(testing::max_min_by_odometer(inst), Rational(1));
}

TEST(AllocationValueTest, EmptyBundleAndSinglePlayer) {
  const Instance inst = testing::t1();
  EXPECT_EQ(allocation_value(inst, Allocation{{ids(inst, {"a", "b", "c"}), {}}}), Rational(0));
  const Instance one = testing::make_instance({{"a", "1/2"}, {"b", "2"}}, {{"p", {"a", "b"}}});
  EXPECT_EQ(allocation_value(one, Allocation{{one.desires(0)}}), Rational(5, 2));
}

TEST(AllocationValueTest, RejectsInvalidAllocations) {
  const Instance inst = testing::make_instance({{"a", "1"}, {"b", "1"}}, {{"p", {"a"}}, {"q", {"a", "b"}}});
  EXPECT_THROW(allocation_value(inst, Allocation{{{0}, {0}}}), ModelError);
  EXPECT_THROW(allocation_value(inst, Allocation{{{1}, {}}}), ModelError);
  EXPECT_THROW(allocation_value(inst, Allocation{{{0}}}), ModelError);
}

TEST(AllocationValueTest, NeverExceedsSmallestDesireValue) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = testing::make_instance(
        {{"a", "1"}, {"b", "2/3"}, {"c", "5/2"}, {"d", "1/4"}},
        {{"p", {"a", "b", "c"}}, {"q", {"b", "c", "d"}}, {"r", {"a", "d"}}});
    Allocation a{{{}, {}, {}}};
    for (ResourceIndex j = 0; j < 4; ++j) {
      const auto i = rng() % 4;
      if (i < 3 && inst.desires(i, j)) a.bundles[i].push_back(j);
    }
    Rational cap = desire_value(inst, 0);
    for (PlayerIndex i = 1; i < 3; ++i) cap = min(cap, desire_value(inst, i));
    EXPECT_LE(allocation_value(inst, a), cap);
  }
}

}  // namespace
}  // namespace santa
