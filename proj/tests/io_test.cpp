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

#include <sstream>

#include "santa/generator.hpp"
#include "santa/report.hpp"
#include "test_util.hpp"

namespace santa {
namespace {

using testing::ids;
using testing::q;

TEST(GeneratorTest, UnitGridFullDensityIsT1Shape) {
  const Instance inst = generate_instance({2, 3, 1.0, 1, 7});
  const Instance t1 = testing::make_instance({{"r1", "1"}, {"r2", "1"}, {"r3", "1"}},
                                             {{"p1", {"r1", "r2", "r3"}}, {"p2", {"r1", "r2", "r3"}}});
  EXPECT_EQ(inst, t1);
}

TEST(GeneratorTest, Deterministic) {
  const GeneratorSpec spec{4, 7, 0.5, 6, 12345};
  EXPECT_EQ(format_instance(generate_instance(spec)), format_instance(generate_instance(spec)));
  GeneratorSpec other = spec;
  other.seed = 12346;
  EXPECT_NE(fingerprint(generate_instance(spec)), fingerprint(generate_instance(other)));
}

TEST(GeneratorTest, ValuesOnGrid) {
  const Instance inst = generate_instance({3, 40, 0.3, 6, 9});
  for (ResourceIndex j = 0; j < inst.num_resources(); ++j) {
    EXPECT_GT(inst.value(j), Rational(0));
    EXPECT_LE(inst.value(j), Rational(1));
    const Rational scaled = inst.value(j) * Rational(6);
    EXPECT_EQ(scaled.raw().get_den(), 1);
  }
}

TEST(GeneratorTest, EmptyResourcesAndBadSpecs) {
  const Instance inst = generate_instance({2, 0, 0.5, 3, 1});
  EXPECT_EQ(inst.num_resources(), 0u);
  EXPECT_EQ(opt_star(inst), Rational(0));
  EXPECT_THROW(generate_instance({2, 2, 0.0, 3, 1}), std::invalid_argument);
  EXPECT_THROW(generate_instance({2, 2, 1.5, 3, 1}), std::invalid_argument);
  EXPECT_THROW(generate_instance({2, 2, 0.5, 0, 1}), std::invalid_argument);
}

TEST(GeneratorTest, FileRoundTrip) {
  for (std::uint64_t k = 0; k < 50; ++k) {
    const Instance inst = generate_instance({1 + k % 5, k % 9, 0.6, 7, campaign_seed(1, k)});
    const Instance back = parse_instance(format_instance(inst));
    EXPECT_EQ(back, inst);
    EXPECT_EQ(fingerprint(back), fingerprint(inst));
  }
}

TEST(FingerprintTest, SensitiveToValuesAndDesires) {
  const Instance a = testing::make_instance({{"a", "1/2"}}, {{"p", {"a"}}});
  const Instance b = testing::make_instance({{"a", "2/4"}}, {{"p", {"a"}}});
  const Instance c = testing::make_instance({{"a", "1/3"}}, {{"p", {"a"}}});
  const Instance d = testing::make_instance({{"a", "1/2"}}, {{"p", {}}});
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  EXPECT_NE(fingerprint(a), fingerprint(c));
  EXPECT_NE(fingerprint(a), fingerprint(d));
  EXPECT_EQ(fingerprint(a).size(), 16u);
}

TEST(WitnessIoTest, RoundTrip) {
  const Instance inst = testing::make_instance({{"a", "23/60"}, {"b", "37/60"}, {"x", "5"}},
                                               {{"p1", {"a", "b"}}, {"p2", {"a", "b"}}});
  const SolveResult r = solve(inst, Rational(1));
  ASSERT_TRUE(r.stuck.has_value());
  const DualWitness w = build_certificate(inst, *r.stuck);
  const nlohmann::json doc = witness_to_json(inst, w);
  EXPECT_EQ(doc["tau"], "23/6");
  EXPECT_EQ(doc["z"]["a"], "23/150");
  EXPECT_FALSE(doc["z"].contains("x"));
  const ParsedWitness back = parse_witness(doc.dump(2), inst);
  EXPECT_EQ(back.fingerprint, fingerprint(inst));
  EXPECT_EQ(back.witness.tau, w.tau);
  EXPECT_EQ(back.witness.y, w.y);
  EXPECT_EQ(back.witness.z, w.z);
}

TEST(WitnessIoTest, ParseErrors) {
  const Instance inst = testing::t2();
  EXPECT_THROW(parse_witness("{", inst), ParseError);
  EXPECT_THROW(parse_witness(R"({"tau": "1", "y": {}})", inst), ParseError);
  EXPECT_THROW(parse_witness(R"({"tau": "1", "y": {"nobody": "1"}, "z": {}})", inst), ParseError);
  EXPECT_THROW(parse_witness(R"({"tau": "1", "y": {}, "z": {"g": "1"}})", inst), ParseError);
  EXPECT_THROW(parse_witness(R"({"tau": "x", "y": {}, "z": {}})", inst), ParseError);
}

TEST(ReportTest, WitnessCheckNamesViolatedConfiguration) {
  const Instance inst = testing::make_instance({{"f", "5"}, {"g", "1"}}, {{"p", {"f", "g"}}, {"q", {"g"}}});
  DualWitness w{Rational(2), {Rational(1), Rational(0)}, {Rational(1), Rational(0)}};
  ASSERT_FALSE(verify_unbounded_dual(inst, w).ok);  // sum z = sum y
  w.z[0] = Rational(0);
  const WitnessCheck c = verify_unbounded_dual(inst, w);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.constraints_hold);
  const nlohmann::json j = witness_check_to_json(inst, c);
  EXPECT_EQ(j["valid"], false);
  EXPECT_EQ(j["violated_configuration"]["player"], "p");
  EXPECT_EQ(j["violated_configuration"]["resources"], nlohmann::json::array({"f"}));
}

TEST(ReportTest, GapAndAuditSerializeExactly) {
  const Instance inst = testing::t1();
  const nlohmann::json g = gap_report_to_json(inst, oracle::integrality_gap(inst));
  EXPECT_EQ(g["opt_star"], "1");
  EXPECT_EQ(g["gap"], "1");
  EXPECT_EQ(g["fingerprint"], fingerprint(inst));

  const Instance t2 = testing::t2();
  const SolveResult r = solve(t2, Rational(1));
  const nlohmann::json a = audit_to_json(t2, audit_stuck_state(t2, *r.stuck, build_certificate(t2, *r.stuck)));
  EXPECT_EQ(a["passed"], true);
  EXPECT_EQ(a["sum_y"], "2");
  EXPECT_EQ(a["sum_z"], "1");
  EXPECT_EQ(a["fat_blocking"], 1);
}

TEST(TraceWriterTest, SwapTrace) {
  const Instance inst = testing::make_instance({{"f1", "2"}, {"f2", "2"}}, {{"p1", {"f1", "f2"}}, {"p2", {"f1"}}});
  Matching m(2);
  m.set(0, ids(inst, {"f1"}));
  std::ostringstream out;
  TraceWriter tw(out, inst);
  SearchOptions o;
  o.observer = &tw;
  ASSERT_FALSE(extend_matching(inst, m, 1, Rational(2), o).stuck());
  EXPECT_EQ(out.str(),
            "call p2 |M|=1 sig=(inf)\n"
            "add p2 {f1} blocked-by [p1]\n"
            "iteration 1 sig=(1,inf)\n"
            "add p1 {f2} blocked-by []\n"
            "swap p1 {f1} -> {f2} keep=1\n"
            "match p2 {f1}\n");
}

}  // namespace
}  // namespace santa
