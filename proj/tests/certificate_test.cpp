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

#include <set>

#include "santa/certificate.hpp"
#include "santa/generator.hpp"
#include "santa/oracle.hpp"
#include "test_util.hpp"

namespace santa {
namespace {

using testing::ids;
using testing::q;

Rational sum(const std::vector<Rational>& v) {
  Rational s;
  for (const auto& x : v) s += x;
  return s;
}

bool has_step(const StuckAudit& a, const std::string& label, bool ok) {
  for (const auto& s : a.steps)
    if (s.label == label && s.ok == ok) return true;
  return false;
}

TEST(ConstantsTest, ExactIdentities) {
  EXPECT_EQ(alpha(), Rational(3) + Rational(5, 6));
  EXPECT_EQ(beta(), Rational(1) + Rational(8, 15));
  EXPECT_EQ(beta() / alpha(), Rational(2, 5));
  EXPECT_GT(beta() / alpha(), Rational(1, 3));
  EXPECT_EQ(beta() * Rational(5, 2) / alpha(), Rational(1));
  EXPECT_EQ(Rational(2, 3) + beta() * (Rational(1) - Rational(3) / alpha()), Rational(1));
}

TEST(BuildCertificateTest, ThinAndFatValues) {
  // a is worth T/10 with T = alpha at t = 1.
  const Instance inst = testing::make_instance({{"a", "23/60"}, {"b", "37/60"}, {"x", "5"}},
                                               {{"p1", {"a", "b"}}, {"p2", {"a", "b"}}});
  const SolveResult r = solve(inst, Rational(1));
  ASSERT_TRUE(r.stuck.has_value());
  const DualWitness w = build_certificate(inst, *r.stuck);
  EXPECT_EQ(w.tau, alpha());
  EXPECT_EQ(w.z[0], q("23/150"));
  EXPECT_EQ(w.z[1], q("37/150"));
  EXPECT_EQ(w.z[2], Rational(0));  // outside A_R and B_R
  EXPECT_EQ(w.y, (std::vector<Rational>{Rational(1), Rational(1)}));
  EXPECT_TRUE(check_claim_negativity(w));
  EXPECT_TRUE(check_claim_feasibility(inst, w));
  EXPECT_TRUE(verify_unbounded_dual(inst, w).ok);
  const StuckAudit a = audit_stuck_state(inst, *r.stuck, w);
  EXPECT_TRUE(a.ok());
  ASSERT_EQ(a.thin_edges.size(), 1u);
  EXPECT_EQ(a.thin_edges[0].case_label, ThinCase::kOneBlockerSmallMin);
}

TEST(BuildCertificateTest, T2StuckState) {
  const Instance inst = testing::t2();
  Matching m(2);
  m.set(0, ids(inst, {"f"}));
  const ExtendResult r = extend_matching(inst, m, 1, Rational(1));
  ASSERT_TRUE(r.stuck());
  ASSERT_EQ(r.state.addable, (std::vector<Hyperedge>{{1, ids(inst, {"f"})}}));
  const DualWitness w = build_certificate(inst, r.state);
  EXPECT_EQ(w.tau, Rational(23, 6));
  EXPECT_EQ(sum(w.y), Rational(2));
  EXPECT_EQ(sum(w.z), Rational(1));
  EXPECT_EQ(w.z[0], Rational(1));  // fat resource in A_R
  const WitnessCheck c = verify_unbounded_dual(inst, w);
  EXPECT_TRUE(c.ok) << c.reason;
  EXPECT_FALSE(feasible_at(inst, w.tau).feasible);
  EXPECT_TRUE(check_claim_feasibility(inst, w));

  const StuckAudit a = audit_stuck_state(inst, r.state, w);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.fat_blocking, 1u);
  EXPECT_EQ(a.thin_blocking, 0u);
  EXPECT_EQ(a.sum_y, Rational(2));
  EXPECT_EQ(a.sum_z, Rational(1));
}

TEST(BuildCertificateTest, RejectsStatesThatAreNotStuck) {
  const Instance inst = testing::t1();
  SearchState st;
  st.threshold = Rational(1);
  st.root = 0;
  st.matching = Matching(2);
  EXPECT_THROW(build_certificate(inst, st), std::logic_error);
  st.matching.set(0, {0});
  st.root = 0;
  EXPECT_THROW(build_certificate(inst, st), std::logic_error);
}

TEST(AuditTest, UnblockedThinEdgeFailsBlockedStep) {
  const Instance inst = testing::make_instance({{"a", "1/2"}, {"b", "1/2"}}, {{"p", {"a", "b"}}});
  SearchState st;
  st.threshold = Rational(1);
  st.root = 0;
  st.matching = Matching(1);
  st.addable = {{0, {0, 1}}};
  st.recompute_blocking();
  const DualWitness w = build_certificate(inst, st);
  const StuckAudit a = audit_stuck_state(inst, st, w);
  EXPECT_FALSE(a.ok());
  EXPECT_TRUE(has_step(a, "thin-addable-blocked", false));
}

TEST(AuditTest, WrongTauIsReported) {
  const Instance inst = testing::t2();
  const SolveResult r = solve(inst, Rational(1));
  ASSERT_TRUE(r.stuck.has_value());
  DualWitness w = build_certificate(inst, *r.stuck);
  w.tau = Rational(4);
  EXPECT_TRUE(has_step(audit_stuck_state(inst, *r.stuck, w), "tau", false));
}

TEST(ClaimTest, HalvedThinZBreaksFeasibility) {
  // One player, four resources of T/4 each, T = 1.
  const Instance inst = testing::make_instance({{"a", "1/4"}, {"b", "1/4"}, {"c", "1/4"}, {"d", "1/4"}},
                                               {{"p", {"a", "b", "c", "d"}}});
  DualWitness w{Rational(1), {Rational(1)}, {}};
  for (int j = 0; j < 4; ++j) w.z.push_back(min(Rational(1, 3), beta() * Rational(1, 4) / w.tau));
  EXPECT_EQ(w.z[0], Rational(1, 3));
  EXPECT_TRUE(check_claim_feasibility(inst, w));
  for (auto& z : w.z) z = z / Rational(2);
  EXPECT_FALSE(check_claim_feasibility(inst, w));
  for (auto& y : w.y) y = Rational(0);
  EXPECT_TRUE(check_claim_feasibility(inst, w));
}

TEST(ClaimTest, NegativityIsStrict) {
  EXPECT_TRUE(check_claim_negativity({Rational(1), {Rational(1), Rational(1)}, {Rational(1)}}));
  EXPECT_FALSE(check_claim_negativity({Rational(1), {Rational(1)}, {Rational(1, 2), Rational(1, 2)}}));
}

// Stuck states harvested above opt*/alpha: every witness verifies, every audit
// passes, and the LP at alpha*t is independently infeasible.
TEST(CertificatePropertyTest, HarvestedStuckStates) {
  std::size_t harvested = 0;
  std::set<ThinCase> seen;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const Instance inst = generate_instance({2 + k % 3, 3 + k % 5, 0.7, 6, campaign_seed(7, k)});
    const Rational opt = opt_star(inst);
    if (opt.sign() == 0) continue;
    for (const Rational& factor : {Rational(11, 10), Rational(3, 2), Rational(2), Rational(3), alpha()}) {
      const Rational t = opt * factor / alpha();
      const SolveResult r = solve(inst, t);
      if (!r.stuck) continue;
      ++harvested;
      const DualWitness w = build_certificate(inst, *r.stuck);
      const WitnessCheck c = verify_unbounded_dual(inst, w);
      ASSERT_TRUE(c.ok) << c.reason;
      ASSERT_TRUE(check_claim_feasibility(inst, w));
      ASSERT_TRUE(check_claim_negativity(w));
      EXPECT_FALSE(feasible_at(inst, w.tau).feasible);
      EXPECT_LT(oracle::brute_force_opt_star(inst), w.tau);
      const StuckAudit a = audit_stuck_state(inst, *r.stuck, w);
      for (const auto& f : a.failures()) ADD_FAILURE() << f.label << ": " << f.detail;
      for (const auto& e : a.thin_edges)
        if (e.case_label) seen.insert(*e.case_label);
    }
  }
  EXPECT_GT(harvested, 20u);
  EXPECT_FALSE(seen.empty());
}

}  // namespace
}  // namespace santa
