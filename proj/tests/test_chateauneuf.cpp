#include "clouds/chateauneuf.hpp"

#include <gtest/gtest.h>

#include "clouds/cloudops.hpp"
#include "support.hpp"

namespace clouds {
namespace {

using testing::all_events;
using testing::ev;
using testing::q;

TEST(PossibilityRandomSetTest, ReferenceDistribution) {
  const auto c = testing::reference_cloud();
  const PossibilityDistribution pi(c.space(), c.pi());
  const auto& s = c.space();
  const std::map<EventSet, Rational> expected{
      {ev(s, "v,w"), q(1, 4)}, {ev(s, "u,v,w,x,y"), q(1, 4)}, {EventSet::full(6), q(1, 2)}};
  EXPECT_EQ(possibility_to_randomset(pi).focal(), expected);
  const PossibilityDistribution ones(s, std::vector<Rational>(6, q(1)));
  EXPECT_EQ(possibility_to_randomset(ones).focal(),
            (std::map<EventSet, Rational>{{EventSet::full(6), q(1)}}));
}

TEST(PossibilityRandomSetTest, MatchesMobiusOfNecessity) {
  std::mt19937 rng(41);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto c = testing::random_cloud(rng, n, 6);
    const PossibilityDistribution d(c.space(), c.pi());
    std::vector<Rational> nec;
    for (const auto& e : all_events(n)) nec.push_back(necessity_measure(d, e));
    const auto masses = mobius_transform(SetFunction(d.space(), nec));
    const auto m = possibility_to_randomset(d);
    for (std::uint64_t k = 0; k < masses.size(); ++k) {
      const auto e = EventSet::from_mask(n, k);
      const auto it = m.focal().find(e);
      ASSERT_EQ(masses[k], it == m.focal().end() ? q(0) : it->second);
      ASSERT_EQ(bel(m, e), nec[k]);
    }
  }
}

struct OverlappingPairs {
  OutcomeSpace space{"a", "b", "c", "d", "e"};
  EventSet f1 = ev(space, "a,b");
  EventSet f2 = ev(space, "a,b,c,e");
  EventSet g1 = ev(space, "a,c,d");
  EventSet g2 = EventSet::full(5);
};

TEST(TransportTest, OverlappingNestedPairs) {
  const OverlappingPairs k;
  for (const auto& lambda : {q(1, 4), q(1, 2), q(2, 3)}) {
    const MassFunction mf(k.space, {{k.f1, lambda}, {k.f2, 1 - lambda}});
    const MassFunction mg(k.space, {{k.g2, lambda}, {k.g1, 1 - lambda}});
    const auto joined = transport_lower_bel(mf, mg, k.f1 | k.g1);
    ASSERT_TRUE(joined);
    EXPECT_EQ(joined->value, std::max(lambda, 1 - lambda));
    const auto met = transport_lower_bel(mf, mg, k.f1 & k.g1);
    ASSERT_TRUE(met);
    EXPECT_EQ(met->value, q(0));
  }
}

TEST(TransportTest, WitnessPreservesMarginals) {
  std::mt19937 rng(42);
  for (int t = 0; t < 40; ++t) {
    const auto c = testing::random_cloud(rng, 4, 4);
    const auto [pi, co] = to_possibility_pair(c);
    const JointMassProblem problem(possibility_to_randomset(pi), possibility_to_randomset(co));
    const auto r = transport_lower_bel(problem, EventSet::from_mask(4, rng() % 16));
    if (!r) continue;
    for (std::size_t i = 0; i < problem.rows().size(); ++i) {
      Rational sum = 0;
      for (std::size_t j = 0; j < problem.cols().size(); ++j) {
        sum += r->witness[i][j];
        if (problem.forbidden(i, j)) ASSERT_EQ(r->witness[i][j], q(0));
        ASSERT_GE(r->witness[i][j], q(0));
      }
      ASSERT_EQ(sum, problem.rows()[i].second);
    }
    for (std::size_t j = 0; j < problem.cols().size(); ++j) {
      Rational sum = 0;
      for (std::size_t i = 0; i < problem.rows().size(); ++i) sum += r->witness[i][j];
      ASSERT_EQ(sum, problem.cols()[j].second);
    }
  }
}

TEST(TransportTest, VacuousColumnGivesBelief) {
  const auto s = testing::letters(4);
  const MassFunction m(s, {{ev(s, "a,b"), q(1, 3)}, {ev(s, "c"), q(2, 3)}});
  const MassFunction all(s, {{EventSet::full(4), q(1)}});
  for (const auto& e : all_events(4)) EXPECT_EQ(transport_lower_bel(m, all, e)->value, bel(m, e));
}

TEST(TransportTest, CrossingCloudEvents) {
  const auto c = testing::crossing_cloud();
  const auto& s = c.space();
  EXPECT_EQ(cloud_lower_via_transport(c, ev(s, "v,w")), q(1, 2));
  EXPECT_EQ(cloud_lower_via_transport(c, ev(s, "v,y,z")), q(1, 4));
  EXPECT_EQ(cloud_lower_via_transport(c, ev(s, "v")), q(0));
  EXPECT_EQ(cloud_lower_via_transport(c, ev(s, "v,w,y,z")), q(1, 2));
  for (const auto& e : all_events(3)) {
    EXPECT_EQ(cloud_lower_via_transport(testing::vacuous_cloud(3), e), e.is_full() ? q(1) : q(0));
  }
}

TEST(TransportTest, AgreesWithLpAndDominatesMarginals) {
  std::mt19937 rng(43);
  for (int t = 0; t < 80; ++t) {
    const auto c = testing::random_cloud(rng, 2 + t % 4, 4);
    const auto k = cloud_constraints(c);
    const auto [pi, co] = to_possibility_pair(c);
    const auto m1 = possibility_to_randomset(pi);
    const auto m2 = possibility_to_randomset(co);
    for (const auto& e : all_events(c.size())) {
      const auto via = cloud_lower_via_transport(c, e);
      ASSERT_EQ(via, lp_lower(k, e));
      ASSERT_EQ(via.has_value(), is_nonempty(c));
      if (via) {
        ASSERT_GE(*via, bel(m1, e));
        ASSERT_GE(*via, bel(m2, e));
      }
    }
  }
}

TEST(TransportTest, ComonotonicMatchesRandomSet) {
  std::mt19937 rng(44);
  for (int t = 0; t < 40; ++t) {
    const auto c = testing::random_comonotonic_cloud(rng, 2 + t % 4, 4);
    const auto m = cloud_to_randomset(c);
    for (const auto& e : all_events(c.size())) ASSERT_EQ(cloud_lower_via_transport(c, e), bel(m, e));
  }
}

}  // namespace
}  // namespace clouds
