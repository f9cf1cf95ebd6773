#include "clouds/cloud.hpp"

#include <gtest/gtest.h>

#include <set>

#include "clouds/credal.hpp"
#include "clouds/errors.hpp"
#include "support.hpp"

namespace clouds {
namespace {

using testing::ev;
using testing::q;

TEST(OutcomeSpaceTest, Validation) {
  EXPECT_THROW(OutcomeSpace(std::vector<std::string>{}), ValidationError);
  EXPECT_THROW((OutcomeSpace{"a", "a"}), ValidationError);
  EXPECT_THROW((OutcomeSpace{"a", ""}), ValidationError);
  const OutcomeSpace s{"a", "b"};
  EXPECT_EQ(s.index_of("b"), 1U);
  EXPECT_THROW(s.index_of("c"), DomainError);
}

TEST(EventSetTest, ParseAndPrint) {
  const OutcomeSpace s{"u", "v", "w"};
  EXPECT_EQ(ev(s, "{w,u}").to_string(s), "{u,w}");
  EXPECT_EQ(ev(s, "v").to_mask(), 2U);
  EXPECT_TRUE(ev(s, "{}").is_empty());
  EXPECT_TRUE(ev(s, "").is_empty());
  EXPECT_THROW(ev(s, "{u,q}"), DomainError);
  EXPECT_THROW(ev(s, "u,"), DomainError);
  EXPECT_EQ(ev(s, "u").complement(), ev(s, "v,w"));
  EXPECT_TRUE(ev(s, "u") < ev(s, "v"));
  EXPECT_TRUE(ev(s, "u,v") < ev(s, "w"));
  EXPECT_THROW(ev(s, "u") | EventSet(4), DomainError);
}

TEST(CloudTest, Validation) {
  const OutcomeSpace s{"a", "b"};
  EXPECT_THROW(Cloud(s, {q(0), q(1, 2)}, {q(1), q(1, 4)}), ValidationError);
  EXPECT_THROW(Cloud(s, {q(0), q(0)}, {q(1, 2), q(1, 2)}), ValidationError);
  EXPECT_THROW(Cloud(s, {q(1, 2), q(1, 2)}, {q(1), q(1)}), ValidationError);
  EXPECT_THROW(Cloud(s, {q(0), q(0)}, {q(1), q(3, 2)}), ValidationError);
  EXPECT_THROW(Cloud(s, {q(0)}, {q(1), q(1)}), ValidationError);
  EXPECT_THROW(PossibilityDistribution(s, {q(1, 2), q(0)}), ValidationError);
  EXPECT_THROW(Cloud::from_maps(s, {{"a", q(0)}}, {{"a", q(1)}, {"b", q(1)}}), ValidationError);
}

TEST(CoreTest, ReferenceCloudLevels) {
  const auto c = testing::reference_cloud();
  EXPECT_EQ(level_values(c).values(), (std::vector<Rational>{q(0), q(1, 2), q(3, 4), q(1)}));
  EXPECT_EQ(level_values(testing::vacuous_cloud(3)).values(), (std::vector<Rational>{q(0), q(1)}));
}

TEST(CoreTest, LevelsMatchSortDedupe) {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto c = testing::random_cloud(rng, 5, 8);
    std::vector<Rational> all{q(0), q(1)};
    for (std::size_t i = 0; i < c.size(); ++i) {
      all.push_back(c.pi(i));
      all.push_back(c.delta(i));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    EXPECT_EQ(level_values(c).values(), all);
  }
}

TEST(CoreTest, Cuts) {
  const auto c = testing::reference_cloud();
  const auto& s = c.space();
  EXPECT_EQ(upper_cut(c, q(3, 4), true), ev(s, "v,w"));
  EXPECT_EQ(upper_cut(c, q(0), false), EventSet::full(6));
  EXPECT_EQ(lower_cut(c, q(1, 2), false), ev(s, "u,v,w,x"));
  EXPECT_EQ(lower_cut(c, q(1), true), EventSet(6));
  EXPECT_THROW(upper_cut(c, q(-1), true), DomainError);
  EXPECT_THROW(lower_cut(c, q(2), false), DomainError);
}

TEST(CoreTest, CutsMatchPredicateScan) {
  std::mt19937 rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto c = testing::random_cloud(rng, 5, 6);
    const auto g = q(static_cast<int>(rng() % 7), 6);
    for (bool strict : {false, true}) {
      const auto up = upper_cut(c, g, strict);
      const auto lo = lower_cut(c, g, strict);
      for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(up.contains(i), strict ? c.pi(i) > g : c.pi(i) >= g);
        EXPECT_EQ(lo.contains(i), strict ? c.delta(i) > g : c.delta(i) >= g);
      }
    }
  }
}

TEST(CoreTest, CutStructureProperties) {
  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    const auto c = testing::random_cloud(rng, 5, 4);
    const auto levels = level_values(c);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      EXPECT_TRUE(lower_cut(c, levels[i], false).is_subset_of(upper_cut(c, levels[i], false)));
      if (i + 1 < levels.size()) {
        EXPECT_EQ(upper_cut(c, levels[i], true), upper_cut(c, levels[i + 1], false));
        EXPECT_EQ(lower_cut(c, levels[i], true), lower_cut(c, levels[i + 1], false));
        EXPECT_TRUE(upper_cut(c, levels[i + 1], true).is_subset_of(upper_cut(c, levels[i], true)));
      }
    }
  }
}

TEST(CoreTest, ReferenceCloudConstraintRows) {
  const auto c = testing::reference_cloud();
  const auto& s = c.space();
  const std::vector<ConstraintRow> expected{
      {ev(s, "u,v,w,x"), q(1, 4), q(1, 2)},
      {ev(s, "u,v,w,x,y"), q(1, 2), q(1)},
      {ev(s, "w"), q(0), q(1, 4)},
      {ev(s, "v,w"), q(1, 4), q(1, 2)},
  };
  EXPECT_EQ(cloud_constraints(c).rows(), expected);
  EXPECT_TRUE(cloud_constraints(testing::vacuous_cloud(4)).rows().empty());
}

TEST(CoreTest, CrossingCloudConstraintRows) {
  const auto c = testing::crossing_cloud();
  const auto& s = c.space();
  const std::vector<ConstraintRow> expected{
      {ev(s, "w,x"), q(0), q(3, 4)},
      {ev(s, "v,w,x,y"), q(3, 4), q(1)},
      {ev(s, "w"), q(0), q(1, 2)},
      {ev(s, "v,w"), q(1, 2), q(1)},
  };
  EXPECT_EQ(cloud_constraints(c).rows(), expected);
}

TEST(CoreTest, PossibilityPair) {
  const auto c = testing::reference_cloud();
  const auto [pi, co] = to_possibility_pair(c);
  EXPECT_EQ(pi.values(), c.pi());
  EXPECT_EQ(co.values(), (std::vector<Rational>{q(1, 2), q(1, 2), q(1, 4), q(1, 2), q(1), q(1)}));
  EXPECT_EQ(possibility_measure(co, ev(c.space(), "u,v")), q(1, 2));
  const auto [a, b] = to_possibility_pair(testing::vacuous_cloud(3));
  EXPECT_EQ(a.values(), std::vector<Rational>(3, q(1)));
  EXPECT_EQ(b.values(), std::vector<Rational>(3, q(1)));
}

TEST(CoreTest, Measures) {
  std::mt19937 rng(14);
  for (int t = 0; t < 30; ++t) {
    const auto c = testing::random_cloud(rng, 5, 8);
    const PossibilityDistribution d(c.space(), c.pi());
    EXPECT_EQ(possibility_measure(d, EventSet::full(5)), q(1));
    EXPECT_EQ(necessity_measure(d, EventSet(5)), q(0));
    for (const auto& a : testing::all_events(5)) {
      EXPECT_LE(necessity_measure(d, a), possibility_measure(d, a));
    }
  }
}

TEST(CoreTest, Mirror) {
  const auto v = testing::vacuous_cloud(3);
  EXPECT_EQ(mirror(v), v);
  const auto c = testing::reference_cloud();
  EXPECT_EQ(mirror(c).delta(0), q(1, 4));
  EXPECT_EQ(mirror(c).pi(0), q(1, 2));
  EXPECT_EQ(mirror(mirror(c)), c);
}

TEST(CoreTest, MirrorPreservesLowerProbability) {
  std::mt19937 rng(15);
  for (int t = 0; t < 25; ++t) {
    const auto c = testing::random_cloud(rng, 5, 4);
    const auto a = cloud_constraints(c);
    const auto b = cloud_constraints(mirror(c));
    for (const auto& e : testing::all_events(5)) {
      ASSERT_EQ(lp_lower(a, e), lp_lower(b, e));
    }
  }
}

TEST(CoreTest, ConstraintsEqualPossibilityIntersection) {
  std::mt19937 rng(16);
  for (int t = 0; t < 25; ++t) {
    const auto c = testing::random_cloud(rng, 6, 4);
    const auto [pi, co] = to_possibility_pair(c);
    const auto merged = possibility_constraints(pi).merged_with(possibility_constraints(co));
    const auto own = cloud_constraints(c);
    for (const auto& e : testing::all_events(6)) {
      ASSERT_EQ(lp_lower(own, e), lp_lower(merged, e));
    }
  }
}

TEST(CoreTest, FuzzyCloud) {
  const PossibilityDistribution d(testing::letters(3), {q(1, 4), q(1), q(1, 2)});
  const auto c = fuzzy_cloud(d);
  EXPECT_EQ(c.delta(), std::vector<Rational>(3, q(0)));
  EXPECT_EQ(c.pi(), d.values());
}

TEST(CoreTest, ConstraintRowValidation) {
  const auto s = testing::letters(2);
  EXPECT_THROW(CredalConstraints(s, {{EventSet(2), q(1, 2), q(1, 4)}}), ValidationError);
  EXPECT_THROW(CredalConstraints(s, {{EventSet(3), q(0), q(1)}}), ValidationError);
  EXPECT_NO_THROW(CredalConstraints(s, {{EventSet(2), q(1, 2), q(1)}}));
}

}  // namespace
}  // namespace clouds
