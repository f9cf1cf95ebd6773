#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clouds/outcome_space.hpp"
#include "clouds/rational.hpp"

namespace clouds {

/// Normalized possibility distribution on a finite space.
class PossibilityDistribution {
 public:
  PossibilityDistribution(OutcomeSpace space, std::vector<Rational> pi);
  static PossibilityDistribution from_map(OutcomeSpace space,
                                          const std::map<std::string, Rational>& pi);

  const OutcomeSpace& space() const { return space_; }
  const std::vector<Rational>& values() const { return pi_; }
  const Rational& operator[](std::size_t i) const { return pi_[i]; }

  friend bool operator==(const PossibilityDistribution&, const PossibilityDistribution&) = default;

 private:
  OutcomeSpace space_;
  std::vector<Rational> pi_;
};

/// Pair of lower/upper distributions delta <= pi, pi reaching 1 and delta
/// reaching 0 somewhere.
class Cloud {
 public:
  Cloud(OutcomeSpace space, std::vector<Rational> delta, std::vector<Rational> pi);
  static Cloud from_maps(OutcomeSpace space, const std::map<std::string, Rational>& delta,
                         const std::map<std::string, Rational>& pi);

  const OutcomeSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<Rational>& delta() const { return delta_; }
  const std::vector<Rational>& pi() const { return pi_; }
  const Rational& delta(std::size_t i) const { return delta_[i]; }
  const Rational& pi(std::size_t i) const { return pi_[i]; }

  friend bool operator==(const Cloud&, const Cloud&) = default;

 private:
  OutcomeSpace space_;
  std::vector<Rational> delta_;
  std::vector<Rational> pi_;
};

/// Strictly increasing levels 0 = g_0 < ... < g_M = 1.
class LevelSequence {
 public:
  explicit LevelSequence(std::vector<Rational> gammas);

  const std::vector<Rational>& values() const { return gammas_; }
  std::size_t size() const { return gammas_.size(); }
  /// Index of the last level (M).
  std::size_t last() const { return gammas_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return gammas_[i]; }

  friend bool operator==(const LevelSequence&, const LevelSequence&) = default;

 private:
  std::vector<Rational> gammas_;
};

/// lo <= P(event) <= hi.
struct ConstraintRow {
  EventSet event;
  Rational lo;
  Rational hi;

  friend bool operator==(const ConstraintRow&, const ConstraintRow&) = default;
};

/// Finite system of event-probability bounds; defines a credal set.
class CredalConstraints {
 public:
  explicit CredalConstraints(OutcomeSpace space, std::vector<ConstraintRow> rows = {});

  const OutcomeSpace& space() const { return space_; }
  const std::vector<ConstraintRow>& rows() const { return rows_; }

  /// Rows of `other` appended to a copy of these rows (same space required).
  CredalConstraints merged_with(const CredalConstraints& other) const;

 private:
  OutcomeSpace space_;
  std::vector<ConstraintRow> rows_;
};

LevelSequence level_values(const Cloud& cloud);

/// strict: {x : pi(x) > gamma}; otherwise {x : pi(x) >= gamma}.
EventSet upper_cut(const Cloud& cloud, const Rational& gamma, bool strict);
/// Same as upper_cut over delta.
EventSet lower_cut(const Cloud& cloud, const Rational& gamma, bool strict);

/// Constraint rows P(C_g) <= 1 - g <= P(Bbar_g) over every level g, each
/// paired with the tightest opposite bound implied by cut nesting. Rows that
/// say nothing (event empty or full with a satisfied bound, or bounds [0,1])
/// are dropped.
CredalConstraints cloud_constraints(const Cloud& cloud);

/// (pi, 1 - delta).
std::pair<PossibilityDistribution, PossibilityDistribution> to_possibility_pair(const Cloud& cloud);

/// The cloud [1 - pi, 1 - delta].
Cloud mirror(const Cloud& cloud);

/// The fuzzy cloud [0, pi].
Cloud fuzzy_cloud(const PossibilityDistribution& dist);

Rational possibility_measure(const PossibilityDistribution& dist, const EventSet& event);
Rational necessity_measure(const PossibilityDistribution& dist, const EventSet& event);

/// Strong-cut lower bounds 1 - g <= P({pi > g}) describing the credal set of
/// a possibility distribution.
CredalConstraints possibility_constraints(const PossibilityDistribution& dist);

}  // namespace clouds
