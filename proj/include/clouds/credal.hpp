#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "clouds/cloud.hpp"

namespace clouds {

/// Size limits for exhaustive computations.
struct Caps {
  std::size_t set_function = 12;
  std::size_t two_monotone = 8;
  std::size_t linear_extensions = 10;
};

/// Exact minimum of P(A) over the credal set; nullopt when the set is empty.
std::optional<Rational> lp_lower(const CredalConstraints& constraints, const EventSet& event);
/// 1 - lp_lower(constraints, A^c).
std::optional<Rational> lp_upper(const CredalConstraints& constraints, const EventSet& event);
bool is_feasible(const CredalConstraints& constraints);

/// Function on all 2^n events, indexed by bit mask (bit i = outcome i).
class SetFunction {
 public:
  SetFunction(OutcomeSpace space, std::vector<Rational> values);

  const OutcomeSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::uint64_t mask) const { return values_[mask]; }
  const Rational& at(const EventSet& event) const { return values_[event.to_mask()]; }

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  OutcomeSpace space_;
  std::vector<Rational> values_;
};

/// lp_lower on every event; nullopt when the credal set is empty.
std::optional<SetFunction> lower_prob_function(const CredalConstraints& constraints,
                                               const Caps& caps = {});

/// Violating pair for g(A) + g(B) <= g(A u B) + g(A n B).
struct MonotonicityViolation {
  EventSet a;
  EventSet b;
};

/// First violating pair scanning A then B by mask, or nullopt when 2-monotone.
std::optional<MonotonicityViolation> find_2_monotone_violation(const SetFunction& f,
                                                               const Caps& caps = {});
inline bool is_2_monotone(const SetFunction& f, const Caps& caps = {}) {
  return !find_2_monotone_violation(f, caps).has_value();
}

/// Signed Moebius masses indexed by mask.
std::vector<Rational> mobius_transform(const SetFunction& f);
/// Inverse: f(A) = sum of masses of subsets of A.
SetFunction from_mobius(const OutcomeSpace& space, const std::vector<Rational>& masses);

/// Random set: positive masses on non-empty focal sets, summing to 1.
class MassFunction {
 public:
  MassFunction(OutcomeSpace space, std::map<EventSet, Rational> focal);

  const OutcomeSpace& space() const { return space_; }
  const std::map<EventSet, Rational>& focal() const { return focal_; }

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  OutcomeSpace space_;
  std::map<EventSet, Rational> focal_;
};

Rational bel(const MassFunction& mass, const EventSet& event);
Rational pl(const MassFunction& mass, const EventSet& event);
SetFunction bel_function(const MassFunction& mass, const Caps& caps = {});

}  // namespace clouds
