#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clouds/cloud.hpp"
#include "clouds/cloudops.hpp"
#include "clouds/credal.hpp"

namespace clouds {

/// Per-element bounds l(x) <= p(x) <= u(x) with sum l <= 1 <= sum u.
class ProbabilityInterval {
 public:
  ProbabilityInterval(OutcomeSpace space, std::vector<Rational> lower, std::vector<Rational> upper);

  const OutcomeSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<Rational>& lower() const { return lower_; }
  const std::vector<Rational>& upper() const { return upper_; }

  friend bool operator==(const ProbabilityInterval&, const ProbabilityInterval&) = default;

 private:
  OutcomeSpace space_;
  std::vector<Rational> lower_;
  std::vector<Rational> upper_;
};

/// Singleton rows l(x) <= P({x}) <= u(x).
CredalConstraints interval_constraints(const ProbabilityInterval& intervals);

/// Strict precedence x < y iff u(x) <= l(y) (and not also y < x, which only
/// happens for equal degenerate intervals).
class IntervalPartialOrder {
 public:
  IntervalPartialOrder(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs);

  std::size_t size() const { return n_; }
  /// Sorted (x, y) pairs with x < y.
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  bool precedes(std::size_t x, std::size_t y) const { return below_[x * n_ + y]; }

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<bool> below_;
};

IntervalPartialOrder interval_partial_order(const ProbabilityInterval& intervals);

/// Calls `visit` with each linear extension (storage indices, lowest first),
/// lexicographically by storage index. Stops early when `visit` returns false.
void for_each_linear_extension(const IntervalPartialOrder& order,
                               const std::function<bool(const std::vector<std::size_t>&)>& visit,
                               const Caps& caps = {});
std::vector<std::vector<std::size_t>> linear_extensions(const IntervalPartialOrder& order,
                                                        const Caps& caps = {});

/// Per-extension solutions of the two maximization programs; nullopt when the
/// extension's monotone chain is incompatible with the intervals.
struct ExtensionPossibilities {
  std::vector<std::size_t> extension;
  std::optional<std::vector<Rational>> upper;  // pi^l
  std::optional<std::vector<Rational>> lower;  // pi_delta^l
};

std::vector<ExtensionPossibilities> md_extension_table(const ProbabilityInterval& intervals,
                                                       const Caps& caps = {});
PossibilityDistribution md_upper_possibility(const ProbabilityInterval& intervals,
                                             const Caps& caps = {});
PossibilityDistribution md_lower_possibility(const ProbabilityInterval& intervals,
                                             const Caps& caps = {});
/// [1 - md_lower_possibility, md_upper_possibility].
Cloud intervals_to_cloud(const ProbabilityInterval& intervals, const Caps& caps = {});

/// Generalized p-box along a total order (labels, lowest first).
GeneralizedPBox intervals_to_genpbox(const ProbabilityInterval& intervals,
                                     const std::vector<std::string>& order);
/// Union of the p-box rows over each order.
CredalConstraints multi_order_intersection(const ProbabilityInterval& intervals,
                                           const std::vector<std::vector<std::string>>& orders);

}  // namespace clouds
