#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clouds/cloud.hpp"

namespace clouds {

/// Continuous piecewise-linear function on [lo, hi] with values in [0,1].
class PiecewiseLinear {
 public:
  using Point = std::pair<Rational, Rational>;

  /// At least two points with strictly increasing x.
  explicit PiecewiseLinear(std::vector<Point> points);

  const std::vector<Point>& points() const { return points_; }
  const Rational& lo() const { return points_.front().first; }
  const Rational& hi() const { return points_.back().first; }
  Rational operator()(const Rational& t) const;
  Rational max() const;
  Rational min() const;
  bool nondecreasing() const;

  friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

 private:
  std::vector<Point> points_;
};

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const Rational& t) const;
  bool is_point() const { return lo == hi; }
  /// "[a,b)", "(a,b]", ...; a single point prints as "[a,a]".
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals, kept sorted and merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool contains(const Rational& t) const;
  /// Total length.
  Rational measure() const;

  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion unite(const IntervalUnion& other) const;
  /// Complement within [lo, hi].
  IntervalUnion complement(const Rational& lo, const Rational& hi) const;
  /// "{}" when empty, otherwise parts joined by " U ".
  std::string to_string() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> parts_;
};

enum class Compare { Less, LessEq, Equal, GreaterEq, Greater };

/// {t in [lo, hi] : f(t) cmp level}.
IntervalUnion level_set(const PiecewiseLinear& f, Compare cmp, const Rational& level);

/// Cloud on a bounded interval; delta and pi share the support.
class ContinuousCloud {
 public:
  ContinuousCloud(PiecewiseLinear delta, PiecewiseLinear pi);

  const PiecewiseLinear& delta() const { return delta_; }
  const PiecewiseLinear& pi() const { return pi_; }
  const Rational& lo() const { return pi_.lo(); }
  const Rational& hi() const { return pi_.hi(); }
  /// Sorted union of both breakpoint lists.
  std::vector<Rational> breakpoints() const;

  friend bool operator==(const ContinuousCloud&, const ContinuousCloud&) = default;

 private:
  PiecewiseLinear delta_;
  PiecewiseLinear pi_;
};

/// {r : pi(r) >= alpha and delta(r) < alpha}, alpha in (0,1].
IntervalUnion alpha_focal(const ContinuousCloud& cc, const Rational& alpha);

/// Clouds over the cells of an equidistant level grid 0, 1/n, ..., 1.
struct Discretization {
  /// Maximal pieces of the support on which all four rounded functions are
  /// constant, left to right; cell i is outcome i.
  std::vector<Interval> cells;
  OutcomeSpace space;
  /// pi rounded up, delta rounded down.
  Cloud outer;
  /// pi rounded down, delta rounded up; nullopt when that breaks delta <= pi.
  std::optional<Cloud> inner;

  /// Cells making up `region`; throws when a cell is only partly covered.
  EventSet event_of(const IntervalUnion& region) const;
};

Discretization discretize(const ContinuousCloud& cc, std::size_t n);

/// [inf{t : Fhigh(t) >= alpha}, inf{t : Flow(t) >= alpha}].
Interval pbox_focal(const PiecewiseLinear& flow, const PiecewiseLinear& fhigh, const Rational& alpha);

/// Lebesgue measure of {alpha in (0,1] : focal set inside (-inf, t]} and of
/// {alpha : focal set meets (-inf, t]}, computed from the pseudo-inverses.
std::pair<Rational, Rational> pbox_focal_cdf_bounds(const PiecewiseLinear& flow,
                                                    const PiecewiseLinear& fhigh,
                                                    const Rational& t);

struct ThinCloudCdfs {
  /// Mass on the left cut endpoints: running max of pi from the left.
  PiecewiseLinear fplus;
  /// Mass on the right cut endpoints: 1 - running max of pi from the right.
  PiecewiseLinear fminus;

  /// lambda * fplus + (1 - lambda) * fminus.
  PiecewiseLinear mixture(const Rational& lambda) const;
};

/// pi must vanish at both ends of its support and reach 1. With `unimodal`,
/// pi must be nondecreasing then nonincreasing.
ThinCloudCdfs thin_cloud_cdfs(const PiecewiseLinear& pi, bool unimodal);

/// Probability of `region` under a continuous CDF.
Rational cdf_probability(const PiecewiseLinear& cdf, const IntervalUnion& region);

enum class Comonotonicity { Comonotonic, WeaklyComonotonic, Neither };
Comonotonicity comonotonicity_continuous(const ContinuousCloud& cc);
std::string to_string(Comonotonicity c);

}  // namespace clouds
