#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clouds/cloud.hpp"
#include "clouds/credal.hpp"

namespace clouds {

/// Prefix scan: for every A, max pi over A >= min delta outside A.
bool is_nonempty(const Cloud& cloud);
/// Pi1(A) + Pi2(A^c) >= 1 for every A.
bool pair_nonempty(const PossibilityDistribution& pi1, const PossibilityDistribution& pi2);

/// The cloud [delta_pi, pi] with delta_pi(x_i) = pi(x_{i-1}) along `order`.
/// `order` lists every label once; pi must be nondecreasing along it.
Cloud tightest_lower_distribution(const PossibilityDistribution& pi,
                                  const std::vector<std::string>& order);

bool is_comonotonic(const Cloud& cloud);
/// Whether all cuts {pi > g} and {delta >= g} form one inclusion chain.
bool cuts_nested(const Cloud& cloud);

/// Comonotone pair Flow <= Fhigh over a complete preorder of the space.
class GeneralizedPBox {
 public:
  /// Preorder classes derived from equal (Flow, Fhigh) pairs.
  GeneralizedPBox(OutcomeSpace space, std::vector<Rational> flow, std::vector<Rational> fhigh);
  /// Explicit preorder, lowest class first. Elements in a lower class must not
  /// exceed those above it in either function.
  GeneralizedPBox(OutcomeSpace space, std::vector<Rational> flow, std::vector<Rational> fhigh,
                  std::vector<std::vector<std::size_t>> classes);

  const OutcomeSpace& space() const { return space_; }
  const std::vector<Rational>& flow() const { return flow_; }
  const std::vector<Rational>& fhigh() const { return fhigh_; }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  /// Index of the class containing element i.
  std::size_t rank(std::size_t i) const { return rank_[i]; }

  friend bool operator==(const GeneralizedPBox&, const GeneralizedPBox&) = default;

 private:
  void validate();

  OutcomeSpace space_;
  std::vector<Rational> flow_;
  std::vector<Rational> fhigh_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> rank_;
};

/// Rows Flow_k <= P(A_k) <= Fhigh_k over the nested unions A_k of the
/// preorder classes.
CredalConstraints genpbox_constraints(const GeneralizedPBox& gpb);

/// Requires a comonotonic cloud with a non-empty credal set.
GeneralizedPBox cloud_to_genpbox(const Cloud& cloud);
Cloud genpbox_to_cloud(const GeneralizedPBox& gpb);

/// Focal sets {pi >= g_j and delta < g_j} with masses g_j - g_{j-1}. Exact
/// for comonotonic clouds, an inner approximation otherwise.
MassFunction cloud_to_randomset(const Cloud& cloud);

/// (max(N_pi(A), N_{1-delta}(A)), min(Pi_pi(A), Pi_{1-delta}(A))).
std::pair<Rational, Rational> outer_bounds(const Cloud& cloud, const EventSet& event);

struct CloudViolation {
  EventSet a;
  EventSet b;
  Rational lower_a;
  Rational lower_b;
  Rational lower_union;
  Rational lower_intersection;
};

/// A verified pair with P(A) + P(B) > P(A u B) + P(A n B) for the cloud's
/// lower probability, or nullopt when it is 2-monotone. Tries overlapping
/// cut pairs (Bbar_i, C_j^c) first, then an exhaustive scan.
std::optional<CloudViolation> find_2monotone_violation(const Cloud& cloud, const Caps& caps = {});

}  // namespace clouds
