#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "clouds/cloud.hpp"
#include "clouds/credal.hpp"

namespace clouds {

/// Nested strict cuts {pi > g_i} with masses g_{i+1} - g_i.
MassFunction possibility_to_randomset(const PossibilityDistribution& dist);

/// Joint masses q_ij on (F_i, G_j) with fixed marginals; cells where the
/// focal sets are disjoint are forbidden.
class JointMassProblem {
 public:
  JointMassProblem(const MassFunction& rows, const MassFunction& cols);

  const OutcomeSpace& space() const { return space_; }
  const std::vector<std::pair<EventSet, Rational>>& rows() const { return rows_; }
  const std::vector<std::pair<EventSet, Rational>>& cols() const { return cols_; }
  bool forbidden(std::size_t i, std::size_t j) const { return !rows_[i].first.intersects(cols_[j].first); }

 private:
  OutcomeSpace space_;
  std::vector<std::pair<EventSet, Rational>> rows_;
  std::vector<std::pair<EventSet, Rational>> cols_;
};

struct TransportResult {
  Rational value;
  /// witness[i][j] = q_ij; zero on forbidden cells.
  std::vector<std::vector<Rational>> witness;
};

/// Minimum over joint masses of the mass on cells with F_i n G_j inside the
/// event; nullopt when no joint mass exists.
std::optional<TransportResult> transport_lower_bel(const JointMassProblem& problem,
                                                   const EventSet& event);
std::optional<TransportResult> transport_lower_bel(const MassFunction& p1, const MassFunction& p2,
                                                   const EventSet& event);

/// transport_lower_bel over the random sets of pi and 1 - delta.
std::optional<Rational> cloud_lower_via_transport(const Cloud& cloud, const EventSet& event);

}  // namespace clouds
