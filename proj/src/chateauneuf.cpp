#include "clouds/chateauneuf.hpp"

#include <set>

#include "clouds/errors.hpp"
#include "clouds/simplex.hpp"

namespace clouds {

MassFunction possibility_to_randomset(const PossibilityDistribution& dist) {
  std::set<Rational> levels{Rational(0), Rational(1)};
  levels.insert(dist.values().begin(), dist.values().end());
  const std::vector<Rational> g(levels.begin(), levels.end());
  std::map<EventSet, Rational> focal;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    EventSet cut(dist.space().size());
    for (std::size_t x = 0; x < dist.space().size(); ++x) {
      if (dist[x] > g[i]) cut.insert(x);
    }
    focal[cut] += g[i + 1] - g[i];
  }
  return MassFunction(dist.space(), std::move(focal));
}

JointMassProblem::JointMassProblem(const MassFunction& rows, const MassFunction& cols)
    : space_(rows.space()),
      rows_(rows.focal().begin(), rows.focal().end()),
      cols_(cols.focal().begin(), cols.focal().end()) {
  if (!(rows.space() == cols.space())) throw DomainError("mass functions over different spaces");
}

std::optional<TransportResult> transport_lower_bel(const JointMassProblem& problem,
                                                   const EventSet& event) {
  if (event.universe_size() != problem.space().size()) {
    throw DomainError("event defined over a different space");
  }
  const auto& rows = problem.rows();
  const auto& cols = problem.cols();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!problem.forbidden(i, j)) cells.emplace_back(i, j);
    }
  }

  lp::Problem p(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto [i, j] = cells[k];
    if ((rows[i].first & cols[j].first).is_subset_of(event)) p.objective[k] = 1;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Rational> coeffs(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k].first == i) coeffs[k] = 1;
    }
    p.add_row(std::move(coeffs), lp::Relation::Equal, rows[i].second);
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<Rational> coeffs(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k].second == j) coeffs[k] = 1;
    }
    p.add_row(std::move(coeffs), lp::Relation::Equal, cols[j].second);
  }

  const auto s = lp::minimize(p);
  if (s.status != lp::Status::Optimal) return std::nullopt;
  TransportResult out{s.value, std::vector<std::vector<Rational>>(
                                   rows.size(), std::vector<Rational>(cols.size()))};
  for (std::size_t k = 0; k < cells.size(); ++k) out.witness[cells[k].first][cells[k].second] = s.x[k];
  return out;
}

std::optional<TransportResult> transport_lower_bel(const MassFunction& p1, const MassFunction& p2,
                                                   const EventSet& event) {
  return transport_lower_bel(JointMassProblem(p1, p2), event);
}

std::optional<Rational> cloud_lower_via_transport(const Cloud& cloud, const EventSet& event) {
  const auto [pi, co] = to_possibility_pair(cloud);
  const auto r = transport_lower_bel(possibility_to_randomset(pi), possibility_to_randomset(co), event);
  if (!r) return std::nullopt;
  return r->value;
}

}  // namespace clouds
