#include "clouds/cloud.hpp"

#include <algorithm>
#include <set>

#include "clouds/errors.hpp"

namespace clouds {

namespace {

void check_unit(const OutcomeSpace& space, const std::vector<Rational>& values, const char* name) {
  if (values.size() != space.size()) {
    throw ValidationError(std::string(name) + " has " + std::to_string(values.size()) +
                          " values for " + std::to_string(space.size()) + " elements");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > 1) {
      throw ValidationError(std::string(name) + " outside [0,1] at element " + space.label(i));
    }
  }
}

std::vector<Rational> values_from_map(const OutcomeSpace& space,
                                      const std::map<std::string, Rational>& m, const char* name) {
  std::vector<Rational> out(space.size());
  std::vector<bool> seen(space.size(), false);
  for (const auto& [label, v] : m) {
    if (!space.contains(label)) {
      throw ValidationError(std::string(name) + " names unknown element '" + label + "'");
    }
    const auto i = space.index_of(label);
    out[i] = v;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError(std::string(name) + " missing element " + space.label(i));
  }
  return out;
}

EventSet cut(const std::vector<Rational>& f, const Rational& gamma, bool strict) {
  if (gamma < 0 || gamma > 1) throw DomainError("cut level outside [0,1]: " + gamma.to_string());
  EventSet e(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (strict ? f[i] > gamma : f[i] >= gamma) e.insert(i);
  }
  return e;
}

bool vacuous(const ConstraintRow& row) {
  if (row.lo <= 0 && row.hi >= 1) return true;
  if (row.event.is_empty()) return row.lo <= 0;
  if (row.event.is_full()) return row.hi >= 1;
  return false;
}

}  // namespace

PossibilityDistribution::PossibilityDistribution(OutcomeSpace space, std::vector<Rational> pi)
    : space_(std::move(space)), pi_(std::move(pi)) {
  check_unit(space_, pi_, "pi");
  if (std::none_of(pi_.begin(), pi_.end(), [](const Rational& v) { return v == 1; })) {
    throw ValidationError("possibility distribution is not normalized (no element has pi = 1)");
  }
}

PossibilityDistribution PossibilityDistribution::from_map(
    OutcomeSpace space, const std::map<std::string, Rational>& pi) {
  auto values = values_from_map(space, pi, "pi");
  return PossibilityDistribution(std::move(space), std::move(values));
}

Cloud::Cloud(OutcomeSpace space, std::vector<Rational> delta, std::vector<Rational> pi)
    : space_(std::move(space)), delta_(std::move(delta)), pi_(std::move(pi)) {
  check_unit(space_, delta_, "delta");
  check_unit(space_, pi_, "pi");
  for (std::size_t i = 0; i < pi_.size(); ++i) {
    if (delta_[i] > pi_[i]) throw ValidationError("delta exceeds pi at element " + space_.label(i));
  }
  if (std::none_of(pi_.begin(), pi_.end(), [](const Rational& v) { return v == 1; })) {
    throw ValidationError("pi never reaches 1");
  }
  if (std::none_of(delta_.begin(), delta_.end(), [](const Rational& v) { return v == 0; })) {
    throw ValidationError("delta never reaches 0");
  }
}

Cloud Cloud::from_maps(OutcomeSpace space, const std::map<std::string, Rational>& delta,
                       const std::map<std::string, Rational>& pi) {
  auto d = values_from_map(space, delta, "delta");
  auto p = values_from_map(space, pi, "pi");
  return Cloud(std::move(space), std::move(d), std::move(p));
}

LevelSequence::LevelSequence(std::vector<Rational> gammas) : gammas_(std::move(gammas)) {
  if (gammas_.size() < 2 || gammas_.front() != 0 || gammas_.back() != 1) {
    throw ValidationError("level sequence must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < gammas_.size(); ++i) {
    if (!(gammas_[i - 1] < gammas_[i])) throw ValidationError("levels must be strictly increasing");
  }
}

CredalConstraints::CredalConstraints(OutcomeSpace space, std::vector<ConstraintRow> rows)
    : space_(std::move(space)), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.event.universe_size() != space_.size()) {
      throw ValidationError("constraint event defined over a different space");
    }
    if (r.lo < 0 || r.hi > 1 || r.lo > r.hi) {
      throw ValidationError("constraint bounds must satisfy 0 <= lo <= hi <= 1, got [" +
                            r.lo.to_string() + ", " + r.hi.to_string() + "]");
    }
  }
}

CredalConstraints CredalConstraints::merged_with(const CredalConstraints& other) const {
  if (!(space_ == other.space_)) throw DomainError("cannot merge constraints over different spaces");
  auto rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  return CredalConstraints(space_, std::move(rows));
}

LevelSequence level_values(const Cloud& cloud) {
  std::set<Rational> values{Rational(0), Rational(1)};
  values.insert(cloud.delta().begin(), cloud.delta().end());
  values.insert(cloud.pi().begin(), cloud.pi().end());
  return LevelSequence(std::vector<Rational>(values.begin(), values.end()));
}

EventSet upper_cut(const Cloud& cloud, const Rational& gamma, bool strict) {
  return cut(cloud.pi(), gamma, strict);
}

EventSet lower_cut(const Cloud& cloud, const Rational& gamma, bool strict) {
  return cut(cloud.delta(), gamma, strict);
}

CredalConstraints cloud_constraints(const Cloud& cloud) {
  const auto levels = level_values(cloud);
  std::vector<EventSet> lower;  // C_g  = {delta >= g}
  std::vector<EventSet> upper;  // Bbar_g = {pi > g}
  for (const auto& g : levels.values()) {
    lower.push_back(lower_cut(cloud, g, false));
    upper.push_back(upper_cut(cloud, g, true));
  }

  std::vector<ConstraintRow> rows;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Rational bound = 1 - levels[i];

    // P(C_i) <= 1 - g_i; implied lower bound from any Bbar_j inside C_i.
    Rational lo = 0;
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (upper[j].is_subset_of(lower[i])) lo = std::max(lo, 1 - levels[j]);
    }
    ConstraintRow c_row{lower[i], std::min(lo, bound), bound};
    if (!vacuous(c_row)) rows.push_back(std::move(c_row));

    // 1 - g_i <= P(Bbar_i); implied upper bound from any C_j containing it.
    Rational hi = 1;
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (upper[i].is_subset_of(lower[j])) hi = std::min(hi, 1 - levels[j]);
    }
    ConstraintRow b_row{upper[i], bound, std::max(hi, bound)};
    if (!vacuous(b_row)) rows.push_back(std::move(b_row));
  }
  return CredalConstraints(cloud.space(), std::move(rows));
}

std::pair<PossibilityDistribution, PossibilityDistribution> to_possibility_pair(const Cloud& cloud) {
  std::vector<Rational> co(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) co[i] = 1 - cloud.delta(i);
  return {PossibilityDistribution(cloud.space(), cloud.pi()),
          PossibilityDistribution(cloud.space(), std::move(co))};
}

Cloud mirror(const Cloud& cloud) {
  std::vector<Rational> d(cloud.size());
  std::vector<Rational> p(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    d[i] = 1 - cloud.pi(i);
    p[i] = 1 - cloud.delta(i);
  }
  return Cloud(cloud.space(), std::move(d), std::move(p));
}

Cloud fuzzy_cloud(const PossibilityDistribution& dist) {
  return Cloud(dist.space(), std::vector<Rational>(dist.space().size(), Rational(0)),
               dist.values());
}

Rational possibility_measure(const PossibilityDistribution& dist, const EventSet& event) {
  Rational best = 0;
  for (auto i : event.indices()) best = std::max(best, dist[i]);
  return best;
}

Rational necessity_measure(const PossibilityDistribution& dist, const EventSet& event) {
  return 1 - possibility_measure(dist, event.complement());
}

CredalConstraints possibility_constraints(const PossibilityDistribution& dist) {
  std::set<Rational> levels{Rational(0)};
  levels.insert(dist.values().begin(), dist.values().end());
  std::vector<ConstraintRow> rows;
  for (const auto& g : levels) {
    ConstraintRow row{cut(dist.values(), g, true), 1 - g, Rational(1)};
    if (!vacuous(row)) rows.push_back(std::move(row));
  }
  return CredalConstraints(dist.space(), std::move(rows));
}

}  // namespace clouds
