#include "clouds/cloudops.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "clouds/errors.hpp"

namespace clouds {

namespace {

bool nonempty_scan(const std::vector<Rational>& pi, const std::vector<Rational>& delta) {
  const std::size_t n = pi.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pi[a] < pi[b]; });
  // suffix_min[k] = min delta over order[k..n).
  std::vector<Rational> suffix_min(n + 1, Rational(2));
  for (std::size_t k = n; k-- > 0;) suffix_min[k] = std::min(suffix_min[k + 1], delta[order[k]]);
  Rational prefix_max = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (prefix_max < suffix_min[k]) return false;
    prefix_max = std::max(prefix_max, pi[order[k]]);
  }
  return true;
}

std::vector<Rational> complement_values(const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = 1 - v[i];
  return out;
}

// Classes of a comonotone pair, lowest first.
std::vector<std::vector<std::size_t>> joint_classes(const std::vector<Rational>& f,
                                                    const std::vector<Rational>& g) {
  std::map<std::pair<Rational, Rational>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < f.size(); ++i) groups[{f[i], g[i]}].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [_, members] : groups) out.push_back(std::move(members));
  return out;
}

bool opposed(const Rational& f1, const Rational& f2, const Rational& g1, const Rational& g2) {
  return (f1 < f2 && g1 > g2) || (f1 > f2 && g1 < g2);
}

}  // namespace

bool is_nonempty(const Cloud& cloud) { return nonempty_scan(cloud.pi(), cloud.delta()); }

bool pair_nonempty(const PossibilityDistribution& pi1, const PossibilityDistribution& pi2) {
  if (!(pi1.space() == pi2.space())) throw DomainError("distributions over different spaces");
  return nonempty_scan(pi1.values(), complement_values(pi2.values()));
}

Cloud tightest_lower_distribution(const PossibilityDistribution& pi,
                                  const std::vector<std::string>& order) {
  const auto& space = pi.space();
  if (order.size() != space.size()) throw DomainError("order must list every element once");
  std::vector<bool> seen(space.size(), false);
  std::vector<Rational> delta(space.size());
  Rational previous = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto i = space.index_of(order[k]);
    if (seen[i]) throw DomainError("element '" + order[k] + "' listed twice in order");
    seen[i] = true;
    if (k > 0 && pi[i] < previous) {
      throw DomainError("pi decreases along the order at element '" + order[k] + "'");
    }
    delta[i] = k == 0 ? Rational(0) : previous;
    previous = pi[i];
  }
  return Cloud(space, std::move(delta), pi.values());
}

bool is_comonotonic(const Cloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      if (opposed(cloud.delta(i), cloud.delta(j), cloud.pi(i), cloud.pi(j))) return false;
    }
  }
  return true;
}

bool cuts_nested(const Cloud& cloud) {
  std::vector<EventSet> cuts;
  const auto levels = level_values(cloud);
  for (const auto& g : levels.values()) {
    cuts.push_back(upper_cut(cloud, g, true));
    cuts.push_back(lower_cut(cloud, g, false));
  }
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    for (std::size_t j = i + 1; j < cuts.size(); ++j) {
      if (!cuts[i].is_subset_of(cuts[j]) && !cuts[j].is_subset_of(cuts[i])) return false;
    }
  }
  return true;
}

GeneralizedPBox::GeneralizedPBox(OutcomeSpace space, std::vector<Rational> flow,
                                 std::vector<Rational> fhigh)
    : space_(std::move(space)), flow_(std::move(flow)), fhigh_(std::move(fhigh)) {
  if (flow_.size() != space_.size() || fhigh_.size() != space_.size()) {
    throw ValidationError("p-box needs one Flow and one Fhigh value per element");
  }
  classes_ = joint_classes(flow_, fhigh_);
  validate();
}

GeneralizedPBox::GeneralizedPBox(OutcomeSpace space, std::vector<Rational> flow,
                                 std::vector<Rational> fhigh,
                                 std::vector<std::vector<std::size_t>> classes)
    : space_(std::move(space)),
      flow_(std::move(flow)),
      fhigh_(std::move(fhigh)),
      classes_(std::move(classes)) {
  if (flow_.size() != space_.size() || fhigh_.size() != space_.size()) {
    throw ValidationError("p-box needs one Flow and one Fhigh value per element");
  }
  validate();
}

void GeneralizedPBox::validate() {
  const std::size_t n = space_.size();
  bool top = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (flow_[i] < 0 || fhigh_[i] > 1) {
      throw ValidationError("p-box value outside [0,1] at element " + space_.label(i));
    }
    if (flow_[i] > fhigh_[i]) throw ValidationError("Flow exceeds Fhigh at element " + space_.label(i));
    top = top || flow_[i] == 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (opposed(flow_[i], flow_[j], fhigh_[i], fhigh_[j])) {
        throw ValidationError("Flow and Fhigh are not comonotone on elements " + space_.label(i) +
                              ", " + space_.label(j));
      }
    }
  }
  if (!top) throw ValidationError("p-box never reaches Flow = Fhigh = 1");

  rank_.assign(n, n);
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    if (classes_[k].empty()) throw ValidationError("empty preorder class");
    for (auto i : classes_[k]) {
      if (i >= n || rank_[i] != n) throw ValidationError("preorder must list every element once");
      rank_[i] = k;
    }
  }
  if (std::count(rank_.begin(), rank_.end(), n) != 0) {
    throw ValidationError("preorder must list every element once");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rank_[i] < rank_[j] && (flow_[i] > flow_[j] || fhigh_[i] > fhigh_[j])) {
        throw ValidationError("preorder places " + space_.label(i) + " below " + space_.label(j) +
                              " against the p-box values");
      }
      if (rank_[i] == rank_[j] && (flow_[i] != flow_[j] || fhigh_[i] != fhigh_[j])) {
        throw ValidationError("preorder class mixes different p-box values");
      }
    }
  }
}

CredalConstraints genpbox_constraints(const GeneralizedPBox& gpb) {
  const std::size_t n = gpb.space().size();
  std::vector<ConstraintRow> rows;
  EventSet nested(n);
  for (const auto& cls : gpb.classes()) {
    for (auto i : cls) nested.insert(i);
    const auto rep = cls.front();
    ConstraintRow row{nested, gpb.flow()[rep], gpb.fhigh()[rep]};
    if (row.lo == 0 && row.hi == 1) continue;
    if (nested.is_full()) continue;  // P(X) = 1 is implied
    rows.push_back(std::move(row));
  }
  return CredalConstraints(gpb.space(), std::move(rows));
}

GeneralizedPBox cloud_to_genpbox(const Cloud& cloud) {
  if (!is_comonotonic(cloud)) throw DomainError("cloud is not comonotonic");
  if (!is_nonempty(cloud)) throw DomainError("empty credal set");
  const auto classes = joint_classes(cloud.pi(), cloud.delta());
  std::vector<Rational> flow(cloud.size());
  Rational above_min = 1;
  for (std::size_t k = classes.size(); k-- > 0;) {
    for (auto i : classes[k]) flow[i] = above_min;
    for (auto i : classes[k]) above_min = std::min(above_min, cloud.delta(i));
  }
  return GeneralizedPBox(cloud.space(), std::move(flow), cloud.pi(), classes);
}

Cloud genpbox_to_cloud(const GeneralizedPBox& gpb) {
  std::vector<Rational> delta(gpb.space().size());
  Rational below_max = 0;
  for (const auto& cls : gpb.classes()) {
    for (auto i : cls) delta[i] = below_max;
    for (auto i : cls) below_max = std::max(below_max, gpb.flow()[i]);
  }
  return Cloud(gpb.space(), std::move(delta), gpb.fhigh());
}

MassFunction cloud_to_randomset(const Cloud& cloud) {
  const auto levels = level_values(cloud);
  std::map<EventSet, Rational> focal;
  for (std::size_t j = 1; j < levels.size(); ++j) {
    const auto e = upper_cut(cloud, levels[j], false) - lower_cut(cloud, levels[j], false);
    if (e.is_empty()) throw DomainError("empty credal set");
    focal[e] += levels[j] - levels[j - 1];
  }
  return MassFunction(cloud.space(), std::move(focal));
}

std::pair<Rational, Rational> outer_bounds(const Cloud& cloud, const EventSet& event) {
  const auto [pi, co] = to_possibility_pair(cloud);
  return {std::max(necessity_measure(pi, event), necessity_measure(co, event)),
          std::min(possibility_measure(pi, event), possibility_measure(co, event))};
}

std::optional<CloudViolation> find_2monotone_violation(const Cloud& cloud, const Caps& caps) {
  const auto constraints = cloud_constraints(cloud);
  if (!is_feasible(constraints)) throw DomainError("empty credal set");
  const auto low = [&](const EventSet& e) { return *lp_lower(constraints, e); };
  const auto check = [&](const EventSet& a, const EventSet& b) -> std::optional<CloudViolation> {
    CloudViolation v{a, b, low(a), low(b), low(a | b), low(a & b)};
    if (v.lower_a + v.lower_b > v.lower_union + v.lower_intersection) return v;
    return std::nullopt;
  };

  const auto levels = level_values(cloud);
  for (const auto& gi : levels.values()) {
    const auto upper = upper_cut(cloud, gi, true);
    for (const auto& gj : levels.values()) {
      const auto lower = lower_cut(cloud, gj, false);
      const auto meet = upper & lower;
      if (meet == upper || meet == lower || meet.is_empty() || (upper | lower).is_full()) continue;
      if (auto v = check(upper, lower.complement())) return v;
    }
  }

  const auto f = lower_prob_function(constraints, caps);
  if (const auto pair = find_2_monotone_violation(*f, caps)) return check(pair->a, pair->b);
  return std::nullopt;
}

}  // namespace clouds
