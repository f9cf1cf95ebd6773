#include "clouds/intervals.hpp"

#include <algorithm>

#include "clouds/errors.hpp"
#include "clouds/simplex.hpp"

namespace clouds {

namespace {

std::vector<std::size_t> order_indices(const OutcomeSpace& space,
                                       const std::vector<std::string>& order) {
  if (order.size() != space.size()) throw DomainError("order must list every element once");
  std::vector<std::size_t> out;
  std::vector<bool> seen(space.size(), false);
  for (const auto& label : order) {
    const auto i = space.index_of(label);
    if (seen[i]) throw DomainError("element '" + label + "' listed twice in order");
    seen[i] = true;
    out.push_back(i);
  }
  return out;
}

// max sum of p over `members` subject to the interval rows and the chain
// p(ext[0]) <= ... <= p(ext[n-1]).
std::optional<Rational> chain_max(const ProbabilityInterval& iv, const std::vector<std::size_t>& ext,
                                  const std::vector<bool>& members) {
  const std::size_t n = iv.size();
  lp::Problem p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (members[i]) p.objective[i] = -1;
  }
  p.add_row(std::vector<Rational>(n, Rational(1)), lp::Relation::Equal, Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n);
    e[i] = 1;
    if (iv.lower()[i] > 0) p.add_row(e, lp::Relation::GreaterEq, iv.lower()[i]);
    p.add_row(std::move(e), lp::Relation::LessEq, iv.upper()[i]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<Rational> d(n);
    d[ext[k]] = 1;
    d[ext[k + 1]] = -1;
    p.add_row(std::move(d), lp::Relation::LessEq, Rational(0));
  }
  const auto s = lp::minimize(p);
  if (s.status != lp::Status::Optimal) return std::nullopt;
  return -s.value;
}

PossibilityDistribution aggregate(const ProbabilityInterval& iv,
                                  const std::vector<ExtensionPossibilities>& table, bool upper) {
  std::optional<std::vector<Rational>> best;
  for (const auto& row : table) {
    const auto& values = upper ? row.upper : row.lower;
    if (!values) continue;
    if (!best) {
      best = *values;
      continue;
    }
    for (std::size_t i = 0; i < iv.size(); ++i) (*best)[i] = std::max((*best)[i], (*values)[i]);
  }
  if (!best) throw DomainError("no linear extension is compatible with the intervals");
  return PossibilityDistribution(iv.space(), std::move(*best));
}

}  // namespace

ProbabilityInterval::ProbabilityInterval(OutcomeSpace space, std::vector<Rational> lower,
                                         std::vector<Rational> upper)
    : space_(std::move(space)), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != space_.size() || upper_.size() != space_.size()) {
    throw ValidationError("probability intervals need one lower and one upper bound per element");
  }
  Rational sum_lower = 0, sum_upper = 0;
  for (std::size_t i = 0; i < space_.size(); ++i) {
    if (lower_[i] < 0 || upper_[i] > 1 || lower_[i] > upper_[i]) {
      throw ValidationError("interval bounds must satisfy 0 <= l <= u <= 1 at element " +
                            space_.label(i));
    }
    sum_lower += lower_[i];
    sum_upper += upper_[i];
  }
  if (sum_lower > 1) throw ValidationError("lower bounds sum above 1");
  if (sum_upper < 1) throw ValidationError("upper bounds sum below 1");
}

CredalConstraints interval_constraints(const ProbabilityInterval& intervals) {
  std::vector<ConstraintRow> rows;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals.lower()[i] == 0 && intervals.upper()[i] == 1) continue;
    rows.push_back({EventSet::from_indices(intervals.size(), {i}), intervals.lower()[i],
                    intervals.upper()[i]});
  }
  return CredalConstraints(intervals.space(), std::move(rows));
}

IntervalPartialOrder::IntervalPartialOrder(std::size_t n,
                                           std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : n_(n), pairs_(std::move(pairs)), below_(n * n, false) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (const auto& [x, y] : pairs_) {
    if (x >= n || y >= n || x == y) throw DomainError("invalid precedence pair");
    below_[x * n + y] = true;
  }
  for (const auto& [x, y] : pairs_) {
    if (below_[y * n + x]) throw DomainError("precedence pairs contain a cycle");
  }
}

IntervalPartialOrder interval_partial_order(const ProbabilityInterval& intervals) {
  const std::size_t n = intervals.size();
  const auto& l = intervals.lower();
  const auto& u = intervals.upper();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && u[x] <= l[y] && !(u[y] <= l[x])) pairs.emplace_back(x, y);
    }
  }
  return IntervalPartialOrder(n, std::move(pairs));
}

void for_each_linear_extension(const IntervalPartialOrder& order,
                               const std::function<bool(const std::vector<std::size_t>&)>& visit,
                               const Caps& caps) {
  const std::size_t n = order.size();
  if (n > caps.linear_extensions) {
    throw SizeError("linear extension enumeration limited to " +
                    std::to_string(caps.linear_extensions) + " elements, got " + std::to_string(n));
  }
  std::vector<std::size_t> prefix;
  std::vector<bool> placed(n, false);
  // Number of unplaced predecessors per element.
  std::vector<std::size_t> pending(n, 0);
  for (const auto& [x, y] : order.pairs()) ++pending[y];

  std::function<bool()> extend = [&]() -> bool {
    if (prefix.size() == n) return visit(prefix);
    for (std::size_t x = 0; x < n; ++x) {
      if (placed[x] || pending[x] != 0) continue;
      placed[x] = true;
      prefix.push_back(x);
      for (std::size_t y = 0; y < n; ++y) {
        if (order.precedes(x, y)) --pending[y];
      }
      const bool more = extend();
      for (std::size_t y = 0; y < n; ++y) {
        if (order.precedes(x, y)) ++pending[y];
      }
      prefix.pop_back();
      placed[x] = false;
      if (!more) return false;
    }
    return true;
  };
  extend();
}

std::vector<std::vector<std::size_t>> linear_extensions(const IntervalPartialOrder& order,
                                                        const Caps& caps) {
  std::vector<std::vector<std::size_t>> out;
  for_each_linear_extension(
      order,
      [&](const std::vector<std::size_t>& ext) {
        out.push_back(ext);
        return true;
      },
      caps);
  return out;
}

std::vector<ExtensionPossibilities> md_extension_table(const ProbabilityInterval& intervals,
                                                       const Caps& caps) {
  const std::size_t n = intervals.size();
  std::vector<ExtensionPossibilities> table;
  for_each_linear_extension(
      interval_partial_order(intervals),
      [&](const std::vector<std::size_t>& ext) {
        ExtensionPossibilities row{ext, std::vector<Rational>(n), std::vector<Rational>(n)};
        for (std::size_t k = 0; k < n && row.upper; ++k) {
          std::vector<bool> up(n, false), down(n, false);
          for (std::size_t j = 0; j <= k; ++j) up[ext[j]] = true;
          for (std::size_t j = k; j < n; ++j) down[ext[j]] = true;
          const auto a = chain_max(intervals, ext, up);
          const auto b = chain_max(intervals, ext, down);
          if (!a || !b) {
            row.upper.reset();
            row.lower.reset();
            break;
          }
          (*row.upper)[ext[k]] = *a;
          (*row.lower)[ext[k]] = *b;
        }
        table.push_back(std::move(row));
        return true;
      },
      caps);
  return table;
}

PossibilityDistribution md_upper_possibility(const ProbabilityInterval& intervals,
                                             const Caps& caps) {
  return aggregate(intervals, md_extension_table(intervals, caps), true);
}

PossibilityDistribution md_lower_possibility(const ProbabilityInterval& intervals,
                                             const Caps& caps) {
  return aggregate(intervals, md_extension_table(intervals, caps), false);
}

Cloud intervals_to_cloud(const ProbabilityInterval& intervals, const Caps& caps) {
  const auto table = md_extension_table(intervals, caps);
  const auto pi = aggregate(intervals, table, true);
  const auto pi_delta = aggregate(intervals, table, false);
  std::vector<Rational> delta(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) delta[i] = 1 - pi_delta[i];
  return Cloud(intervals.space(), std::move(delta), pi.values());
}

GeneralizedPBox intervals_to_genpbox(const ProbabilityInterval& intervals,
                                     const std::vector<std::string>& order) {
  const auto idx = order_indices(intervals.space(), order);
  const std::size_t n = idx.size();
  const auto& l = intervals.lower();
  const auto& u = intervals.upper();
  Rational total_l = 0, total_u = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total_l += l[i];
    total_u += u[i];
  }
  std::vector<Rational> flow(n), fhigh(n);
  Rational in_l = 0, in_u = 0;
  for (std::size_t k = 0; k < n; ++k) {
    in_l += l[idx[k]];
    in_u += u[idx[k]];
    flow[idx[k]] = std::max(in_l, 1 - (total_u - in_u));
    fhigh[idx[k]] = std::min(in_u, 1 - (total_l - in_l));
  }
  std::vector<std::vector<std::size_t>> classes;
  for (auto i : idx) classes.push_back({i});
  return GeneralizedPBox(intervals.space(), std::move(flow), std::move(fhigh), std::move(classes));
}

CredalConstraints multi_order_intersection(const ProbabilityInterval& intervals,
                                           const std::vector<std::vector<std::string>>& orders) {
  CredalConstraints out(intervals.space());
  for (const auto& order : orders) {
    out = out.merged_with(genpbox_constraints(intervals_to_genpbox(intervals, order)));
  }
  return out;
}

}  // namespace clouds
