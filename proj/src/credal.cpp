#include "clouds/credal.hpp"

#include "clouds/errors.hpp"
#include "clouds/simplex.hpp"

namespace clouds {

namespace {

lp::Problem simplex_problem(const CredalConstraints& constraints) {
  const std::size_t n = constraints.space().size();
  lp::Problem p(n);
  p.add_row(std::vector<Rational>(n, Rational(1)), lp::Relation::Equal, Rational(1));
  for (const auto& row : constraints.rows()) {
    std::vector<Rational> coeffs(n);
    for (auto i : row.event.indices()) coeffs[i] = 1;
    if (row.lo == row.hi) {
      p.add_row(std::move(coeffs), lp::Relation::Equal, row.lo);
      continue;
    }
    if (row.lo > 0) p.add_row(coeffs, lp::Relation::GreaterEq, row.lo);
    if (row.hi < 1) p.add_row(std::move(coeffs), lp::Relation::LessEq, row.hi);
  }
  return p;
}

void check_event(const CredalConstraints& constraints, const EventSet& event) {
  if (event.universe_size() != constraints.space().size()) {
    throw DomainError("event defined over a different space");
  }
}

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw SizeError(std::string(what) + " limited to " + std::to_string(cap) + " outcomes, got " +
                    std::to_string(n));
  }
}

}  // namespace

std::optional<Rational> lp_lower(const CredalConstraints& constraints, const EventSet& event) {
  check_event(constraints, event);
  auto p = simplex_problem(constraints);
  for (auto i : event.indices()) p.objective[i] = 1;
  const auto s = lp::minimize(p);
  if (s.status != lp::Status::Optimal) return std::nullopt;
  return s.value;
}

std::optional<Rational> lp_upper(const CredalConstraints& constraints, const EventSet& event) {
  check_event(constraints, event);
  const auto low = lp_lower(constraints, event.complement());
  if (!low) return std::nullopt;
  return 1 - *low;
}

bool is_feasible(const CredalConstraints& constraints) {
  return lp::feasible(simplex_problem(constraints));
}

SetFunction::SetFunction(OutcomeSpace space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (space_.size() >= 63 || values_.size() != (std::size_t{1} << space_.size())) {
    throw DomainError("set function needs one value per event");
  }
}

std::optional<SetFunction> lower_prob_function(const CredalConstraints& constraints,
                                               const Caps& caps) {
  const std::size_t n = constraints.space().size();
  check_cap(n, caps.set_function, "set-function materialization");
  if (!is_feasible(constraints)) return std::nullopt;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Rational> values(count);
  values[count - 1] = 1;
  for (std::uint64_t m = 1; m + 1 < count; ++m) {
    const auto v = lp_lower(constraints, EventSet::from_mask(n, m));
    if (!v) return std::nullopt;
    values[m] = *v;
  }
  return SetFunction(constraints.space(), std::move(values));
}

std::optional<MonotonicityViolation> find_2_monotone_violation(const SetFunction& f,
                                                               const Caps& caps) {
  const std::size_t n = f.size();
  check_cap(n, caps.two_monotone, "2-monotonicity scan");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      if (f[a] + f[b] > f[a | b] + f[a & b]) {
        return MonotonicityViolation{EventSet::from_mask(n, a), EventSet::from_mask(n, b)};
      }
    }
  }
  return std::nullopt;
}

std::vector<Rational> mobius_transform(const SetFunction& f) {
  // In-place subset-sum inversion, one outcome at a time.
  std::vector<Rational> m = f.values();
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < m.size(); ++s) {
      if (s & bit) m[s] -= m[s ^ bit];
    }
  }
  return m;
}

SetFunction from_mobius(const OutcomeSpace& space, const std::vector<Rational>& masses) {
  std::vector<Rational> f = masses;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < f.size(); ++s) {
      if (s & bit) f[s] += f[s ^ bit];
    }
  }
  return SetFunction(space, std::move(f));
}

MassFunction::MassFunction(OutcomeSpace space, std::map<EventSet, Rational> focal)
    : space_(std::move(space)), focal_(std::move(focal)) {
  Rational total = 0;
  for (const auto& [set, mass] : focal_) {
    if (set.universe_size() != space_.size()) {
      throw ValidationError("focal set defined over a different space");
    }
    if (set.is_empty()) throw ValidationError("mass assigned to the empty set");
    if (mass <= 0) {
      throw ValidationError("non-positive mass on focal set " + set.to_string(space_));
    }
    total += mass;
  }
  if (total != 1) throw ValidationError("masses sum to " + total.to_string() + ", not 1");
}

Rational bel(const MassFunction& mass, const EventSet& event) {
  Rational total = 0;
  for (const auto& [set, m] : mass.focal()) {
    if (set.is_subset_of(event)) total += m;
  }
  return total;
}

Rational pl(const MassFunction& mass, const EventSet& event) {
  Rational total = 0;
  for (const auto& [set, m] : mass.focal()) {
    if (set.intersects(event)) total += m;
  }
  return total;
}

SetFunction bel_function(const MassFunction& mass, const Caps& caps) {
  const std::size_t n = mass.space().size();
  check_cap(n, caps.set_function, "set-function materialization");
  std::vector<Rational> masses(std::size_t{1} << n);
  for (const auto& [set, m] : mass.focal()) masses[set.to_mask()] += m;
  return from_mobius(mass.space(), masses);
}

}  // namespace clouds
