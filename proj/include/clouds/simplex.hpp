#pragma once

#include <cstddef>
#include <vector>

#include "clouds/rational.hpp"

namespace clouds::lp {

enum class Relation { LessEq, GreaterEq, Equal };

struct Row {
  std::vector<Rational> coeffs;
  Relation relation;
  Rational rhs;
};

/// minimize objective . x  subject to rows, x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  explicit Problem(std::size_t n) : num_vars(n), objective(n) {}
  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Exact two-phase primal simplex with Bland's rule.
Solution minimize(const Problem& problem);

/// Phase one only.
bool feasible(const Problem& problem);

}  // namespace clouds::lp
