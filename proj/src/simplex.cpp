#include "clouds/simplex.hpp"

#include <optional>

#include "clouds/errors.hpp"

namespace clouds::lp {

void Problem::add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != num_vars) throw DomainError("constraint row has wrong width");
  rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

class Tableau {
 public:
  explicit Tableau(const Problem& p) : n_(p.num_vars) {
    if (p.objective.size() != n_) throw DomainError("objective has wrong width");
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (const auto& r : p.rows) {
      const bool flip = r.rhs < 0;
      const auto rel = effective(r.relation, flip);
      if (rel != Relation::Equal) ++slacks;
      if (rel != Relation::LessEq) ++artificials;
    }
    first_artificial_ = n_ + slacks;
    width_ = first_artificial_ + artificials;

    std::size_t s = n_;
    std::size_t a = first_artificial_;
    for (const auto& r : p.rows) {
      const bool flip = r.rhs < 0;
      const auto rel = effective(r.relation, flip);
      std::vector<Rational> row(width_ + 1);
      for (std::size_t j = 0; j < n_; ++j) row[j] = flip ? -r.coeffs[j] : r.coeffs[j];
      row[width_] = flip ? -r.rhs : r.rhs;
      if (rel == Relation::LessEq) {
        row[s] = 1;
        basis_.push_back(s++);
      } else {
        if (rel == Relation::GreaterEq) row[s++] = -1;
        row[a] = 1;
        basis_.push_back(a++);
      }
      t_.push_back(std::move(row));
    }
  }

  // Phase one; false when the rows admit no solution.
  bool phase_one() {
    std::vector<Rational> cost(width_);
    for (std::size_t j = first_artificial_; j < width_; ++j) cost[j] = 1;
    load_objective(cost);
    run(width_);
    if (obj_[width_] != 0) return false;  // obj_ holds -value
    drive_out_artificials();
    return true;
  }

  Status phase_two(const std::vector<Rational>& objective) {
    std::vector<Rational> cost(width_);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = objective[j];
    load_objective(cost);
    return run(first_artificial_) ? Status::Optimal : Status::Unbounded;
  }

  Rational value() const { return -obj_[width_]; }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_[i][width_];
    }
    return x;
  }

 private:
  static Relation effective(Relation rel, bool flip) {
    if (!flip || rel == Relation::Equal) return rel;
    return rel == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
  }

  void load_objective(const std::vector<Rational>& cost) {
    obj_.assign(width_ + 1, Rational(0));
    for (std::size_t j = 0; j < width_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Rational cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j) {
        if (t_[i][j] != 0) obj_[j] -= cb * t_[i][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto& v : t_[r]) {
      if (v != 0) v /= p;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      const Rational f = row[c];
      if (f == 0) return;
      for (std::size_t j = 0; j <= width_; ++j) {
        if (t_[r][j] != 0) row[j] -= f * t_[r][j];
      }
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(obj_);
    basis_[r] = c;
  }

  // Columns >= limit never enter. Returns false when unbounded.
  bool run(std::size_t limit) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][*enter] <= 0) continue;
        const Rational ratio = t_[i][width_] / t_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        // Redundant row.
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t n_;
  std::size_t first_artificial_ = 0;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> obj_;
};

}  // namespace

Solution minimize(const Problem& problem) {
  Tableau t(problem);
  Solution s;
  if (!t.phase_one()) {
    s.status = Status::Infeasible;
    return s;
  }
  s.status = t.phase_two(problem.objective);
  if (s.status == Status::Optimal) {
    s.value = t.value();
    s.x = t.primal();
  }
  return s;
}

bool feasible(const Problem& problem) {
  Tableau t(problem);
  return t.phase_one();
}

}  // namespace clouds::lp
