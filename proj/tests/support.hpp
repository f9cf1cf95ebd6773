#pragma once

// Fixtures, seeded generators and brute-force oracles shared by the tests.
// Oracles here deliberately avoid the library's simplex.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clouds/cloud.hpp"
#include "clouds/continuous.hpp"
#include "clouds/rational.hpp"

namespace clouds::testing {

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

inline OutcomeSpace letters(std::size_t n, char first = 'a') {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>(first + i));
  return OutcomeSpace(labels);
}

inline EventSet ev(const OutcomeSpace& space, const std::string& text) {
  return EventSet::parse(space, text);
}

/// Six-element comonotonic reference cloud on {u,v,w,x,y,z}.
inline Cloud reference_cloud() {
  OutcomeSpace s{"u", "v", "w", "x", "y", "z"};
  return Cloud(s, {q(1, 2), q(1, 2), q(3, 4), q(1, 2), q(0), q(0)},
               {q(3, 4), q(1), q(1), q(3, 4), q(3, 4), q(1, 2)});
}

/// Five-element non-comonotonic cloud on {v,w,x,y,z}.
inline Cloud crossing_cloud() {
  OutcomeSpace s{"v", "w", "x", "y", "z"};
  return Cloud(s, {q(0), q(1, 2), q(1, 4), q(0), q(0)},
               {q(1), q(1), q(1, 2), q(1, 2), q(1, 4)});
}

inline Cloud vacuous_cloud(std::size_t n) {
  return Cloud(letters(n), std::vector<Rational>(n, q(0)), std::vector<Rational>(n, q(1)));
}

/// Random cloud with values k/den; pi reaches 1 and delta reaches 0.
inline Cloud random_cloud(std::mt19937& rng, std::size_t n, int den) {
  std::uniform_int_distribution<int> level(0, den);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Rational> pi(n), delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int p = level(rng);
    std::uniform_int_distribution<int> below(0, p);
    pi[i] = q(p, den);
    delta[i] = q(below(rng), den);
  }
  pi[pick(rng)] = q(1);
  delta[pick(rng)] = q(0);
  return Cloud(letters(n), delta, pi);
}

/// Random cloud whose delta and pi never order two elements oppositely.
/// With `nonempty`, delta is capped by the pi of the rank below, which keeps
/// the credal set non-empty.
inline Cloud random_comonotonic_cloud(std::mt19937& rng, std::size_t n, int den,
                                      bool nonempty = true) {
  // Assign each element a rank, then draw nondecreasing pi and delta per rank.
  std::uniform_int_distribution<int> level(0, den);
  std::vector<int> p(n), d(n);
  for (auto& v : p) v = level(rng);
  for (auto& v : d) v = level(rng);
  std::sort(p.begin(), p.end());
  std::sort(d.begin(), d.end());
  p.back() = den;
  d.front() = 0;
  for (std::size_t i = 0; i < n; ++i) d[i] = std::min(d[i], p[i]);
  if (nonempty) {
    for (std::size_t i = 1; i < n; ++i) d[i] = std::min(d[i], p[i - 1]);
  }
  // min of two nondecreasing sequences is nondecreasing, so comonotone.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Rational> pi(n), delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi[perm[i]] = q(p[i], den);
    delta[perm[i]] = q(d[i], den);
  }
  return Cloud(letters(n), delta, pi);
}

inline std::vector<EventSet> all_events(std::size_t n) {
  std::vector<EventSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.push_back(EventSet::from_mask(n, m));
  return out;
}

/// Solves a square system exactly; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Every vertex of {p >= 0, sum p = 1, lo <= p(E) <= hi}, by trying all
/// choices of n-1 tight inequalities. Exponential; keep n small.
inline std::vector<std::vector<Rational>> vertices(const CredalConstraints& c) {
  const std::size_t n = c.space().size();
  struct Hyper {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Hyper> hs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> a(n);
    a[i] = 1;
    hs.push_back({a, q(0)});
  }
  for (const auto& row : c.rows()) {
    std::vector<Rational> a(n);
    for (auto i : row.event.indices()) a[i] = 1;
    hs.push_back({a, row.lo});
    hs.push_back({a, row.hi});
  }
  auto feasible = [&](const std::vector<Rational>& p) {
    for (const auto& v : p) {
      if (v < 0) return false;
    }
    for (const auto& row : c.rows()) {
      Rational s = 0;
      for (auto i : row.event.indices()) s += p[i];
      if (s < row.lo || s > row.hi) return false;
    }
    return true;
  };
  std::vector<std::vector<Rational>> out;
  const std::size_t k = n - 1;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  auto consider = [&]() {
    std::vector<std::vector<Rational>> a{std::vector<Rational>(n, q(1))};
    std::vector<Rational> b{q(1)};
    for (auto i : idx) {
      a.push_back(hs[i].a);
      b.push_back(hs[i].b);
    }
    if (auto p = solve_square(a, b); p && feasible(*p)) out.push_back(*p);
  };
  if (k == 0) {
    consider();
    return out;
  }
  if (hs.size() < k) return out;
  for (;;) {
    consider();
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == hs.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline std::optional<Rational> vertex_lower(const CredalConstraints& c, const EventSet& a) {
  std::optional<Rational> best;
  for (const auto& p : vertices(c)) {
    Rational s = 0;
    for (auto i : a.indices()) s += p[i];
    if (!best || s < *best) best = s;
  }
  return best;
}


// Piecewise-linear function from (x, y) pairs written as "x:y" tokens.
inline PiecewiseLinear pl(std::initializer_list<std::pair<const char*, const char*>> pts) {
  std::vector<PiecewiseLinear::Point> out;
  for (const auto& [x, y] : pts) out.emplace_back(Rational::parse(x), Rational::parse(y));
  return PiecewiseLinear(std::move(out));
}

// Triangle on [0,4] peaking at 2.
inline PiecewiseLinear triangle_pi() { return pl({{"0", "0"}, {"2", "1"}, {"4", "0"}}); }

// delta is a function of |r - 2| like pi.
inline ContinuousCloud symmetric_continuous() {
  return ContinuousCloud(pl({{"0", "0"}, {"1", "0"}, {"2", "3/4"}, {"3", "0"}, {"4", "0"}}),
                         triangle_pi());
}

// Slopes agree everywhere but the delta peak is lopsided.
inline ContinuousCloud lopsided_continuous() {
  return ContinuousCloud(pl({{"0", "0"}, {"0.5", "0"}, {"2", "0.6"}, {"2.5", "0"}, {"4", "0"}}),
                         triangle_pi());
}

// delta rises on [2,3] while pi falls.
inline ContinuousCloud shifted_continuous(const char* bump = "1/4") {
  return ContinuousCloud(pl({{"0", "0"}, {"2", "0"}, {"3", bump}, {"3.5", "0"}, {"4", "0"}}),
                         triangle_pi());
}

// Random cloud on [0, k] with integer breakpoints and values on a 1/den grid.
inline ContinuousCloud random_continuous(std::mt19937& rng, int k, int den) {
  std::uniform_int_distribution<int> v(0, den);
  std::uniform_int_distribution<int> at(0, k);
  std::vector<PiecewiseLinear::Point> p, d;
  const int peak = at(rng);
  const int floor_at = at(rng);
  for (int x = 0; x <= k; ++x) {
    const Rational pv = x == peak ? Rational(1) : Rational(v(rng), den);
    Rational dv = x == floor_at ? Rational(0) : Rational(v(rng), den);
    dv = std::min(dv, pv);
    p.emplace_back(Rational(x), pv);
    d.emplace_back(Rational(x), dv);
  }
  return ContinuousCloud(PiecewiseLinear(std::move(d)), PiecewiseLinear(std::move(p)));
}

}  // namespace clouds::testing
