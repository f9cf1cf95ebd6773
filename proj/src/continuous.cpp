#include "clouds/continuous.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "clouds/errors.hpp"

namespace clouds {

namespace {

using Pred = std::function<bool(const Rational&)>;

// Critical points split [front, back] into points and open gaps on which
// `pred` is constant; the matching pieces are glued back into intervals.
IntervalUnion build_set(const std::set<Rational>& critical, const Pred& pred) {
  std::vector<Interval> parts;
  bool open_run = false;
  auto take = [&](Interval piece, bool in) {
    if (!in) {
      open_run = false;
      return;
    }
    if (open_run) {
      parts.back().hi = piece.hi;
      parts.back().hi_closed = piece.hi_closed;
    } else {
      parts.push_back(piece);
      open_run = true;
    }
  };
  const std::vector<Rational> pts(critical.begin(), critical.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    take(Interval{pts[i], pts[i], true, true}, pred(pts[i]));
    if (i + 1 < pts.size()) {
      take(Interval{pts[i], pts[i + 1], false, false}, pred((pts[i] + pts[i + 1]) / 2));
    }
  }
  return IntervalUnion(std::move(parts));
}

std::vector<Rational> crossings(const PiecewiseLinear& f, const Rational& level) {
  std::vector<Rational> out;
  const auto& p = f.points();
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const auto& [x0, v0] = p[k];
    const auto& [x1, v1] = p[k + 1];
    if ((v0 < level && level < v1) || (v1 < level && level < v0)) {
      out.push_back(x0 + (level - v0) * (x1 - x0) / (v1 - v0));
    }
  }
  return out;
}

void add_breakpoints(std::set<Rational>& s, const PiecewiseLinear& f) {
  for (const auto& [x, v] : f.points()) s.insert(x);
}

Rational floor_to(const Rational& v, std::size_t n) {
  const mpq_class scaled = v.raw() * static_cast<unsigned long>(n);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(mpq_class(q, static_cast<unsigned long>(n)));
}

Rational ceil_to(const Rational& v, std::size_t n) {
  const mpq_class scaled = v.raw() * static_cast<unsigned long>(n);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(mpq_class(q, static_cast<unsigned long>(n)));
}

void check_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw DomainError("alpha must lie in (0,1], got " + alpha.to_string());
}

// inf{t : f(t) >= alpha} for nondecreasing f with f(hi) >= alpha.
Rational pseudo_inverse(const PiecewiseLinear& f, const Rational& alpha) {
  const auto& p = f.points();
  if (p.front().second >= alpha) return p.front().first;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k].second >= alpha) {
      const auto& [x0, v0] = p[k - 1];
      const auto& [x1, v1] = p[k];
      return x0 + (alpha - v0) * (x1 - x0) / (v1 - v0);
    }
  }
  throw DomainError("function never reaches " + alpha.to_string());
}

// Measure of {alpha in (0,1] : inf{s : f(s) >= alpha} <= t}, walking the
// increasing pieces of f in alpha-space.
Rational inverse_measure(const PiecewiseLinear& f, const Rational& t) {
  const auto& p = f.points();
  if (t < p.front().first) return 0;
  Rational total = std::min(p.front().second, Rational(1));
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const auto& [x0, v0] = p[k];
    const auto& [x1, v1] = p[k + 1];
    if (!(v0 < v1)) continue;
    if (t >= x1) {
      total += v1 - v0;
    } else if (t > x0) {
      total += (t - x0) * (v1 - v0) / (x1 - x0);
    }
  }
  return total;
}

void check_pbox(const PiecewiseLinear& flow, const PiecewiseLinear& fhigh) {
  if (flow.lo() != fhigh.lo() || flow.hi() != fhigh.hi()) {
    throw ValidationError("p-box bounds must share their support");
  }
  if (!flow.nondecreasing() || !fhigh.nondecreasing()) {
    throw ValidationError("p-box bounds must be nondecreasing");
  }
  std::set<Rational> xs;
  add_breakpoints(xs, flow);
  add_breakpoints(xs, fhigh);
  for (const auto& x : xs) {
    if (flow(x) > fhigh(x)) throw ValidationError("Flow exceeds Fhigh at " + x.to_string());
  }
  if (flow(flow.hi()) != 1) throw ValidationError("Flow must reach 1 at the right end");
}

PiecewiseLinear reflect(const PiecewiseLinear& f) {
  std::vector<PiecewiseLinear::Point> pts;
  for (auto it = f.points().rbegin(); it != f.points().rend(); ++it) pts.emplace_back(-it->first, it->second);
  return PiecewiseLinear(std::move(pts));
}

PiecewiseLinear running_max(const PiecewiseLinear& f) {
  const auto& p = f.points();
  std::vector<PiecewiseLinear::Point> out{p.front()};
  Rational m = p.front().second;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const auto& [x0, v0] = p[k];
    const auto& [x1, v1] = p[k + 1];
    if (v1 <= m) {
      out.emplace_back(x1, m);
      continue;
    }
    if (v0 < m) out.emplace_back(x0 + (m - v0) * (x1 - x0) / (v1 - v0), m);
    out.emplace_back(x1, v1);
    m = v1;
  }
  return PiecewiseLinear(std::move(out));
}

PiecewiseLinear combine(const PiecewiseLinear& a, const PiecewiseLinear& b,
                        const std::function<Rational(const Rational&, const Rational&)>& op) {
  std::set<Rational> xs;
  add_breakpoints(xs, a);
  add_breakpoints(xs, b);
  std::vector<PiecewiseLinear::Point> pts;
  for (const auto& x : xs) pts.emplace_back(x, op(a(x), b(x)));
  return PiecewiseLinear(std::move(pts));
}

Rational cdf_at(const PiecewiseLinear& cdf, const Rational& t) {
  if (t <= cdf.lo()) return 0;
  if (t >= cdf.hi()) return 1;
  return cdf(t);
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ValidationError("piecewise-linear function needs at least two points");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (k > 0 && !(points_[k - 1].first < points_[k].first)) {
      throw ValidationError("breakpoints must be strictly increasing");
    }
    if (points_[k].second < 0 || points_[k].second > 1) {
      throw ValidationError("value outside [0,1] at x = " + points_[k].first.to_string());
    }
  }
}

Rational PiecewiseLinear::operator()(const Rational& t) const {
  if (t < lo() || t > hi()) throw DomainError("x = " + t.to_string() + " outside the support");
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](const Rational& x, const Point& p) { return x < p.first; });
  if (it == points_.end()) return points_.back().second;
  const auto& [x1, v1] = *it;
  const auto& [x0, v0] = *std::prev(it);
  return v0 + (t - x0) * (v1 - v0) / (x1 - x0);
}

Rational PiecewiseLinear::max() const {
  Rational m = points_.front().second;
  for (const auto& [x, v] : points_) m = std::max(m, v);
  return m;
}

Rational PiecewiseLinear::min() const {
  Rational m = points_.front().second;
  for (const auto& [x, v] : points_) m = std::min(m, v);
  return m;
}

bool PiecewiseLinear::nondecreasing() const {
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (points_[k].second < points_[k - 1].second) return false;
  }
  return true;
}

bool Interval::contains(const Rational& t) const {
  const bool above = lo_closed ? t >= lo : t > lo;
  const bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

std::string Interval::to_string() const {
  return std::string(lo_closed ? "[" : "(") + lo.to_string() + "," + hi.to_string() +
         (hi_closed ? "]" : ")");
}

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) {
    return i.lo > i.hi || (i.lo == i.hi && !(i.lo_closed && i.hi_closed));
  });
  std::set<Rational> critical;
  for (const auto& i : parts) {
    critical.insert(i.lo);
    critical.insert(i.hi);
  }
  // Sorted and non-touching input passes through unchanged.
  bool normal = true;
  for (std::size_t k = 1; k < parts.size() && normal; ++k) {
    const auto& a = parts[k - 1];
    const auto& b = parts[k];
    normal = a.hi < b.lo || (a.hi == b.lo && !a.hi_closed && !b.lo_closed);
  }
  if (normal) {
    parts_ = std::move(parts);
    return;
  }
  parts_ = build_set(critical, [&parts](const Rational& t) {
             return std::any_of(parts.begin(), parts.end(), [&t](const Interval& i) { return i.contains(t); });
           }).parts_;
}

bool IntervalUnion::contains(const Rational& t) const {
  return std::any_of(parts_.begin(), parts_.end(), [&t](const Interval& i) { return i.contains(t); });
}

Rational IntervalUnion::measure() const {
  Rational total = 0;
  for (const auto& i : parts_) total += i.hi - i.lo;
  return total;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::set<Rational> critical;
  for (const auto* u : {this, &other}) {
    for (const auto& i : u->parts_) {
      critical.insert(i.lo);
      critical.insert(i.hi);
    }
  }
  return build_set(critical, [&](const Rational& t) { return contains(t) && other.contains(t); });
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::complement(const Rational& lo, const Rational& hi) const {
  std::set<Rational> critical{lo, hi};
  for (const auto& i : parts_) {
    if (i.lo > lo && i.lo < hi) critical.insert(i.lo);
    if (i.hi > lo && i.hi < hi) critical.insert(i.hi);
  }
  return build_set(critical, [&](const Rational& t) { return !contains(t); });
}

std::string IntervalUnion::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (const auto& i : parts_) {
    if (!out.empty()) out += " U ";
    out += i.to_string();
  }
  return out;
}

IntervalUnion level_set(const PiecewiseLinear& f, Compare cmp, const Rational& level) {
  std::set<Rational> critical;
  add_breakpoints(critical, f);
  for (const auto& x : crossings(f, level)) critical.insert(x);
  return build_set(critical, [&](const Rational& t) {
    const Rational v = f(t);
    switch (cmp) {
      case Compare::Less: return v < level;
      case Compare::LessEq: return v <= level;
      case Compare::Equal: return v == level;
      case Compare::GreaterEq: return v >= level;
      case Compare::Greater: return v > level;
    }
    return false;
  });
}

ContinuousCloud::ContinuousCloud(PiecewiseLinear delta, PiecewiseLinear pi)
    : delta_(std::move(delta)), pi_(std::move(pi)) {
  if (delta_.lo() != pi_.lo() || delta_.hi() != pi_.hi()) {
    throw ValidationError("delta and pi must share their support");
  }
  for (const auto& x : breakpoints()) {
    if (delta_(x) > pi_(x)) throw ValidationError("delta exceeds pi at x = " + x.to_string());
  }
  if (pi_.max() != 1) throw ValidationError("pi never reaches 1");
  if (delta_.min() != 0) throw ValidationError("delta never reaches 0");
}

std::vector<Rational> ContinuousCloud::breakpoints() const {
  std::set<Rational> xs;
  add_breakpoints(xs, delta_);
  add_breakpoints(xs, pi_);
  return {xs.begin(), xs.end()};
}

IntervalUnion alpha_focal(const ContinuousCloud& cc, const Rational& alpha) {
  check_alpha(alpha);
  return level_set(cc.pi(), Compare::GreaterEq, alpha)
      .intersect(level_set(cc.delta(), Compare::Less, alpha));
}

EventSet Discretization::event_of(const IntervalUnion& region) const {
  EventSet e(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const IntervalUnion cell({cells[i]});
    const auto common = cell.intersect(region);
    if (common == cell) {
      e.insert(i);
    } else if (!common.is_empty()) {
      throw DomainError("region " + region.to_string() + " splits cell " + cells[i].to_string());
    }
  }
  return e;
}

Discretization discretize(const ContinuousCloud& cc, std::size_t n) {
  if (n == 0) throw DomainError("number of levels must be positive");
  std::set<Rational> critical;
  for (const auto& x : cc.breakpoints()) critical.insert(x);
  for (std::size_t k = 0; k <= n; ++k) {
    const Rational level(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
    for (const auto* f : {&cc.pi(), &cc.delta()}) {
      for (const auto& x : crossings(*f, level)) critical.insert(x);
    }
  }

  using Key = std::tuple<Rational, Rational, Rational, Rational>;
  auto key_at = [&](const Rational& t) {
    const Rational p = cc.pi()(t);
    const Rational d = cc.delta()(t);
    return Key{ceil_to(p, n), floor_to(d, n), floor_to(p, n), ceil_to(d, n)};
  };

  std::vector<Interval> cells;
  std::vector<Key> keys;
  auto take = [&](Interval piece, Key key) {
    if (!keys.empty() && keys.back() == key) {
      cells.back().hi = piece.hi;
      cells.back().hi_closed = piece.hi_closed;
    } else {
      cells.push_back(piece);
      keys.push_back(std::move(key));
    }
  };
  const std::vector<Rational> pts(critical.begin(), critical.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    take(Interval{pts[i], pts[i], true, true}, key_at(pts[i]));
    if (i + 1 < pts.size()) {
      take(Interval{pts[i], pts[i + 1], false, false}, key_at((pts[i] + pts[i + 1]) / 2));
    }
  }

  std::vector<std::string> labels;
  std::vector<Rational> outer_pi, outer_delta, inner_pi, inner_delta;
  bool inner_ok = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    labels.push_back(cells[i].to_string());
    const auto& [pu, dd, pd, du] = keys[i];
    outer_pi.push_back(pu);
    outer_delta.push_back(dd);
    inner_pi.push_back(pd);
    inner_delta.push_back(du);
    if (du > pd) inner_ok = false;
  }
  OutcomeSpace space(labels);
  Cloud outer(space, std::move(outer_delta), std::move(outer_pi));
  std::optional<Cloud> inner;
  if (inner_ok) inner.emplace(space, std::move(inner_delta), std::move(inner_pi));
  return Discretization{std::move(cells), std::move(space), std::move(outer), std::move(inner)};
}

Interval pbox_focal(const PiecewiseLinear& flow, const PiecewiseLinear& fhigh, const Rational& alpha) {
  check_pbox(flow, fhigh);
  check_alpha(alpha);
  return Interval{pseudo_inverse(fhigh, alpha), pseudo_inverse(flow, alpha), true, true};
}

std::pair<Rational, Rational> pbox_focal_cdf_bounds(const PiecewiseLinear& flow,
                                                    const PiecewiseLinear& fhigh,
                                                    const Rational& t) {
  check_pbox(flow, fhigh);
  return {inverse_measure(flow, t), inverse_measure(fhigh, t)};
}

PiecewiseLinear ThinCloudCdfs::mixture(const Rational& lambda) const {
  if (lambda < 0 || lambda > 1) throw DomainError("mixture weight outside [0,1]");
  return combine(fplus, fminus, [&lambda](const Rational& a, const Rational& b) {
    return lambda * a + (1 - lambda) * b;
  });
}

ThinCloudCdfs thin_cloud_cdfs(const PiecewiseLinear& pi, bool unimodal) {
  if (pi.max() != 1) throw ValidationError("pi never reaches 1");
  if (pi(pi.lo()) != 0 || pi(pi.hi()) != 0) {
    throw ValidationError("pi must vanish at both ends of its support");
  }
  if (unimodal) {
    const auto& p = pi.points();
    bool falling = false;
    for (std::size_t k = 1; k < p.size(); ++k) {
      if (p[k].second < p[k - 1].second) falling = true;
      if (falling && p[k].second > p[k - 1].second) throw ValidationError("pi is not unimodal");
    }
  }
  const PiecewiseLinear fplus = running_max(pi);
  const PiecewiseLinear from_right = reflect(running_max(reflect(pi)));
  std::vector<PiecewiseLinear::Point> pts;
  for (const auto& [x, v] : from_right.points()) pts.emplace_back(x, 1 - v);
  return ThinCloudCdfs{fplus, PiecewiseLinear(std::move(pts))};
}

Rational cdf_probability(const PiecewiseLinear& cdf, const IntervalUnion& region) {
  if (cdf(cdf.lo()) != 0 || cdf(cdf.hi()) != 1 || !cdf.nondecreasing()) {
    throw ValidationError("not a continuous CDF on its support");
  }
  Rational total = 0;
  for (const auto& i : region.parts()) total += cdf_at(cdf, i.hi) - cdf_at(cdf, i.lo);
  return total;
}

Comonotonicity comonotonicity_continuous(const ContinuousCloud& cc) {
  const auto xs = cc.breakpoints();
  const auto& d = cc.delta();
  const auto& p = cc.pi();

  bool weak = true;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const int sd = (d(xs[k + 1]) - d(xs[k])).sign();
    const int sp = (p(xs[k + 1]) - p(xs[k])).sign();
    if (sd * sp < 0) weak = false;
  }

  // A violating pair r, s has delta(r) < delta(s) and pi(r) > pi(s). On each
  // product of pieces both gaps are affine, so min of the two peaks at a corner
  // or where the gaps are equal on an edge.
  auto gaps = [&](const Rational& r, const Rational& s) {
    return std::pair{d(s) - d(r), p(r) - p(s)};
  };
  auto violates = [&](const Rational& r, const Rational& s) {
    const auto [f, g] = gaps(r, s);
    return f > 0 && g > 0;
  };
  for (std::size_t a = 0; a + 1 < xs.size(); ++a) {
    for (std::size_t b = 0; b + 1 < xs.size(); ++b) {
      const std::pair<Rational, Rational> corners[4] = {
          {xs[a], xs[b]}, {xs[a + 1], xs[b]}, {xs[a + 1], xs[b + 1]}, {xs[a], xs[b + 1]}};
      for (int c = 0; c < 4; ++c) {
        const auto& [r0, s0] = corners[c];
        const auto& [r1, s1] = corners[(c + 1) % 4];
        if (violates(r0, s0)) return weak ? Comonotonicity::WeaklyComonotonic : Comonotonicity::Neither;
        const auto [f0, g0] = gaps(r0, s0);
        const auto [f1, g1] = gaps(r1, s1);
        const Rational h0 = f0 - g0;
        const Rational h1 = f1 - g1;
        if (h0.sign() * h1.sign() < 0) {
          const Rational w = h0 / (h0 - h1);
          if (violates(r0 + w * (r1 - r0), s0 + w * (s1 - s0))) {
            return weak ? Comonotonicity::WeaklyComonotonic : Comonotonicity::Neither;
          }
        }
      }
    }
  }
  return Comonotonicity::Comonotonic;
}

std::string to_string(Comonotonicity c) {
  switch (c) {
    case Comonotonicity::Comonotonic: return "comonotonic";
    case Comonotonicity::WeaklyComonotonic: return "weakly_comonotonic";
    case Comonotonicity::Neither: return "neither";
  }
  return "neither";
}

}  // namespace clouds
