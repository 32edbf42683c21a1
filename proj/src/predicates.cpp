#include "plspan/predicates.hpp"

#include <optional>

namespace plspan {
namespace {

// Intersects the running interval [lo, hi] with {t : p + t k (op) 0} where
// op is >= 0.  Returns false when the interval becomes empty.
bool clamp_ge(const Rational& p, const Rational& k, Rational& lo,
              Rational& hi) {
  if (k.is_zero()) return p.sign() >= 0;
  Rational bound = -p / k;
  if (k.sign() > 0) {
    if (bound > lo) lo = bound;
  } else {
    if (bound < hi) hi = bound;
  }
  return lo <= hi;
}

}  // namespace

int orient2d(const Vec2Q& a, const Vec2Q& b, const Vec2Q& c) {
  return cross2(b - a, c - a).sign();
}

Rational segment_param(const PointD& p, const PointD& a, const PointD& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Rational d = b(i) - a(i);
    if (!d.is_zero()) return (p(i) - a(i)) / d;
  }
  throw Error("segment_param: degenerate segment");
}

bool point_on_segment(const PointD& p, const PointD& a, const PointD& b) {
  if (points_equal(a, b)) return points_equal(p, a);
  Rational t = segment_param(p, a, b);
  if (t.sign() < 0 || t > Rational(1)) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) + t * (b(i) - a(i)) != p(i)) return false;
  return true;
}

SegSegHit seg_seg_intersect(const PointD& a, const PointD& b, const PointD& c,
                            const PointD& d) {
  SegSegHit hit;
  const bool ab_degen = points_equal(a, b);
  const bool cd_degen = points_equal(c, d);
  if (ab_degen && cd_degen) {
    if (points_equal(a, c)) {
      hit.kind = SegSegHit::Kind::Point;
      hit.point = a;
      hit.t1 = 0;
      hit.t2 = 0;
    }
    return hit;
  }
  if (ab_degen) {
    if (point_on_segment(a, c, d)) {
      hit.kind = SegSegHit::Kind::Point;
      hit.point = a;
      hit.t1 = 0;
      hit.t2 = segment_param(a, c, d);
    }
    return hit;
  }
  if (cd_degen) {
    if (point_on_segment(c, a, b)) {
      hit.kind = SegSegHit::Kind::Point;
      hit.point = c;
      hit.t1 = segment_param(c, a, b);
      hit.t2 = 0;
    }
    return hit;
  }

  const Eigen::Index dim = a.size();
  MatQ m(dim, 2);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, 0) = b(i) - a(i);
    m(i, 1) = c(i) - d(i);
  }
  LinearSolution sol = solve_linear(std::move(m), c - a);
  if (!sol.consistent) return hit;

  if (sol.unique()) {
    const Rational& t1 = sol.particular(0);
    const Rational& t2 = sol.particular(1);
    if (t1.sign() >= 0 && t1 <= Rational(1) && t2.sign() >= 0 &&
        t2 <= Rational(1)) {
      hit.kind = SegSegHit::Kind::Point;
      hit.point = a + t1 * (b - a);
      hit.t1 = t1;
      hit.t2 = t2;
    }
    return hit;
  }

  // Collinear: express c and d in the parameter of [a, b].
  Rational tc = segment_param(c, a, b);
  Rational td = segment_param(d, a, b);
  Rational lo = std::min(tc, td), hi = std::max(tc, td);
  if (lo < Rational(0)) lo = 0;
  if (hi > Rational(1)) hi = 1;
  if (lo > hi) return hit;
  if (lo == hi) {
    hit.kind = SegSegHit::Kind::Point;
    hit.point = a + lo * (b - a);
    hit.t1 = lo;
    hit.t2 = (lo - tc) / (td - tc);
    return hit;
  }
  hit.kind = SegSegHit::Kind::Overlap;
  return hit;
}

bool triangle_degenerate(const PointD& a, const PointD& b, const PointD& c) {
  PointD e1 = b - a, e2 = c - a;
  for (Eigen::Index i = 0; i < e1.size(); ++i)
    for (Eigen::Index j = i + 1; j < e1.size(); ++j)
      if (e1(i) * e2(j) != e1(j) * e2(i)) return false;
  return true;
}

bool point_in_triangle(const PointD& p, const PointD& a, const PointD& b,
                       const PointD& c) {
  const Eigen::Index dim = a.size();
  MatQ m(dim, 2);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, 0) = b(i) - a(i);
    m(i, 1) = c(i) - a(i);
  }
  LinearSolution sol = solve_linear(std::move(m), p - a);
  if (!sol.consistent) return false;
  if (!sol.unique()) throw Error("point_in_triangle: degenerate triangle");
  const Rational& alpha = sol.particular(0);
  const Rational& beta = sol.particular(1);
  return alpha.sign() >= 0 && beta.sign() >= 0 && alpha + beta <= Rational(1);
}

SegTriHit segment_triangle_intersect(const PointD& a, const PointD& b,
                                     const PointD& t0, const PointD& t1,
                                     const PointD& t2) {
  SegTriHit hit;
  if (triangle_degenerate(t0, t1, t2))
    throw Error("segment_triangle_intersect: degenerate triangle");
  if (points_equal(a, b)) {
    if (point_in_triangle(a, t0, t1, t2)) {
      hit.kind = SegTriHit::Kind::Point;
      hit.t0 = 0;
    }
    return hit;
  }

  // Unknowns (s, alpha, beta):  a + s (b-a)  ==  t0 + alpha e1 + beta e2.
  const Eigen::Index dim = a.size();
  MatQ m(dim, 3);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, 0) = b(i) - a(i);
    m(i, 1) = t0(i) - t1(i);
    m(i, 2) = t0(i) - t2(i);
  }
  LinearSolution sol = solve_linear(std::move(m), t0 - a);
  if (!sol.consistent) return hit;

  if (sol.unique()) {
    const Rational& s = sol.particular(0);
    const Rational& alpha = sol.particular(1);
    const Rational& beta = sol.particular(2);
    if (s.sign() >= 0 && s <= Rational(1) && alpha.sign() >= 0 &&
        beta.sign() >= 0 && alpha + beta <= Rational(1)) {
      hit.kind = SegTriHit::Kind::Point;
      hit.t0 = s;
    }
    return hit;
  }
  if (sol.kernel.size() != 1)
    throw Error("segment_triangle_intersect: unexpected solution space");

  // One-parameter family: solutions (s, alpha, beta) = p + t k.  The kernel
  // has nonzero s-component because the triangle edges are independent.
  const VecQ& k = sol.kernel[0];
  const VecQ& p = sol.particular;
  if (k(0).is_zero())
    throw Error("segment_triangle_intersect: unexpected kernel direction");

  // Initialize the feasible t-interval from 0 <= s(t) <= 1 (finite since
  // k_s != 0), then intersect with alpha >= 0, beta >= 0, alpha+beta <= 1.
  Rational b0 = -p(0) / k(0);
  Rational b1 = (Rational(1) - p(0)) / k(0);
  Rational lo = std::min(b0, b1), hi = std::max(b0, b1);
  if (!clamp_ge(p(1), k(1), lo, hi)) return hit;
  if (!clamp_ge(p(2), k(2), lo, hi)) return hit;
  if (!clamp_ge(Rational(1) - p(1) - p(2), -(k(1) + k(2)), lo, hi)) return hit;

  Rational s_lo = p(0) + lo * k(0);
  Rational s_hi = p(0) + hi * k(0);
  if (s_lo > s_hi) swap(s_lo, s_hi);
  if (lo == hi) {
    hit.kind = SegTriHit::Kind::Point;
    hit.t0 = s_lo;
  } else {
    hit.kind = SegTriHit::Kind::Segment;
    hit.t0 = s_lo;
    hit.t1 = s_hi;
  }
  return hit;
}

bool triangle_triangle_improper(const std::array<PointD, 3>& a,
                                const std::array<PointD, 3>& b,
                                const std::vector<std::pair<int, int>>& shared) {
  if (triangle_degenerate(a[0], a[1], a[2]) ||
      triangle_degenerate(b[0], b[1], b[2]))
    throw Error("triangle_triangle_improper: degenerate triangle");
  if (shared.size() > 2)
    throw Error("triangle_triangle_improper: too many shared vertices");
  for (auto [i, j] : shared) {
    if (i < 0 || i > 2 || j < 0 || j > 2 || !points_equal(a[size_t(i)], b[size_t(j)]))
      throw Error("triangle_triangle_improper: shared pair mismatch");
  }

  auto in_shared = [&](const PointD& x) {
    if (shared.empty()) return false;
    if (shared.size() == 1) return points_equal(x, a[size_t(shared[0].first)]);
    return point_on_segment(x, a[size_t(shared[0].first)],
                            a[size_t(shared[1].first)]);
  };

  // Every extreme point of the (convex) intersection is either a vertex of
  // one triangle inside the other, an endpoint of an edge-triangle
  // intersection, or the transversal point of the two affine spans.  If all
  // of those lie in the shared simplex, the whole intersection does.
  std::vector<PointD> candidates;
  for (int v = 0; v < 3; ++v) {
    if (point_in_triangle(a[size_t(v)], b[0], b[1], b[2]))
      candidates.push_back(a[size_t(v)]);
    if (point_in_triangle(b[size_t(v)], a[0], a[1], a[2]))
      candidates.push_back(b[size_t(v)]);
  }
  auto edge_hits = [&](const std::array<PointD, 3>& s,
                       const std::array<PointD, 3>& t) {
    for (int e = 0; e < 3; ++e) {
      const PointD& p = s[size_t(e)];
      const PointD& q = s[size_t((e + 1) % 3)];
      SegTriHit h = segment_triangle_intersect(p, q, t[0], t[1], t[2]);
      if (h.kind == SegTriHit::Kind::Point) {
        candidates.push_back(p + h.t0 * (q - p));
      } else if (h.kind == SegTriHit::Kind::Segment) {
        candidates.push_back(p + h.t0 * (q - p));
        candidates.push_back(p + h.t1 * (q - p));
      }
    }
  };
  edge_hits(a, b);
  edge_hits(b, a);

  // Transversal intersection point of the two planes, when unique.
  const Eigen::Index dim = a[0].size();
  MatQ m(dim, 4);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, 0) = a[1](i) - a[0](i);
    m(i, 1) = a[2](i) - a[0](i);
    m(i, 2) = b[0](i) - b[1](i);
    m(i, 3) = b[0](i) - b[2](i);
  }
  LinearSolution sol = solve_linear(std::move(m), b[0] - a[0]);
  if (sol.unique()) {
    const Rational& alpha = sol.particular(0);
    const Rational& beta = sol.particular(1);
    const Rational& gamma = sol.particular(2);
    const Rational& delta = sol.particular(3);
    if (alpha.sign() >= 0 && beta.sign() >= 0 &&
        alpha + beta <= Rational(1) && gamma.sign() >= 0 &&
        delta.sign() >= 0 && gamma + delta <= Rational(1)) {
      candidates.push_back(a[0] + alpha * (a[1] - a[0]) +
                           beta * (a[2] - a[0]));
    }
  }

  for (const PointD& x : candidates) {
    if (!in_shared(x)) return true;
  }
  return false;
}

}  // namespace plspan
