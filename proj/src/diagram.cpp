#include "plspan/diagram.hpp"

#include "plspan/predicates.hpp"
#include "plspan/rng.hpp"

namespace plspan {
namespace {

Rational edge_height(const KnotDiagram& d, int edge, const Rational& t) {
  const Rational& h0 = d.heights[static_cast<size_t>(edge)];
  const Rational& h1 = d.heights[static_cast<size_t>((edge + 1) % d.n())];
  return h0 + t * (h1 - h0);
}

bool edges_adjacent(int i, int j, int n) {
  int d = std::abs(i - j);
  return d == 1 || d == n - 1;
}

struct Projected {
  std::vector<Vec2Q> proj;
  std::vector<Rational> heights;
};

Projected project_all(const Polygon& p, const ProjectionFrame& f) {
  Projected out;
  for (const PointD& v : p.vertices()) {
    Vec3Q v3 = v;
    out.proj.push_back(project_point(v3, f));
    out.heights.push_back(height(v3, f));
  }
  return out;
}

}  // namespace

std::optional<std::string> frame_violation(const Polygon& p,
                                           const ProjectionFrame& frame) {
  if (p.dim() != 3) throw Error("frame_violation: polygon must be in R^3");
  const int n = p.size();
  Projected pr = project_all(p, frame);
  auto proj = [&](int i) -> const Vec2Q& {
    return pr.proj[static_cast<size_t>(((i % n) + n) % n)];
  };

  for (int i = 0; i < n; ++i) {
    if (points_equal(proj(i), proj(i + 1)))
      return "edge " + std::to_string(i) + " projects to a point";
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (points_equal(proj(i), proj(j)))
        return "vertices " + std::to_string(i) + " and " + std::to_string(j) +
               " have the same image";
    }
  }
  // Adjacent projected edges must turn at every vertex; parallel images
  // (straight continuations, spikes, overlaps) are all rejected so circuit
  // corners are genuine corners.
  for (int i = 0; i < n; ++i) {
    Vec2Q d0 = proj(i + 1) - proj(i);
    Vec2Q d1 = proj(i + 2) - proj(i + 1);
    if (cross2(d0, d1).is_zero())
      return "projected edges " + std::to_string(i) + " and " +
             std::to_string((i + 1) % n) + " are parallel at their shared vertex";
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (i == k || (i + 1) % n == k) continue;
      if (point_on_segment(proj(k), proj(i), proj(i + 1)))
        return "vertex " + std::to_string(k) + " projects onto edge " +
               std::to_string(i);
    }
  }

  std::vector<Vec2Q> cross_points;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edges_adjacent(i, j, n)) continue;
      SegSegHit hit =
          seg_seg_intersect(proj(i), proj(i + 1), proj(j), proj(j + 1));
      if (hit.kind == SegSegHit::Kind::None) continue;
      if (hit.kind == SegSegHit::Kind::Overlap)
        return "projected edges " + std::to_string(i) + " and " +
               std::to_string(j) + " overlap";
      if (hit.t1.is_zero() || hit.t1 == Rational(1) || hit.t2.is_zero() ||
          hit.t2 == Rational(1))
        return "projected edges " + std::to_string(i) + " and " +
               std::to_string(j) + " meet at an endpoint";
      cross_points.push_back(hit.point);
    }
  }
  for (size_t a = 0; a < cross_points.size(); ++a)
    for (size_t b = a + 1; b < cross_points.size(); ++b)
      if (points_equal(cross_points[a], cross_points[b]))
        return "triple point in the projection";

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edges_adjacent(i, j, n)) continue;
      SegSegHit hit =
          seg_seg_intersect(proj(i), proj(i + 1), proj(j), proj(j + 1));
      if (hit.kind != SegSegHit::Kind::Point) continue;
      Rational hi = pr.heights[size_t(i)] +
                    hit.t1 * (pr.heights[size_t((i + 1) % n)] - pr.heights[size_t(i)]);
      Rational hj = pr.heights[size_t(j)] +
                    hit.t2 * (pr.heights[size_t((j + 1) % n)] - pr.heights[size_t(j)]);
      if (hi == hj)
        return "strands of edges " + std::to_string(i) + " and " +
               std::to_string(j) + " cross at equal height";
    }
  }
  return std::nullopt;
}

ProjectionFrame find_frame(const Polygon& p, uint64_t seed, int max_attempts) {
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ProjectionFrame f;
    if (attempt == 0) {
      f.u = vec3(1, 0, 0);
      f.v = vec3(0, 1, 0);
      f.w = vec3(0, 0, 1);
    } else {
      long long r = 3 + attempt / 8;
      Vec3Q w = vec3(0, 0, 0);
      do {
        w = vec3(Rational(static_cast<long>(rng.uniform(-r, r))),
                 Rational(static_cast<long>(rng.uniform(-r, r))),
                 Rational(static_cast<long>(rng.uniform(-r, r))));
      } while (is_zero_vec(w));
      Vec3Q u = vec3(0, 0, 0);
      for (int axis = 0; axis < 3; ++axis) {
        Vec3Q e = vec3(axis == 0 ? 1 : 0, axis == 1 ? 1 : 0, axis == 2 ? 1 : 0);
        Vec3Q c = cross3(w, e);
        if (!is_zero_vec(c)) {
          u = c;
          break;
        }
      }
      f.u = u;
      f.v = cross3(w, u);
      f.w = w;
    }
    if (!frame_violation(p, f)) return f;
  }
  throw ExhaustedAttemptsError("no general-position frame found in " +
                               std::to_string(max_attempts) + " attempts");
}

KnotDiagram project(const Polygon& p, const ProjectionFrame& frame) {
  if (auto why = frame_violation(p, frame))
    throw GeneralPositionError("frame violates general position: " + *why);

  KnotDiagram d;
  d.polygon = p;
  d.frame = frame;
  Projected pr = project_all(p, frame);
  d.proj = std::move(pr.proj);
  d.heights = std::move(pr.heights);

  const int n = p.size();
  auto proj = [&](int i) -> const Vec2Q& {
    return d.proj[static_cast<size_t>(((i % n) + n) % n)];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edges_adjacent(i, j, n)) continue;
      SegSegHit hit =
          seg_seg_intersect(proj(i), proj(i + 1), proj(j), proj(j + 1));
      if (hit.kind != SegSegHit::Kind::Point) continue;
      Crossing c;
      Rational hi = edge_height(d, i, hit.t1);
      Rational hj = edge_height(d, j, hit.t2);
      if (hi > hj) {
        c.over_edge = i;
        c.under_edge = j;
        c.t_over = hit.t1;
        c.t_under = hit.t2;
      } else {
        c.over_edge = j;
        c.under_edge = i;
        c.t_over = hit.t2;
        c.t_under = hit.t1;
      }
      c.point = Vec2Q(hit.point);
      Vec2Q over_dir = proj(c.over_edge + 1) - proj(c.over_edge);
      Vec2Q under_dir = proj(c.under_edge + 1) - proj(c.under_edge);
      c.sign = cross2(over_dir, under_dir).sign() > 0 ? 1 : -1;
      d.crossings.push_back(std::move(c));
    }
  }
  const int max_c = n * (n - 3) / 2;
  if (d.crossing_count() > max_c)
    throw Error("project: crossing count exceeds n(n-3)/2");
  return d;
}

int writhe(const KnotDiagram& d) {
  int w = 0;
  for (const Crossing& c : d.crossings) w += c.sign;
  return w;
}

}  // namespace plspan
