#include <plspan/families.hpp>

#include <cmath>
#include <string>
#include <vector>

#include <plspan/diagram.hpp>
#include <plspan/errors.hpp>
#include <plspan/rng.hpp>

namespace plspan {

Vec2Q rational_circle_point(const Rational& a, const Rational& radius,
                            long long den) {
  // Reduce a mod 1 into (-1/2, 1/2]; the angle is 2*pi*a.
  Rational r = a - Rational(a.floor_ll());
  if (Rational(1, 2) < r) r -= Rational(1);
  if (r == Rational(1, 2)) return vec2(-radius, Rational(0));
  // Snap tan(pi*a) to den-ths; the half-angle substitution then gives an
  // exact rational point on the circle.
  double approx = std::tan(M_PI * r.to_double());
  long long num = static_cast<long long>(
      std::floor(approx * static_cast<double>(den) + 0.5));
  Rational t = frac(num, den);
  Rational t2 = t * t;
  Rational d = Rational(1) + t2;
  return vec2(radius * (Rational(1) - t2) / d, radius * (Rational(2) * t) / d);
}

namespace {

PointD pt3(Rational x, Rational y, Rational z) {
  PointD v(3);
  v << std::move(x), std::move(y), std::move(z);
  return v;
}

Polygon validated(std::vector<PointD> verts, const std::string& who) {
  PolygonValidation val = validate_polygon(verts);
  if (!val.ok())
    throw ValidationFailedError(who + ": " + val.issues.front().str());
  return *val.polygon;
}

}  // namespace

Polygon gen_planar_ngon(int n) {
  if (n < 3) throw Error("gen_planar_ngon: n must be at least 3");
  std::vector<PointD> verts;
  verts.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    Vec2Q c = rational_circle_point(frac(k, n), Rational(1), 512);
    verts.push_back(pt3(c(0), c(1), Rational(1)));
  }
  return validated(std::move(verts), "gen_planar_ngon");
}

Polygon gen_torus_stick(int m) {
  if (m < 3) throw Error("gen_torus_stick: m must be at least 3");
  const Rational r_top(2), r_bot(1);
  const Rational twist(-1, 24);
  std::vector<PointD> verts;
  verts.reserve(static_cast<size_t>(2 * m));
  for (int k = 0; k < m; ++k) {
    Rational a_top = frac(static_cast<long long>(k) * (m - 1), m);
    Rational a_bot = a_top + frac(m - 1, 2LL * m) + twist;
    Vec2Q ct = rational_circle_point(a_top, r_top, 64);
    Vec2Q cb = rational_circle_point(a_bot, r_bot, 64);
    verts.push_back(pt3(ct(0), ct(1), Rational(1)));
    verts.push_back(pt3(cb(0), cb(1), Rational(-1)));
  }
  return validated(std::move(verts), "gen_torus_stick");
}

Polygon gen_writhe_family(int m) {
  if (m < 1) throw Error("gen_writhe_family: m must be at least 1");
  const Rational r = frac(2LL * m + 3, 2);
  const Rational xa(4LL * m + 6);
  const Rational top(m + 1);
  auto hl = [&](int i) { return pt3(Rational(0), Rational(i), Rational(1)); };
  auto hr = [&](int i) { return pt3(r, Rational(i), Rational(1)); };
  auto vb = [&](int j) { return pt3(Rational(j), Rational(0), Rational(-1)); };
  auto vt = [&](int j) { return pt3(Rational(j), top, Rational(-1)); };
  auto bra = [&](int i) {
    return pt3(r + frac(i, 2), frac(-i, 2), Rational(0));
  };
  auto tla = [&](int j) {
    return pt3(frac(-j, 2), top + frac(j, 2), Rational(0));
  };

  // One outer loop through the big anchor, then m-1 nested return loops.
  std::vector<PointD> verts = {hl(1),        hr(1), bra(1),
                               vb(m + 1),    vt(m + 1),
                               pt3(xa, -xa, Rational(0)),
                               vb(1),        vt(1), tla(1)};
  for (int i = m; i >= 2; --i) {
    int j = m + 2 - i;
    verts.push_back(hl(i));
    verts.push_back(hr(i));
    verts.push_back(bra(i));
    verts.push_back(vb(j));
    verts.push_back(vt(j));
    verts.push_back(tla(j));
  }

  Polygon p = validated(std::move(verts), "gen_writhe_family");
  if (p.size() != 6 * m + 3)
    throw ValidationFailedError("gen_writhe_family: edge count mismatch");

  ProjectionFrame frame{vec3(Rational(1), Rational(0), Rational(0)),
                        vec3(Rational(0), Rational(1), Rational(0)),
                        vec3(Rational(0), Rational(0), Rational(1))};
  if (auto why = frame_violation(p, frame))
    throw ValidationFailedError(
        "gen_writhe_family: standard frame rejected: " + *why);
  KnotDiagram d = project(p, frame);
  const long long expect = static_cast<long long>(m) * (m + 1);
  if (d.crossing_count() != expect)
    throw ValidationFailedError("gen_writhe_family: crossing count mismatch");
  for (const Crossing& c : d.crossings)
    if (c.sign != 1)
      throw ValidationFailedError("gen_writhe_family: negative crossing");
  if (writhe(d) != expect)
    throw ValidationFailedError("gen_writhe_family: writhe mismatch");
  return p;
}

Polygon gen_random_polygon(int n, int dim, uint64_t seed, long long box,
                           int max_attempts) {
  if (n < 3) throw Error("gen_random_polygon: n must be at least 3");
  if (dim < 2) throw Error("gen_random_polygon: dim must be at least 2");
  if (box < 1) throw Error("gen_random_polygon: box must be positive");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<PointD> verts;
    verts.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      PointD v(dim);
      for (int k = 0; k < dim; ++k) v(k) = Rational(rng.uniform(-box, box));
      verts.push_back(std::move(v));
    }
    PolygonValidation val = validate_polygon(verts);
    if (val.ok()) return *val.polygon;
  }
  throw ExhaustedAttemptsError("gen_random_polygon: no embedded polygon in " +
                               std::to_string(max_attempts) + " attempts");
}

}  // namespace plspan
