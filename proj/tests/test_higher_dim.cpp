#include <doctest.h>

#include "plspan/errors.hpp"
#include "plspan/families.hpp"
#include "plspan/higher_dim.hpp"
#include "plspan/mesh.hpp"

using namespace plspan;

namespace {

PointD p4(long long x, long long y, long long z, long long w) {
  PointD p(4);
  p << Rational(x), Rational(y), Rational(z), Rational(w);
  return p;
}

Polygon lift_to(const Polygon& p, int dim) {
  std::vector<PointD> verts;
  for (const PointD& v : p.vertices()) {
    PointD x = PointD::Zero(dim);
    x.head(v.size()) = v;
    verts.push_back(std::move(x));
  }
  return Polygon(dim, std::move(verts));
}

Polygon square4() {
  return Polygon(4, {p4(0, 0, 0, 0), p4(1, 0, 0, 0), p4(1, 1, 0, 0),
                     p4(0, 1, 0, 0)});
}

// trefoil7 with the stick index spread onto the fourth coordinate.
Polygon trefoil7_in_r4() {
  std::vector<std::array<Rational, 3>> base = {
      {Rational(2), Rational(0), Rational(1)},
      {frac(4096, 10985), frac(5312, 10985), frac(-1, 4)},
      {frac(-2793, 10985), frac(10624, 10985), Rational(-1)},
      {frac(-16450, 16417), frac(-28416, 16417), Rational(1)},
      {frac(63, 65), frac(-16, 65), Rational(-1)},
      {frac(-16450, 16417), frac(28416, 16417), Rational(1)},
      {frac(-19929, 28121), frac(-19840, 28121), Rational(-1)}};
  std::vector<PointD> verts;
  for (size_t i = 0; i < base.size(); ++i) {
    PointD v(4);
    v << base[i][0], base[i][1], base[i][2],
        frac(static_cast<long long>(i), 8);
    verts.push_back(std::move(v));
  }
  return Polygon(4, std::move(verts));
}

}  // namespace

TEST_SUITE("higher_dim") {

TEST_CASE("build_bad_set covers every edge pair") {
  Polygon p = lift_to(gen_planar_ngon(5), 5);
  std::vector<FlatSpan> bad = build_bad_set(p);
  CHECK(bad.size() == 10);  // C(5, 2)
}

TEST_CASE("FlatSpan membership is exact") {
  Polygon p = lift_to(gen_planar_ngon(4), 5);
  std::vector<FlatSpan> bad = build_bad_set(p);
  REQUIRE_FALSE(bad.empty());
  const FlatSpan& flat = bad.front();
  // Points of the generating edge lines lie inside, including far
  // extrapolations.
  PointD on_line = p.vertex(0) + Rational(10) * (p.vertex(1) - p.vertex(0));
  CHECK(flat.contains(p.vertex(0)));
  CHECK(flat.contains(on_line));
  // The polygon is planar, so leaving its plane leaves every pair-flat.
  PointD off = p.vertex(0);
  off(4) = Rational(1);
  for (const FlatSpan& f : bad) CHECK_FALSE(f.contains(off));
}

TEST_CASE("cone_spanning_disk spans a pentagon in R^5 with 5 triangles") {
  Polygon p = lift_to(gen_planar_ngon(5), 5);
  ConeResult r = cone_spanning_disk(p, 0);
  CHECK(r.attempts >= 1);
  CHECK(r.mesh.dim == 5);
  CHECK(r.mesh.triangle_count() == 5);
  CHECK(validate_mesh_basic(r.mesh).empty());
  CHECK(check_embedded(r.mesh).empty());
  TopologyReport t = topology(r.mesh);
  CHECK(t.chi == 1);
  REQUIRE(t.boundary_cycles.size() == 1);
  CHECK(t.boundary_cycles[0].size() == 5);
  CHECK(points_equal(r.mesh.vertices.back(), r.apex));
}

TEST_CASE("cone_spanning_disk requires ambient dimension at least 5") {
  CHECK_THROWS_AS(cone_spanning_disk(square4(), 0), Error);
  CHECK_THROWS_AS(cone_spanning_disk(gen_planar_ngon(4), 0), Error);
}

TEST_CASE("cone_spanning_disk spans random polygons in R^5") {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    int n = 5 + static_cast<int>(seed);
    Polygon p = gen_random_polygon(n, 5, seed);
    ConeResult r = cone_spanning_disk(p, seed);
    CAPTURE(seed);
    CHECK(r.mesh.triangle_count() == n);
    CHECK(check_boundary_subdivision(r.mesh, p).ok);
  }
}

TEST_CASE("annulus_mesh assembles 3n triangles without judging them") {
  Polygon p = square4();
  std::vector<PointD> ring;
  for (const PointD& v : p.vertices()) ring.push_back(v + p4(0, 0, 5, 0));
  Mesh m = annulus_mesh(p, ring, p4(7, 7, 7, 7));
  CHECK(m.dim == 4);
  CHECK(m.vertices.size() == 9);
  CHECK(m.triangle_count() == 12);

  std::vector<PointD> short_ring(ring.begin(), ring.end() - 1);
  CHECK_THROWS_AS(annulus_mesh(p, short_ring, p4(7, 7, 7, 7)), Error);
}

TEST_CASE("annulus_spanning_disk4 spans the unit square in R^4") {
  Polygon p = square4();
  AnnulusResult r = annulus_spanning_disk4(p, 0);
  CHECK(r.attempts >= 1);
  CHECK(r.mesh.triangle_count() == 12);
  CHECK(r.ring.size() == 4);
  CHECK(validate_mesh_basic(r.mesh).empty());
  CHECK(check_complementary(r.mesh, p).empty());
  TopologyReport t = topology(r.mesh);
  CHECK(t.manifold);
  CHECK(t.chi == 1);
  REQUIRE(t.boundary_cycles.size() == 1);
  CHECK(t.boundary_cycles[0].size() == 4);
  CHECK(check_boundary_subdivision(r.mesh, p).ok);

  CHECK_THROWS_AS(annulus_spanning_disk4(gen_planar_ngon(4), 0), Error);
}

TEST_CASE("check_complementary rejects a fan apex resting on P") {
  // Hand-build the annulus with its apex at the midpoint of an edge of P:
  // the apex is an interior mesh vertex, so the contact must be flagged.
  Polygon p = square4();
  std::vector<PointD> ring;
  for (const PointD& v : p.vertices()) ring.push_back(v + p4(0, 0, 5, 0));
  PointD apex = p.edge_point(1, frac(1, 2));
  Mesh m = annulus_mesh(p, ring, apex);
  CHECK(validate_mesh_basic(m).empty());
  CHECK_FALSE(check_complementary(m, p).empty());
}

TEST_CASE("embed_spanning_surface4 lifts the trefoil construction") {
  Polygon p = trefoil7_in_r4();
  Embed4Result r = embed_spanning_surface4(p, 0);
  CHECK(r.attempts == 1);  // the axis direction already works
  CHECK(r.t_seifert == 59);
  CHECK(r.t_wall == 38);  // two per subdivided boundary edge, 19 of them
  CHECK(r.t_total == 97);
  CHECK(r.mesh.triangle_count() == 97);
  CHECK(r.t_total <= 24 * 7 * 7);
  CHECK(r.mesh.dim == 4);

  CHECK(validate_mesh_basic(r.mesh).empty());
  CHECK(check_embedded(r.mesh).empty());
  BoundaryCheck b = check_boundary_subdivision(r.mesh, p);
  CHECK(b.ok);
  CHECK(b.cycle.size() == 19);
  TopologyReport t = topology(r.mesh);
  CHECK(t.manifold);
  CHECK(t.orientable);
  CHECK(t.genus == 1);
}

TEST_CASE("embed_spanning_surface4 spans random polygons in R^4") {
  for (uint64_t seed = 1; seed <= 2; ++seed) {
    Polygon p = gen_random_polygon(5, 4, seed);
    Embed4Result r = embed_spanning_surface4(p, seed);
    CAPTURE(seed);
    long long n = p.size();
    CHECK(r.t_total <= 24 * n * n);
    CHECK(r.t_total == r.t_seifert + r.t_wall);
    CHECK(check_embedded(r.mesh).empty());
    CHECK(check_boundary_subdivision(r.mesh, p).ok);
  }
}

TEST_CASE("embed_spanning_surface4 rejects other dimensions") {
  CHECK_THROWS_AS(embed_spanning_surface4(gen_planar_ngon(4), 0), Error);
  CHECK_THROWS_AS(embed_spanning_surface4(lift_to(gen_planar_ngon(4), 5), 0),
                  Error);
}

}  // TEST_SUITE
