#include <algorithm>
#include <vector>

#include <doctest.h>

#include "plspan/errors.hpp"
#include "plspan/families.hpp"
#include "plspan/mesh.hpp"
#include "plspan/seifert.hpp"

using namespace plspan;

namespace {

PointD p3q(const Rational& x, const Rational& y, const Rational& z) {
  PointD p(3);
  p << x, y, z;
  return p;
}

PointD p3(long long x, long long y, long long z) {
  return p3q(Rational(x), Rational(y), Rational(z));
}

Polygon trefoil7() {
  return Polygon(
      3, {p3q(Rational(2), Rational(0), Rational(1)),
          p3q(frac(4096, 10985), frac(5312, 10985), frac(-1, 4)),
          p3q(frac(-2793, 10985), frac(10624, 10985), Rational(-1)),
          p3q(frac(-16450, 16417), frac(-28416, 16417), Rational(1)),
          p3q(frac(63, 65), frac(-16, 65), Rational(-1)),
          p3q(frac(-16450, 16417), frac(28416, 16417), Rational(1)),
          p3q(frac(-19929, 28121), frac(-19840, 28121), Rational(-1))});
}

std::vector<int> sorted_levels(const SeifertSurface& s) {
  std::vector<int> out = s.levels;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("seifert") {

TEST_CASE("square: one circuit, one disk layer, ten triangles") {
  Polygon square(3, {p3(0, 0, 1), p3(2, 0, 1), p3(2, 2, 1), p3(0, 2, 1)});
  SeifertResult r =
      seifert_pipeline(square, 0, 64, SmoothingStrategy::WhiteFace);
  CHECK(is_zero_vec(r.translation));
  CHECK(r.diagram.crossing_count() == 0);
  const SeifertSurface& s = r.surface;
  CHECK(s.circuit_count == 1);
  CHECK(s.levels == std::vector<int>{0});
  CHECK(s.ledger.disk == 2);
  CHECK(s.ledger.wall == 8);
  CHECK(s.ledger.band == 0);
  CHECK(s.ledger.total == 10);
  CHECK(s.mesh.triangle_count() == 10);
  CHECK(s.chi == 1);
  CHECK(s.genus == 0);
  CHECK(s.boundary_cycle.size() == 4);
}

TEST_CASE("trefoil7: genus one under both smoothing strategies") {
  Polygon p = trefoil7();
  for (SmoothingStrategy strat : {SmoothingStrategy::WhiteFace,
                                  SmoothingStrategy::OrientationRespecting}) {
    CAPTURE(strategy_name(strat));
    SeifertResult r = seifert_pipeline(p, 0, 64, strat);
    CHECK(r.translation(2) == Rational(2));  // lifts min height -1 up to 1
    CHECK(r.diagram.crossing_count() == 3);
    CHECK(writhe(r.diagram) == 3);

    const SeifertSurface& s = r.surface;
    CHECK(s.circuit_count == 2);
    CHECK(sorted_levels(s) == std::vector<int>{0, 1});
    CHECK(s.ledger.disk == 15);
    CHECK(s.ledger.wall == 38);
    CHECK(s.ledger.band == 6);
    CHECK(s.ledger.total == 59);
    CHECK(s.mesh.triangle_count() == 59);
    CHECK(s.chi == -1);
    CHECK(s.genus == 1);
    CHECK(s.boundary_cycle.size() == 19);
    CHECK(s.boundary_tags.size() == 19);
  }
}

TEST_CASE("trefoil7: diagram graph, faces, and circuits") {
  KnotDiagram d = project(
      trefoil7(),
      ProjectionFrame{vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)});
  DiagramGraph g = build_graph(d);
  CHECK(g.n == 7);
  CHECK(g.nodes.size() == 10);
  CHECK(g.arcs.size() == 13);  // n + 2c
  for (const DiagramGraph::Arc& a : g.arcs) CHECK(a.t0 < a.t1);

  FaceColoring c = color_faces(g);
  CHECK(c.face_count == 5);  // V - E + F = 2 on the diagram sphere
  REQUIRE(c.outer_face >= 0);
  CHECK(c.white[static_cast<size_t>(c.outer_face)]);

  AugmentedGraph a = augment(g, c);
  CHECK(a.iv_pos.size() == 3);
  for (const Rational& delta : a.delta) {
    CHECK(Rational(0) < delta);
    CHECK(delta < Rational(1));
  }

  CircuitSet cs = extract_circuits(g, c, a, SmoothingStrategy::WhiteFace);
  CHECK(cs.n_prime == 19);  // n + 4c
  CHECK(cs.circuits.size() == 2);
  size_t total = 0;
  for (const Circuit& circuit : cs.circuits) {
    total += circuit.vertices.size();
    CHECK(circuit.vertices.size() == circuit.entity.size());
    CHECK(circuit.vertices.size() == circuit.edge_crossing.size());
  }
  CHECK(total == 19);
}

TEST_CASE("torus stick with three sticks also has genus one") {
  Polygon p = gen_torus_stick(3);
  for (SmoothingStrategy strat : {SmoothingStrategy::WhiteFace,
                                  SmoothingStrategy::OrientationRespecting}) {
    CAPTURE(strategy_name(strat));
    SeifertResult r = seifert_pipeline(p, 0, 64, strat);
    const SeifertSurface& s = r.surface;
    CHECK(s.ledger.disk == 14);
    CHECK(s.ledger.wall == 36);
    CHECK(s.ledger.band == 6);
    CHECK(s.ledger.total == 56);
    CHECK(s.genus == 1);
  }
}

TEST_CASE("triangulate_planar clips non-convex polygons to n - 2 triangles") {
  Polygon lshape(3, {p3(0, 0, 1), p3(2, 0, 1), p3(2, 1, 1), p3(1, 1, 1),
                     p3(1, 2, 1), p3(0, 2, 1)});
  Mesh lm = triangulate_planar(lshape);
  CHECK(lm.triangle_count() == 4);
  CHECK(validate_mesh_basic(lm).empty());
  CHECK(topology(lm).chi == 1);

  Polygon zigzag(3, {p3(0, 0, 1), p3(4, 0, 1), p3(1, 1, 1), p3(4, 2, 1),
                     p3(0, 2, 1)});
  Mesh zm = triangulate_planar(zigzag);
  CHECK(zm.triangle_count() == 3);
  CHECK(check_embedded(zm).empty());

  CHECK_THROWS_AS(triangulate_planar(trefoil7()), Error);
}

TEST_CASE("ear_clip emits index triples into the ring") {
  std::vector<Vec2Q> ring = {Vec2Q(Rational(0), Rational(0)),
                             Vec2Q(Rational(2), Rational(0)),
                             Vec2Q(Rational(2), Rational(2)),
                             Vec2Q(Rational(0), Rational(2))};
  std::vector<std::array<int, 3>> tris = ear_clip(ring);
  CHECK(tris.size() == 2);
  for (const auto& t : tris)
    for (int idx : t) {
      CHECK(idx >= 0);
      CHECK(idx < 4);
    }
}

TEST_CASE("random polygons satisfy chi = s - c") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    int n = 5 + static_cast<int>(seed);
    Polygon p = gen_random_polygon(n, 3, seed);
    SeifertResult r =
        seifert_pipeline(p, seed, 64, SmoothingStrategy::WhiteFace);
    CAPTURE(seed);
    CHECK(r.surface.chi ==
          r.surface.circuit_count - r.diagram.crossing_count());
    TopologyReport t = topology(r.surface.mesh);
    CHECK(t.manifold);
    CHECK(t.orientable);
    CHECK(t.three_f_identity);
  }
}

}  // TEST_SUITE
