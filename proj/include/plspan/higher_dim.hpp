#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <plspan/mesh.hpp>
#include <plspan/polygon.hpp>
#include <plspan/seifert.hpp>

namespace plspan {

// Affine hull of two extended edge lines of P.  Every line joining a point
// of one to a point of the other stays inside this flat (dimension <= 3),
// so a point outside all such hulls sees both lines "in general position".
// Used to guide apex sampling; acceptance always rests on the direct exact
// mesh checks.
struct FlatSpan {
  PointD base;
  std::vector<PointD> dirs;  // spanning directions, possibly dependent
  bool contains(const PointD& x) const;
};

// One FlatSpan per unordered pair of edges of P.
std::vector<FlatSpan> build_bad_set(const Polygon& p);

struct ConeResult {
  Mesh mesh;
  PointD apex;
  int attempts = 0;  // candidates tried, including the accepted one
};

// d >= 5 only: cones P to an integer apex drawn outside the bad set, giving
// exactly n triangles [v_j, v_{j+1}, apex].  The accepted mesh is certified
// to be an embedded disk whose boundary is exactly P (no subdivision).
// Throws ExhaustedAttemptsError.
ConeResult cone_spanning_disk(const Polygon& p, uint64_t seed,
                              int max_attempts = 200);

// Assembles the annulus-plus-fan disk over P: ring is the far polygon Q
// (same vertex count as P) and apex the fan center, giving 3n triangles.
// Pure assembly, no validation.
Mesh annulus_mesh(const Polygon& p, const std::vector<PointD>& ring,
                  const PointD& apex);

struct AnnulusResult {
  Mesh mesh;
  std::vector<PointD> ring;
  PointD apex;
  int attempts = 0;
};

// d = 4 only: plants a convex n-gon Q in a 2-plane of a far hyperplane
// x_0 = const (strictly beyond P's coordinate-0 range, which certifies hull
// disjointness), fans Q to its centroid, and bridges P to Q with an annulus:
// 3n triangles.  The result is certified to be a disk, complementary to P
// (its interior never touches P), with boundary exactly P.  The surface may
// self-intersect away from P.  Throws ExhaustedAttemptsError.
AnnulusResult annulus_spanning_disk4(const Polygon& p, uint64_t seed,
                                     int max_attempts = 200);

struct Embed4Result {
  Mesh mesh;             // embedded surface in R^4
  long long t_seifert = 0;   // triangles in the hyperplane part
  long long t_wall = 0;      // 2 per boundary edge of the hyperplane part
  long long t_total = 0;
  int attempts = 0;          // projection directions tried
  SeifertResult seifert;     // the hyperplane construction, for reporting
};

// d = 4 only: projects P along an integer direction onto a hyperplane
// strictly below it, spans the projected polygon there with the Seifert
// construction, and joins the two with a vertical wall (two triangles per
// subdivided boundary edge).  Certified embedded, boundary a subdivision of
// P, total triangles <= 24 n^2.  Throws ExhaustedAttemptsError.
Embed4Result embed_spanning_surface4(
    const Polygon& p, uint64_t seed, int max_attempts = 200,
    SmoothingStrategy strategy = SmoothingStrategy::WhiteFace);

}  // namespace plspan
