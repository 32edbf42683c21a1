#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plspan/polygon.hpp"

namespace plspan {

struct Crossing {
  int over_edge = 0;
  int under_edge = 0;
  Rational t_over, t_under;  // parameters in (0,1) on the respective edges
  Vec2Q point;               // shared projected point
  int sign = 0;              // +1 / -1 by the determinant rule
};

struct KnotDiagram {
  Polygon polygon;  // source polygon in R^3
  ProjectionFrame frame;
  std::vector<Vec2Q> proj;          // projected vertices
  std::vector<Rational> heights;    // vertex heights along frame.w
  std::vector<Crossing> crossings;  // ordered by the edge pair (i, j), i < j

  int n() const { return polygon.size(); }
  int crossing_count() const { return static_cast<int>(crossings.size()); }
};

// Returns a description of the first violated general-position condition, or
// nullopt when the frame is admissible for P.  Conditions: edges project to
// proper segments, no two projected edges overlap or are parallel when
// adjacent, non-adjacent intersections are transversal and interior, vertex
// images are distinct and off non-incident edges, no triple points, and
// strand heights differ over every crossing.
std::optional<std::string> frame_violation(const Polygon& p,
                                           const ProjectionFrame& frame);

// Candidate 0 is the standard frame u=(1,0,0), v=(0,1,0), w=(0,0,1); later
// candidates draw integer height directions from a growing box.  Throws
// ExhaustedAttemptsError.
ProjectionFrame find_frame(const Polygon& p, uint64_t seed, int max_attempts);

// Builds the diagram; throws GeneralPositionError when the frame violates
// general position for P.
KnotDiagram project(const Polygon& p, const ProjectionFrame& frame);

int writhe(const KnotDiagram& d);

}  // namespace plspan
