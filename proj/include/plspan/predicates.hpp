#pragma once

#include <array>
#include <utility>
#include <vector>

#include "plspan/linalg.hpp"

namespace plspan {

// Sign of the signed area of triangle (a, b, c): +1 counterclockwise,
// -1 clockwise, 0 collinear.
int orient2d(const Vec2Q& a, const Vec2Q& b, const Vec2Q& c);

// True when p lies on the closed segment [a, b] (any dimension).
bool point_on_segment(const PointD& p, const PointD& a, const PointD& b);

// Parameter t with p == a + t (b - a); requires p on the line and a != b.
Rational segment_param(const PointD& p, const PointD& a, const PointD& b);

struct SegSegHit {
  enum class Kind { None, Point, Overlap };
  Kind kind = Kind::None;
  PointD point;     // filled for Kind::Point
  Rational t1, t2;  // parameters on [a,b] and [c,d] for Kind::Point
};

// Exact intersection of closed segments [a,b] and [c,d] in R^d.  A collinear
// overlap that degenerates to a single shared point is reported as Point.
SegSegHit seg_seg_intersect(const PointD& a, const PointD& b, const PointD& c,
                            const PointD& d);

// True when (a, b, c) are affinely dependent (zero-area triangle).
bool triangle_degenerate(const PointD& a, const PointD& b, const PointD& c);

// True when p lies in the closed triangle (a, b, c); the triangle must be
// non-degenerate.
bool point_in_triangle(const PointD& p, const PointD& a, const PointD& b,
                       const PointD& c);

struct SegTriHit {
  enum class Kind { None, Point, Segment };
  Kind kind = Kind::None;
  // Parameters along [a, b]: t0 for Point, [t0, t1] with t0 < t1 for Segment.
  Rational t0, t1;
};

// Exact intersection of closed segment [a,b] with closed non-degenerate
// triangle t = (t0, t1, t2), reported as a parameter range on the segment.
SegTriHit segment_triangle_intersect(const PointD& a, const PointD& b,
                                     const PointD& t0, const PointD& t1,
                                     const PointD& t2);

// Decides whether two triangles meet anywhere outside their declared shared
// simplex: `shared` lists (i, j) with A[i] == B[j] and may name zero, one
// (shared vertex) or two (shared edge) pairs.  Throws Error on degenerate
// input or when a declared pair does not match coordinates.
bool triangle_triangle_improper(const std::array<PointD, 3>& a,
                                const std::array<PointD, 3>& b,
                                const std::vector<std::pair<int, int>>& shared);

}  // namespace plspan
