#pragma once

#include <cstdint>

#include <plspan/polygon.hpp>

namespace plspan {

// Point exactly on the circle of the given radius at angle 2*pi*a, obtained
// by snapping the tangent half-angle to a fraction with denominator `den`.
Vec2Q rational_circle_point(const Rational& a, const Rational& radius,
                            long long den);

// Convex n-gon inscribed in the unit circle, lifted to height z = 1 in R^3.
Polygon gen_planar_ngon(int n);

// 2m-stick polygon realizing the (m, m-1) torus knot: m vertices on a top
// circle of radius 2 at z = +1 interleaved with m vertices on a bottom
// circle of radius 1 at z = -1, the bottom circle phase-shifted so the
// sticks weave.  Requires m >= 3; validated for embeddedness.
Polygon gen_torus_stick(int m);

// (6m+3)-stick polygon whose standard-frame diagram has m(m+1) crossings,
// all positive, hence writhe exactly m(m+1).  The edge count, general
// position, crossing signs, and writhe are all verified at construction
// time; any mismatch throws ValidationFailedError.
Polygon gen_writhe_family(int m);

// Rejection-samples integer-coordinate n-gons in [-box, box]^dim until one
// passes validation.  Deterministic per seed.  Throws
// ExhaustedAttemptsError when max_attempts candidates all fail.
Polygon gen_random_polygon(int n, int dim, uint64_t seed, long long box = 10,
                           int max_attempts = 1000);

}  // namespace plspan
