#pragma once

#include <string>
#include <vector>

#include <plspan/rational.hpp>

namespace plspan {

// Lower bounds on the triangle count of any PL surface spanning a knotted
// polygon. Fractional expressions are rounded up: a triangle count is an
// integer.

// ceil(4g + 1) for a genus g >= 0. Oriented genus must be an integer;
// non-oriented genus may be a half-integer.
long long lb_genus(const Rational& g, bool oriented = true);

// |w| + 1 for a diagram writhe w.
long long lb_writhe(long long w);

// max(0, ceil((|w| - 3n) / 16)): a floor on the crossing count of any
// diagram of an n-stick polygon with writhe w. Requires n >= 3.
long long lb_crossings(long long w, long long n);

// Genus (p - 1)(q - 1)/2 of the (p, q) torus knot. Throws unless
// gcd(p, q) == 1 and p, q >= 1.
Rational torus_genus(long long p, long long q);

// Quadratic lower bounds attained by specific families: the 2m-stick torus
// polygons force at least n^2/2 - 3n + 5 triangles, and for every n there is
// an n-stick polygon forcing at least n^2/36.
Rational lb_torus_quadratic(long long n);
Rational lb_writhe_quadratic(long long n);

// Upper bounds realized by the Seifert construction: the per-run ledger
// 3n + 14c, and the global worst case 7n^2 - 18n over all diagrams.
long long ub_ledger(long long n, long long c);
long long ub_global(long long n);

// Isoperimetric ratio bench. Each row records one constructed surface; the
// report fills in t/n^2 and checks every ratio against the upper band 7.
struct GammaRow {
  std::string family;
  long long m = 0;
  long long n = 0;
  long long t = 0;
  Rational ratio;
};

struct GammaReport {
  std::vector<GammaRow> rows;
  Rational max_ratio;
  bool band_ok = true;
};

GammaReport gamma_report(std::vector<GammaRow> rows);

}  // namespace plspan
