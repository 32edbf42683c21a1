#include <plspan/bounds.hpp>

#include <cstdlib>
#include <numeric>
#include <utility>

#include <plspan/errors.hpp>

namespace plspan {

long long lb_genus(const Rational& g, bool oriented) {
  if (g.sign() < 0) throw Error("lb_genus: genus must be non-negative");
  if (oriented && !g.is_integer())
    throw Error("lb_genus: oriented genus must be an integer");
  return (Rational(4) * g + Rational(1)).ceil_ll();
}

long long lb_writhe(long long w) { return std::llabs(w) + 1; }

long long lb_crossings(long long w, long long n) {
  if (n < 3) throw Error("lb_crossings: polygon needs at least 3 edges");
  long long c = frac(std::llabs(w) - 3 * n, 16).ceil_ll();
  return c > 0 ? c : 0;
}

Rational torus_genus(long long p, long long q) {
  if (p < 1 || q < 1) throw Error("torus_genus: p and q must be positive");
  if (std::gcd(p, q) != 1) throw Error("torus_genus: p and q must be coprime");
  return frac((p - 1) * (q - 1), 2);
}

Rational lb_torus_quadratic(long long n) {
  return frac(n * n, 2) - Rational(3 * n) + Rational(5);
}

Rational lb_writhe_quadratic(long long n) { return frac(n * n, 36); }

long long ub_ledger(long long n, long long c) { return 3 * n + 14 * c; }

long long ub_global(long long n) { return 7 * n * n - 18 * n; }

GammaReport gamma_report(std::vector<GammaRow> rows) {
  GammaReport out;
  out.max_ratio = Rational(0);
  for (GammaRow& row : rows) {
    row.ratio = frac(row.t, row.n * row.n);
    if (out.max_ratio < row.ratio) out.max_ratio = row.ratio;
    if (Rational(7) < row.ratio) out.band_ok = false;
  }
  out.rows = std::move(rows);
  return out;
}

}  // namespace plspan
