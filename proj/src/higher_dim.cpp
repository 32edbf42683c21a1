#include <plspan/higher_dim.hpp>

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include <plspan/errors.hpp>
#include <plspan/families.hpp>
#include <plspan/rng.hpp>

namespace plspan {

bool FlatSpan::contains(const PointD& x) const {
  const Eigen::Index d = base.size();
  if (x.size() != d) throw Error("FlatSpan::contains: dimension mismatch");
  MatQ a(d, static_cast<Eigen::Index>(dirs.size()));
  for (size_t c = 0; c < dirs.size(); ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      a(r, static_cast<Eigen::Index>(c)) = dirs[c](r);
  return solve_linear(std::move(a), x - base).consistent;
}

std::vector<FlatSpan> build_bad_set(const Polygon& p) {
  const int n = p.size();
  std::vector<FlatSpan> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      FlatSpan f;
      f.base = p.vertex(i);
      f.dirs.push_back(p.vertex(i + 1) - p.vertex(i));
      f.dirs.push_back(p.vertex(j) - p.vertex(i));
      f.dirs.push_back(p.vertex(j + 1) - p.vertex(i));
      out.push_back(std::move(f));
    }
  }
  return out;
}

namespace {

// Smallest integer box [-b, b] containing every coordinate of P.
long long coordinate_box(const Polygon& p) {
  Rational m(0);
  for (const PointD& v : p.vertices())
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (m < abs(v(k))) m = abs(v(k));
  return m.ceil_ll();
}

void require_clean(const std::vector<std::string>& findings,
                   const std::string& who) {
  if (!findings.empty())
    throw ValidationFailedError(who + ": " + findings.front());
}

}  // namespace

ConeResult cone_spanning_disk(const Polygon& p, uint64_t seed,
                              int max_attempts) {
  const int d = p.dim();
  const int n = p.size();
  if (d < 5)
    throw Error("cone_spanning_disk: ambient dimension must be at least 5");

  const std::vector<FlatSpan> bad = build_bad_set(p);
  const long long base_box = coordinate_box(p) + 2;
  Rng rng(seed);
  std::string last = "no candidate tried";

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const long long box = base_box + attempt / 16;
    PointD apex(d);
    for (int k = 0; k < d; ++k) apex(k) = Rational(rng.uniform(-box, box));

    bool guided_out = true;
    for (const FlatSpan& f : bad)
      if (f.contains(apex)) {
        guided_out = false;
        break;
      }
    if (!guided_out) {
      last = "candidate apex lies on a flat spanned by two edge lines";
      continue;
    }

    Mesh m;
    m.dim = d;
    m.vertices = p.vertices();
    m.vertices.push_back(apex);
    for (int j = 0; j < n; ++j)
      m.triangles.push_back({j, (j + 1) % n, n});

    try {
      require_clean(validate_mesh_basic(m), "structure");
      TopologyReport topo = topology(m);
      if (!topo.manifold)
        throw ValidationFailedError("topology: " + topo.witness);
      if (!topo.orientable)
        throw ValidationFailedError("topology: not orientable");
      if (topo.chi != 1 || topo.boundary_cycles.size() != 1)
        throw ValidationFailedError("topology: not a disk");
      BoundaryCheck bc = check_boundary_subdivision(m, p);
      if (!bc.ok) throw ValidationFailedError("boundary: " + bc.reason);
      if (static_cast<int>(bc.cycle.size()) != n)
        throw ValidationFailedError("boundary: unexpected subdivision");
      if (!check_embedded(m).empty())
        throw ValidationFailedError("embedding: improper triangle pair");
      return ConeResult{std::move(m), std::move(apex), attempt + 1};
    } catch (const ValidationFailedError& e) {
      last = e.what();
    }
  }
  throw ExhaustedAttemptsError("cone_spanning_disk: no apex accepted in " +
                               std::to_string(max_attempts) +
                               " attempts; last failure: " + last);
}

Mesh annulus_mesh(const Polygon& p, const std::vector<PointD>& ring,
                  const PointD& apex) {
  const int n = p.size();
  if (static_cast<int>(ring.size()) != n)
    throw Error("annulus_mesh: ring must match the polygon's vertex count");
  Mesh m;
  m.dim = p.dim();
  m.vertices = p.vertices();
  m.vertices.insert(m.vertices.end(), ring.begin(), ring.end());
  m.vertices.push_back(apex);
  const int apex_id = 2 * n;
  for (int j = 0; j < n; ++j) {
    const int jn = (j + 1) % n;
    m.triangles.push_back({j, jn, n + jn});
    m.triangles.push_back({j, n + j, n + jn});
    m.triangles.push_back({n + j, n + jn, apex_id});
  }
  return m;
}

AnnulusResult annulus_spanning_disk4(const Polygon& p, uint64_t seed,
                                     int max_attempts) {
  if (p.dim() != 4)
    throw Error("annulus_spanning_disk4: ambient dimension must be 4");
  const int n = p.size();

  // Q lives in a 2-plane of the hyperplane x_0 = c with c beyond P's
  // coordinate-0 range; the gap is the hull-disjointness certificate.
  Rational max0 = p.vertex(0)(0);
  for (const PointD& v : p.vertices())
    if (max0 < v(0)) max0 = v(0);
  const long long first_c = max0.ceil_ll() + 2;

  std::array<long long, 3> center{};
  for (int k = 1; k < 4; ++k) {
    Rational s(0);
    for (const PointD& v : p.vertices()) s += v(k);
    center[static_cast<size_t>(k - 1)] = (s / Rational(n)).floor_ll();
  }

  static constexpr std::array<std::array<int, 2>, 3> kPlanes{
      {{1, 2}, {1, 3}, {2, 3}}};
  Rng rng(seed);
  std::string last = "no candidate tried";

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const Rational c(first_c + attempt);
    const auto axes = kPlanes[static_cast<size_t>(attempt % 3)];
    std::array<long long, 3> jitter{};
    for (auto& j : jitter) j = rng.uniform(-attempt, attempt);

    std::vector<PointD> ring;
    ring.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      Vec2Q cp = rational_circle_point(frac(j, n), Rational(3), 64);
      PointD w(4);
      w(0) = c;
      for (int k = 1; k < 4; ++k)
        w(k) = Rational(center[static_cast<size_t>(k - 1)] +
                        jitter[static_cast<size_t>(k - 1)]);
      w(axes[0]) += cp(0);
      w(axes[1]) += cp(1);
      ring.push_back(std::move(w));
    }
    PointD apex(4);
    for (int k = 0; k < 4; ++k) {
      Rational s(0);
      for (const PointD& w : ring) s += w(k);
      apex(k) = s / Rational(n);
    }

    // Defensive re-check of the separation certificate.
    for (const PointD& w : ring)
      if (!(max0 < w(0)))
        throw Error("annulus_spanning_disk4: separation certificate broken");

    Mesh m = annulus_mesh(p, ring, apex);
    try {
      require_clean(validate_mesh_basic(m), "structure");
      TopologyReport topo = topology(m);
      if (!topo.manifold)
        throw ValidationFailedError("topology: " + topo.witness);
      if (!topo.orientable)
        throw ValidationFailedError("topology: not orientable");
      if (topo.chi != 1 || topo.boundary_cycles.size() != 1)
        throw ValidationFailedError("topology: not a disk");
      BoundaryCheck bc = check_boundary_subdivision(m, p);
      if (!bc.ok) throw ValidationFailedError("boundary: " + bc.reason);
      if (static_cast<int>(bc.cycle.size()) != n)
        throw ValidationFailedError("boundary: unexpected subdivision");
      require_clean(check_complementary(m, p), "complementarity");
      return AnnulusResult{std::move(m), std::move(ring), std::move(apex),
                           attempt + 1};
    } catch (const ValidationFailedError& e) {
      last = e.what();
    }
  }
  throw ExhaustedAttemptsError("annulus_spanning_disk4: no ring accepted in " +
                               std::to_string(max_attempts) +
                               " attempts; last failure: " + last);
}

namespace {

Embed4Result embed_with_direction(const Polygon& p, const VecQ& k,
                                  uint64_t seed, SmoothingStrategy strategy) {
  const int n = p.size();

  std::vector<Rational> h;
  h.reserve(static_cast<size_t>(n));
  for (const PointD& v : p.vertices()) h.push_back(dot(k, v));
  Rational hmin = h[0];
  bool all_equal = true;
  for (const Rational& x : h) {
    if (x != h[0]) all_equal = false;
    if (x < hmin) hmin = x;
  }
  if (all_equal)
    throw ValidationFailedError(
        "polygon lies in a level hyperplane of the direction; wall would "
        "degenerate");

  const Rational kk = dot(k, k);
  const Rational c = hmin - Rational(1);
  const PointD base = (c / kk) * k;

  // Chart on the hyperplane x.k = c: columns of b span the kernel of k.
  MatQ krow(1, 4);
  for (int i = 0; i < 4; ++i) krow(0, i) = k(i);
  VecQ zero(1);
  zero(0) = Rational(0);
  LinearSolution ks = solve_linear(krow, zero);
  if (!ks.consistent || ks.kernel.size() != 3)
    throw Error("embed_spanning_surface4: kernel construction failed");
  MatQ b(4, 3);
  for (int col = 0; col < 3; ++col)
    for (int row = 0; row < 4; ++row)
      b(row, col) = ks.kernel[static_cast<size_t>(col)](row);

  // Project P along k onto the hyperplane and read it in chart coordinates.
  std::vector<PointD> chart;
  chart.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    PointD star =
        p.vertex(i) + ((c - h[static_cast<size_t>(i)]) / kk) * k - base;
    LinearSolution sol = solve_linear(b, star);
    if (!sol.unique())
      throw Error("embed_spanning_surface4: chart solve not unique");
    chart.push_back(sol.particular);
  }
  PolygonValidation val = validate_polygon(chart);
  if (!val.ok())
    throw ValidationFailedError("projected polygon invalid: " +
                                val.issues.front().str());

  SeifertResult sr = seifert_pipeline(*val.polygon, seed, 64, strategy);

  // Bring the hyperplane surface back over P*: undo the pipeline's height
  // translation, then map chart coordinates into R^4.
  Embed4Result out;
  out.mesh.dim = 4;
  const Mesh& m3 = sr.surface.mesh;
  for (const PointD& y : m3.vertices) {
    VecQ y0 = y - sr.translation;
    PointD x(4);
    for (int row = 0; row < 4; ++row) {
      Rational s = base(row);
      for (int col = 0; col < 3; ++col) s += b(row, col) * y0(col);
      x(row) = s;
    }
    out.mesh.vertices.push_back(std::move(x));
  }
  out.mesh.triangles = m3.triangles;
  out.t_seifert = sr.surface.ledger.total;

  // Vertical wall: two triangles per subdivided boundary edge, rising from
  // the hyperplane surface's boundary to P itself.
  const std::vector<int>& cycle = sr.surface.boundary_cycle;
  const auto& tags = sr.surface.boundary_tags;
  const int np = static_cast<int>(cycle.size());
  const int v3 = static_cast<int>(out.mesh.vertices.size());
  for (int i = 0; i < np; ++i) {
    const auto& tag = tags[static_cast<size_t>(i)];
    out.mesh.vertices.push_back(p.edge_point(tag.first, tag.second));
  }
  for (int i = 0; i < np; ++i) {
    const int in = (i + 1) % np;
    const int qa = cycle[static_cast<size_t>(i)];
    const int qb = cycle[static_cast<size_t>(in)];
    const int pa = v3 + i;
    const int pb = v3 + in;
    if (lex_less(out.mesh.vertices[static_cast<size_t>(qa)],
                 out.mesh.vertices[static_cast<size_t>(qb)])) {
      out.mesh.triangles.push_back({qa, qb, pb});
      out.mesh.triangles.push_back({qa, pb, pa});
    } else {
      out.mesh.triangles.push_back({qa, qb, pa});
      out.mesh.triangles.push_back({qb, pb, pa});
    }
  }
  out.t_wall = 2LL * np;
  out.t_total = out.mesh.triangle_count();
  if (out.t_total != out.t_seifert + out.t_wall)
    throw Error("embed_spanning_surface4: triangle ledger mismatch");

  require_clean(validate_mesh_basic(out.mesh), "structure");
  if (!check_embedded(out.mesh).empty())
    throw ValidationFailedError("embedding: improper triangle pair");
  BoundaryCheck bc = check_boundary_subdivision(out.mesh, p);
  if (!bc.ok) throw ValidationFailedError("boundary: " + bc.reason);
  if (out.t_total > 24LL * n * n)
    throw ValidationFailedError("triangle budget 24 n^2 exceeded");

  out.seifert = std::move(sr);
  return out;
}

}  // namespace

Embed4Result embed_spanning_surface4(const Polygon& p, uint64_t seed,
                                     int max_attempts,
                                     SmoothingStrategy strategy) {
  if (p.dim() != 4)
    throw Error("embed_spanning_surface4: ambient dimension must be 4");
  Rng rng(seed);
  std::string last = "no direction tried";
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    VecQ k(4);
    if (attempt == 0) {
      k << Rational(0), Rational(0), Rational(0), Rational(1);
    } else {
      const long long box = 3 + attempt / 8;
      for (int i = 0; i < 4; ++i) k(i) = Rational(rng.uniform(-box, box));
      if (is_zero_vec(k)) continue;
    }
    try {
      Embed4Result r = embed_with_direction(p, k, seed, strategy);
      r.attempts = attempt + 1;
      return r;
    } catch (const Error& e) {
      last = e.what();
    }
  }
  throw ExhaustedAttemptsError(
      "embed_spanning_surface4: no direction accepted in " +
      std::to_string(max_attempts) + " attempts; last failure: " + last);
}

}  // namespace plspan
