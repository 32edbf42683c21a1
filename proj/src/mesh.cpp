#include "plspan/mesh.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "plspan/predicates.hpp"

namespace plspan {
namespace {

std::array<int, 3> sorted_indices(const std::array<int, 3>& t) {
  std::array<int, 3> s = t;
  std::sort(s.begin(), s.end());
  return s;
}

struct EdgeUse {
  int tri = -1;
  bool min_to_max = false;  // directed edge runs min(a,b) -> max(a,b)
};

struct EdgeInfo {
  int count = 0;
  EdgeUse use[2];
};

using EdgeMap = std::map<std::pair<int, int>, EdgeInfo>;

EdgeMap build_edge_map(const Mesh& m, bool* overfull, std::string* witness) {
  EdgeMap edges;
  *overfull = false;
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri[static_cast<size_t>(k)];
      int b = tri[static_cast<size_t>((k + 1) % 3)];
      auto key = std::minmax(a, b);
      EdgeInfo& info = edges[{key.first, key.second}];
      if (info.count < 2) {
        info.use[info.count].tri = static_cast<int>(t);
        info.use[info.count].min_to_max = a < b;
      } else if (!*overfull) {
        *overfull = true;
        *witness = "edge (" + std::to_string(key.first) + "," +
                   std::to_string(key.second) + ") lies in more than 2 triangles";
      }
      ++info.count;
    }
  }
  return edges;
}

int parse_threads_env() {
  const char* env = std::getenv("PLSPAN_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

}  // namespace

std::vector<std::string> validate_mesh_basic(const Mesh& m) {
  std::vector<std::string> issues;
  const int nv = static_cast<int>(m.vertices.size());

  for (size_t i = 0; i < m.vertices.size(); ++i) {
    if (m.vertices[i].size() != static_cast<Eigen::Index>(m.dim)) {
      issues.push_back("vertex " + std::to_string(i) +
                       " has wrong coordinate count");
      return issues;
    }
  }

  std::vector<bool> referenced(static_cast<size_t>(nv), false);
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    bool in_range = true;
    for (int idx : tri) {
      if (idx < 0 || idx >= nv) {
        issues.push_back("triangle " + std::to_string(t) +
                         " has an index out of range");
        in_range = false;
        break;
      }
    }
    if (!in_range) continue;
    for (int idx : tri) referenced[static_cast<size_t>(idx)] = true;
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      issues.push_back("triangle " + std::to_string(t) +
                       " repeats a vertex index");
      continue;
    }
    if (triangle_degenerate(m.vertices[static_cast<size_t>(tri[0])],
                            m.vertices[static_cast<size_t>(tri[1])],
                            m.vertices[static_cast<size_t>(tri[2])]))
      issues.push_back("triangle " + std::to_string(t) + " has zero area");
  }

  std::map<std::array<int, 3>, int> seen;
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    auto key = sorted_indices(m.triangles[t]);
    auto [it, inserted] = seen.try_emplace(key, static_cast<int>(t));
    if (!inserted)
      issues.push_back("triangles " + std::to_string(it->second) + " and " +
                       std::to_string(t) + " have the same vertex set");
  }

  std::vector<int> order(static_cast<size_t>(nv));
  for (int i = 0; i < nv; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lex_less(m.vertices[static_cast<size_t>(a)],
                 m.vertices[static_cast<size_t>(b)]))
      return true;
    if (lex_less(m.vertices[static_cast<size_t>(b)],
                 m.vertices[static_cast<size_t>(a)]))
      return false;
    return a < b;
  });
  for (int i = 0; i + 1 < nv; ++i) {
    int a = order[static_cast<size_t>(i)], b = order[static_cast<size_t>(i + 1)];
    if (points_equal(m.vertices[static_cast<size_t>(a)],
                     m.vertices[static_cast<size_t>(b)]))
      issues.push_back("vertices " + std::to_string(std::min(a, b)) + " and " +
                       std::to_string(std::max(a, b)) +
                       " have identical coordinates");
  }

  for (int i = 0; i < nv; ++i) {
    if (!referenced[static_cast<size_t>(i)])
      issues.push_back("vertex " + std::to_string(i) + " is not referenced");
  }
  return issues;
}

TopologyReport topology(const Mesh& m) {
  TopologyReport rep;
  rep.v = static_cast<long long>(m.vertices.size());
  rep.f = static_cast<long long>(m.triangles.size());

  bool overfull = false;
  EdgeMap edges = build_edge_map(m, &overfull, &rep.witness);
  rep.e = static_cast<long long>(edges.size());
  rep.chi = rep.v - rep.e + rep.f;
  for (const auto& [key, info] : edges)
    if (info.count == 1) ++rep.boundary_edge_count;
  rep.three_f_identity = 3 * rep.f == 2 * rep.e - rep.boundary_edge_count;
  if (overfull) {
    rep.manifold = false;
    return rep;
  }

  // Vertex links: at each vertex the incident triangles must form a single
  // fan (path for boundary vertices, cycle for interior ones).
  std::vector<std::vector<int>> tris_at(m.vertices.size());
  for (size_t t = 0; t < m.triangles.size(); ++t)
    for (int idx : m.triangles[t])
      tris_at[static_cast<size_t>(idx)].push_back(static_cast<int>(t));
  std::vector<int> bnd_count(m.vertices.size(), 0);
  for (const auto& [key, info] : edges) {
    if (info.count != 1) continue;
    ++bnd_count[static_cast<size_t>(key.first)];
    ++bnd_count[static_cast<size_t>(key.second)];
  }

  for (size_t v = 0; v < m.vertices.size(); ++v) {
    const auto& local = tris_at[v];
    if (local.empty()) continue;
    int boundary_here = bnd_count[v];
    if (boundary_here != 0 && boundary_here != 2) {
      rep.manifold = false;
      rep.witness = "vertex " + std::to_string(v) + " has " +
                    std::to_string(boundary_here) + " boundary edges";
      return rep;
    }
    // Connectivity of the fan via multiplicity-2 edges at v.
    std::map<int, int> pos;
    for (size_t i = 0; i < local.size(); ++i) pos[local[i]] = static_cast<int>(i);
    std::vector<bool> seen(local.size(), false);
    std::vector<int> stack = {local[0]};
    seen[0] = true;
    size_t visited = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      const auto& tri = m.triangles[static_cast<size_t>(t)];
      for (int k = 0; k < 3; ++k) {
        int a = tri[static_cast<size_t>(k)];
        int b = tri[static_cast<size_t>((k + 1) % 3)];
        if (a != static_cast<int>(v) && b != static_cast<int>(v)) continue;
        auto key = std::minmax(a, b);
        const EdgeInfo& info = edges.at({key.first, key.second});
        if (info.count != 2) continue;
        for (int u = 0; u < 2; ++u) {
          int other = info.use[u].tri;
          if (other == t) continue;
          auto it = pos.find(other);
          if (it == pos.end()) continue;
          if (!seen[static_cast<size_t>(it->second)]) {
            seen[static_cast<size_t>(it->second)] = true;
            ++visited;
            stack.push_back(other);
          }
        }
      }
    }
    if (visited != local.size()) {
      rep.manifold = false;
      rep.witness = "vertex " + std::to_string(v) + " link is disconnected";
      return rep;
    }
  }
  rep.manifold = true;

  // Orientability: propagate orientation flips across interior edges.
  std::vector<int> flip(m.triangles.size(), -1);  // -1 unvisited, else 0/1
  rep.orientable = true;
  for (size_t start = 0; start < m.triangles.size() && rep.orientable; ++start) {
    if (flip[start] != -1) continue;
    flip[start] = 0;
    std::vector<int> stack = {static_cast<int>(start)};
    while (!stack.empty() && rep.orientable) {
      int t = stack.back();
      stack.pop_back();
      const auto& tri = m.triangles[static_cast<size_t>(t)];
      for (int k = 0; k < 3; ++k) {
        int a = tri[static_cast<size_t>(k)];
        int b = tri[static_cast<size_t>((k + 1) % 3)];
        auto key = std::minmax(a, b);
        const EdgeInfo& info = edges.at({key.first, key.second});
        if (info.count != 2) continue;
        int self = info.use[0].tri == t ? 0 : 1;
        int other = 1 - self;
        int ot = info.use[other].tri;
        // Effective directions must disagree for a consistent orientation.
        bool self_dir = info.use[self].min_to_max != (flip[static_cast<size_t>(t)] == 1);
        bool other_needed_dir = !self_dir;
        int needed_flip =
            info.use[other].min_to_max == other_needed_dir ? 0 : 1;
        if (flip[static_cast<size_t>(ot)] == -1) {
          flip[static_cast<size_t>(ot)] = needed_flip;
          stack.push_back(ot);
        } else if (flip[static_cast<size_t>(ot)] != needed_flip) {
          rep.orientable = false;
          rep.witness = "orientation conflict across edge (" +
                        std::to_string(key.first) + "," +
                        std::to_string(key.second) + ")";
          break;
        }
      }
    }
  }

  // Boundary cycles from multiplicity-1 edges; every boundary vertex has
  // exactly two boundary edges (already enforced by the link check).
  std::map<int, std::vector<int>> bnd_adj;
  for (const auto& [key, info] : edges) {
    if (info.count != 1) continue;
    bnd_adj[key.first].push_back(key.second);
    bnd_adj[key.second].push_back(key.first);
  }
  std::set<int> unvisited;
  for (const auto& [v, nbrs] : bnd_adj) unvisited.insert(v);
  while (!unvisited.empty()) {
    int start = *unvisited.begin();
    std::vector<int> cycle;
    int prev = -1, cur = start;
    do {
      cycle.push_back(cur);
      unvisited.erase(cur);
      const auto& nbrs = bnd_adj.at(cur);
      int nxt = (nbrs[0] != prev) ? nbrs[0] : nbrs[1];
      prev = cur;
      cur = nxt;
    } while (cur != start);
    rep.boundary_cycles.push_back(std::move(cycle));
  }

  if (rep.orientable) {
    long long b = static_cast<long long>(rep.boundary_cycles.size());
    long long numer = 2 - rep.chi - b;
    if (numer >= 0 && numer % 2 == 0) {
      rep.genus = numer / 2;
      rep.genus_valid = true;
    }
  }
  return rep;
}

std::vector<ImproperPair> check_embedded(const Mesh& m, int threads) {
  if (threads <= 0) threads = parse_threads_env();
  const size_t nt = m.triangles.size();

  // Exact axis-aligned bounding boxes for the cheap reject.
  std::vector<PointD> lo(nt), hi(nt);
  for (size_t t = 0; t < nt; ++t) {
    const auto& tri = m.triangles[t];
    PointD mn = m.vertices[static_cast<size_t>(tri[0])];
    PointD mx = mn;
    for (int k = 1; k < 3; ++k) {
      const PointD& p = m.vertices[static_cast<size_t>(tri[static_cast<size_t>(k)])];
      for (Eigen::Index c = 0; c < p.size(); ++c) {
        if (p(c) < mn(c)) mn(c) = p(c);
        if (p(c) > mx(c)) mx(c) = p(c);
      }
    }
    lo[t] = std::move(mn);
    hi[t] = std::move(mx);
  }

  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < nt; ++i) {
    for (size_t j = i + 1; j < nt; ++j) {
      bool overlap = true;
      for (Eigen::Index c = 0; c < lo[i].size() && overlap; ++c)
        overlap = lo[i](c) <= hi[j](c) && lo[j](c) <= hi[i](c);
      if (overlap) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }

  auto test_pair = [&](const std::pair<int, int>& pr) -> bool {
    const auto& ta = m.triangles[static_cast<size_t>(pr.first)];
    const auto& tb = m.triangles[static_cast<size_t>(pr.second)];
    std::vector<std::pair<int, int>> shared;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (ta[static_cast<size_t>(i)] == tb[static_cast<size_t>(j)])
          shared.emplace_back(i, j);
    if (shared.size() >= 3) return true;  // duplicate triangle
    std::array<PointD, 3> pa = {m.vertices[static_cast<size_t>(ta[0])],
                                m.vertices[static_cast<size_t>(ta[1])],
                                m.vertices[static_cast<size_t>(ta[2])]};
    std::array<PointD, 3> pb = {m.vertices[static_cast<size_t>(tb[0])],
                                m.vertices[static_cast<size_t>(tb[1])],
                                m.vertices[static_cast<size_t>(tb[2])]};
    return triangle_triangle_improper(pa, pb, shared);
  };

  std::vector<ImproperPair> found;
  if (threads <= 1 || pairs.size() < 64) {
    for (const auto& pr : pairs)
      if (test_pair(pr)) found.push_back({pr.first, pr.second});
  } else {
    size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), pairs.size());
    std::vector<std::vector<ImproperPair>> results(nthreads);
    std::vector<std::thread> workers;
    size_t chunk = (pairs.size() + nthreads - 1) / nthreads;
    for (size_t w = 0; w < nthreads; ++w) {
      size_t begin = w * chunk, end = std::min(pairs.size(), begin + chunk);
      workers.emplace_back([&, w, begin, end] {
        for (size_t k = begin; k < end; ++k)
          if (test_pair(pairs[k]))
            results[w].push_back({pairs[k].first, pairs[k].second});
      });
    }
    for (auto& th : workers) th.join();
    for (const auto& r : results) found.insert(found.end(), r.begin(), r.end());
  }
  std::sort(found.begin(), found.end(), [](const ImproperPair& a,
                                           const ImproperPair& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  return found;
}

std::vector<std::string> check_complementary(const Mesh& m, const Polygon& p) {
  std::vector<std::string> violations;

  bool overfull = false;
  std::string witness;
  EdgeMap edges = build_edge_map(m, &overfull, &witness);
  std::set<std::pair<int, int>> boundary_edges;
  std::set<int> boundary_vertices;
  for (const auto& [key, info] : edges) {
    if (info.count == 1) {
      boundary_edges.insert(key);
      boundary_vertices.insert(key.first);
      boundary_vertices.insert(key.second);
    }
  }

  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    std::vector<std::pair<int, int>> own_bedges;
    std::vector<int> own_bverts;
    for (int k = 0; k < 3; ++k) {
      int a = tri[static_cast<size_t>(k)];
      int b = tri[static_cast<size_t>((k + 1) % 3)];
      auto key = std::minmax(a, b);
      if (boundary_edges.count({key.first, key.second}))
        own_bedges.emplace_back(key.first, key.second);
      if (boundary_vertices.count(a)) own_bverts.push_back(a);
    }
    const PointD& t0 = m.vertices[static_cast<size_t>(tri[0])];
    const PointD& t1 = m.vertices[static_cast<size_t>(tri[1])];
    const PointD& t2 = m.vertices[static_cast<size_t>(tri[2])];

    for (int e = 0; e < p.size(); ++e) {
      const PointD& a = p.vertex(e);
      const PointD& b = p.vertex(e + 1);
      SegTriHit hit = segment_triangle_intersect(a, b, t0, t1, t2);
      if (hit.kind == SegTriHit::Kind::None) continue;

      auto allowed_point = [&](const Rational& s) {
        PointD x = a + s * (b - a);
        for (int vid : own_bverts)
          if (points_equal(x, m.vertices[static_cast<size_t>(vid)])) return true;
        for (const auto& be : own_bedges)
          if (point_on_segment(x, m.vertices[static_cast<size_t>(be.first)],
                               m.vertices[static_cast<size_t>(be.second)]))
            return true;
        return false;
      };

      bool ok = true;
      if (hit.kind == SegTriHit::Kind::Point) {
        ok = allowed_point(hit.t0);
      } else {
        // Positive-length contact: must be covered by the triangle's own
        // boundary edges, which then lie on the line of (a, b).
        std::vector<std::pair<Rational, Rational>> cover;
        for (const auto& be : own_bedges) {
          const PointD& q0 = m.vertices[static_cast<size_t>(be.first)];
          const PointD& q1 = m.vertices[static_cast<size_t>(be.second)];
          SegSegHit ss = seg_seg_intersect(a, b, q0, q1);
          if (ss.kind == SegSegHit::Kind::Overlap) {
            Rational u0 = segment_param(q0, a, b);
            Rational u1 = segment_param(q1, a, b);
            if (u0 > u1) swap(u0, u1);
            if (u0 < Rational(0)) u0 = 0;
            if (u1 > Rational(1)) u1 = 1;
            if (u0 <= u1) cover.emplace_back(u0, u1);
          }
        }
        std::sort(cover.begin(), cover.end());
        Rational reach = hit.t0;
        for (const auto& [u0, u1] : cover) {
          if (reach >= hit.t1) break;
          if (u0 > reach) break;  // gap
          if (u1 > reach) reach = u1;
        }
        ok = reach >= hit.t1;
      }
      if (!ok)
        violations.push_back("triangle " + std::to_string(t) +
                             " meets boundary edge " + std::to_string(e) +
                             " outside its boundary simplices");
    }
  }
  return violations;
}

BoundaryCheck check_boundary_subdivision(const Mesh& m, const Polygon& p) {
  BoundaryCheck out;
  TopologyReport topo = topology(m);
  if (!topo.manifold) {
    out.reason = "mesh is not manifold: " + topo.witness;
    return out;
  }
  if (topo.boundary_cycles.size() != 1) {
    out.reason = "expected one boundary cycle, found " +
                 std::to_string(topo.boundary_cycles.size());
    return out;
  }
  const std::vector<int>& cycle = topo.boundary_cycles[0];
  const int n = p.size();

  std::vector<std::pair<int, Rational>> tags;
  for (int vid : cycle) {
    const PointD& x = m.vertices[static_cast<size_t>(vid)];
    bool tagged = false;
    for (int e = 0; e < n && !tagged; ++e) {
      if (!point_on_segment(x, p.vertex(e), p.vertex(e + 1))) continue;
      Rational t = segment_param(x, p.vertex(e), p.vertex(e + 1));
      if (t == Rational(1)) continue;  // canonicalized as (e+1, 0)
      tags.emplace_back(e, t);
      tagged = true;
    }
    if (!tagged) {
      out.reason = "boundary vertex " + std::to_string(vid) +
                   " does not lie on the polygon";
      return out;
    }
  }

  auto key = [&](size_t i) {
    return Rational(tags[i].first) + tags[i].second;
  };
  const size_t len = tags.size();
  for (size_t i = 0; i < len; ++i)
    for (size_t j = i + 1; j < len; ++j)
      if (key(i) == key(j)) {
        out.reason = "boundary visits the same polygon point twice";
        return out;
      }

  size_t drops = 0, rises = 0;
  for (size_t i = 0; i < len; ++i) {
    Rational a = key(i), b = key((i + 1) % len);
    if (b < a) ++drops;
    if (b > a) ++rises;
  }
  if (drops != 1 && rises != 1) {
    out.reason = "boundary order does not follow the polygon traversal";
    return out;
  }

  std::set<int> vertex_hits;
  for (const auto& [e, t] : tags)
    if (t.is_zero()) vertex_hits.insert(e);
  if (static_cast<int>(vertex_hits.size()) != n) {
    out.reason = "not every polygon vertex appears on the boundary";
    return out;
  }

  out.ok = true;
  out.cycle = cycle;
  out.tags = std::move(tags);
  return out;
}

void export_off(const Mesh& m, std::ostream& out, int precision) {
  if (m.dim != 3) throw Error("OFF export requires dimension 3");
  out << "OFF\n" << m.vertices.size() << " " << m.triangles.size() << " 0\n";
  for (const PointD& v : m.vertices) {
    for (Eigen::Index c = 0; c < v.size(); ++c) {
      if (c) out << " ";
      out << v(c).decimal(precision);
    }
    out << "\n";
  }
  for (const auto& tri : m.triangles)
    out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
}

nlohmann::ordered_json mesh_to_json(const Mesh& m) {
  nlohmann::ordered_json j;
  j["dim"] = m.dim;
  auto verts = nlohmann::ordered_json::array();
  for (const PointD& v : m.vertices) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < v.size(); ++c) row.push_back(v(c).str());
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  auto tris = nlohmann::ordered_json::array();
  for (const auto& t : m.triangles) tris.push_back({t[0], t[1], t[2]});
  j["triangles"] = std::move(tris);
  return j;
}

Mesh mesh_from_json(const nlohmann::json& j) {
  Mesh m;
  try {
    m.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("vertices")) {
      PointD p(m.dim);
      if (static_cast<int>(row.size()) != m.dim)
        throw ParseError("mesh json: vertex coordinate count mismatch");
      for (int c = 0; c < m.dim; ++c)
        p(c) = Rational::parse_or_throw(row.at(static_cast<size_t>(c))
                                            .get<std::string>(),
                                        "mesh coordinate");
      m.vertices.push_back(std::move(p));
    }
    for (const auto& row : j.at("triangles")) {
      if (row.size() != 3) throw ParseError("mesh json: triangle arity");
      m.triangles.push_back({row.at(0).get<int>(), row.at(1).get<int>(),
                             row.at(2).get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mesh json: ") + e.what());
  }
  return m;
}

}  // namespace plspan
