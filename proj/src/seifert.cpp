#include "plspan/seifert.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "plspan/predicates.hpp"

namespace plspan {
namespace {

int dart_arc(int d) { return d / 2; }
bool dart_forward(int d) { return d % 2 == 0; }
int dart_reverse(int d) { return d ^ 1; }

int dart_origin(const DiagramGraph& g, int d) {
  const auto& a = g.arcs[static_cast<size_t>(dart_arc(d))];
  return dart_forward(d) ? a.from : a.to;
}
int dart_target(const DiagramGraph& g, int d) {
  const auto& a = g.arcs[static_cast<size_t>(dart_arc(d))];
  return dart_forward(d) ? a.to : a.from;
}
Vec2Q dart_dir(const DiagramGraph& g, int d) {
  const auto& a = g.arcs[static_cast<size_t>(dart_arc(d))];
  Vec2Q v = g.nodes[static_cast<size_t>(a.to)] -
            g.nodes[static_cast<size_t>(a.from)];
  return dart_forward(d) ? v : Vec2Q(-v);
}

// Angular quadrant for the CCW order starting at direction (1, 0).
int quadrant(const Vec2Q& v) {
  int sx = v(0).sign(), sy = v(1).sign();
  if (sx > 0 && sy >= 0) return 0;
  if (sx <= 0 && sy > 0) return 1;
  if (sx < 0 && sy <= 0) return 2;
  return 3;
}

// Half-open ray cast: is q strictly inside the closed curve `ring`?
bool inside_ring(const std::vector<Vec2Q>& ring, const Vec2Q& q) {
  bool odd = false;
  const size_t m = ring.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2Q& a = ring[i];
    const Vec2Q& b = ring[(i + 1) % m];
    bool straddles = (a(1) <= q(1) && q(1) < b(1)) ||
                     (b(1) <= q(1) && q(1) < a(1));
    if (!straddles) continue;
    // x of the edge at height q.y; denominator nonzero by the straddle test.
    Rational x = a(0) + (q(1) - a(1)) * (b(0) - a(0)) / (b(1) - a(1));
    if (x > q(0)) odd = !odd;
  }
  return odd;
}

}  // namespace

std::string strategy_name(SmoothingStrategy s) {
  return s == SmoothingStrategy::WhiteFace ? "white" : "orientation";
}

DiagramGraph build_graph(const KnotDiagram& d) {
  DiagramGraph g;
  g.n = d.n();
  g.nodes = d.proj;
  for (const Crossing& c : d.crossings) g.nodes.push_back(c.point);

  for (int e = 0; e < g.n; ++e) {
    std::vector<std::pair<Rational, int>> stops;  // (param, node id)
    for (size_t k = 0; k < d.crossings.size(); ++k) {
      const Crossing& c = d.crossings[k];
      if (c.over_edge == e)
        stops.emplace_back(c.t_over, g.crossing_node(static_cast<int>(k)));
      if (c.under_edge == e)
        stops.emplace_back(c.t_under, g.crossing_node(static_cast<int>(k)));
    }
    std::sort(stops.begin(), stops.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Rational, int>> chain;
    chain.emplace_back(Rational(0), e);
    chain.insert(chain.end(), stops.begin(), stops.end());
    chain.emplace_back(Rational(1), (e + 1) % g.n);
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      DiagramGraph::Arc a;
      a.from = chain[i].second;
      a.to = chain[i + 1].second;
      a.edge = e;
      a.t0 = chain[i].first;
      a.t1 = chain[i + 1].first;
      g.arcs.push_back(std::move(a));
    }
  }
  const int c = static_cast<int>(d.crossings.size());
  if (static_cast<int>(g.arcs.size()) != g.n + 2 * c)
    throw Error("build_graph: arc count mismatch");
  return g;
}

FaceColoring color_faces(const DiagramGraph& g) {
  FaceColoring out;
  const int dart_count = 2 * static_cast<int>(g.arcs.size());

  out.rotation.assign(g.nodes.size(), {});
  for (int d = 0; d < dart_count; ++d)
    out.rotation[static_cast<size_t>(dart_origin(g, d))].push_back(d);
  for (auto& ring : out.rotation) {
    std::sort(ring.begin(), ring.end(), [&](int da, int db) {
      Vec2Q a = dart_dir(g, da), b = dart_dir(g, db);
      int qa = quadrant(a), qb = quadrant(b);
      if (qa != qb) return qa < qb;
      int cr = cross2(a, b).sign();
      if (cr != 0) return cr > 0;
      throw Error("color_faces: two darts share a direction");
    });
  }
  std::vector<int> pos(static_cast<size_t>(dart_count), -1);
  for (const auto& ring : out.rotation)
    for (size_t i = 0; i < ring.size(); ++i)
      pos[static_cast<size_t>(ring[i])] = static_cast<int>(i);

  // Face on the left of each dart: next dart is the one before the reversed
  // dart in the rotation at the dart's head.
  auto next_dart = [&](int d) {
    int r = dart_reverse(d);
    const auto& ring = out.rotation[static_cast<size_t>(dart_origin(g, r))];
    int deg = static_cast<int>(ring.size());
    int i = pos[static_cast<size_t>(r)];
    return ring[static_cast<size_t>((i - 1 + deg) % deg)];
  };

  out.face_of_dart.assign(static_cast<size_t>(dart_count), -1);
  std::vector<Rational> area2;  // twice the signed area per face
  for (int d0 = 0; d0 < dart_count; ++d0) {
    if (out.face_of_dart[static_cast<size_t>(d0)] != -1) continue;
    int face = out.face_count++;
    Rational acc = 0;
    int d = d0;
    do {
      out.face_of_dart[static_cast<size_t>(d)] = face;
      const Vec2Q& p = g.nodes[static_cast<size_t>(dart_origin(g, d))];
      const Vec2Q& q = g.nodes[static_cast<size_t>(dart_target(g, d))];
      acc += cross2(p, q);
      d = next_dart(d);
    } while (d != d0);
    area2.push_back(std::move(acc));
  }

  const int c = static_cast<int>(g.nodes.size()) - g.n;
  if (out.face_count != c + 2)
    throw Error("color_faces: face count is not c + 2");
  for (int f = 0; f < out.face_count; ++f) {
    if (area2[static_cast<size_t>(f)].is_zero())
      throw Error("color_faces: degenerate face");
    if (area2[static_cast<size_t>(f)].sign() < 0) {
      if (out.outer_face != -1)
        throw Error("color_faces: multiple negative-area faces");
      out.outer_face = f;
    }
  }
  if (out.outer_face == -1) throw Error("color_faces: no outer face");

  // Checkerboard coloring: faces across an arc get opposite colors; the
  // diagram graph has even degrees, so this 2-coloring exists.
  out.white.assign(static_cast<size_t>(out.face_count), false);
  std::vector<int> color(static_cast<size_t>(out.face_count), -1);
  color[static_cast<size_t>(out.outer_face)] = 1;
  std::vector<int> stack = {out.outer_face};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (size_t a = 0; a < g.arcs.size(); ++a) {
      int f0 = out.face_of_dart[2 * a];
      int f1 = out.face_of_dart[2 * a + 1];
      if (f0 != f && f1 != f) continue;
      int other = f0 == f ? f1 : f0;
      int want = 1 - color[static_cast<size_t>(f)];
      if (color[static_cast<size_t>(other)] == -1) {
        color[static_cast<size_t>(other)] = want;
        stack.push_back(other);
      } else if (color[static_cast<size_t>(other)] != want) {
        throw Error("color_faces: checkerboard coloring conflict");
      }
    }
  }
  for (int f = 0; f < out.face_count; ++f) {
    if (color[static_cast<size_t>(f)] == -1)
      throw Error("color_faces: disconnected face adjacency");
    out.white[static_cast<size_t>(f)] = color[static_cast<size_t>(f)] == 1;
  }
  return out;
}

AugmentedGraph augment(const DiagramGraph& g, const FaceColoring& c) {
  AugmentedGraph out;
  const int cn = static_cast<int>(g.nodes.size()) - g.n;
  out.delta.assign(static_cast<size_t>(cn), Rational(1, 4));
  out.iv_pos.resize(static_cast<size_t>(cn));
  out.iv_arc.resize(static_cast<size_t>(cn));
  out.iv_t.resize(static_cast<size_t>(cn));
  out.corner_white.resize(static_cast<size_t>(cn));

  for (int k = 0; k < cn; ++k) {
    const auto& ring = c.rotation[static_cast<size_t>(g.crossing_node(k))];
    if (ring.size() != 4) throw Error("augment: crossing degree is not 4");
    for (int i = 0; i < 4; ++i) {
      int d = ring[static_cast<size_t>(i)];
      out.iv_arc[static_cast<size_t>(k)][static_cast<size_t>(i)] = dart_arc(d);
      int f = c.face_of_dart[static_cast<size_t>(d)];
      out.corner_white[static_cast<size_t>(k)][static_cast<size_t>(i)] =
          c.white[static_cast<size_t>(f)];
    }
    int whites = 0;
    for (int i = 0; i < 4; ++i)
      whites += out.corner_white[static_cast<size_t>(k)][static_cast<size_t>(i)];
    bool opposite =
        out.corner_white[static_cast<size_t>(k)][0] ==
            out.corner_white[static_cast<size_t>(k)][2] &&
        out.corner_white[static_cast<size_t>(k)][1] ==
            out.corner_white[static_cast<size_t>(k)][3];
    if (whites != 2 || !opposite)
      throw Error("augment: corner colors do not alternate");
  }

  auto place = [&](int k) {
    const auto& ring = c.rotation[static_cast<size_t>(g.crossing_node(k))];
    const Vec2Q& x = g.nodes[static_cast<size_t>(g.crossing_node(k))];
    for (int i = 0; i < 4; ++i) {
      int d = ring[static_cast<size_t>(i)];
      const auto& arc = g.arcs[static_cast<size_t>(dart_arc(d))];
      const Vec2Q& far = g.nodes[static_cast<size_t>(dart_target(g, d))];
      const Rational& delta = out.delta[static_cast<size_t>(k)];
      out.iv_pos[static_cast<size_t>(k)][static_cast<size_t>(i)] =
          Vec2Q(x + delta * (far - x));
      Rational t_near = dart_forward(d) ? arc.t0 : arc.t1;
      Rational t_far = dart_forward(d) ? arc.t1 : arc.t0;
      out.iv_t[static_cast<size_t>(k)][static_cast<size_t>(i)] =
          t_near + delta * (t_far - t_near);
    }
  };
  for (int k = 0; k < cn; ++k) place(k);

  auto iv = [&](int k, int i) -> const Vec2Q& {
    return out.iv_pos[static_cast<size_t>(k)][static_cast<size_t>((i % 4 + 4) % 4)];
  };

  for (int round = 0; round < 64; ++round) {
    std::set<int> bad;

    // Quad sides must touch the graph only at their own endpoints.
    for (int k = 0; k < cn; ++k) {
      for (int i = 0; i < 4 && !bad.count(k); ++i) {
        const Vec2Q& s0 = iv(k, i);
        const Vec2Q& s1 = iv(k, i + 1);
        int arc_a = out.iv_arc[static_cast<size_t>(k)][static_cast<size_t>(i)];
        int arc_b =
            out.iv_arc[static_cast<size_t>(k)][static_cast<size_t>((i + 1) % 4)];
        for (size_t a = 0; a < g.arcs.size(); ++a) {
          const Vec2Q& pa = g.nodes[static_cast<size_t>(g.arcs[a].from)];
          const Vec2Q& pb = g.nodes[static_cast<size_t>(g.arcs[a].to)];
          SegSegHit hit = seg_seg_intersect(s0, s1, pa, pb);
          if (hit.kind == SegSegHit::Kind::None) continue;
          bool allowed =
              hit.kind == SegSegHit::Kind::Point &&
              ((static_cast<int>(a) == arc_a && points_equal(hit.point, s0)) ||
               (static_cast<int>(a) == arc_b && points_equal(hit.point, s1)));
          if (!allowed) {
            bad.insert(k);
            break;
          }
        }
      }
    }

    // Sides of the same quad may share only their common interior vertex;
    // sides of different quads must be disjoint.
    for (int k1 = 0; k1 < cn && cn > 0; ++k1) {
      for (int k2 = k1; k2 < cn; ++k2) {
        for (int i = 0; i < 4; ++i) {
          for (int j = (k1 == k2 ? i + 1 : 0); j < 4; ++j) {
            SegSegHit hit =
                seg_seg_intersect(iv(k1, i), iv(k1, i + 1), iv(k2, j),
                                  iv(k2, j + 1));
            if (hit.kind == SegSegHit::Kind::None) continue;
            bool allowed = false;
            if (k1 == k2 && hit.kind == SegSegHit::Kind::Point) {
              if (j == i + 1 && points_equal(hit.point, iv(k1, i + 1)))
                allowed = true;
              if (i == 0 && j == 3 && points_equal(hit.point, iv(k1, 0)))
                allowed = true;
            }
            if (!allowed) {
              bad.insert(k1);
              bad.insert(k2);
            }
          }
        }
      }
    }

    // No graph node or foreign interior vertex may lie on a side.
    for (int k = 0; k < cn; ++k) {
      for (int i = 0; i < 4 && !bad.count(k); ++i) {
        const Vec2Q& s0 = iv(k, i);
        const Vec2Q& s1 = iv(k, i + 1);
        for (const Vec2Q& node : g.nodes) {
          if (point_on_segment(node, s0, s1)) {
            bad.insert(k);
            break;
          }
        }
        for (int k2 = 0; k2 < cn && !bad.count(k); ++k2) {
          for (int j = 0; j < 4; ++j) {
            if (k2 == k && (j == i || j == (i + 1) % 4)) continue;
            if (point_on_segment(iv(k2, j), s0, s1)) {
              bad.insert(k);
              bad.insert(k2);
              break;
            }
          }
        }
      }
    }

    if (bad.empty()) return out;
    for (int k : bad) {
      out.delta[static_cast<size_t>(k)] /= Rational(2);
      place(k);
    }
  }
  throw Error("augment: could not separate crossing quads");
}

CircuitSet extract_circuits(const DiagramGraph& g, const FaceColoring& c,
                            const AugmentedGraph& a, SmoothingStrategy s) {
  CircuitSet out;
  out.strategy = s;
  const int n = g.n;
  const int cn = static_cast<int>(g.nodes.size()) - n;

  // Retained corners per crossing: two opposite ones.
  std::vector<std::array<bool, 4>> retained(static_cast<size_t>(cn));
  for (int k = 0; k < cn; ++k) {
    const auto& ring = c.rotation[static_cast<size_t>(g.crossing_node(k))];
    for (int i = 0; i < 4; ++i) {
      bool keep;
      if (s == SmoothingStrategy::WhiteFace) {
        keep = a.corner_white[static_cast<size_t>(k)][static_cast<size_t>(i)];
      } else {
        bool out_i = dart_forward(ring[static_cast<size_t>(i)]);
        bool out_j = dart_forward(ring[static_cast<size_t>((i + 1) % 4)]);
        keep = out_i != out_j;
      }
      retained[static_cast<size_t>(k)][static_cast<size_t>(i)] = keep;
    }
    int cnt = 0;
    for (int i = 0; i < 4; ++i)
      cnt += retained[static_cast<size_t>(k)][static_cast<size_t>(i)];
    bool opposite = retained[static_cast<size_t>(k)][0] ==
                        retained[static_cast<size_t>(k)][2] &&
                    retained[static_cast<size_t>(k)][1] ==
                        retained[static_cast<size_t>(k)][3];
    if (cnt != 2 || !opposite)
      throw Error("extract_circuits: retained corners are not opposite");
  }

  // Entities: polygon vertex v -> v; interior vertex (k, slot) -> n + 4k + slot.
  const int entity_count = n + 4 * cn;
  auto iv_entity = [&](int k, int slot) {
    return n + 4 * k + ((slot % 4) + 4) % 4;
  };
  // Slot of arc `arc_id` at crossing k (where the dart along the arc leaves k).
  auto slot_of = [&](int k, int dart) {
    const auto& ring = c.rotation[static_cast<size_t>(g.crossing_node(k))];
    for (int i = 0; i < 4; ++i)
      if (ring[static_cast<size_t>(i)] == dart) return i;
    throw Error("extract_circuits: dart not in crossing rotation");
  };
  auto arc_end_entity = [&](int arc_id, bool at_from) {
    const auto& arc = g.arcs[static_cast<size_t>(arc_id)];
    int node = at_from ? arc.from : arc.to;
    if (node < n) return node;
    int dart = 2 * arc_id + (at_from ? 0 : 1);
    return iv_entity(node - n, slot_of(node - n, dart));
  };

  struct Link {
    int a, b;
    int crossing;  // -1 for arc pieces
  };
  std::vector<Link> links;
  for (size_t arc_id = 0; arc_id < g.arcs.size(); ++arc_id)
    links.push_back({arc_end_entity(static_cast<int>(arc_id), true),
                     arc_end_entity(static_cast<int>(arc_id), false), -1});
  for (int k = 0; k < cn; ++k)
    for (int i = 0; i < 4; ++i)
      if (retained[static_cast<size_t>(k)][static_cast<size_t>(i)])
        links.push_back({iv_entity(k, i), iv_entity(k, i + 1), k});

  std::vector<std::vector<int>> incident(static_cast<size_t>(entity_count));
  for (size_t l = 0; l < links.size(); ++l) {
    incident[static_cast<size_t>(links[l].a)].push_back(static_cast<int>(l));
    incident[static_cast<size_t>(links[l].b)].push_back(static_cast<int>(l));
  }
  for (int e = 0; e < entity_count; ++e)
    if (incident[static_cast<size_t>(e)].size() != 2)
      throw Error("extract_circuits: smoothed graph is not 2-regular");

  auto entity_vertex = [&](int e) {
    CircuitVertex v;
    if (e < n) {
      v.pos = g.nodes[static_cast<size_t>(e)];
      v.edge = e;
      v.t = 0;
    } else {
      int k = (e - n) / 4, slot = (e - n) % 4;
      v.pos = a.iv_pos[static_cast<size_t>(k)][static_cast<size_t>(slot)];
      int arc_id = a.iv_arc[static_cast<size_t>(k)][static_cast<size_t>(slot)];
      v.edge = g.arcs[static_cast<size_t>(arc_id)].edge;
      v.t = a.iv_t[static_cast<size_t>(k)][static_cast<size_t>(slot)];
    }
    return v;
  };

  std::vector<bool> used(links.size(), false);
  std::vector<bool> visited(static_cast<size_t>(entity_count), false);
  for (int start = 0; start < entity_count; ++start) {
    if (visited[static_cast<size_t>(start)]) continue;

    Circuit circuit;
    int cur = start;
    int link_id = incident[static_cast<size_t>(start)][0];
    while (true) {
      visited[static_cast<size_t>(cur)] = true;
      circuit.entity.push_back(cur);
      circuit.vertices.push_back(entity_vertex(cur));
      circuit.edge_crossing.push_back(links[static_cast<size_t>(link_id)].crossing);
      used[static_cast<size_t>(link_id)] = true;
      int nxt = links[static_cast<size_t>(link_id)].a == cur
                    ? links[static_cast<size_t>(link_id)].b
                    : links[static_cast<size_t>(link_id)].a;
      if (nxt == start) break;
      const auto& inc = incident[static_cast<size_t>(nxt)];
      int next_link = used[static_cast<size_t>(inc[0])] ? inc[1] : inc[0];
      if (used[static_cast<size_t>(next_link)])
        throw Error("extract_circuits: broken circuit walk");
      cur = nxt;
      link_id = next_link;
    }
    out.circuits.push_back(std::move(circuit));
  }

  for (const Circuit& ci : out.circuits)
    out.n_prime += static_cast<int>(ci.vertices.size());
  if (out.n_prime != entity_count)
    throw Error("extract_circuits: vertex count mismatch");

  // Certify the circuits are simple and pairwise disjoint.
  struct SegRef {
    int circuit, index;
    const Vec2Q *a, *b;
  };
  std::vector<SegRef> segs;
  for (size_t ci = 0; ci < out.circuits.size(); ++ci) {
    const auto& verts = out.circuits[ci].vertices;
    for (size_t i = 0; i < verts.size(); ++i)
      segs.push_back({static_cast<int>(ci), static_cast<int>(i),
                      &verts[i].pos, &verts[(i + 1) % verts.size()].pos});
  }
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      const SegRef& s1 = segs[i];
      const SegRef& s2 = segs[j];
      bool adjacent = false;
      if (s1.circuit == s2.circuit) {
        int m = static_cast<int>(
            out.circuits[static_cast<size_t>(s1.circuit)].vertices.size());
        int diff = (s2.index - s1.index + m) % m;
        adjacent = diff == 1 || diff == m - 1;
      }
      SegSegHit hit = seg_seg_intersect(*s1.a, *s1.b, *s2.a, *s2.b);
      if (hit.kind == SegSegHit::Kind::None) continue;
      if (adjacent && hit.kind == SegSegHit::Kind::Point) continue;
      throw ValidationFailedError(
          "extract_circuits: circuits are not simple and disjoint");
    }
  }

  // Nesting levels: 0 for circuits containing nothing; otherwise one more
  // than the deepest contained circuit.
  const size_t s_count = out.circuits.size();
  std::vector<std::vector<Vec2Q>> rings(s_count);
  for (size_t i = 0; i < s_count; ++i)
    for (const auto& v : out.circuits[i].vertices) rings[i].push_back(v.pos);
  std::vector<std::vector<bool>> contains(s_count,
                                          std::vector<bool>(s_count, false));
  for (size_t i = 0; i < s_count; ++i)
    for (size_t j = 0; j < s_count; ++j)
      if (i != j) contains[i][j] = inside_ring(rings[i], rings[j][0]);

  std::vector<int> level(s_count, -1);
  auto compute_level = [&](auto&& self, size_t i) -> int {
    if (level[i] >= 0) return level[i];
    int best = -1;
    for (size_t j = 0; j < s_count; ++j)
      if (contains[i][j]) best = std::max(best, self(self, j));
    level[i] = best + 1;
    return level[i];
  };
  for (size_t i = 0; i < s_count; ++i)
    out.circuits[i].level = compute_level(compute_level, i);

  return out;
}

SeifertSurface build_surface(const Polygon& p, const KnotDiagram& d,
                             const AugmentedGraph& a, const CircuitSet& cs,
                             bool run_checks) {
  const int n = p.size();
  const int cn = static_cast<int>(d.crossings.size());
  const int s_count = static_cast<int>(cs.circuits.size());

  for (const PointD& v : p.vertices())
    if (dot(d.frame.w, v) < Rational(1))
      throw Error("build_surface: polygon must lie at height >= 1");

  SeifertSurface out;
  out.mesh.dim = 3;
  out.circuit_count = s_count;

  // Two mesh vertices per circuit vertex: the disk copy at height -level and
  // the curve copy on the polygon.
  std::vector<std::vector<int>> disk_idx(static_cast<size_t>(s_count));
  std::vector<std::vector<int>> gamma_idx(static_cast<size_t>(s_count));
  std::map<int, std::pair<int, int>> locate;  // entity -> (circuit, position)
  for (int ci = 0; ci < s_count; ++ci) {
    const Circuit& circuit = cs.circuits[static_cast<size_t>(ci)];
    out.levels.push_back(circuit.level);
    for (size_t j = 0; j < circuit.vertices.size(); ++j) {
      const CircuitVertex& v = circuit.vertices[j];
      Vec3Q disk = lift_point(v.pos(0), v.pos(1), Rational(-circuit.level),
                              d.frame);
      disk_idx[static_cast<size_t>(ci)].push_back(
          static_cast<int>(out.mesh.vertices.size()));
      out.mesh.vertices.push_back(PointD(disk));
      gamma_idx[static_cast<size_t>(ci)].push_back(
          static_cast<int>(out.mesh.vertices.size()));
      out.mesh.vertices.push_back(p.edge_point(v.edge, v.t));
      locate[circuit.entity[j]] = {ci, static_cast<int>(j)};
    }
  }

  // Disks: ear-clipped circuit interiors at their nesting depth.
  for (int ci = 0; ci < s_count; ++ci) {
    const Circuit& circuit = cs.circuits[static_cast<size_t>(ci)];
    std::vector<Vec2Q> ring;
    for (const auto& v : circuit.vertices) ring.push_back(v.pos);
    for (const auto& tri : ear_clip(ring)) {
      out.mesh.triangles.push_back(
          {disk_idx[static_cast<size_t>(ci)][static_cast<size_t>(tri[0])],
           disk_idx[static_cast<size_t>(ci)][static_cast<size_t>(tri[1])],
           disk_idx[static_cast<size_t>(ci)][static_cast<size_t>(tri[2])]});
      ++out.ledger.disk;
    }
  }

  // Walls: one quad per circuit edge, between the disk edge and the curve
  // edge above it; the diagonal leaves the lexicographically smaller disk
  // endpoint.
  for (int ci = 0; ci < s_count; ++ci) {
    const Circuit& circuit = cs.circuits[static_cast<size_t>(ci)];
    const size_t m = circuit.vertices.size();
    for (size_t j = 0; j < m; ++j) {
      size_t jn = (j + 1) % m;
      int ad = disk_idx[static_cast<size_t>(ci)][j];
      int bd = disk_idx[static_cast<size_t>(ci)][jn];
      int ag = gamma_idx[static_cast<size_t>(ci)][j];
      int bg = gamma_idx[static_cast<size_t>(ci)][jn];
      if (lex_less(out.mesh.vertices[static_cast<size_t>(ad)],
                   out.mesh.vertices[static_cast<size_t>(bd)])) {
        out.mesh.triangles.push_back({ad, bd, bg});
        out.mesh.triangles.push_back({ad, bg, ag});
      } else {
        out.mesh.triangles.push_back({ad, bd, ag});
        out.mesh.triangles.push_back({bd, bg, ag});
      }
      out.ledger.wall += 2;
    }
  }

  // Bow-tie bands: two triangles per crossing joining the lifted smoothing
  // chords, sharing the black chord [x2, y1].
  auto gamma_of_entity = [&](int entity) {
    auto it = locate.find(entity);
    if (it == locate.end()) throw Error("build_surface: entity not located");
    return gamma_idx[static_cast<size_t>(it->second.first)]
                    [static_cast<size_t>(it->second.second)];
  };
  for (int k = 0; k < cn; ++k) {
    // The two retained corners of this crossing are opposite: slot pairs
    // (0,1)/(2,3) or (1,2)/(3,0). Recover them from the chord edges the
    // circuits kept, then anchor the band at the smaller corner index.
    std::set<int> corners;
    for (const Circuit& circuit : cs.circuits) {
      const size_t m = circuit.vertices.size();
      for (size_t j = 0; j < m; ++j) {
        if (circuit.edge_crossing[j] != k) continue;
        int s0 = (circuit.entity[j] - n) % 4;
        int s1 = (circuit.entity[(j + 1) % m] - n) % 4;
        corners.insert(s1 == (s0 + 1) % 4 ? s0 : s1);
      }
    }
    if (corners.size() != 2 ||
        *corners.rbegin() != (*corners.begin() + 2) % 4)
      throw Error("build_surface: crossing chords are not opposite corners");
    int i1 = *corners.begin();
    int x1 = gamma_of_entity(n + 4 * k + i1);
    int x2 = gamma_of_entity(n + 4 * k + (i1 + 1) % 4);
    int y1 = gamma_of_entity(n + 4 * k + (i1 + 2) % 4);
    int y2 = gamma_of_entity(n + 4 * k + (i1 + 3) % 4);
    out.mesh.triangles.push_back({x1, x2, y1});
    out.mesh.triangles.push_back({x2, y1, y2});
    out.ledger.band += 2;
  }

  out.ledger.total = out.ledger.disk + out.ledger.wall + out.ledger.band;
  const long long n_prime = cs.n_prime;
  if (out.ledger.disk != n_prime - 2 * s_count ||
      out.ledger.wall != 2 * n_prime || out.ledger.band != 2 * cn ||
      out.ledger.total != 3 * n_prime - 2 * s_count + 2 * cn)
    throw Error("build_surface: triangle ledger mismatch");

  out.chi = s_count - cn;
  if ((1 - s_count + cn) % 2 != 0)
    // The smoothing strategy glued an odd number of twists into the surface;
    // it cannot be an orientable spanning surface, so let the caller fall
    // back to the other strategy.
    throw ValidationFailedError("surface certification failed: genus parity "
                                "violation under the " +
                                strategy_name(cs.strategy) + " smoothing (s = " +
                                std::to_string(s_count) +
                                ", c = " + std::to_string(cn) + ")");
  out.genus = (1 - s_count + cn) / 2;

  // Strategy diagnostic: bands should join circuits whose nesting levels
  // differ by exactly one under the white-face smoothing.
  for (int k = 0; k < cn; ++k) {
    std::set<int> touched;
    for (const Circuit& circuit : cs.circuits) {
      for (size_t j = 0; j < circuit.vertices.size(); ++j)
        if (circuit.edge_crossing[j] == k)
          touched.insert(circuit.level);
    }
    if (touched.size() == 2) {
      auto it = touched.begin();
      int lo = *it++;
      int hi = *it;
      if (hi - lo != 1)
        out.notes.push_back("crossing " + std::to_string(k) +
                            " joins levels " + std::to_string(lo) + " and " +
                            std::to_string(hi));
    } else {
      out.notes.push_back("crossing " + std::to_string(k) +
                          " joins a circuit to itself");
    }
  }

  if (run_checks) {
    std::vector<std::string> problems = validate_mesh_basic(out.mesh);
    TopologyReport topo = topology(out.mesh);
    if (!topo.manifold) problems.push_back("not manifold: " + topo.witness);
    if (!topo.orientable) problems.push_back("not orientable: " + topo.witness);
    if (topo.chi != out.chi)
      problems.push_back("Euler characteristic " + std::to_string(topo.chi) +
                         " differs from s - c");
    if (!topo.three_f_identity)
      problems.push_back("3F = 2E - m identity failed");
    if (topo.boundary_cycles.size() != 1)
      problems.push_back("boundary is not a single cycle");
    BoundaryCheck bc = check_boundary_subdivision(out.mesh, p);
    if (!bc.ok) {
      problems.push_back("boundary subdivision: " + bc.reason);
    } else {
      if (static_cast<long long>(bc.cycle.size()) != n_prime)
        problems.push_back("boundary cycle length is not n + 4c");
      out.boundary_cycle = bc.cycle;
      out.boundary_tags = bc.tags;
    }
    std::vector<ImproperPair> improper = check_embedded(out.mesh);
    if (!improper.empty())
      problems.push_back("mesh is not embedded (" +
                         std::to_string(improper.size()) + " improper pairs)");
    if (!problems.empty()) {
      std::string msg = "surface certification failed:";
      for (const auto& pr : problems) msg += " " + pr + ";";
      throw ValidationFailedError(msg);
    }
  }
  return out;
}

SeifertResult seifert_pipeline(const Polygon& p, uint64_t seed,
                               int max_attempts, SmoothingStrategy strategy) {
  SeifertResult out;
  ProjectionFrame frame = find_frame(p, seed, max_attempts);
  TranslatedPolygon tp = translate_to_height(p, frame);
  out.translation = tp.offset;
  out.diagram = project(tp.polygon, frame);

  DiagramGraph g = build_graph(out.diagram);
  FaceColoring coloring = color_faces(g);
  AugmentedGraph aug = augment(g, coloring);

  SmoothingStrategy order[2] = {strategy,
                                strategy == SmoothingStrategy::WhiteFace
                                    ? SmoothingStrategy::OrientationRespecting
                                    : SmoothingStrategy::WhiteFace};
  std::string first_error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      CircuitSet cs = extract_circuits(g, coloring, aug, order[attempt]);
      out.surface = build_surface(tp.polygon, out.diagram, aug, cs);
      out.strategy_used = order[attempt];
      if (attempt == 1)
        out.notes.push_back("strategy " + strategy_name(order[0]) +
                            " failed (" + first_error + "); fell back to " +
                            strategy_name(order[1]));
      for (const auto& note : out.surface.notes) out.notes.push_back(note);
      return out;
    } catch (const ValidationFailedError& e) {
      if (attempt == 0)
        first_error = e.what();
      else
        throw ValidationFailedError(
            std::string("both smoothing strategies failed: first: ") +
            first_error + "; second: " + e.what());
    }
  }
  throw Error("seifert_pipeline: unreachable");
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2Q>& ring) {
  const int m = static_cast<int>(ring.size());
  if (m < 3) throw Error("ear_clip: fewer than 3 vertices");

  Rational area2 = 0;
  for (int i = 0; i < m; ++i)
    area2 += cross2(ring[static_cast<size_t>(i)],
                    ring[static_cast<size_t>((i + 1) % m)]);
  if (area2.is_zero()) throw Error("ear_clip: degenerate ring");

  std::vector<int> active(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) active[static_cast<size_t>(i)] = i;
  if (area2.sign() < 0) std::reverse(active.begin(), active.end());

  auto closed_in = [&](const Vec2Q& a, const Vec2Q& t, const Vec2Q& b,
                       const Vec2Q& q) {
    return orient2d(a, t, q) >= 0 && orient2d(t, b, q) >= 0 &&
           orient2d(b, a, q) >= 0;
  };

  std::vector<std::array<int, 3>> tris;
  while (active.size() > 3) {
    bool clipped = false;
    for (size_t i = 0; i < active.size(); ++i) {
      size_t ip = (i + active.size() - 1) % active.size();
      size_t in = (i + 1) % active.size();
      const Vec2Q& a = ring[static_cast<size_t>(active[ip])];
      const Vec2Q& t = ring[static_cast<size_t>(active[i])];
      const Vec2Q& b = ring[static_cast<size_t>(active[in])];
      if (orient2d(a, t, b) <= 0) continue;
      bool blocked = false;
      for (size_t o = 0; o < active.size() && !blocked; ++o) {
        if (o == i || o == ip || o == in) continue;
        blocked = closed_in(a, t, b, ring[static_cast<size_t>(active[o])]);
      }
      if (blocked) continue;
      tris.push_back({active[ip], active[i], active[in]});
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw Error("ear_clip: no ear found (ring not simple?)");
  }
  tris.push_back({active[0], active[1], active[2]});
  return tris;
}

Mesh triangulate_planar(const Polygon& p) {
  const int n = p.size();
  const PointD& v0 = p.vertex(0);
  PointD e1 = p.vertex(1) - v0;
  PointD e2;
  bool have_e2 = false;
  for (int j = 2; j < n && !have_e2; ++j) {
    PointD cand = p.vertex(j) - v0;
    bool parallel = true;
    for (Eigen::Index i = 0; i < e1.size() && parallel; ++i)
      for (Eigen::Index k = i + 1; k < e1.size() && parallel; ++k)
        parallel = e1(i) * cand(k) == e1(k) * cand(i);
    if (!parallel) {
      e2 = cand;
      have_e2 = true;
    }
  }
  if (!have_e2) throw Error("triangulate_planar: polygon is degenerate");

  const Eigen::Index dim = v0.size();
  std::vector<Vec2Q> chart;
  for (int i = 0; i < n; ++i) {
    MatQ mat(dim, 2);
    for (Eigen::Index r = 0; r < dim; ++r) {
      mat(r, 0) = e1(r);
      mat(r, 1) = e2(r);
    }
    LinearSolution sol = solve_linear(std::move(mat), p.vertex(i) - v0);
    if (!sol.unique())
      throw Error("triangulate_planar: polygon is not planar");
    chart.push_back(vec2(sol.particular(0), sol.particular(1)));
  }

  Mesh mesh;
  mesh.dim = p.dim();
  mesh.vertices = p.vertices();
  mesh.triangles = ear_clip(chart);

  std::vector<std::string> problems = validate_mesh_basic(mesh);
  TopologyReport topo = topology(mesh);
  if (!topo.manifold) problems.push_back("not manifold: " + topo.witness);
  if (!topo.orientable) problems.push_back("not orientable");
  if (topo.chi != 1) problems.push_back("Euler characteristic is not 1");
  if (topo.boundary_cycles.size() != 1)
    problems.push_back("boundary is not a single cycle");
  BoundaryCheck bc = check_boundary_subdivision(mesh, p);
  if (!bc.ok) problems.push_back("boundary subdivision: " + bc.reason);
  if (!check_embedded(mesh).empty()) problems.push_back("not embedded");
  if (!problems.empty()) {
    std::string msg = "triangulate_planar certification failed:";
    for (const auto& pr : problems) msg += " " + pr + ";";
    throw ValidationFailedError(msg);
  }
  return mesh;
}

}  // namespace plspan
