#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "plspan/diagram.hpp"
#include "plspan/mesh.hpp"

namespace plspan {

// Planar graph of the diagram: nodes are the n projected polygon vertices
// followed by the c crossing points; arcs are the straight pieces of
// projected edges between consecutive nodes, in traversal order.
struct DiagramGraph {
  int n = 0;  // node ids [0, n) are polygon vertex images; crossings follow
  std::vector<Vec2Q> nodes;
  struct Arc {
    int from = 0, to = 0;  // node ids, curve-forward
    int edge = 0;          // source polygon edge
    Rational t0, t1;       // parameters on that edge, t0 < t1
  };
  std::vector<Arc> arcs;  // n + 2c arcs
  int crossing_node(int k) const { return n + k; }
};

DiagramGraph build_graph(const KnotDiagram& d);

// Rotation system and checkerboard coloring.  Dart encoding: arc a traversed
// forward is dart 2a, backward 2a+1; a dart "originates" where its traversal
// starts.
struct FaceColoring {
  std::vector<std::vector<int>> rotation;  // per node: outgoing darts, CCW
  std::vector<int> face_of_dart;           // face on the left of each dart
  int face_count = 0;
  int outer_face = -1;
  std::vector<bool> white;  // per face; the outer face is white
};

FaceColoring color_faces(const DiagramGraph& g);

enum class SmoothingStrategy { WhiteFace, OrientationRespecting };

std::string strategy_name(SmoothingStrategy s);

// Interior vertices near every crossing plus corner colors.  Slot i at a
// crossing refers to position i in the crossing's rotation; corner i sits
// between slots i and i+1.
struct AugmentedGraph {
  std::vector<Rational> delta;                   // per crossing
  std::vector<std::array<Vec2Q, 4>> iv_pos;      // per crossing, per slot
  std::vector<std::array<int, 4>> iv_arc;        // arc carrying each slot
  std::vector<std::array<Rational, 4>> iv_t;     // parameter on the arc's edge
  std::vector<std::array<bool, 4>> corner_white; // via the face coloring
};

// Places the interior vertices at parameter delta toward the arcs' far ends,
// halving delta per crossing until the four quad sides avoid the rest of the
// graph exactly.
AugmentedGraph augment(const DiagramGraph& g, const FaceColoring& c);

struct CircuitVertex {
  Vec2Q pos;   // diagram-plane position
  int edge;    // polygon edge carrying the underlying curve point
  Rational t;  // parameter on that edge
};
struct Circuit {
  std::vector<CircuitVertex> vertices;  // cyclic
  // Entity id per vertex: polygon vertex v is v, interior vertex (crossing k,
  // slot i) is n + 4k + i.
  std::vector<int> entity;
  // edge i joins vertices i and i+1; chord edges record their crossing
  std::vector<int> edge_crossing;  // -1 for arc pieces
  int level = 0;
};
struct CircuitSet {
  SmoothingStrategy strategy = SmoothingStrategy::WhiteFace;
  std::vector<Circuit> circuits;
  int n_prime = 0;  // total circuit vertices, n + 4c
};

// Smooths every crossing by the chosen strategy and returns the disjoint
// simple circuits with nesting levels (0 = innermost).
CircuitSet extract_circuits(const DiagramGraph& g, const FaceColoring& c,
                            const AugmentedGraph& a, SmoothingStrategy s);

struct TriangleLedger {
  long long disk = 0, wall = 0, band = 0, total = 0;
};

struct SeifertSurface {
  Mesh mesh;
  TriangleLedger ledger;
  int circuit_count = 0;           // s
  std::vector<int> levels;         // per circuit
  long long chi = 0;               // = s - c
  long long genus = 0;             // (1 - s + c)/2
  std::vector<int> boundary_cycle;
  std::vector<std::pair<int, Rational>> boundary_tags;
  std::vector<std::string> notes;  // strategy diagnostics (non-fatal)
};

// Assembles disks, walls, and bow-tie bands, then certifies the mesh
// (structural validity, manifold, orientable, chi = s - c, embedded, single
// boundary subdividing P).  Throws ValidationFailedError when any
// certification fails.
SeifertSurface build_surface(const Polygon& p, const KnotDiagram& d,
                             const AugmentedGraph& a, const CircuitSet& cs,
                             bool run_checks = true);

struct SeifertResult {
  KnotDiagram diagram;
  SeifertSurface surface;
  SmoothingStrategy strategy_used = SmoothingStrategy::WhiteFace;
  Vec3Q translation;  // shift applied so all heights are >= 1
  std::vector<std::string> notes;
};

// Full pipeline: frame search, translation to positive height, projection,
// smoothing, and surface assembly.  Tries `strategy` first and falls back to
// the other strategy (with a note) if certification fails.
SeifertResult seifert_pipeline(const Polygon& p, uint64_t seed,
                               int max_attempts, SmoothingStrategy strategy);

// Triangulates a planar polygon (any ambient dimension) by ear clipping:
// exactly n - 2 triangles on the polygon's own vertices.  Certifies the
// result.  Throws Error when P is not planar.
Mesh triangulate_planar(const Polygon& p);

// Ear clipping of a simple 2D polygon; returns m - 2 index triples into the
// input ring.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2Q>& ring);

}  // namespace plspan
