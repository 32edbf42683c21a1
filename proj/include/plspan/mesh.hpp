#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "plspan/polygon.hpp"

namespace plspan {

struct Mesh {
  int dim = 3;
  std::vector<PointD> vertices;
  std::vector<std::array<int, 3>> triangles;

  long long triangle_count() const {
    return static_cast<long long>(triangles.size());
  }
};

// Structural invariants: indices in range, no repeated index in a triangle,
// no zero-area triangle, no two triangles on the same vertex set, no two
// vertices with identical coordinates, every vertex referenced.  Returns
// human-readable findings; empty means valid.
std::vector<std::string> validate_mesh_basic(const Mesh& m);

struct TopologyReport {
  long long v = 0, e = 0, f = 0;
  long long chi = 0;
  long long boundary_edge_count = 0;
  std::vector<std::vector<int>> boundary_cycles;
  bool manifold = false;
  std::string witness;  // first non-manifold witness, when any
  bool orientable = false;
  bool three_f_identity = false;  // 3F == 2E - m
  bool genus_valid = false;
  long long genus = 0;  // (2 - chi - b)/2 when defined
};

// Combinatorial topology: edge multiplicities, manifold check (edges in at
// most two triangles, every vertex link a single path or cycle),
// orientability by orientation propagation, boundary cycles from
// multiplicity-1 edges, Euler characteristic and genus.
TopologyReport topology(const Mesh& m);

struct ImproperPair {
  int first = 0, second = 0;
};

// Exact pairwise triangle-triangle test over the whole mesh; shared mesh
// vertices and edges are proper, all other contacts are reported.  threads=0
// reads PLSPAN_THREADS (default 1).  Results are sorted, independent of the
// thread count.
std::vector<ImproperPair> check_embedded(const Mesh& m, int threads = 0);

// Complementarity against the boundary polygon: every exact intersection of
// a triangle with an edge of P must lie within that same triangle's own
// boundary simplices (its edges that are mesh-boundary edges and its
// vertices that are mesh-boundary vertices).  Interior self-intersections
// of the mesh are not this check's concern.
std::vector<std::string> check_complementary(const Mesh& m, const Polygon& p);

struct BoundaryCheck {
  bool ok = false;
  std::string reason;                              // set when !ok
  std::vector<int> cycle;                          // boundary vertex ids in order
  std::vector<std::pair<int, Rational>> tags;      // (edge of P, parameter)
};

// The mesh boundary must be a single cycle that subdivides P: every boundary
// vertex on P, cyclic order strictly monotone along P's traversal (either
// direction), and every vertex of P present.
BoundaryCheck check_boundary_subdivision(const Mesh& m, const Polygon& p);

// OFF export (dim 3 only): decimal coordinates with `precision` fractional
// digits.  Throws Error for other dimensions.
void export_off(const Mesh& m, std::ostream& out, int precision);

// Lossless JSON: { dim, vertices: [[rational strings]], triangles: [[i,j,k]] }.
nlohmann::ordered_json mesh_to_json(const Mesh& m);
Mesh mesh_from_json(const nlohmann::json& j);

}  // namespace plspan
