#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plspan/linalg.hpp"

namespace plspan {

// A closed polygonal curve in R^d, edges running vertex i -> vertex i+1 mod n.
// Construct through validate_polygon (or a generator that validates); the
// class itself only stores the data.
class Polygon {
 public:
  Polygon() = default;
  Polygon(int dim, std::vector<PointD> vertices)
      : dim_(dim), verts_(std::move(vertices)) {}

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(verts_.size()); }
  const PointD& vertex(int i) const {
    int n = size();
    return verts_[static_cast<size_t>(((i % n) + n) % n)];
  }
  const std::vector<PointD>& vertices() const { return verts_; }

  PointD edge_point(int edge, const Rational& t) const {
    return vertex(edge) + t * (vertex(edge + 1) - vertex(edge));
  }

 private:
  int dim_ = 0;
  std::vector<PointD> verts_;
};

struct PolygonIssue {
  enum class Kind {
    NotClosedTooShort,
    SelfIntersection,
    CollinearAdjacent,
    DuplicateVertex,
    DimensionMismatch,
  };
  Kind kind;
  int i = -1;
  int j = -1;
  std::string detail;

  std::string kind_name() const;
  std::string str() const;
};

struct PolygonValidation {
  std::vector<PolygonIssue> issues;
  std::vector<std::string> notes;  // e.g. merged collinear vertices
  std::optional<Polygon> polygon;  // set iff issues is empty
  bool ok() const { return issues.empty(); }
};

// Exact embeddedness validation: pairwise edge disjointness, no vertex in
// the relative interior of a non-incident edge, no collinear adjacent edges
// (merged instead when merge_collinear is set), no duplicate consecutive
// vertices.
PolygonValidation validate_polygon(const std::vector<PointD>& vertices,
                                   bool merge_collinear = false);

struct RawPolygon {
  int dim = 0;
  std::vector<PointD> vertices;
};

// Text format: line 1 "<d> <n>", then n lines of d coordinates (integer,
// exact decimal, or p/q); '#' starts a comment.  Throws ParseError.
RawPolygon read_polygon(std::istream& in);
RawPolygon read_polygon_file(const std::string& path);
void write_polygon(std::ostream& out, const Polygon& p);
std::string polygon_to_text(const Polygon& p);

// Reads and validates; throws ParseError / ValidationFailedError.
Polygon load_polygon_file(const std::string& path, bool merge_collinear = false);

struct ProjectionFrame;

struct TranslatedPolygon {
  Polygon polygon;
  Vec3Q offset;  // applied translation (zero when input already had h >= 1)
};

// Translates P along frame.w so every vertex height w.x is >= 1; identity
// when already satisfied.  Requires dim 3.
TranslatedPolygon translate_to_height(const Polygon& p,
                                      const ProjectionFrame& frame);

}  // namespace plspan
