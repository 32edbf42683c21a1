#include "plspan/polygon.hpp"

#include <fstream>
#include <sstream>

#include "plspan/predicates.hpp"

namespace plspan {
namespace {

bool parallel(const PointD& a, const PointD& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j)
      if (a(i) * b(j) != a(j) * b(i)) return false;
  return true;
}

bool edges_adjacent(int i, int j, int n) {
  int d = std::abs(i - j);
  return d == 1 || d == n - 1;
}

}  // namespace

std::string PolygonIssue::kind_name() const {
  switch (kind) {
    case Kind::NotClosedTooShort:
      return "NotClosedTooShort";
    case Kind::SelfIntersection:
      return "SelfIntersection";
    case Kind::CollinearAdjacent:
      return "CollinearAdjacent";
    case Kind::DuplicateVertex:
      return "DuplicateVertex";
    case Kind::DimensionMismatch:
      return "DimensionMismatch";
  }
  return "Unknown";
}

std::string PolygonIssue::str() const {
  std::string s = kind_name();
  if (i >= 0) {
    s += "(" + std::to_string(i);
    if (j >= 0) s += "," + std::to_string(j);
    s += ")";
  }
  if (!detail.empty()) s += " " + detail;
  return s;
}

PolygonValidation validate_polygon(const std::vector<PointD>& vertices,
                                   bool merge_collinear) {
  PolygonValidation out;
  auto issue = [&](PolygonIssue::Kind k, int i, int j,
                   const std::string& detail = "") {
    out.issues.push_back(PolygonIssue{k, i, j, detail});
  };

  if (vertices.size() < 3) {
    issue(PolygonIssue::Kind::NotClosedTooShort,
          static_cast<int>(vertices.size()), -1,
          "need at least 3 vertices");
    return out;
  }
  const Eigen::Index dim = vertices[0].size();
  if (dim < 2) {
    issue(PolygonIssue::Kind::DimensionMismatch, 0, -1, "dimension must be >= 2");
    return out;
  }
  for (size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i].size() != dim) {
      issue(PolygonIssue::Kind::DimensionMismatch, static_cast<int>(i), -1,
            "inconsistent coordinate count");
      return out;
    }
  }

  std::vector<PointD> v = vertices;
  auto n = [&] { return static_cast<int>(v.size()); };
  auto at = [&](int i) -> const PointD& {
    return v[static_cast<size_t>(((i % n()) + n()) % n())];
  };

  // Consecutive duplicates make edges degenerate; report and stop early.
  for (int i = 0; i < n(); ++i) {
    if (points_equal(at(i), at(i + 1)))
      issue(PolygonIssue::Kind::DuplicateVertex, i, -1,
            "consecutive vertices coincide");
  }
  if (!out.issues.empty()) return out;

  if (merge_collinear) {
    bool changed = true;
    while (changed && n() > 3) {
      changed = false;
      for (int i = 0; i < n(); ++i) {
        PointD u = at(i) - at(i - 1);
        PointD w = at(i + 1) - at(i);
        if (parallel(u, w) && dot(u, w).sign() > 0) {
          out.notes.push_back("merged collinear vertex " + std::to_string(i));
          v.erase(v.begin() + i);
          changed = true;
          break;
        }
      }
    }
  }

  for (int i = 0; i < n(); ++i) {
    PointD u = at(i) - at(i - 1);
    PointD w = at(i + 1) - at(i);
    if (!parallel(u, w)) continue;
    if (dot(u, w).sign() > 0) {
      issue(PolygonIssue::Kind::CollinearAdjacent, i, -1,
            "adjacent edges are collinear");
    } else {
      int e0 = (i - 1 + n()) % n();
      issue(PolygonIssue::Kind::SelfIntersection, e0, i,
            "edge doubles back on its predecessor");
    }
  }
  if (!out.issues.empty()) return out;

  for (int i = 0; i < n(); ++i) {
    for (int j = i + 1; j < n(); ++j) {
      if (edges_adjacent(i, j, n())) continue;
      SegSegHit hit = seg_seg_intersect(at(i), at(i + 1), at(j), at(j + 1));
      if (hit.kind != SegSegHit::Kind::None)
        issue(PolygonIssue::Kind::SelfIntersection, i, j,
              "non-adjacent edges intersect");
    }
  }

  if (out.issues.empty())
    out.polygon = Polygon(static_cast<int>(dim), std::move(v));
  return out;
}

RawPolygon read_polygon(std::istream& in) {
  RawPolygon raw;
  std::string line;
  int line_no = 0;
  long d = -1, count = -1;
  std::vector<std::string> tokens;

  auto next_tokens = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string t;
      while (ss >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  if (!next_tokens()) throw ParseError("polygon file: empty input");
  if (tokens.size() != 2)
    throw ParseError("polygon file line " + std::to_string(line_no) +
                     ": expected '<d> <n>'");
  try {
    d = std::stol(tokens[0]);
    count = std::stol(tokens[1]);
  } catch (const std::exception&) {
    throw ParseError("polygon file line " + std::to_string(line_no) +
                     ": expected integers '<d> <n>'");
  }
  if (d < 2 || count < 1)
    throw ParseError("polygon file line " + std::to_string(line_no) +
                     ": need d >= 2 and n >= 1");

  raw.dim = static_cast<int>(d);
  for (long k = 0; k < count; ++k) {
    if (!next_tokens())
      throw ParseError("polygon file: expected " + std::to_string(count) +
                       " vertex lines, got " + std::to_string(k));
    if (static_cast<long>(tokens.size()) != d)
      throw ParseError("polygon file line " + std::to_string(line_no) +
                       ": expected " + std::to_string(d) + " coordinates");
    PointD p(d);
    for (long c = 0; c < d; ++c) {
      auto r = Rational::parse(tokens[static_cast<size_t>(c)]);
      if (!r)
        throw ParseError("polygon file line " + std::to_string(line_no) +
                         ": bad coordinate '" + tokens[static_cast<size_t>(c)] +
                         "'");
      p(c) = *r;
    }
    raw.vertices.push_back(std::move(p));
  }
  if (next_tokens())
    throw ParseError("polygon file line " + std::to_string(line_no) +
                     ": trailing content after " + std::to_string(count) +
                     " vertices");
  return raw;
}

RawPolygon read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polygon file: " + path);
  return read_polygon(in);
}

void write_polygon(std::ostream& out, const Polygon& p) {
  out << p.dim() << " " << p.size() << "\n";
  for (const PointD& v : p.vertices()) {
    for (Eigen::Index c = 0; c < v.size(); ++c) {
      if (c) out << " ";
      out << v(c).str();
    }
    out << "\n";
  }
}

std::string polygon_to_text(const Polygon& p) {
  std::ostringstream ss;
  write_polygon(ss, p);
  return ss.str();
}

Polygon load_polygon_file(const std::string& path, bool merge_collinear) {
  RawPolygon raw = read_polygon_file(path);
  PolygonValidation val = validate_polygon(raw.vertices, merge_collinear);
  if (!val.ok()) {
    std::string msg = "polygon validation failed:";
    for (const auto& is : val.issues) msg += " " + is.str() + ";";
    throw ValidationFailedError(msg);
  }
  return *val.polygon;
}

TranslatedPolygon translate_to_height(const Polygon& p,
                                      const ProjectionFrame& frame) {
  if (p.dim() != 3) throw Error("translate_to_height: polygon must be in R^3");
  Rational min_h;
  bool first = true;
  for (const PointD& v : p.vertices()) {
    Rational h = dot(frame.w, v);
    if (first || h < min_h) min_h = h;
    first = false;
  }
  TranslatedPolygon out;
  out.offset = vec3(0, 0, 0);
  if (min_h >= Rational(1)) {
    out.polygon = p;
    return out;
  }
  Rational scale = (Rational(1) - min_h) / dot(frame.w, frame.w);
  out.offset = Vec3Q(scale * frame.w);
  std::vector<PointD> verts;
  verts.reserve(static_cast<size_t>(p.size()));
  for (const PointD& v : p.vertices()) verts.push_back(v + out.offset);
  out.polygon = Polygon(3, std::move(verts));
  return out;
}

}  // namespace plspan
