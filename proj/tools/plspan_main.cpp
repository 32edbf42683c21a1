#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <plspan/bounds.hpp>
#include <plspan/diagram.hpp>
#include <plspan/errors.hpp>
#include <plspan/families.hpp>
#include <plspan/higher_dim.hpp>
#include <plspan/mesh.hpp>
#include <plspan/polygon.hpp>
#include <plspan/seifert.hpp>

namespace {

using nlohmann::ordered_json;
using namespace plspan;

struct Opts {
  std::string input;
  std::string out;
  std::string report;
  uint64_t seed = 0;
  int max_attempts = 64;
  std::string strategy = "white";
  int precision = 12;
  bool merge_collinear = false;
  std::string format = "off";
  std::string genus = "0";
  std::string family;
  std::string m_range = "1..4";
  int m = 3;
  int n = 8;
  int dim = 3;
  long long box = 10;
};

ordered_json json_vec(const VecQ& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i).str());
  return a;
}

void emit_report(const ordered_json& j, const Opts& o) {
  const std::string text = j.dump(2) + "\n";
  if (o.report.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.report);
  if (!f) throw Error("cannot open report file: " + o.report);
  f << text;
}

void write_mesh(const Mesh& m, const Opts& o) {
  if (o.out.empty()) return;
  std::ofstream f(o.out);
  if (!f) throw Error("cannot open output file: " + o.out);
  if (o.format == "off")
    export_off(m, f, o.precision);
  else
    f << mesh_to_json(m).dump(2) << "\n";
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot open output file: " + path);
  f << text;
}

SmoothingStrategy strategy_of(const std::string& name) {
  return name == "orientation" ? SmoothingStrategy::OrientationRespecting
                               : SmoothingStrategy::WhiteFace;
}

std::pair<long long, long long> parse_range(const std::string& text) {
  try {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
      long long v = std::stoll(text);
      return {v, v};
    }
    long long lo = std::stoll(text.substr(0, pos));
    long long hi = std::stoll(text.substr(pos + 2));
    if (hi < lo) throw Error("empty range");
    return {lo, hi};
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("invalid range '" + text + "'; expected a or a..b");
  }
}

int run_validate(const Opts& o) {
  RawPolygon raw = read_polygon_file(o.input);
  PolygonValidation val = validate_polygon(raw.vertices, o.merge_collinear);
  ordered_json j;
  j["dim"] = raw.dim;
  j["n"] = static_cast<long long>(raw.vertices.size());
  j["ok"] = val.ok();
  ordered_json issues = ordered_json::array();
  for (const PolygonIssue& is : val.issues) {
    ordered_json e;
    e["kind"] = is.kind_name();
    e["i"] = is.i;
    e["j"] = is.j;
    e["detail"] = is.detail;
    issues.push_back(e);
  }
  j["issues"] = issues;
  j["notes"] = val.notes;
  emit_report(j, o);
  std::cerr << "validate: " << (val.ok() ? "ok" : "invalid") << " ("
            << val.issues.size() << " issues)\n";
  return val.ok() ? 0 : 1;
}

int run_diagram(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  ProjectionFrame frame = find_frame(p, o.seed, o.max_attempts);
  KnotDiagram d = project(p, frame);
  ordered_json j;
  j["n"] = d.n();
  j["c"] = d.crossing_count();
  j["writhe"] = writhe(d);
  j["frame"] = {{"u", json_vec(frame.u)},
                {"v", json_vec(frame.v)},
                {"w", json_vec(frame.w)}};
  ordered_json cs = ordered_json::array();
  for (const Crossing& c : d.crossings) {
    ordered_json e;
    e["over"] = c.over_edge;
    e["under"] = c.under_edge;
    e["sign"] = c.sign;
    e["point2d"] = json_vec(c.point);
    e["params"] = ordered_json::array({c.t_over.str(), c.t_under.str()});
    cs.push_back(e);
  }
  j["crossings"] = cs;
  emit_report(j, o);
  std::cerr << "diagram: n=" << d.n() << " c=" << d.crossing_count()
            << " writhe=" << writhe(d) << "\n";
  return 0;
}

int run_seifert(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  SeifertResult r =
      seifert_pipeline(p, o.seed, o.max_attempts, strategy_of(o.strategy));
  write_mesh(r.surface.mesh, o);
  const long long n = r.diagram.n();
  const long long c = r.diagram.crossing_count();
  ordered_json j;
  j["n"] = n;
  j["c"] = c;
  j["s"] = r.surface.circuit_count;
  j["levels"] = r.surface.levels;
  j["ledger"] = {{"disk", r.surface.ledger.disk},
                 {"wall", r.surface.ledger.wall},
                 {"band", r.surface.ledger.band},
                 {"total", r.surface.ledger.total}};
  j["chi"] = r.surface.chi;
  j["genus"] = r.surface.genus;
  j["bounds"] = {{"paper_3n14c", ub_ledger(n, c)},
                 {"paper_7n2", ub_global(n)}};
  j["writhe"] = writhe(r.diagram);
  j["strategy"] = strategy_name(r.strategy_used);
  std::vector<std::string> notes = r.notes;
  notes.insert(notes.end(), r.surface.notes.begin(), r.surface.notes.end());
  j["notes"] = notes;
  emit_report(j, o);
  std::cerr << "seifert: n=" << n << " c=" << c
            << " s=" << r.surface.circuit_count
            << " genus=" << r.surface.genus
            << " triangles=" << r.surface.ledger.total << " ("
            << strategy_name(r.strategy_used) << ")\n";
  return 0;
}

int run_triangulate_planar(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  Mesh m = triangulate_planar(p);
  write_mesh(m, o);
  ordered_json j;
  j["n"] = p.size();
  j["dim"] = p.dim();
  j["triangle_count"] = m.triangle_count();
  j["checks"] = {{"embedded", true}, {"disk_topology", true}};
  emit_report(j, o);
  std::cerr << "triangulate-planar: n=" << p.size()
            << " triangles=" << m.triangle_count() << "\n";
  return 0;
}

int run_cone(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  ConeResult r = cone_spanning_disk(p, o.seed, o.max_attempts);
  write_mesh(r.mesh, o);
  ordered_json j;
  j["n"] = p.size();
  j["dim"] = p.dim();
  j["triangle_count"] = r.mesh.triangle_count();
  j["attempts"] = r.attempts;
  j["checks"] = {{"embedded", true}, {"disk_topology", true}};
  emit_report(j, o);
  std::cerr << "cone: n=" << p.size() << " triangles=" << r.mesh.triangle_count()
            << " attempts=" << r.attempts << "\n";
  return 0;
}

int run_annulus4(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  AnnulusResult r = annulus_spanning_disk4(p, o.seed, o.max_attempts);
  write_mesh(r.mesh, o);
  ordered_json j;
  j["n"] = p.size();
  j["dim"] = p.dim();
  j["triangle_count"] = r.mesh.triangle_count();
  j["attempts"] = r.attempts;
  j["checks"] = {{"complementary", true}, {"disk_topology", true}};
  emit_report(j, o);
  std::cerr << "annulus4: n=" << p.size()
            << " triangles=" << r.mesh.triangle_count()
            << " attempts=" << r.attempts << "\n";
  return 0;
}

int run_embed4(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  Embed4Result r = embed_spanning_surface4(p, o.seed, o.max_attempts,
                                           strategy_of(o.strategy));
  write_mesh(r.mesh, o);
  const long long n = p.size();
  ordered_json j;
  j["n"] = n;
  j["dim"] = p.dim();
  j["triangle_count"] = r.t_total;
  j["t_seifert"] = r.t_seifert;
  j["t_wall"] = r.t_wall;
  j["budget_24n2"] = 24 * n * n;
  j["attempts"] = r.attempts;
  j["checks"] = {{"embedded", true}, {"boundary_subdivision", true}};
  emit_report(j, o);
  std::cerr << "embed4: n=" << n << " triangles=" << r.t_total << " (budget "
            << 24 * n * n << ") attempts=" << r.attempts << "\n";
  return 0;
}

int run_gen(const Opts& o) {
  Polygon p;
  if (o.family == "torus") {
    p = gen_torus_stick(o.m);
  } else if (o.family == "writhe") {
    p = gen_writhe_family(o.m);
  } else if (o.family == "ngon") {
    p = gen_planar_ngon(o.n);
  } else {
    p = gen_random_polygon(o.n, o.dim, o.seed, o.box, o.max_attempts);
  }
  write_text(polygon_to_text(p), o.out);
  if (!o.report.empty()) {
    ordered_json j;
    j["family"] = o.family;
    j["n"] = p.size();
    j["dim"] = p.dim();
    emit_report(j, o);
  }
  std::cerr << "gen: " << o.family << " n=" << p.size() << " dim=" << p.dim()
            << "\n";
  return 0;
}

int run_bounds(const Opts& o) {
  Polygon p = load_polygon_file(o.input, o.merge_collinear);
  ProjectionFrame frame = find_frame(p, o.seed, o.max_attempts);
  KnotDiagram d = project(p, frame);
  const long long n = d.n();
  const long long c = d.crossing_count();
  const long long w = writhe(d);
  Rational g = Rational::parse_or_throw(o.genus, "genus");
  ordered_json j;
  j["n"] = n;
  j["c"] = c;
  j["writhe"] = w;
  j["genus"] = g.str();
  j["values"] = {{"lb_genus", lb_genus(g, g.is_integer())},
                 {"lb_writhe", lb_writhe(w)},
                 {"lb_crossings", lb_crossings(w, n)},
                 {"ub_ledger", ub_ledger(n, c)},
                 {"ub_7n2", ub_global(n)}};
  emit_report(j, o);
  std::cerr << "bounds: n=" << n << " c=" << c << " writhe=" << w << "\n";
  return 0;
}

int run_bench_gamma(const Opts& o) {
  const auto [lo, hi] = parse_range(o.m_range);
  std::vector<GammaRow> rows;
  for (long long m = lo; m <= hi; ++m) {
    GammaRow row;
    row.family = o.family;
    row.m = m;
    if (o.family == "ngon") {
      Polygon p = gen_planar_ngon(static_cast<int>(m));
      Mesh mesh = triangulate_planar(p);
      row.n = p.size();
      row.t = mesh.triangle_count();
    } else {
      Polygon p = o.family == "torus" ? gen_torus_stick(static_cast<int>(m))
                                      : gen_writhe_family(static_cast<int>(m));
      SeifertResult r =
          seifert_pipeline(p, o.seed, o.max_attempts, strategy_of(o.strategy));
      row.n = p.size();
      row.t = r.surface.ledger.total;
    }
    rows.push_back(std::move(row));
  }
  GammaReport rep = gamma_report(std::move(rows));
  ordered_json j;
  j["family"] = o.family;
  j["band"] = {{"lower", "1/2"}, {"upper", "7"}};
  ordered_json jr = ordered_json::array();
  for (const GammaRow& row : rep.rows) {
    ordered_json e;
    e["m"] = row.m;
    e["n"] = row.n;
    e["t"] = row.t;
    e["ratio"] = row.ratio.str();
    e["ratio_decimal"] = row.ratio.decimal(6);
    jr.push_back(e);
  }
  j["rows"] = jr;
  j["max_ratio"] = rep.max_ratio.str();
  j["ok"] = rep.band_ok;
  emit_report(j, o);
  std::cerr << "bench-gamma: " << rep.rows.size() << " runs, max ratio "
            << rep.max_ratio.decimal(6) << "\n";
  return rep.band_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangulated PL surfaces spanning closed polygons"};
  app.require_subcommand(1);
  Opts o;

  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "polygon file")->required();
    c->add_flag("--merge-collinear", o.merge_collinear,
                "merge collinear adjacent vertices instead of rejecting");
  };
  auto add_report = [&](CLI::App* c) {
    c->add_option("--report", o.report,
                  "write the JSON report here instead of stdout");
  };
  auto add_seeded = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "deterministic seed")
        ->capture_default_str();
    c->add_option("--max-attempts", o.max_attempts, "candidate budget")
        ->capture_default_str();
  };
  auto add_mesh_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "mesh output path");
    c->add_option("--format", o.format, "mesh output format")
        ->check(CLI::IsMember({"off", "json"}))
        ->capture_default_str();
    c->add_option("--precision", o.precision,
                  "fractional digits for OFF output")
        ->capture_default_str();
  };
  auto add_strategy = [&](CLI::App* c) {
    c->add_option("--strategy", o.strategy, "smoothing strategy")
        ->check(CLI::IsMember({"white", "orientation"}))
        ->capture_default_str();
  };

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "validate a polygon file");
  add_input(validate_cmd);
  add_report(validate_cmd);

  CLI::App* diagram_cmd =
      app.add_subcommand("diagram", "project to a knot diagram");
  add_input(diagram_cmd);
  add_report(diagram_cmd);
  add_seeded(diagram_cmd);

  CLI::App* seifert_cmd =
      app.add_subcommand("seifert", "build the spanning surface in R^3");
  add_input(seifert_cmd);
  add_report(seifert_cmd);
  add_seeded(seifert_cmd);
  add_mesh_out(seifert_cmd);
  add_strategy(seifert_cmd);

  CLI::App* planar_cmd = app.add_subcommand(
      "triangulate-planar", "triangulate a planar polygon by ear clipping");
  add_input(planar_cmd);
  add_report(planar_cmd);
  add_mesh_out(planar_cmd);

  CLI::App* cone_cmd =
      app.add_subcommand("cone", "cone to an apex in dimension >= 5");
  add_input(cone_cmd);
  add_report(cone_cmd);
  add_seeded(cone_cmd);
  add_mesh_out(cone_cmd);

  CLI::App* annulus_cmd = app.add_subcommand(
      "annulus4", "complementary annulus-plus-fan disk in R^4");
  add_input(annulus_cmd);
  add_report(annulus_cmd);
  add_seeded(annulus_cmd);
  add_mesh_out(annulus_cmd);

  CLI::App* embed_cmd = app.add_subcommand(
      "embed4", "embedded spanning surface in R^4 via projection");
  add_input(embed_cmd);
  add_report(embed_cmd);
  add_seeded(embed_cmd);
  add_mesh_out(embed_cmd);
  add_strategy(embed_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a polygon family");
  gen_cmd->add_option("family", o.family, "torus | writhe | ngon | random")
      ->required()
      ->check(CLI::IsMember({"torus", "writhe", "ngon", "random"}));
  gen_cmd->add_option("--m", o.m, "family parameter")->capture_default_str();
  gen_cmd->add_option("--n", o.n, "vertex count")->capture_default_str();
  gen_cmd->add_option("--dim", o.dim, "ambient dimension (random)")
      ->capture_default_str();
  gen_cmd->add_option("--box", o.box, "coordinate box (random)")
      ->capture_default_str();
  gen_cmd->add_option("--out", o.out, "polygon output path");
  add_report(gen_cmd);
  add_seeded(gen_cmd);

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "triangle-count bounds for a polygon");
  add_input(bounds_cmd);
  add_report(bounds_cmd);
  add_seeded(bounds_cmd);
  bounds_cmd->add_option("--genus", o.genus, "knot genus for the genus bound")
      ->capture_default_str();

  CLI::App* gamma_cmd = app.add_subcommand(
      "bench-gamma", "isoperimetric ratios t/n^2 over a family");
  gamma_cmd->add_option("--family", o.family, "torus | writhe | ngon")
      ->required()
      ->check(CLI::IsMember({"torus", "writhe", "ngon"}));
  gamma_cmd->add_option("--m", o.m_range, "parameter range a..b")
      ->capture_default_str();
  add_report(gamma_cmd);
  add_seeded(gamma_cmd);
  add_strategy(gamma_cmd);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(validate_cmd)) return run_validate(o);
    if (app.got_subcommand(diagram_cmd)) return run_diagram(o);
    if (app.got_subcommand(seifert_cmd)) return run_seifert(o);
    if (app.got_subcommand(planar_cmd)) return run_triangulate_planar(o);
    if (app.got_subcommand(cone_cmd)) return run_cone(o);
    if (app.got_subcommand(annulus_cmd)) return run_annulus4(o);
    if (app.got_subcommand(embed_cmd)) return run_embed4(o);
    if (app.got_subcommand(gen_cmd)) return run_gen(o);
    if (app.got_subcommand(bounds_cmd)) return run_bounds(o);
    if (app.got_subcommand(gamma_cmd)) return run_bench_gamma(o);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
