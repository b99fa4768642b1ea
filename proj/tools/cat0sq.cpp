#include <CLI11.hpp>
#include <json.hpp>

#include <cat0sq/ball.hpp>
#include <cat0sq/format.hpp>
#include <cat0sq/geodesic.hpp>
#include <cat0sq/link.hpp>
#include <cat0sq/pingpong.hpp>
#include <cat0sq/sector.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace cat0sq;

namespace {

constexpr const char* kSchemaVersion = "cat0sq-cli/1";

enum Exit { kOk = 0, kError = 1, kFails = 2, kInconclusive = 3 };

struct RunConfig {
  double eps = kDefaultEps;
  long budget = 100000;
  std::string format = "human";
  int jobs = 1;
};

struct Outcome {
  int code = kOk;
  json result = json::object();
};

std::string_view status_of(int code) {
  switch (code) {
    case kOk: return "ok";
    case kFails: return "fails";
    case kInconclusive: return "inconclusive";
    default: return "error";
  }
}

// Twelve significant digits keep documents stable across compilers.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

json edge_ids(const SquareComplex& x, const std::vector<int>& edges) {
  json out = json::array();
  for (int e : edges) out.push_back(x.edge_id(e));
  return out;
}

json loop_doc(const SquareComplex& x, const LinkLoop& l) {
  return {{"vertex", x.vertex_id(l.vertex)},
          {"loop", edge_ids(x, l.edges)},
          {"edges", l.edges.size()},
          {"length", num(static_cast<double>(l.edges.size()) * kPi / 2)}};
}

json points_doc(const SquareComplex& x, const PLPath& path) {
  json out = json::array();
  for (const auto& p : path.points()) out.push_back(format_point(p, x));
  return out;
}

json far_point_doc(const SquareComplex& x, const FarPoint& f) {
  return {{"point", format_point(f.point, x)}, {"t1", num(f.t1)}, {"t2", num(f.t2)}};
}

json signs_doc(Signs s) { return json::array({s.s1, s.s2}); }

int vertex_arg(const SquareComplex& x, const std::string& id) { return x.vertex(id); }

// ---------------------------------------------------------------------------

Outcome run_validate(const std::string& file) {
  const auto raw = parse_raw(read_file(file));
  const auto report = validate(raw);
  Outcome out;
  out.result["file"] = file;
  out.result["verdict"] = report.passed() ? "pass" : "fail";
  out.result["vertices"] = raw.vertices.size();
  out.result["edges"] = raw.edges.size();
  out.result["squares"] = raw.squares.size();
  json vs = json::array();
  for (const auto& v : report.violations) vs.push_back({{"axiom", v.axiom}, {"cells", v.cells}, {"message", v.message}});
  out.result["violations"] = std::move(vs);
  out.code = report.passed() ? kOk : kFails;
  return out;
}

Outcome run_links(const std::string& file, const std::string& vertex) {
  const auto x = load(file);
  std::vector<int> vertices;
  if (!vertex.empty()) {
    vertices.push_back(vertex_arg(x, vertex));
  } else {
    for (int v = 0; v < x.vertex_count(); ++v) vertices.push_back(v);
  }
  Outcome out;
  out.result["file"] = file;
  json links = json::array();
  for (int v : vertices) {
    const auto l = link(x, v);
    json nodes = json::array(), arcs = json::array();
    for (int n = 0; n < l.node_count(); ++n) nodes.push_back(x.edge_id(l.edge_of(n)));
    for (int a = 0; a < l.arc_count(); ++a) {
      const auto& arc = l.arc(a);
      arcs.push_back({{"square", x.square_id(arc.corner.square)},
                      {"ends", {x.edge_id(l.edge_of(arc.a)), x.edge_id(l.edge_of(arc.b))}}});
    }
    const auto g = girth(l);
    links.push_back({{"vertex", x.vertex_id(v)},
                     {"nodes", std::move(nodes)},
                     {"arcs", std::move(arcs)},
                     {"girth", g ? json(*g) : json(nullptr)},
                     {"girth_length", g ? num(*g * kPi / 2) : json(nullptr)}});
  }
  out.result["links"] = std::move(links);
  return out;
}

Outcome run_check_npc(const std::string& file, const RunConfig& cfg) {
  const auto x = load(file);
  const auto r = is_npc(x, cfg.jobs);
  Outcome out;
  out.result["file"] = file;
  out.result["npc"] = r.npc;
  out.result["witness"] = r.witness ? loop_doc(x, *r.witness) : json(nullptr);
  out.code = r.npc ? kOk : kFails;
  return out;
}

Outcome run_find_loops(const std::string& file, int edges, const RunConfig& cfg) {
  const auto x = load(file);
  const auto loops = find_loops(x, edges, cfg.jobs);
  Outcome out;
  out.result["file"] = file;
  out.result["edges"] = edges;
  out.result["count"] = loops.size();
  json vs = json::array();
  for (const auto& l : loops) vs.push_back(loop_doc(x, l));
  out.result["vertices"] = std::move(vs);
  return out;
}

Outcome run_develop(const std::string& file, const std::string& vertex, int radius, const std::string& dest) {
  auto base = std::make_shared<const SquareComplex>(load(file));
  const auto ball = develop(base, vertex_arg(*base, vertex), radius);
  save_ball(ball, dest);
  const auto& x = ball.complex();
  int boundary = 0;
  for (int v = 0; v < x.vertex_count(); ++v) boundary += ball.is_boundary_vertex(v);
  Outcome out;
  out.result["file"] = file;
  out.result["vertex"] = vertex;
  out.result["radius"] = radius;
  out.result["out"] = dest;
  out.result["center"] = x.vertex_id(ball.center());
  out.result["vertices"] = x.vertex_count();
  out.result["edges"] = x.edge_count();
  out.result["squares"] = x.square_count();
  out.result["boundary_vertices"] = boundary;
  out.result["within_radius"] = ball.vertex_count_within(radius);
  return out;
}

json pattern_doc(const SquareComplex& x, const SectorPattern& p) {
  json squares = json::array();
  for (int s : p.all_squares()) squares.push_back(x.square_id(s));
  json charts = json::array();
  for (const auto& c : p.charts) {
    json ids = json::array();
    for (int v : c) ids.push_back(x.vertex_id(v));
    charts.push_back(std::move(ids));
  }
  return {{"cone", x.vertex_id(p.cone)},
          {"square_count", p.all_squares().size()},
          {"vertex_count", p.all_vertices().size()},
          {"squares", std::move(squares)},
          {"charts", std::move(charts)}};
}

Outcome run_detect(const std::string& file, const std::string& kind_name, int radius, const std::string& vertex,
                   const RunConfig& cfg) {
  const auto ball = load_ball(file);
  const auto& x = ball.complex();
  const auto kind = parse_sector_kind(kind_name);
  Outcome out;
  out.result["file"] = file;
  out.result["kind"] = to_string(kind);
  out.result["radius"] = radius;
  if (!vertex.empty()) {
    out.result["vertex"] = vertex;
    const auto r = detect_sector(ball, vertex_arg(x, vertex), radius, kind);
    out.result["found"] = r.pattern.has_value();
    out.result["achieved"] = r.achieved;
    out.result["pattern"] = r.pattern ? pattern_doc(x, *r.pattern) : json(nullptr);
    out.code = r.pattern ? kOk : kFails;
    return out;
  }
  const auto scan = detect_sectors(ball, radius, kind, cfg.jobs);
  json found = json::array(), skipped = json::array();
  for (const auto& p : scan.found) found.push_back(pattern_doc(x, p));
  for (int v : scan.skipped) skipped.push_back(x.vertex_id(v));
  out.result["checked"] = (vertex.empty() ? x.vertex_count() : 1) - static_cast<int>(scan.skipped.size());
  out.result["found"] = std::move(found);
  out.result["skipped"] = std::move(skipped);
  out.code = !scan.found.empty() ? kOk : scan.skipped.empty() ? kFails : kInconclusive;
  return out;
}

Outcome run_geodesic(const std::string& file, const std::string& from, const std::string& to, bool check_r,
                     const std::string& method, unsigned seed, const RunConfig& cfg) {
  const auto ball = load_ball(file);
  const auto& x = ball.complex();
  const auto p = parse_point(from, x);
  const auto q = parse_point(to, x);
  const auto path = method == "exact" ? geodesic(ball, p, q) : shortest_path(ball, p, q, cfg.eps, seed, cfg.budget);
  Outcome out;
  out.result["file"] = file;
  out.result["from"] = format_point(p, x);
  out.result["to"] = format_point(q, x);
  out.result["method"] = method;
  out.result["length"] = num(path.length());
  json squared = json::array();
  for (const auto& s : path.squared_lengths()) squared.push_back(to_string(s));
  out.result["segment_squared_lengths"] = std::move(squared);
  out.result["breakpoints"] = points_doc(x, path);
  const auto local = local_geodesic_check(path, ball, cfg.eps);
  out.result["local_geodesic"] = local.pass;
  if (check_r) {
    const bool r = r_geodesic_check(path, ball, cfg.eps);
    json checks = json::array();
    for (const auto& b : local.breakpoints) {
      checks.push_back({{"point", format_point(path.points()[b.index], x)}, {"link_distance", num(b.link_distance)}});
    }
    out.result["r_geodesic"] = r;
    out.result["crossings"] = std::move(checks);
    if (r) {
      const auto s = slope_invariant(path, ball, cfg.eps);
      out.result["slope"] = {{"tan_alpha", to_string(s.tan_alpha)}, {"alpha", num(s.alpha)}};
    }
    out.code = r ? kOk : kFails;
  }
  return out;
}

json decay_doc(const AngleDecay& d) {
  json samples = json::array();
  for (const auto& s : d.samples) {
    samples.push_back(
        {{"t", num(s.t)}, {"angle1", num(s.angle1)}, {"angle2", num(s.angle2)}, {"distance", num(s.distance)}});
  }
  return {{"signs", signs_doc(d.signs)}, {"reached", d.reached},    {"T", num(d.T)},
          {"minimum", num(d.minimum)},  {"monotone", d.monotone},   {"diverging", d.diverging},
          {"samples", std::move(samples)}};
}

Outcome run_pingpong(const std::string& file, const std::string& axis1, const std::string& axis2,
                     const std::string& T, double factor, const RunConfig& cfg) {
  const auto ball = load_ball(file);
  const auto& x = ball.complex();
  PingPongInstance inst{ball, load_axis(axis1, ball), load_axis(axis2, ball), std::nullopt};
  if (T != "auto") {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(T, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != T.size() || !(v >= 0)) throw DomainError("--T expects 'auto' or a nonnegative number");
    inst.T = v;
  }
  inst.threshold_factor = factor;
  inst.eps = cfg.eps;
  inst.jobs = cfg.jobs;
  const auto c = free_certificate(inst);

  Outcome out;
  out.result["file"] = file;
  out.result["axis1"] = axis1;
  out.result["axis2"] = axis2;
  out.result["verdict"] = to_string(c.verdict);
  out.result["r_geodesic"] = {c.r_geodesic1, c.r_geodesic2};
  out.result["perp"] = c.perp ? json{{"alpha1", num(c.perp->alpha1)},
                                     {"alpha2", num(c.perp->alpha2)},
                                     {"margin", num(c.perp->margin)}}
                              : json(nullptr);
  out.result["threshold"] = num(c.threshold);
  json decay = json::array();
  for (const auto& d : c.decay) decay.push_back(decay_doc(d));
  out.result["decay"] = std::move(decay);
  out.result["T"] = num(c.T);
  json cases = json::array();
  for (const auto& k : c.disjointness.cases) {
    json ws = json::array();
    for (const auto& w : k.witnesses) ws.push_back(far_point_doc(x, w));
    cases.push_back(
        {{"signs", signs_doc(k.signs)}, {"disjoint", k.disjoint}, {"undecided", k.undecided}, {"witnesses", ws}});
  }
  out.result["disjointness"] = {
      {"T", num(c.disjointness.T)}, {"cells", c.disjointness.cells}, {"holds", c.disjointness.holds}, {"cases", cases}};
  out.result["periodicity"] = {{"pass", c.periodicity.pass},
                               {"annulus_vertices", c.periodicity.annulus_vertices},
                               {"failures", c.periodicity.failures}};
  out.result["witness"] = c.witness ? far_point_doc(x, *c.witness) : json(nullptr);
  out.result["witness_signs"] = c.witness_signs ? signs_doc(*c.witness_signs) : json(nullptr);
  out.result["notes"] = c.notes;
  switch (c.verdict) {
    case Verdict::FreeRankTwoBallCertified: out.code = kOk; break;
    case Verdict::ConditionFails: out.code = kFails; break;
    case Verdict::Inconclusive: out.code = kInconclusive; break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Human rendering of the structured document.

std::string scalar(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void render(const json& v, int indent, std::ostream& os);

void render_item(const json& v, int indent, std::ostream& os) {
  const std::string pad(indent, ' ');
  if (flat(v)) {
    os << pad << "- " << (v.is_array() ? (v.empty() ? std::string("(none)") : [&] {
      std::string s;
      for (const auto& e : v) s += (s.empty() ? "" : ", ") + scalar(e);
      return s;
    }())
                                        : scalar(v))
       << "\n";
    return;
  }
  std::ostringstream body;
  render(v, indent + 2, body);
  auto text = body.str();
  if (v.is_object() && text.size() > pad.size() + 2) {
    text.replace(indent, 2, "- ");
    os << text;
  } else {
    os << pad << "-\n" << text;
  }
}

void render(const json& v, int indent, std::ostream& os) {
  const std::string pad(indent, ' ');
  if (v.is_array()) {
    for (const auto& e : v) render_item(e, indent, os);
    return;
  }
  for (const auto& [key, val] : v.items()) {
    if (val.is_array() && flat(val)) {
      std::string s;
      for (const auto& e : val) s += (s.empty() ? "" : ", ") + scalar(e);
      os << pad << key << ": " << (val.empty() ? "(none)" : s) << "\n";
    } else if (val.is_structured()) {
      os << pad << key << ":" << (val.empty() ? " (none)" : "") << "\n";
      render(val, indent + 2, os);
    } else {
      os << pad << key << ": " << scalar(val) << "\n";
    }
  }
}

void emit(const json& doc, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == "structured") {
    os << doc.dump(2) << "\n";
  } else {
    render(doc, 0, os);
  }
}

json error_doc(const std::exception& e) {
  json err{{"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["kind"] = "parse";
    err["location"] = p->location();
  } else if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    err["kind"] = "validation";
    json vs = json::array();
    for (const auto& x : v->report().violations) vs.push_back({{"axiom", x.axiom}, {"cells", x.cells}});
    err["violations"] = std::move(vs);
  } else if (const auto* c = dynamic_cast<const CurvatureError*>(&e)) {
    err["kind"] = "curvature";
    err["vertex"] = c->vertex();
    err["loop"] = c->loop();
  } else if (dynamic_cast<const BallTooSmall*>(&e)) {
    err["kind"] = "ball-too-small";
  } else if (const auto* b = dynamic_cast<const BudgetExceeded*>(&e)) {
    err["kind"] = "budget-exceeded";
    err["deficit"] = num(b->deficit());
  } else if (dynamic_cast<const DomainError*>(&e)) {
    err["kind"] = "domain";
  } else {
    err["kind"] = "io";
  }
  return err;
}

double env_eps() {
  const char* s = std::getenv("CAT0SQ_EPS");
  if (s == nullptr || *s == '\0') return kDefaultEps;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (*end != '\0' || !(v > 0) || !std::isfinite(v)) {
    throw CLI::ValidationError("CAT0SQ_EPS", std::string("expected a positive number, got '") + s + "'");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square complexes: curvature, developments, exact geodesics and ping-pong certificates"};
  app.name("cat0sq");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<double> eps_flag;
  app.add_option("--eps", eps_flag, "Tolerance (default 1e-9, or CAT0SQ_EPS)")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "Iteration budget for path straightening")->check(CLI::Range(1L, 1L << 40));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("-j,--jobs", cfg.jobs, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);

  std::string file, vertex, out_path, kind = "fake-disk", from, to, axis1, axis2, T = "auto", method = "exact";
  int edges = 5, radius = 0;
  unsigned seed = 0;
  double factor = 1.0 / 3;

  auto* validate_cmd = app.add_subcommand("validate", "Check the square complex axioms");
  validate_cmd->add_option("file", file, "Complex file")->required();

  auto* links_cmd = app.add_subcommand("links", "Print vertex links");
  links_cmd->add_option("file", file, "Complex file")->required();
  links_cmd->add_option("--vertex", vertex, "Only this vertex");

  auto* npc_cmd = app.add_subcommand("check-npc", "Check that every link loop has at least four edges");
  npc_cmd->add_option("file", file, "Complex file")->required();

  auto* loops_cmd = app.add_subcommand("find-loops", "List vertices whose link has a simple loop of given length");
  loops_cmd->add_option("file", file, "Complex file")->required();
  loops_cmd->add_option("--edges", edges, "Loop length in link edges")->check(CLI::Range(3, 64));

  auto* develop_cmd = app.add_subcommand("develop", "Develop a ball of the universal cover");
  develop_cmd->add_option("file", file, "Complex file")->required();
  develop_cmd->add_option("--vertex", vertex, "Base vertex at the center")->required();
  develop_cmd->add_option("--radius", radius, "Radius")->required()->check(CLI::Range(1, 64));
  develop_cmd->add_option("--out", out_path, "Ball file to write")->required();

  auto* detect_cmd = app.add_subcommand("detect", "Search a ball for flat disks, fake disks or quarter disks");
  detect_cmd->add_option("ball", file, "Ball file")->required();
  detect_cmd->add_option("--kind", kind, "fake-disk, flat-disk or quarter-disk")
      ->check(CLI::IsMember({"fake-disk", "flat-disk", "quarter-disk"}));
  detect_cmd->add_option("--radius", radius, "Disk radius")->required()->check(CLI::Range(1, 64));
  detect_cmd->add_option("--vertex", vertex, "Only this cone vertex");

  bool check_r = false;
  auto* geodesic_cmd = app.add_subcommand("geodesic", "Exact geodesic between two points of a ball");
  geodesic_cmd->add_option("ball", file, "Ball file")->required();
  geodesic_cmd->add_option("--from", from, "Point spec v:<id> | e:<id>:<t> | s:<id>:<x>,<y>")->required();
  geodesic_cmd->add_option("--to", to, "Point spec")->required();
  geodesic_cmd->add_flag("--check-r", check_r, "Check that the geodesic is an R-geodesic");
  geodesic_cmd->add_option("--method", method, "exact (unfolding) or straighten (edge path, then repairs)")
      ->check(CLI::IsMember({"exact", "straighten"}));
  geodesic_cmd->add_option("--seed", seed, "Tie-breaking seed for the straighten method");

  auto* pingpong_cmd = app.add_subcommand("pingpong-cert", "Ping-pong certificate for two axes");
  pingpong_cmd->add_option("ball", file, "Ball file")->required();
  pingpong_cmd->add_option("--axis1", axis1, "First axis file")->required();
  pingpong_cmd->add_option("--axis2", axis2, "Second axis file")->required();
  pingpong_cmd->add_option("--T", T, "Truncation parameter or 'auto'");
  pingpong_cmd->add_option("--threshold-factor", factor, "Angle threshold as a fraction of the margin")
      ->check(CLI::Range(1e-6, 1.0 / 3));

  try {
    app.parse(argc, argv);
    cfg.eps = eps_flag ? *eps_flag : env_eps();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kError;
  }

  auto* sub = app.get_subcommands().front();
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = sub->get_name();
  doc["eps"] = cfg.eps;
  int code = kOk;
  try {
    Outcome out;
    if (sub == validate_cmd) out = run_validate(file);
    else if (sub == links_cmd) out = run_links(file, vertex);
    else if (sub == npc_cmd) out = run_check_npc(file, cfg);
    else if (sub == loops_cmd) out = run_find_loops(file, edges, cfg);
    else if (sub == develop_cmd) out = run_develop(file, vertex, radius, out_path);
    else if (sub == detect_cmd) out = run_detect(file, kind, radius, vertex, cfg);
    else if (sub == geodesic_cmd) out = run_geodesic(file, from, to, check_r, method, seed, cfg);
    else out = run_pingpong(file, axis1, axis2, T, factor, cfg);
    code = out.code;
    doc["status"] = status_of(code);
    doc["result"] = std::move(out.result);
  } catch (const BallTooSmall& e) {
    code = kInconclusive;
    doc["status"] = status_of(code);
    doc["error"] = error_doc(e);
  } catch (const BudgetExceeded& e) {
    code = kInconclusive;
    doc["status"] = status_of(code);
    doc["error"] = error_doc(e);
  } catch (const std::exception& e) {
    code = kError;
    doc["status"] = status_of(code);
    doc["error"] = error_doc(e);
  }
  doc["exit_code"] = code;
  emit(doc, cfg, code == kError ? std::cerr : std::cout);
  return code;
}
