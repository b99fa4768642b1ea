#include "cat0sq/pingpong.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "cat0sq/error.hpp"
#include "cat0sq/format.hpp"
#include "json_detail.hpp"
#include "parallel.hpp"

namespace cat0sq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int jobs_or_hardware(int jobs) {
  return jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

Rational dyadic(long k, long d) {
  Rational r(k, d);
  r.canonicalize();
  return r;
}

// Arc-length parameter of a point lying on the path, or nullopt.
std::optional<double> locate(const SquareComplex& x, const PLPath& path, const std::vector<double>& arc,
                             const Point& q, double eps) {
  for (int j = 0; j < path.segment_count(); ++j) {
    const auto& a = path.points()[j];
    const auto& b = path.points()[j + 1];
    const Cell cell = path.cells()[j];
    if (q == a) return arc[j];
    if (q == b) return arc[j + 1];
    const auto qc = common_cell(x, a, q);
    const auto qb = common_cell(x, q, b);
    if (!qc || !qb) continue;
    bool inside = false;
    if (cell.kind == Cell::Kind::Square) {
      inside = local_xy(x, q, cell.index).has_value();
    } else {
      inside = q.kind == Point::Kind::Edge && q.cell == cell.index;
    }
    if (!inside) continue;
    const double da = std::sqrt(to_double(squared_distance_in(x, a, q, cell)));
    const double db = std::sqrt(to_double(squared_distance_in(x, q, b, cell)));
    if (std::abs(da + db - path.segment_length(j)) <= eps) return arc[j] + da;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Point> image_point(const CellularMap& f, const Point& p) {
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  switch (p.kind) {
    case Point::Kind::Vertex: {
      const int v = f.vertex(p.cell);
      if (v < 0) return std::nullopt;
      return Point::vertex(v);
    }
    case Point::Kind::Edge: {
      const int e = f.edge(p.cell);
      if (e < 0) return std::nullopt;
      const bool same = f.vertex(src.edge_at(p.cell).ends[0]) == tgt.edge_at(e).ends[0];
      return Point::on_edge(e, same ? p.a : Rational(1 - p.a));
    }
    case Point::Kind::Square: {
      const int s = f.square(p.cell);
      if (s < 0) return std::nullopt;
      const auto d = f.alignment(p.cell);
      const auto o = corner_xy(d.apply(0)), u = corner_xy(d.apply(1)), w = corner_xy(d.apply(3));
      const Rational px = o.first + p.a * (u.first - o.first) + p.b * (w.first - o.first);
      const Rational py = o.second + p.a * (u.second - o.second) + p.b * (w.second - o.second);
      return point_in_closed_square(tgt, s, px, py);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Axis

Axis::Axis(PLPath carrier, int origin, Rational period_squared, CellularMap translation, std::string plus_tag,
           std::string minus_tag)
    : carrier_(std::move(carrier)), origin_(origin), period_squared_(std::move(period_squared)),
      translation_(std::move(translation)), plus_tag_(std::move(plus_tag)), minus_tag_(std::move(minus_tag)) {
  if (carrier_.segment_count() < 1) throw DomainError("axis carrier needs at least one segment");
  if (origin_ < 0 || origin_ >= carrier_.size()) throw DomainError("axis origin out of range");
  if (period_squared_ <= 0) throw DomainError("axis period must be positive");
  arc_ = carrier_.arc_lengths();
}

double Axis::period() const { return std::sqrt(to_double(period_squared_)); }

Point Axis::at(const SquareComplex& x, double t) const {
  const double a = t + arc_[origin_];
  const double total = arc_.back();
  if (a < -1e-12 || a > total + 1e-12) throw DomainError("parameter outside the axis carrier");
  int j = 0;
  while (j + 1 < carrier_.segment_count() && a > arc_[j + 1]) ++j;
  const double len = carrier_.segment_length(j);
  const long k = std::lround(std::clamp((a - arc_[j]) / len, 0.0, 1.0) * 1024);
  if (k == 0) return carrier_.points()[j];
  if (k == 1024) return carrier_.points()[j + 1];
  return carrier_.point_on_segment(x, j, dyadic(k, 1024));
}

Axis Axis::reversed() const {
  return Axis(carrier_.reversed(), carrier_.size() - 1 - origin_, period_squared_, inverse(translation_), minus_tag_,
              plus_tag_);
}

void validate_axis(const DevelopedBall& ball, const Axis& axis, double eps) {
  const auto& x = ball.complex();
  if (!(*axis.translation().source() == x) || !(*axis.translation().target() == x)) {
    throw DomainError("axis translation does not act on the ball");
  }
  const auto check = local_geodesic_check(axis.carrier(), ball, eps);
  if (!check.pass) {
    throw DomainError("axis carrier bends at breakpoint " + std::to_string(check.deficient.front()));
  }
  const auto& path = axis.carrier();
  const auto arc = path.arc_lengths();
  const double shift = axis.period();
  const double tol = std::max(eps, 1e-9);
  int checked = 0;
  for (int i = 0; i < path.size(); ++i) {
    const auto img = image_point(axis.translation(), path.points()[i]);
    if (!img) continue;
    const double expected = arc[i] + shift;
    if (expected > arc.back() + tol) continue;
    const auto at = locate(x, path, arc, *img, tol);
    if (!at || std::abs(*at - expected) > tol) {
      throw DomainError("translation does not shift breakpoint " + std::to_string(i) + " by one period");
    }
    ++checked;
  }
  if (checked == 0) throw DomainError("axis carrier is shorter than one period");
}

Axis lift_axis(const DevelopedBall& ball, int start, const std::vector<std::string>& base_loop, int back,
               int forward) {
  const auto& x = ball.complex();
  const auto& base = ball.base();
  const auto& cov = ball.covering();
  if (base_loop.size() < 2) throw DomainError("base loop needs at least two vertices");
  if (back < 0 || forward < 0 || back + forward < 1) throw DomainError("axis needs at least one step");
  std::vector<int> loop;
  for (const auto& id : base_loop) loop.push_back(base.vertex(id));
  if (cov.vertex(start) != loop[0]) throw DomainError("start vertex does not cover the first loop vertex");
  const int n = static_cast<int>(loop.size());

  auto step = [&](int cur, int target) {
    int found = -1;
    auto take = [&](int w) {
      if (found >= 0 && found != w) throw DomainError("ambiguous lift of the base loop");
      found = w;
    };
    for (int e : x.edges_at(cur)) {
      const int w = x.other_end(e, cur);
      if (cov.vertex(w) == target) take(w);
    }
    if (found < 0) {
      for (const auto& c : x.corners_at(cur)) {
        const int w = x.square_at(c.square).v[(c.corner + 2) % 4];
        if (cov.vertex(w) == target) take(w);
      }
    }
    if (found < 0) throw BallTooSmall("lift of the base loop leaves the ball at " + x.vertex_id(cur));
    return found;
  };
  auto walk = [&](int steps, bool ahead) {
    std::vector<int> out;
    int cur = start;
    for (int k = 1; k <= steps; ++k) {
      cur = step(cur, loop[ahead ? k % n : ((n - k) % n + n) % n]);
      out.push_back(cur);
    }
    return out;
  };

  const auto ahead = walk(std::max(forward, n), true);
  const auto behind = walk(back, false);
  std::vector<Point> pts;
  for (auto it = behind.rbegin(); it != behind.rend(); ++it) pts.push_back(Point::vertex(*it));
  pts.push_back(Point::vertex(start));
  for (int i = 0; i < forward; ++i) pts.push_back(Point::vertex(ahead[i]));
  auto carrier = PLPath::from_points(x, pts);

  // One period starting at the origin, walked forward.
  std::vector<Point> one{Point::vertex(start)};
  for (int k = 0; k < n; ++k) one.push_back(Point::vertex(ahead[k]));
  const auto period_path = PLPath::from_points(x, one);
  const auto& sq = period_path.squared_lengths();
  Rational period_squared;
  bool exact = true;
  Rational sum = 0;
  for (const auto& s : sq) {
    if (const auto r = exact_sqrt(s)) {
      sum += *r;
    } else {
      exact = false;
    }
  }
  if (exact) {
    period_squared = sum * sum;
  } else if (std::all_of(sq.begin(), sq.end(), [&](const Rational& s) { return s == sq.front(); })) {
    period_squared = Rational(n * n) * sq.front();
  } else {
    throw DomainError("period length is not an exact square root");
  }
  auto translation = lift_map(ball, ball, start, ahead[n - 1]);
  return Axis(std::move(carrier), static_cast<int>(behind.size()), period_squared, std::move(translation));
}

std::string to_text(const Axis& axis, const DevelopedBall& ball) {
  using detail::json;
  const auto& x = ball.complex();
  json doc;
  doc["format"] = kAxisFormatVersion;
  doc["breakpoints"] = json::array();
  for (const auto& p : axis.carrier().points()) doc["breakpoints"].push_back(format_point(p, x));
  doc["origin"] = axis.origin();
  doc["period_squared"] = to_string(axis.period_squared());
  doc["translation"] = json::array();
  for (const auto& [a, b] : axis.translation().vertex_pairs()) doc["translation"].push_back({a, b});
  doc["tags"] = {{"plus", axis.plus_tag()}, {"minus", axis.minus_tag()}};
  return doc.dump(2) + "\n";
}

Axis parse_axis(std::string_view text, const DevelopedBall& ball) {
  using detail::json;
  const auto& x = ball.complex();
  const json doc = detail::parse_json(text);
  detail::expect_version(doc, kAxisFormatVersion, "");
  const auto& bj = detail::field(doc, "breakpoints", "");
  if (!bj.is_array()) throw ParseError("/breakpoints", "expected an array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < bj.size(); ++i) {
    if (!bj[i].is_string()) throw ParseError("/breakpoints/" + std::to_string(i), "expected a point spec");
    try {
      pts.push_back(parse_point(bj[i].get<std::string>(), x));
    } catch (const Error& e) {
      throw ParseError("/breakpoints/" + std::to_string(i), e.what());
    }
  }
  const auto& oj = detail::field(doc, "origin", "");
  if (!oj.is_number_integer()) throw ParseError("/origin", "expected an integer");
  Rational period;
  try {
    period = parse_rational(detail::string_field(doc, "period_squared", ""));
  } catch (const ParseError& e) {
    throw ParseError("/period_squared", e.what());
  }
  const auto& tj = detail::field(doc, "translation", "");
  if (!tj.is_array()) throw ParseError("/translation", "expected an array of vertex pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < tj.size(); ++i) {
    const auto& e = tj[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw ParseError("/translation/" + std::to_string(i), "expected a pair of vertex ids");
    }
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  std::string plus = "+inf", minus = "-inf";
  if (doc.contains("tags")) {
    plus = detail::string_field(doc["tags"], "plus", "/tags");
    minus = detail::string_field(doc["tags"], "minus", "/tags");
  }
  try {
    auto path = PLPath::from_points(x, std::move(pts));
    auto map = CellularMap::from_vertex_map(ball.complex_ptr(), ball.complex_ptr(), pairs);
    return Axis(std::move(path), oj.get<int>(), period, std::move(map), plus, minus);
  } catch (const DomainError& e) {
    throw ParseError("/breakpoints", e.what());
  }
}

Axis load_axis(const std::filesystem::path& path, const DevelopedBall& ball) {
  return parse_axis(read_file(path), ball);
}

void save_axis(const Axis& axis, const DevelopedBall& ball, const std::filesystem::path& path) {
  write_file(path, to_text(axis, ball));
}

// ---------------------------------------------------------------------------
// Margins and angles

double perp_margin(double alpha1, double alpha2, double eps) {
  for (double a : {alpha1, alpha2}) {
    if (a < -eps || a > kPi / 4 + eps) throw DomainError("slope invariant outside [0, pi/4]");
  }
  if (std::abs(alpha1 - alpha2) > eps) return std::abs(alpha1 - alpha2);
  if (alpha1 <= eps || alpha1 >= kPi / 4 - eps) return kPi / 2;
  return std::min(2 * alpha1, kPi / 2 - 2 * alpha1);
}

PerpConstant perp_constant(const DevelopedBall& ball, const Axis& a1, const Axis& a2, double eps) {
  if (!r_geodesic_check(a1.carrier(), ball, eps)) throw DomainError("first axis is not an R-geodesic");
  if (!r_geodesic_check(a2.carrier(), ball, eps)) throw DomainError("second axis is not an R-geodesic");
  PerpConstant p;
  p.alpha1 = slope_invariant(a1.carrier(), ball, eps).alpha;
  p.alpha2 = slope_invariant(a2.carrier(), ball, eps).alpha;
  p.margin = perp_margin(p.alpha1, p.alpha2, eps);
  return p;
}

AngleDecay angle_decay(const DevelopedBall& ball, const Axis& a1, const Axis& a2, double threshold, Signs signs,
                       double eps) {
  const auto& x = ball.complex();
  AngleDecay out;
  out.signs = signs;
  const double reach1 = signs.s1 > 0 ? a1.upper() : -a1.lower();
  const double reach2 = signs.s2 > 0 ? a2.upper() : -a2.lower();
  const Point o1 = a1.carrier().points()[a1.origin()];
  const Point o2 = a2.carrier().points()[a2.origin()];
  const int last = static_cast<int>(std::floor(std::min(reach1, reach2) + 1e-12));
  for (int t = 1; t <= last; ++t) {
    const Point p1 = a1.at(x, signs.s1 * t);
    const Point p2 = a2.at(x, signs.s2 * t);
    DecaySample s;
    s.t = t;
    try {
      if (!(p1 == p2)) {
        s.angle1 = angle(x, p1, log_dir(ball, p1, o1), log_dir(ball, p1, p2));
        s.angle2 = angle(x, p2, log_dir(ball, p2, o2), log_dir(ball, p2, p1));
        s.distance = distance(ball, p1, p2);
      }
    } catch (const BallTooSmall&) {
      break;
    }
    out.samples.push_back(s);
  }
  if (out.samples.empty()) return out;
  int failing = -1;
  out.minimum = kInf;
  for (int i = 0; i < static_cast<int>(out.samples.size()); ++i) {
    const double m = std::max(out.samples[i].angle1, out.samples[i].angle2);
    out.minimum = std::min(out.minimum, m);
    if (m >= threshold) failing = i;
  }
  const int n = static_cast<int>(out.samples.size());
  out.reached = failing < n - 1;
  out.T = failing < 0 ? 0 : out.samples[std::min(failing + 1, n - 1)].t;
  for (int i = std::max(failing + 1, 0) + 1; i < n; ++i) {
    const double prev = std::max(out.samples[i - 1].angle1, out.samples[i - 1].angle2);
    if (std::max(out.samples[i].angle1, out.samples[i].angle2) > prev + eps) out.monotone = false;
  }
  out.diverging = n >= 2 && out.samples.back().distance > out.samples.front().distance + eps;
  return out;
}

// ---------------------------------------------------------------------------
// Projection checks

namespace {

struct Params {
  double t1 = 0, t2 = 0, d1 = 0, d2 = 0;
};

// Projectors onto both carriers with the vertex tables filled once.
struct Context {
  const PingPongInstance& inst;
  PathProjector p1, p2;
  double base1, base2;
  std::vector<Params> vertex;
  std::vector<char> region_vertex;
  std::vector<int> region;

  explicit Context(const PingPongInstance& in)
      : inst(in), p1(in.ball, in.a1.carrier()), p2(in.ball, in.a2.carrier()),
        base1(in.a1.carrier().arc_lengths()[in.a1.origin()]), base2(in.a2.carrier().arc_lengths()[in.a2.origin()]) {
    const auto& x = in.ball.complex();
    vertex.resize(x.vertex_count());
    region_vertex.assign(x.vertex_count(), 0);
    for (int v = 0; v < x.vertex_count(); ++v) {
      region_vertex[v] = !in.ball.is_boundary_vertex(v);
      const auto q1 = p1.project_vertex(v), q2 = p2.project_vertex(v);
      vertex[v] = {q1.parameter - base1, q2.parameter - base2, q1.distance, q2.distance};
    }
    for (int s = 0; s < x.square_count(); ++s) {
      const auto& v = x.square_at(s).v;
      if (std::all_of(v.begin(), v.end(), [&](int w) { return region_vertex[w] != 0; })) region.push_back(s);
    }
  }

  Params at(const Point& p) const {
    if (p.kind == Point::Kind::Vertex) return vertex.at(p.cell);
    const auto q1 = p1.project(p), q2 = p2.project(p);
    return {q1.parameter - base1, q2.parameter - base2, q1.distance, q2.distance};
  }
};

constexpr int kFine = 8;

struct SquareVerdict {
  bool cleared = true;
  bool undecided = false;
  std::optional<FarPoint> witness;
};

// Recursive subdivision of one square for one sign case; `grid` caches parameters on the 1/8 lattice.
class SquareProbe {
 public:
  SquareProbe(const Context& ctx, int square, double T) : ctx_(ctx), s_(square), T_(T) {}

  SquareVerdict run(Signs sg) {
    sg_ = sg;
    SquareVerdict v;
    visit(0, 0, kFine, v);
    return v;
  }

 private:
  const Params& value(int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = grid_.find(key);
    if (it != grid_.end()) return it->second.first;
    const auto& x = ctx_.inst.ball.complex();
    const Point p = point_in_closed_square(x, s_, dyadic(i, kFine), dyadic(j, kFine));
    return grid_.emplace(key, std::make_pair(ctx_.at(p), p)).first->second.first;
  }
  const Point& point(int i, int j) {
    value(i, j);
    return grid_.at({i, j}).second;
  }

  void visit(int i0, int j0, int h, SquareVerdict& out) {
    if (out.witness) return;
    const double slack = std::sqrt(2.0) / 2 * h / kFine;
    const double eps = ctx_.inst.eps;
    double max1 = -kInf, max2 = -kInf;
    for (auto [di, dj] : {std::pair{0, 0}, {h, 0}, {h, h}, {0, h}}) {
      const auto& v = value(i0 + di, j0 + dj);
      const double u = sg_.s1 * v.t1, w = sg_.s2 * v.t2;
      if (u >= T_ - eps && w >= T_ - eps) {
        out.witness = FarPoint{point(i0 + di, j0 + dj), v.t1, v.t2};
        out.cleared = false;
        return;
      }
      max1 = std::max(max1, u);
      max2 = std::max(max2, w);
    }
    if (max1 + slack < T_ || max2 + slack < T_) return;
    if (h == 1) {
      out.cleared = false;
      out.undecided = true;
      return;
    }
    const int k = h / 2;
    visit(i0, j0, k, out);
    visit(i0 + k, j0, k, out);
    visit(i0, j0 + k, k, out);
    visit(i0 + k, j0 + k, k, out);
  }

  const Context& ctx_;
  int s_;
  double T_;
  Signs sg_;
  std::map<std::pair<int, int>, std::pair<Params, Point>> grid_;
};

Disjointness disjointness_in(const Context& ctx, double T) {
  const auto& inst = ctx.inst;
  const int n = static_cast<int>(ctx.region.size());
  std::vector<std::array<SquareVerdict, 4>> verdicts(n);
  detail::parallel_for(n, jobs_or_hardware(inst.jobs), [&](int i) {
    SquareProbe probe(ctx, ctx.region[i], T);
    for (int c = 0; c < 4; ++c) {
      try {
        verdicts[i][c] = probe.run(kAllSigns[c]);
      } catch (const BallTooSmall&) {
        verdicts[i][c] = {false, true, std::nullopt};
      }
    }
  });
  Disjointness d;
  d.T = T;
  d.cells = n;
  d.holds = true;
  for (int c = 0; c < 4; ++c) {
    DisjointnessCase dc;
    dc.signs = kAllSigns[c];
    for (int i = 0; i < n; ++i) {
      const auto& v = verdicts[i][c];
      if (v.undecided) ++dc.undecided;
      if (v.witness && dc.witnesses.size() < 8) dc.witnesses.push_back(*v.witness);
    }
    dc.disjoint = dc.witnesses.empty() && dc.undecided == 0;
    d.holds = d.holds && dc.disjoint;
    d.cases.push_back(std::move(dc));
  }
  return d;
}

PeriodicityCheck periodicity_in(const Context& ctx, double T) {
  const auto& inst = ctx.inst;
  const auto& x = inst.ball.complex();
  PeriodicityCheck out;
  const double tol = 1e-6;
  for (int axis = 1; axis <= 2; ++axis) {
    const Axis& a = axis == 1 ? inst.a1 : inst.a2;
    const double ell = a.period();
    for (int s : {1, -1}) {
      const auto where = "axis " + std::to_string(axis) + (s > 0 ? " (+)" : " (-)");
      const double reach = s > 0 ? a.upper() : -a.lower();
      if (reach < T + ell - 1e-9) {
        out.failures.push_back(where + ": carrier ends before T + period");
        continue;
      }
      const CellularMap g = s > 0 ? a.translation() : inverse(a.translation());
      int verified = 0;
      for (int v = 0; v < x.vertex_count(); ++v) {
        if (!ctx.region_vertex[v]) continue;
        const auto& pv = ctx.vertex[v];
        const double t = s * (axis == 1 ? pv.t1 : pv.t2);
        if (t < T - 1e-9 || t >= T + ell - 1e-9) continue;
        ++out.annulus_vertices;
        const int w = g.vertex(v);
        if (w < 0 || !ctx.region_vertex[w]) continue;
        if (t + ell > reach + 1e-9) continue;
        const auto& pw = ctx.vertex[w];
        const double tw = s * (axis == 1 ? pw.t1 : pw.t2);
        const double dv = axis == 1 ? pv.d1 : pv.d2, dw = axis == 1 ? pw.d1 : pw.d2;
        if (std::abs(tw - (t + ell)) > tol || std::abs(dw - dv) > tol) {
          out.failures.push_back(where + ": translation is not equivariant at " + x.vertex_id(v));
        } else {
          ++verified;
        }
      }
      // The carrier itself must be carried along.
      const auto& pts = a.carrier().points();
      for (int i = 0; i < a.carrier().size(); ++i) {
        const double t = s * a.parameter(i);
        if (t < T - 1e-9 || t + ell > reach + 1e-9) continue;
        if (!image_point(g, pts[i])) out.failures.push_back(where + ": translation undefined on the carrier");
      }
      if (verified == 0) out.failures.push_back(where + ": no annulus vertex could be verified");
    }
  }
  out.pass = out.failures.empty();
  return out;
}

bool far(const Params& p, Signs sg, double T, double eps) { return sg.s1 * p.t1 >= T - eps && sg.s2 * p.t2 >= T - eps; }

}  // namespace

Disjointness projection_disjointness(const PingPongInstance& inst, double T) {
  const Context ctx(inst);
  return disjointness_in(ctx, T);
}

PeriodicityCheck periodicity_closure(const PingPongInstance& inst, double T) {
  const Context ctx(inst);
  return periodicity_in(ctx, T);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::FreeRankTwoBallCertified: return "FreeRankTwo-ballCertified";
    case Verdict::ConditionFails: return "ConditionFails";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Certificate free_certificate(const PingPongInstance& inst) {
  const auto& ball = inst.ball;
  Certificate cert;
  cert.r_geodesic1 = r_geodesic_check(inst.a1.carrier(), ball, inst.eps);
  cert.r_geodesic2 = r_geodesic_check(inst.a2.carrier(), ball, inst.eps);
  cert.notes.push_back("the existence of geodesics joining the tagged endpoints is not checked");
  const bool projection_only = !(cert.r_geodesic1 && cert.r_geodesic2);

  double T = 1;
  bool decay_ok = false;
  if (projection_only) {
    cert.notes.push_back(
        "an axis is not an R-geodesic: the rank-one route (flat half-plane bound) is not verifiable on a ball; "
        "using the projection route only");
  } else {
    cert.perp = perp_constant(ball, inst.a1, inst.a2, inst.eps);
    cert.threshold = std::min(inst.threshold_factor, 1.0 / 3) * cert.perp->margin;
    decay_ok = true;
    double t_decay = 0;
    for (const auto sg : kAllSigns) {
      cert.decay.push_back(angle_decay(ball, inst.a1, inst.a2, cert.threshold, sg, inst.eps));
      decay_ok = decay_ok && cert.decay.back().reached;
      t_decay = std::max(t_decay, cert.decay.back().T);
    }
    if (decay_ok) T = std::max(T, t_decay);
    if (!decay_ok) cert.notes.push_back("angle decay did not reach the threshold inside the ball");
  }
  if (inst.T) T = std::max(T, *inst.T);
  cert.T = T;

  const Context ctx(inst);
  cert.disjointness = disjointness_in(ctx, T);
  cert.periodicity = periodicity_in(ctx, T);

  // A far point on diverging rays that survives both translations refutes the condition.
  for (int c = 0; c < 4 && !cert.witness; ++c) {
    const auto& dc = cert.disjointness.cases[c];
    if (dc.witnesses.empty()) continue;
    const Signs sg = dc.signs;
    const auto decay = angle_decay(ball, inst.a1, inst.a2, kInf, sg, inst.eps);
    if (!decay.diverging) {
      cert.notes.push_back("far points in case (" + std::to_string(sg.s1) + "," + std::to_string(sg.s2) +
                           ") lie between asymptotic rays");
      continue;
    }
    const CellularMap g1 = sg.s1 > 0 ? inst.a1.translation() : inverse(inst.a1.translation());
    const CellularMap g2 = sg.s2 > 0 ? inst.a2.translation() : inverse(inst.a2.translation());
    for (const auto& w : dc.witnesses) {
      bool persists = true;
      for (const auto* g : {&g1, &g2}) {
        const auto img = image_point(*g, w.point);
        if (!img) {
          persists = false;
          break;
        }
        try {
          persists = persists && far(ctx.at(*img), sg, T, inst.eps);
        } catch (const Error&) {
          persists = false;
        }
      }
      if (persists) {
        cert.witness = w;
        cert.witness_signs = sg;
        break;
      }
    }
  }

  if (cert.witness) {
    cert.verdict = Verdict::ConditionFails;
  } else if ((decay_ok || projection_only) && cert.disjointness.holds && cert.periodicity.pass) {
    cert.verdict = Verdict::FreeRankTwoBallCertified;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

}  // namespace cat0sq
