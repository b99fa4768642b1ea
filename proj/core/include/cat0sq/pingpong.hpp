#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cat0sq/ball.hpp"
#include "cat0sq/geodesic.hpp"

namespace cat0sq {

inline constexpr std::string_view kAxisFormatVersion = "cat0sq-axis/1";

/// Image of a point under a cellular map, or nullopt where the map is undefined on its cell.
std::optional<Point> image_point(const CellularMap& f, const Point& p);

/// Finite shadow of a hyperbolic isometry: a piece of its axis and the translation it induces on the ball.
///
/// The carrier is parametrized by arc length with parameter 0 at breakpoint `origin`. The translation
/// sends carrier(t) to carrier(t + period) wherever both ends lie on the carrier. The tags name the
/// endpoints at +infinity and -infinity.
class Axis {
 public:
  Axis(PLPath carrier, int origin, Rational period_squared, CellularMap translation, std::string plus_tag = "+inf",
       std::string minus_tag = "-inf");

  const PLPath& carrier() const noexcept { return carrier_; }
  int origin() const noexcept { return origin_; }
  const Rational& period_squared() const noexcept { return period_squared_; }
  double period() const;
  const CellularMap& translation() const noexcept { return translation_; }
  const std::string& plus_tag() const noexcept { return plus_tag_; }
  const std::string& minus_tag() const noexcept { return minus_tag_; }

  /// Parameter of breakpoint i.
  double parameter(int i) const { return arc_.at(i) - arc_.at(origin_); }
  double lower() const { return parameter(0); }
  double upper() const { return parameter(carrier_.size() - 1); }
  /// Point at parameter t, rounded to a multiple of 1/1024 of its segment. Throws DomainError out of range.
  Point at(const SquareComplex& x, double t) const;

  /// Same axis traversed backwards: parameters negate, the translation inverts, tags swap.
  Axis reversed() const;

 private:
  PLPath carrier_;
  int origin_;
  Rational period_squared_;
  CellularMap translation_;
  std::string plus_tag_;
  std::string minus_tag_;
  std::vector<double> arc_;
};

/// Throws DomainError unless the carrier is a local geodesic of the ball and the translation maps every
/// breakpoint whose image is defined onto the carrier, shifted by exactly one period (within eps).
void validate_axis(const DevelopedBall& ball, const Axis& axis, double eps = kDefaultEps);

/// Lifts a closed loop of base vertices (consecutive ones joined by an edge or opposite in a square)
/// starting at ball vertex `start`, followed for `back` steps backwards and `forward` steps forwards.
/// The origin is `start`; the translation is the deck transformation moving `start` one period ahead.
Axis lift_axis(const DevelopedBall& ball, int start, const std::vector<std::string>& base_loop, int back, int forward);

/// Axis documents: breakpoints as point specs, origin index, squared period, translation vertex table, tags.
std::string to_text(const Axis& axis, const DevelopedBall& ball);
Axis parse_axis(std::string_view text, const DevelopedBall& ball);
Axis load_axis(const std::filesystem::path& path, const DevelopedBall& ball);
void save_axis(const Axis& axis, const DevelopedBall& ball, const std::filesystem::path& path);

/// Lower bound on the angle at a meeting point of perpendiculars to two R-geodesics with slope
/// invariants alpha1, alpha2 in [0, pi/4]: |alpha1 - alpha2| when they differ, min(2 alpha, pi/2 - 2 alpha)
/// when they agree strictly inside (0, pi/4), and pi/2 when they agree at 0 or pi/4. Equality is within eps.
double perp_margin(double alpha1, double alpha2, double eps = kDefaultEps);

struct PerpConstant {
  double alpha1 = 0;
  double alpha2 = 0;
  double margin = 0;
};

/// perp_margin of the slope invariants. Throws DomainError when an axis is not an R-geodesic.
PerpConstant perp_constant(const DevelopedBall& ball, const Axis& a1, const Axis& a2, double eps = kDefaultEps);

/// Directions of travel along the two axes: +1 toward the plus tag, -1 toward the minus tag.
struct Signs {
  int s1 = 1;
  int s2 = 1;
  friend bool operator==(const Signs&, const Signs&) = default;
};

inline constexpr Signs kAllSigns[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

struct DecaySample {
  double t = 0;
  /// Angle at c1(s1 t) between c1(0) and c2(s2 t), and symmetrically at c2(s2 t).
  double angle1 = 0;
  double angle2 = 0;
  double distance = 0;
};

struct AngleDecay {
  Signs signs;
  bool reached = false;
  /// Least T with both angles below the threshold at every sampled t >= T (0 when all samples pass).
  double T = 0;
  /// Smallest sampled value of max(angle1, angle2).
  double minimum = 0;
  /// max(angle1, angle2) never increases from T on.
  bool monotone = true;
  /// The rays move apart: d(c1(s1 t), c2(s2 t)) grows over the samples.
  bool diverging = false;
  std::vector<DecaySample> samples;
};

/// Samples t = 1, 2, ... while both c1(s1 t) and c2(s2 t) lie on the carriers.
AngleDecay angle_decay(const DevelopedBall& ball, const Axis& a1, const Axis& a2, double threshold, Signs signs,
                       double eps = kDefaultEps);

struct PingPongInstance {
  DevelopedBall ball;
  Axis a1;
  Axis a2;
  /// Truncation parameter; chosen from the angle decay when empty.
  std::optional<double> T;
  /// Threshold as a fraction of the margin; values above 1/3 are clamped.
  double threshold_factor = 1.0 / 3;
  double eps = kDefaultEps;
  int jobs = 1;
};

struct FarPoint {
  Point point;
  double t1 = 0;
  double t2 = 0;
};

struct DisjointnessCase {
  Signs signs;
  bool disjoint = false;
  /// Region squares neither cleared nor holding a witness after subdivision.
  int undecided = 0;
  /// Points projecting far on both axes, in square order (at most a few).
  std::vector<FarPoint> witnesses;
};

struct Disjointness {
  double T = 0;
  int cells = 0;
  /// All four cases disjoint with no undecided squares.
  bool holds = false;
  std::vector<DisjointnessCase> cases;
};

/// Checks every square of the interior region (corners all non-boundary) for points projecting to
/// parameters s1 t1 >= T and s2 t2 >= T. A square is cleared when, on one axis, its corner
/// parameters plus the Lipschitz slack of the projection stay below T; otherwise it is subdivided
/// down to 1/8 and sampled for exact witnesses.
Disjointness projection_disjointness(const PingPongInstance& inst, double T);

struct PeriodicityCheck {
  bool pass = false;
  /// Region vertices in the annuli T <= s t < T + period, per axis.
  int annulus_vertices = 0;
  std::vector<std::string> failures;
};

/// The translations push the annuli outward: on every annulus vertex the translation (or its inverse
/// for s = -1) is defined and shifts the projection parameter by one period while preserving the distance.
PeriodicityCheck periodicity_closure(const PingPongInstance& inst, double T);

enum class Verdict { FreeRankTwoBallCertified, ConditionFails, Inconclusive };
std::string_view to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  bool r_geodesic1 = false;
  bool r_geodesic2 = false;
  std::optional<PerpConstant> perp;
  double threshold = 0;
  std::vector<AngleDecay> decay;
  /// Truncation parameter used for the projection check.
  double T = 0;
  Disjointness disjointness;
  PeriodicityCheck periodicity;
  /// Witness that persists under both translations, for ConditionFails.
  std::optional<FarPoint> witness;
  std::optional<Signs> witness_signs;
  std::vector<std::string> notes;
};

/// Runs the four checks: R-geodesic axes, angle decay below threshold_factor * margin, projection
/// disjointness in all four sign cases, and periodicity closure. ConditionFails needs a far point on
/// diverging rays whose images under both translations are far points too.
Certificate free_certificate(const PingPongInstance& inst);

}  // namespace cat0sq
