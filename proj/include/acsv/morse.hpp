#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acsv/geometry.hpp"

namespace acsv {

// Point of V in one of two charts. In chart X the free coordinate is x (exact) and y
// is the dependent ball; chart Y swaps the roles. The dependent ball isolates one root
// of Q(free, ·).
struct CurvePoint {
  Var chart = Var::X;
  GaussianRational free;
  ComplexBall dep;

  ComplexBall x(long prec) const;
  ComplexBall y(long prec) const;
};

enum class Region { Unclassified, X, Y };
enum class SaddleClass { Unclassified, X, Y, Mixed };
const char* to_string(Region r);
const char* to_string(SaddleClass c);

struct AscentPath {
  std::vector<CurvePoint> points;   // points[0] is the first point after leaving the saddle
  std::vector<RealBall> heights;    // h at each point
  std::vector<DyadicFloat> floor;   // certified lower bounds on h, strictly increasing
  Region end = Region::Unclassified;
  int inherited_from = -1;          // saddle index when the path ended in a bypass box
  long chart_swaps = 0;
  long steps = 0;                   // ascent steps taken, chart switches included
};

struct SaddleRecord {
  CriticalPoint cp;
  SaddleClass cls = SaddleClass::Unclassified;
  std::vector<Region> subclass;     // exit i, counterclockwise from the principal exit
  std::vector<AscentPath> paths;
  std::vector<int> cycle;           // Y(j) − Y(j+1)
};

struct MorseOptions {
  long prec = kDefaultPrec;
  long max_steps = 100000;          // per path
  long max_prec = kMaxPrec;         // escalation ceiling
  bool keep_points = true;
};

struct Classification {
  long r = 1, s = 1;
  long prec = kDefaultPrec;
  std::vector<SaddleRecord> saddles;  // sorted by height, levels from geometry
  std::optional<int> c_star_level;
  RealBall c_star;
  std::vector<size_t> xi;             // indices into saddles
  DyadicFloat eps_x, eps_y;
  long total_steps = 0;
};

namespace detail {
struct ChartData;
}

// Certified tracking engine for one curve and direction.
class MorseEngine {
 public:
  MorseEngine(const SparsePoly& Q, long r, long s, long prec = kDefaultPrec);

  // Unique continuation of the dependent root along [from.free, to] (chart X only
  // when from.chart == Var::X). Subdivides adaptively; throws Inconclusive on underflow.
  CurvePoint lift_segment(const CurvePoint& from, const GaussianRational& to) const;

  // One certified ascent step; `gain` receives a certified lower bound on the increase of h.
  CurvePoint ascend_step(const CurvePoint& z, DyadicFloat* gain = nullptr) const;

  // k exit points, one per uphill region in counterclockwise order.
  std::vector<CurvePoint> saddle_exits(const CriticalPoint& sigma, std::vector<DyadicFloat>* gains = nullptr) const;

  // Switches chart (with an ascent step) when the current one is badly conditioned, or
  // always with force. Returns z unchanged when no switch is needed.
  CurvePoint maybe_swap(const CurvePoint& z, DyadicFloat* gain = nullptr, bool force = false) const;

  RealBall height(const CurvePoint& z) const;
  long prec() const { return prec_; }

 private:
  const detail::ChartData& chart(Var v) const { return v == Var::X ? *cx_ : *cy_; }
  // ε search for a step of order k from the start ball along direction v.
  CurvePoint search(Var chart, const ComplexBall& start, const ComplexBall& dep, int k, std::complex<double> v,
                    DyadicFloat* gain) const;

  SparsePoly Q_;
  long r_, s_, prec_;
  std::shared_ptr<detail::ChartData> cx_, cy_;
};

// Pole-neighbourhood radii: no critical point has |x| < eps_x (resp. |y| < eps_y), and
// none of the x-projections of branch points of V is inside the disc.
std::pair<DyadicFloat, DyadicFloat> pole_radii(const SparsePoly& Q, const std::vector<CriticalPoint>& cps, long prec);

// Largest box B(x0, e) × B(y0, e) around saddle `index` on which V is a graph and no
// other critical point lies, with h > floor on the whole box. Radius 0 when none exists.
DyadicFloat bypass_radius(const SparsePoly& Q, const std::vector<CriticalPoint>& cps, size_t index, long r, long s,
                          const DyadicFloat& floor, long prec);

enum class Terminal { Continue, X, Y, Inherit };
struct TerminalResult {
  Terminal kind = Terminal::Continue;
  int saddle = -1;
};
struct BypassBox {
  int saddle;
  ComplexBall x, y;  // closed boxes; membership requires interior containment
};
TerminalResult terminal_check(const CurvePoint& z, const DyadicFloat& eps_x, const DyadicFloat& eps_y,
                              const std::vector<BypassBox>& boxes, long prec);

// Cycle coefficients Y(j) − Y(j+1), indices cyclic.
std::vector<int> cycle_coefficients(const std::vector<Region>& subclass);

// Saddle classification, c* and Xi at one precision.
Classification classify_saddles(const SparsePoly& Q, long r, long s, const MorseOptions& opt = {});
// Retries at doubled precision (up to opt.max_prec) on Inconclusive or PrecisionExhausted.
Classification classify_saddles_escalating(const SparsePoly& Q, long r, long s, const MorseOptions& opt = {});

}  // namespace acsv
