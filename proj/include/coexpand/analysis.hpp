#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coexpand/box.hpp"
#include "coexpand/eval.hpp"
#include "coexpand/expr.hpp"
#include "coexpand/interval.hpp"

namespace coexpand {

// ---------------------------------------------------------------------------
// Pointwise quantities

/// χ_f(x, y) = f'(x) f'(y) ((x − y) / (f(x) − f(y)))².
/// Throws DiagonalInput when x == y and ValueCollision when f(x) and f(y)
/// agree to within 4 ulp.
double chi(const FunctionExpr& f, double x, double y);

/// Enclosure of χ_f over a box whose sides are disjoint (x > y or x < y
/// throughout).  Combines the direct quotient with a symmetric Taylor form
/// that stays tight near the diagonal.  Throws DiagonalInput if the sides
/// overlap and DomainViolation if the direct form and the Taylor form are
/// both undefined.
Interval chi_interval(const FunctionExpr& f, const Box2& b);

/// U_f(x, y), the mixed second partial of log|(f(x) − f(y)) / (x − y)|,
/// evaluated in closed form as f'(x) f'(y) / (f(x) − f(y))² − 1 / (x − y)².
double u_f(const FunctionExpr& f, double x, double y);

/// S_f = f'''/f' − 3/2 (f''/f')².  Throws CriticalPoint when f' vanishes
/// and SeamPoint at a glue seam (only one-sided second derivatives exist).
double schwarzian(const FunctionExpr& f, double x);
Interval schwarzian(const FunctionExpr& f, const Interval& x);

// ---------------------------------------------------------------------------
// Root isolation: critical points and fixed points

struct CritReport {
  enum class Status { Complete, Incomplete };

  std::vector<Interval> isolating;   // each holds exactly one zero of f'
  std::vector<Interval> components;  // closures of the gaps, ordered
  Status status = Status::Complete;
  std::string reason;                // set when Incomplete
};

CritReport critical_points(const FunctionExpr& f, const Interval& domain, int depth = 48);

enum class Stability { Attracting, Repelling, Neutral, Unresolved };

std::string_view stability_name(Stability s) noexcept;

struct FixedPoint {
  Interval isolating;
  Interval multiplier;  // enclosure of f' over `isolating`
  Stability stability = Stability::Unresolved;
  /// False for clusters where uniqueness could not be certified; the
  /// interval then only says "f(x) − x may vanish here".
  bool certified = true;
};

struct FixedPointOptions {
  int depth = 48;
  /// Neutral is reported only for multiplier enclosures containing ±1 that
  /// are at most this wide.
  double neutral_tolerance = 1e-9;
};

std::vector<FixedPoint> fixed_points(const FunctionExpr& f, const Interval& domain,
                                     const FixedPointOptions& options = {});

// ---------------------------------------------------------------------------
// Membership certification

struct CertifyParams {
  /// Bisection levels per coordinate; boxes whose wider side is below
  /// component_width / 2^max_depth are not split further.
  int max_depth = 18;
  double diag_band = 1e-3;
  double point_margin = 1e-9;
  std::size_t budget = 5'000'000;
  /// Depth for critical-point and seam isolation.
  int root_depth = 48;
  /// Keep every discharged box in the certificate trace.
  bool record_trace = false;
};

enum class Verdict { Certified, Falsified, Unknown };

std::string_view verdict_name(Verdict v) noexcept;

/// How a box of the trace was discharged.
enum class Discharge {
  DirectChi,    // quotient form of χ ≤ 1
  TaylorChi,    // symmetric Taylor numerator ≤ 0
  SeamTaylor,   // one-sided Taylor numerator across an exact seam
  SeamEdge,     // χ ≤ 1 on the seam edge of the box and log χ monotone off it
  Schwarzian,   // diagonal band: f' f''' − 3/2 f''² ≤ 0
  GlueLemma,    // diagonal band at a seam: glue hypotheses re-verified
  CrossSeam,    // y < s < x: one-sided bounds on f around s verified in 1-D
};

struct TraceEntry {
  Box2 box;
  Discharge how;
};

struct Witness {
  double x;
  double y;
  double chi_lower_bound;
};

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> witness;  // set iff Falsified
  std::vector<Box2> frontier;      // undischarged boxes, sorted
  CertifyParams params;
  Interval domain;
  std::vector<Interval> components;
  std::vector<double> seams;
  std::size_t boxes_processed = 0;
  std::chrono::duration<double> wall_time{0};
  std::vector<TraceEntry> trace;   // only with params.record_trace
  std::vector<std::string> notes;
};

/// Branch-and-bound certification that f has no coexpanding pair inside any
/// component of domain ∖ Crit(f).  Throws PreconditionUnmet when the
/// critical points cannot all be isolated.
Certificate certify_membership(const FunctionExpr& f, const Interval& domain, const CertifyParams& params = {});

// ---------------------------------------------------------------------------
// Gluing

struct GlueableResult {
  enum class Status { Glueable, NotGlueable, Unknown };

  Status status = Status::Unknown;
  std::optional<double> witness;  // x with |f(x)| > |x| when NotGlueable
  std::string reason;
  Interval component;             // component of domain ∖ Crit(f) holding 0
};

/// Checks f(0) = 0, f'(0) = 1 and |f(x)| ≤ |x| on the component of
/// domain ∖ Crit(f) containing 0.  Requires 0 ∈ domain.
GlueableResult glueable_check(const FunctionExpr& f, const Interval& domain, const CertifyParams& params = {});

struct GlueParams {
  /// The left piece is checked on [-window, 0], the right one on [0, window].
  double window = 10.0;
  CertifyParams certify;
};

/// f ⋆ g: f for x ≤ 0, g for x ≥ 0.  Throws NotGlueable when either side
/// fails (or cannot be shown to pass) glueable_check.
FunctionExpr glue(const FunctionExpr& f, const FunctionExpr& g, const GlueParams& params = {});

// ---------------------------------------------------------------------------
// Fixed-set classification

struct FixSetClass {
  enum class Kind { FiniteSet, IntervalFix, Unresolved };
  enum class Evidence { IdentityOnInterval, NumericOnly };

  Kind kind = Kind::Unresolved;
  std::vector<FixedPoint> points;  // FiniteSet
  Interval interval;               // IntervalFix
  Evidence evidence = Evidence::IdentityOnInterval;
  bool reaches_domain_lo = false;  // fixed interval continues past the window
  bool reaches_domain_hi = false;
  /// Fixed set incompatible with "closed interval or at most three points".
  bool theorem_alarm = false;
  std::string note;
};

std::string_view fix_kind_name(FixSetClass::Kind k) noexcept;

/// Throws PreconditionUnmet when f has (or may have) critical points in the
/// domain.
FixSetClass classify_fixed_set(const FunctionExpr& f, const Interval& domain, const CertifyParams& params = {});

// ---------------------------------------------------------------------------
// Attracting orbits and critical points

struct SingerOptions {
  int max_period = 4;
  int iters = 1000;
  double tol = 1e-6;
  /// Root-isolation boxes allowed over the whole period search.
  std::size_t budget = 2'000'000;
  /// Also certify membership, so that a failed dichotomy raises the alarm.
  bool certify = true;
  CertifyParams certify_params;
};

struct AttractingOrbit {
  int period = 1;
  std::vector<double> orbit;      // p, f(p), ..., f^{period-1}(p)
  Interval multiplier;            // (f^period)' at p
  double basin_lo = 0.0;          // immediate basin of p under f^{2 period}
  double basin_hi = 0.0;
  bool reaches_lo = false;        // basin runs into the window edge
  bool reaches_hi = false;
  std::vector<double> attracted_critical_points;
  bool dichotomy_holds = false;   // unbounded-evidence or attracted crit point
};

struct SingerReport {
  std::vector<AttractingOrbit> orbits;
  std::vector<Interval> critical;
  std::optional<Verdict> membership;
  bool theorem_alarm = false;
};

SingerReport singer_check(const FunctionExpr& f, const Interval& domain, const SingerOptions& options = {});

// ---------------------------------------------------------------------------
// Helpers shared by the analyses and the CLI

/// Points where some glue argument vanishes inside the domain, ascending.
struct Seam {
  double x;
  bool exact;  // the glue argument evaluates to exactly 0 at x
};
std::vector<Seam> find_seams(const FunctionExpr& f, const Interval& domain, int depth = 48);

/// The glue-free tree that agrees with f near x (each glue replaced by the
/// branch selected at x).
FunctionExpr select_branch(const FunctionExpr& f, double x);

/// f composed with itself n times (n ≥ 1).
FunctionExpr iterate(const FunctionExpr& f, int n);

}  // namespace coexpand
