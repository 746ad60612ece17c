#include <algorithm>
#include <chrono>
#include <cmath>

#include "coexpand/analysis.hpp"
#include "coexpand/cli.hpp"
#include "coexpand/error.hpp"
#include "coexpand/eval.hpp"
#include "coexpand/parser.hpp"
#include "command.hpp"
#include "plot.hpp"

namespace coexpand::cli {

using nlohmann::json;

namespace {

std::string show(const Interval& x) {
  if (x.is_empty()) return "[empty]";
  return "[" + num(x.lo()) + ", " + num(x.hi()) + "]";
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Certified: return kSuccess;
    case Verdict::Falsified: return kFalsified;
    case Verdict::Unknown: return kUndecided;
  }
  return kUndecided;
}

CertifyParams certify_params(const Options& o) {
  CertifyParams p;
  if (o.depth) p.max_depth = *o.depth;
  if (o.delta) p.diag_band = *o.delta;
  if (o.budget) p.budget = *o.budget;
  return p;
}

int root_depth(const Options& o) { return o.depth.value_or(48); }

const Interval& domain(const Options& o) {
  if (!o.domain) throw UsageError(o.command + ": --domain a,b is required");
  return *o.domain;
}

void plot_function(const Options& o, const FunctionExpr& f) {
  if (o.csv.empty() && o.svg.empty()) return;
  Series s = sample([&](double x) { return eval(f, x); }, domain(o));
  if (!o.csv.empty()) write_csv(o.csv, s, "f(x)");
  if (!o.svg.empty()) write_svg(o.svg, s, format(f));
}

void describe(Outcome& out, const Certificate& c) {
  out.lines.push_back("verdict: " + std::string(verdict_name(c.verdict)));
  if (c.witness) {
    out.lines.push_back("witness: x = " + num(c.witness->x) + ", y = " + num(c.witness->y) +
                        ", chi >= " + num(c.witness->chi_lower_bound));
  }
  out.lines.push_back("components: " + std::to_string(c.components.size()) +
                      ", seams: " + std::to_string(c.seams.size()) +
                      ", boxes processed: " + std::to_string(c.boxes_processed));
  if (!c.frontier.empty()) out.lines.push_back("undischarged boxes: " + std::to_string(c.frontier.size()));
  for (const std::string& n : c.notes) out.lines.push_back("note: " + n);
}

void describe(Outcome& out, const FixSetClass& c) {
  std::string line = "fixed set: " + std::string(fix_kind_name(c.kind));
  if (c.kind == FixSetClass::Kind::IntervalFix) {
    line += " " + show(c.interval);
    line += c.evidence == FixSetClass::Evidence::IdentityOnInterval ? " (identity branch)" : " (numeric only)";
  } else {
    line += ", " + std::to_string(c.points.size()) + " point(s)";
  }
  out.lines.push_back(line);
  if (c.theorem_alarm) out.lines.push_back("ALARM: " + c.note);
  else if (!c.note.empty()) out.lines.push_back("note: " + c.note);
}

Outcome cmd_parse(const Options& o) {
  FunctionExpr f = parse(o.expr);
  Outcome out;
  out.report.results = json{{"formatted", format(f)}, {"nodes", node_count(f)}, {"affine", affine_form(f).has_value()}};
  out.lines.push_back(format(f));
  return out;
}

Outcome cmd_chi(const Options& o) {
  FunctionExpr f = parse(o.expr);
  const Interval& d = domain(o);
  if (o.points.size() != 2) throw UsageError("chi: expected two points X Y");
  double x = o.points[0], y = o.points[1];
  if (!d.contains(x) || !d.contains(y)) throw UsageError("chi: points must lie in the domain " + show(d));
  double c = chi(f, x, y);
  double u = u_f(f, x, y);
  Interval enclosure = chi_interval(f, {Interval(x), Interval(y)});
  Outcome out;
  out.report.results = json{{"x", x}, {"y", y}, {"chi", c}, {"u_f", u}, {"enclosure", enclosure}};
  out.lines.push_back("chi(" + num(x) + ", " + num(y) + ") = " + num(c) + "  enclosure " + show(enclosure));
  out.lines.push_back("U_f(" + num(x) + ", " + num(y) + ") = " + num(u));
  out.lines.push_back(enclosure.hi() <= 1.0 ? "not coexpanding" : enclosure.lo() > 1.0 ? "coexpanding pair" : "undecided");
  plot_function(o, f);
  return out;
}

Outcome cmd_schwarzian(const Options& o) {
  FunctionExpr f = parse(o.expr);
  const Interval& d = domain(o);
  Outcome out;
  json values = json::array();
  for (double x : o.points) {
    if (!d.contains(x)) throw UsageError("schwarzian: point " + num(x) + " outside the domain " + show(d));
    double s = schwarzian(f, x);
    values.push_back(json{{"x", x}, {"S_f", s}});
    out.lines.push_back("S_f(" + num(x) + ") = " + num(s));
  }
  Series grid = sample([&](double x) { return schwarzian(f, x); }, d);
  double lo = INFINITY, hi = -INFINITY;
  std::size_t skipped = 0;
  for (double v : grid.y) {
    if (std::isnan(v)) {
      ++skipped;
      continue;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  json range = nullptr;
  if (lo <= hi) {
    range = json{{"min", lo}, {"max", hi}};
    out.lines.push_back("S_f over " + std::to_string(kSamples) + " samples of " + show(d) + ": min " + num(lo) +
                        ", max " + num(hi));
  }
  if (skipped > 0) out.lines.push_back(std::to_string(skipped) + " sample(s) at critical points or seams skipped");
  out.report.results = json{{"values", values}, {"samples", kSamples}, {"range", range}, {"skipped", skipped}};
  if (!o.csv.empty()) write_csv(o.csv, grid, "S_f(x)");
  if (!o.svg.empty()) write_svg(o.svg, grid, "S_f for " + format(f));
  return out;
}

Outcome cmd_fixpoints(const Options& o) {
  FunctionExpr f = parse(o.expr);
  FixedPointOptions fo;
  fo.depth = root_depth(o);
  if (o.tol) fo.neutral_tolerance = *o.tol;
  std::vector<FixedPoint> points = fixed_points(f, domain(o), fo);
  Outcome out;
  out.report.results = json{{"fixed_points", points}};
  out.lines.push_back(std::to_string(points.size()) + " fixed point(s) in " + show(domain(o)));
  for (const FixedPoint& p : points) {
    std::string line = "  " + show(p.isolating) + "  multiplier " + show(p.multiplier) + "  " +
                       std::string(stability_name(p.stability));
    if (!p.certified) line += " (uniqueness not certified)";
    out.lines.push_back(line);
    if (!p.certified || p.stability == Stability::Unresolved) out.code = kUndecided;
  }
  plot_function(o, f);
  return out;
}

Outcome cmd_critpoints(const Options& o) {
  FunctionExpr f = parse(o.expr);
  CritReport c = critical_points(f, domain(o), root_depth(o));
  Outcome out;
  out.report.results = c;
  out.lines.push_back(std::to_string(c.isolating.size()) + " critical point(s) in " + show(domain(o)));
  for (const Interval& i : c.isolating) out.lines.push_back("  " + show(i));
  out.lines.push_back(std::to_string(c.components.size()) + " component(s)");
  for (const Interval& i : c.components) out.lines.push_back("  " + show(i));
  if (c.status == CritReport::Status::Incomplete) {
    out.lines.push_back("incomplete: " + c.reason);
    out.code = kUndecided;
  }
  plot_function(o, f);
  return out;
}

Outcome cmd_certify(const Options& o) {
  FunctionExpr f = parse(o.expr);
  Certificate c = certify_membership(f, domain(o), certify_params(o));
  Outcome out;
  out.report.results = c;
  describe(out, c);
  out.code = verdict_code(c.verdict);
  plot_function(o, f);
  return out;
}

Outcome cmd_glue(const Options& o) {
  FunctionExpr left = parse(o.expr);
  FunctionExpr right = parse(o.right);
  const Interval& d = domain(o);
  if (!(d.lo() < 0.0 && d.hi() > 0.0)) throw UsageError("glue: the domain must contain 0 in its interior");
  GlueParams gp;
  gp.window = std::max(-d.lo(), d.hi());
  gp.certify = certify_params(o);
  Outcome out;
  FunctionExpr h;
  try {
    h = glue(left, right, gp);
  } catch (const NotGlueable& e) {
    out.report.results = json{{"glued", nullptr},
                              {"side", e.which() == GlueSide::Left ? "left" : "right"},
                              {"reason", e.reason()}};
    out.lines.push_back(std::string("not glueable: ") + (e.which() == GlueSide::Left ? "left" : "right") +
                        " piece: " + e.reason());
    out.code = kFalsified;
    return out;
  }
  Certificate c = certify_membership(h, d, gp.certify);
  json fixset = nullptr;
  out.lines.push_back("glued: " + format(h));
  describe(out, c);
  try {
    FixSetClass fc = classify_fixed_set(h, d, gp.certify);
    fixset = fc;
    describe(out, fc);
  } catch (const PreconditionUnmet& e) {
    out.lines.push_back(std::string("fixed set not classified: ") + e.what());
  }
  out.report.results = json{{"glued", format(h)}, {"certificate", c}, {"fixed_set", fixset}};
  out.code = verdict_code(c.verdict);
  plot_function(o, h);
  return out;
}

Outcome cmd_singer(const Options& o) {
  FunctionExpr f = parse(o.expr);
  SingerOptions so;
  so.certify_params = certify_params(o);
  if (o.tol) so.tol = *o.tol;
  if (o.budget) so.budget = *o.budget;
  SingerReport r = singer_check(f, domain(o), so);
  Outcome out;
  out.report.results = r;
  out.lines.push_back(std::to_string(r.orbits.size()) + " attracting orbit(s), " + std::to_string(r.critical.size()) +
                      " critical point(s)");
  for (const AttractingOrbit& a : r.orbits) {
    std::string orbit;
    for (double p : a.orbit) orbit += (orbit.empty() ? "" : ", ") + num(p);
    out.lines.push_back("  period " + std::to_string(a.period) + ": {" + orbit + "}  multiplier " + show(a.multiplier));
    out.lines.push_back("    immediate basin (" + num(a.basin_lo) + ", " + num(a.basin_hi) + ")" +
                        (a.reaches_lo ? " reaches lower window edge" : "") +
                        (a.reaches_hi ? " reaches upper window edge" : ""));
    for (double c : a.attracted_critical_points) out.lines.push_back("    attracts critical point " + num(c));
    if (!a.dichotomy_holds) out.lines.push_back("    neither unbounded basin nor attracted critical point");
  }
  if (r.membership) out.lines.push_back("membership: " + std::string(verdict_name(*r.membership)));
  if (r.theorem_alarm) {
    out.lines.push_back("ALARM: certified member with an attracting orbit that fails the dichotomy");
    out.code = kFalsified;
  }
  plot_function(o, f);
  return out;
}

}  // namespace

Outcome run_command(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  if (o.command == "parse") out = cmd_parse(o);
  else if (o.command == "chi") out = cmd_chi(o);
  else if (o.command == "schwarzian") out = cmd_schwarzian(o);
  else if (o.command == "fixpoints") out = cmd_fixpoints(o);
  else if (o.command == "critpoints") out = cmd_critpoints(o);
  else if (o.command == "certify") out = cmd_certify(o);
  else if (o.command == "glue") out = cmd_glue(o);
  else if (o.command == "singer") out = cmd_singer(o);
  else if (o.command == "reproduce") out = reproduce(o);
  else throw UsageError("unknown command '" + o.command + "'");
  out.report.command = o.command;
  if (out.report.input.empty()) out.report.input = o.command == "glue" ? o.expr + " | " + o.right : o.expr;
  if (!out.report.domain) out.report.domain = o.domain;
  out.report.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace coexpand::cli
