#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/cli.hpp"
#include "coexpand/eval.hpp"
#include "coexpand/parser.hpp"
#include "coexpand/zoo.hpp"
#include "command.hpp"
#include "plot.hpp"

namespace coexpand::cli {

using nlohmann::json;

namespace {

struct Run {
  const Options& o;
  Outcome out;
  json assertions = json::array();
  json files = json::array();

  void check(const std::string& name, bool passed, const std::string& detail) {
    assertions.push_back(json{{"name", name}, {"passed", passed}, {"detail", detail}});
    out.lines.push_back(std::string(passed ? "PASS " : "FAIL ") + name + ": " + detail);
    if (!passed) out.code = kFalsified;
  }

  std::string path(const std::string& dir, const std::string& file) {
    std::filesystem::path base(dir.empty() ? "." : dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    std::filesystem::path p = base / file;
    files.push_back(p.string());
    return p.string();
  }

  // CSV always; SVG only when asked for.
  void emit(const std::string& stem, const Series& s, const std::string& column, const std::string& title) {
    write_csv(path(o.csv, stem + ".csv"), s, column);
    if (!o.svg.empty()) write_svg(path(o.svg, stem + ".svg"), s, title);
  }

  void plot(const std::string& stem, const FunctionExpr& f, const Interval& window) {
    emit(stem, sample([&](double x) { return eval(f, x); }, window), "f(x)", format(f));
  }
};

std::string stabilities(const std::vector<FixedPoint>& points) {
  std::string s;
  for (const FixedPoint& p : points) s += (s.empty() ? "" : ",") + std::string(stability_name(p.stability));
  return s.empty() ? "-" : s;
}

void fig1(Run& r) {
  struct Case {
    const char* stem;
    const char* expr;
    std::vector<Stability> expected;
  };
  using enum Stability;
  const Case cases[] = {
      {"fig1_translation", "x + 1", {}},
      {"fig1_doubling", "2*x", {Repelling}},
      {"fig1_exp", "exp(x) - 2", {Attracting, Repelling}},
      {"fig1_tanh", "tanh(2*x)", {Attracting, Repelling, Attracting}},
  };
  const Interval analysis(-10, 10);
  const Interval window(-3, 3);
  std::string counts;
  json found = json::array();
  for (const Case& c : cases) {
    FunctionExpr f = parse(c.expr);
    std::vector<FixedPoint> points = fixed_points(f, analysis);
    bool ok = points.size() == c.expected.size();
    for (std::size_t k = 0; ok && k < points.size(); ++k) {
      ok = points[k].certified && points[k].stability == c.expected[k];
    }
    r.check(c.expr, ok, std::to_string(points.size()) + " fixed point(s) [" + stabilities(points) + "]");
    counts += (counts.empty() ? "" : ",") + std::to_string(points.size());
    found.push_back(json{{"input", c.expr}, {"fixed_points", points}});
    r.plot(c.stem, f, window);
  }
  r.out.lines.push_back(counts + " fixed points");
  r.out.report.domain = analysis;
  r.out.report.results["functions"] = found;
  r.out.report.results["plot_window"] = window;
}

void counterexample(Run& r) {
  FunctionExpr f = zoo::counterexample();
  const Interval window(-3, 3);
  r.emit("counterexample_schwarzian", sample([&](double x) { return schwarzian(f, x); }, window), "S_f(x)",
         "S_f for " + format(f));
  r.plot("counterexample", f, window);

  Interval s1 = schwarzian(f, Interval(1.0));
  r.check("S_f(1) > 1", s1.lo() > 1.0, "S_f(1) in [" + num(s1.lo()) + ", " + num(s1.hi()) + "]");
  if (s1.lo() > 1.0) r.out.lines.push_back("S_f(1) = " + num(schwarzian(f, 1.0)) + " > 1: FAIL membership");

  Certificate c = certify_membership(f, window);
  bool witnessed = c.verdict == Verdict::Falsified && c.witness && c.witness->chi_lower_bound > 1.0;
  std::string detail = std::string(verdict_name(c.verdict));
  if (c.witness) {
    detail += ", witness (" + num(c.witness->x) + ", " + num(c.witness->y) + ") with chi >= " +
              num(c.witness->chi_lower_bound);
  }
  r.check("coexpanding pair", witnessed, detail);
  r.out.report.domain = window;
  r.out.report.results["schwarzian_at_1"] = s1;
  r.out.report.results["certificate"] = c;
}

void fig2(Run& r) {
  FunctionExpr g = zoo::composition_map(0.94);
  const Interval analysis(-20, 20);
  const Interval window(-4, 8);
  r.plot("fig2", g, window);
  std::vector<FixedPoint> points = fixed_points(g, analysis);
  bool certified = std::all_of(points.begin(), points.end(), [](const FixedPoint& p) { return p.certified; });
  bool shown = std::all_of(points.begin(), points.end(), [&](const FixedPoint& p) { return p.isolating.subset_of(window); });
  r.check("five fixed points", points.size() == 5 && certified,
          std::to_string(points.size()) + " isolated fixed point(s) in " + to_string(analysis));
  r.check("inside plot window", shown, "plot window " + to_string(window));
  r.out.lines.push_back(std::to_string(points.size()) + " fixed points found");
  r.out.report.domain = analysis;
  r.out.report.results["fixed_points"] = points;
  r.out.report.results["plot_window"] = window;
  r.out.report.results["formatted"] = format(g);
}

void elu(Run& r) {
  const Interval d(-5, 5);
  // Each piece only has to be glueable on its own side of the seam.
  const Interval below(d.lo(), 0.0), above(0.0, d.hi());
  GlueableResult left = glueable_check(parse("exp(x) - 1"), below);
  GlueableResult right = glueable_check(FunctionExpr::variable(), above);
  r.check("exp(x) - 1 glueable", left.status == GlueableResult::Status::Glueable,
          "on " + to_string(below) + (left.reason.empty() ? "" : ": " + left.reason));
  r.check("x glueable", right.status == GlueableResult::Status::Glueable,
          "on " + to_string(above) + (right.reason.empty() ? "" : ": " + right.reason));
  FunctionExpr h = zoo::elu();
  Certificate c = certify_membership(h, d);
  r.check("elu certified", c.verdict == Verdict::Certified,
          std::string(verdict_name(c.verdict)) + " after " + std::to_string(c.boxes_processed) + " boxes");
  r.plot("elu", h, d);
  r.out.report.domain = d;
  r.out.report.results["left"] = left;
  r.out.report.results["right"] = right;
  r.out.report.results["certificate"] = c;
}

}  // namespace

Outcome reproduce(const Options& o) {
  Run r{o, {}};
  r.out.report.input = o.expr;
  if (o.expr == "fig1") fig1(r);
  else if (o.expr == "fig2") fig2(r);
  else if (o.expr == "counterexample") counterexample(r);
  else if (o.expr == "elu") elu(r);
  else throw UsageError("reproduce: unknown target '" + o.expr + "' (fig1, fig2, counterexample, elu)");
  r.out.report.results["assertions"] = r.assertions;
  r.out.report.results["files"] = r.files;
  return r.out;
}

}  // namespace coexpand::cli
