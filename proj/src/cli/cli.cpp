#include "coexpand/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>

#include "coexpand/error.hpp"
#include "command.hpp"

namespace coexpand::cli {

namespace {

double number(const std::string& text, const std::string& what) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw UsageError("invalid " + what + " '" + text + "'");
  return v;
}

Interval parse_domain(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--domain expects a,b");
  double a = number(text.substr(0, comma), "domain bound");
  double b = number(text.substr(comma + 1), "domain bound");
  if (!(a < b)) throw UsageError("--domain needs a < b");
  return Interval(a, b);
}

struct Raw {
  std::string domain;
  std::vector<std::string> points;
};

void add_common(CLI::App* sub, Options& o, Raw& raw, bool needs_domain) {
  auto* d = sub->add_option("--domain", raw.domain, "analysis interval a,b")->allow_extra_args(false);
  if (needs_domain) d->required();
  sub->add_flag("--json", o.json, "print the report as JSON");
  sub->add_option("--csv", o.csv, "write plot samples as CSV");
  sub->add_option("--svg", o.svg, "write an SVG plot");
  sub->add_option("--depth", o.depth, "bisection depth");
  sub->add_option("--delta", o.delta, "diagonal band width");
  sub->add_option("--budget", o.budget, "box budget");
  sub->add_option("--tol", o.tol, "tolerance");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Coexpansion analysis of real functions", "coexpand");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Options o;
  Raw raw;

  auto* parse = app.add_subcommand("parse", "parse and print an expression");
  parse->add_option("expr", o.expr)->required();
  add_common(parse, o, raw, false);

  auto* chi = app.add_subcommand("chi", "coexpansion functional at a point pair");
  chi->add_option("expr", o.expr)->required();
  chi->add_option("points", raw.points, "X Y")->expected(2)->required();
  add_common(chi, o, raw, true);

  auto* schwarzian = app.add_subcommand("schwarzian", "Schwarzian derivative at points and on a grid");
  schwarzian->add_option("expr", o.expr)->required();
  schwarzian->add_option("points", raw.points, "sample points");
  add_common(schwarzian, o, raw, true);

  for (const char* name : {"fixpoints", "critpoints", "certify", "singer"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("expr", o.expr)->required();
    add_common(sub, o, raw, true);
  }
  app.get_subcommand("fixpoints")->description("isolate fixed points and classify their stability");
  app.get_subcommand("critpoints")->description("isolate critical points");
  app.get_subcommand("certify")->description("decide membership on the domain");
  app.get_subcommand("singer")->description("attracting orbits and the critical points they attract");

  auto* glue = app.add_subcommand("glue", "glue LEFT (x <= 0) to RIGHT (x >= 0) and certify the result");
  glue->add_option("left", o.expr)->required();
  glue->add_option("right", o.right)->required();
  add_common(glue, o, raw, true);

  auto* reproduce = app.add_subcommand("reproduce", "regenerate a figure or example with its assertions");
  reproduce->add_option("target", o.expr, "fig1 | fig2 | counterexample | elu")->required();
  add_common(reproduce, o, raw, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "coexpand: " << e.what() << "\n";
    return kUsage;
  }

  try {
    o.command = app.get_subcommands().front()->get_name();
    if (!raw.domain.empty()) o.domain = parse_domain(raw.domain);
    for (const std::string& p : raw.points) o.points.push_back(number(p, "point"));
    Outcome result = run_command(o);
    if (o.json) {
      out << serialize(result.report) << "\n";
    } else {
      for (const std::string& line : result.lines) out << line << "\n";
    }
    return result.code;
  } catch (const UsageError& e) {
    err << "coexpand: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "coexpand: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "coexpand: " << e.what() << "\n";
    return kUndecided;
  } catch (const std::runtime_error& e) {
    err << "coexpand: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace coexpand::cli
