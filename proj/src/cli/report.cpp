#include "coexpand/report.hpp"

#include <limits>
#include <stdexcept>

namespace coexpand {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class E, std::size_t N>
E enum_from(const json& j, const std::pair<E, const char*> (&names)[N]) {
  const std::string& s = j.get_ref<const std::string&>();
  for (const auto& [e, name] : names) {
    if (s == name) return e;
  }
  throw std::invalid_argument("unknown enumerator '" + s + "'");
}

template <class E, std::size_t N>
std::string enum_to(E e, const std::pair<E, const char*> (&names)[N]) {
  for (const auto& [v, name] : names) {
    if (v == e) return name;
  }
  return "";
}

const std::pair<Verdict, const char*> kVerdicts[] = {
    {Verdict::Certified, "Certified"}, {Verdict::Falsified, "Falsified"}, {Verdict::Unknown, "Unknown"}};
const std::pair<Stability, const char*> kStabilities[] = {{Stability::Attracting, "Attracting"},
                                                          {Stability::Repelling, "Repelling"},
                                                          {Stability::Neutral, "Neutral"},
                                                          {Stability::Unresolved, "Unresolved"}};
const std::pair<Discharge, const char*> kDischarges[] = {
    {Discharge::DirectChi, "DirectChi"},   {Discharge::TaylorChi, "TaylorChi"},
    {Discharge::SeamTaylor, "SeamTaylor"}, {Discharge::SeamEdge, "SeamEdge"},
    {Discharge::Schwarzian, "Schwarzian"}, {Discharge::GlueLemma, "GlueLemma"},
    {Discharge::CrossSeam, "CrossSeam"}};
const std::pair<CritReport::Status, const char*> kCritStatus[] = {{CritReport::Status::Complete, "Complete"},
                                                                  {CritReport::Status::Incomplete, "Incomplete"}};
const std::pair<GlueableResult::Status, const char*> kGlueStatus[] = {
    {GlueableResult::Status::Glueable, "Glueable"},
    {GlueableResult::Status::NotGlueable, "NotGlueable"},
    {GlueableResult::Status::Unknown, "Unknown"}};
const std::pair<FixSetClass::Kind, const char*> kKinds[] = {{FixSetClass::Kind::FiniteSet, "FiniteSet"},
                                                            {FixSetClass::Kind::IntervalFix, "IntervalFix"},
                                                            {FixSetClass::Kind::Unresolved, "Unresolved"}};
const std::pair<FixSetClass::Evidence, const char*> kEvidence[] = {
    {FixSetClass::Evidence::IdentityOnInterval, "IdentityOnInterval"},
    {FixSetClass::Evidence::NumericOnly, "NumericOnly"}};

double end_or(const json& j, double fallback) { return j.is_null() ? fallback : j.get<double>(); }

}  // namespace

void to_json(json& j, const Interval& x) {
  if (x.is_empty()) {
    j = nullptr;
    return;
  }
  j = json::object();
  j["lo"] = std::isfinite(x.lo()) ? json(x.lo()) : json(nullptr);
  j["hi"] = std::isfinite(x.hi()) ? json(x.hi()) : json(nullptr);
}

void from_json(const json& j, Interval& x) {
  if (j.is_null()) {
    x = Interval::empty();
    return;
  }
  x = Interval(end_or(j.at("lo"), -kInf), end_or(j.at("hi"), kInf));
}

void to_json(json& j, const Box2& b) { j = json{{"x", b.x}, {"y", b.y}}; }

void from_json(const json& j, Box2& b) {
  j.at("x").get_to(b.x);
  j.at("y").get_to(b.y);
}

void to_json(json& j, const FixedPoint& p) {
  j = json{{"isolating", p.isolating},
           {"multiplier", p.multiplier},
           {"stability", enum_to(p.stability, kStabilities)},
           {"certified", p.certified}};
}

void from_json(const json& j, FixedPoint& p) {
  j.at("isolating").get_to(p.isolating);
  j.at("multiplier").get_to(p.multiplier);
  p.stability = enum_from(j.at("stability"), kStabilities);
  j.at("certified").get_to(p.certified);
}

void to_json(json& j, const CritReport& c) {
  j = json{{"isolating", c.isolating},
           {"components", c.components},
           {"status", enum_to(c.status, kCritStatus)},
           {"reason", c.reason}};
}

void from_json(const json& j, CritReport& c) {
  j.at("isolating").get_to(c.isolating);
  j.at("components").get_to(c.components);
  c.status = enum_from(j.at("status"), kCritStatus);
  j.at("reason").get_to(c.reason);
}

void to_json(json& j, const CertifyParams& p) {
  j = json{{"max_depth", p.max_depth},       {"diag_band", p.diag_band},     {"point_margin", p.point_margin},
           {"budget", p.budget},             {"root_depth", p.root_depth},   {"record_trace", p.record_trace}};
}

void from_json(const json& j, CertifyParams& p) {
  j.at("max_depth").get_to(p.max_depth);
  j.at("diag_band").get_to(p.diag_band);
  j.at("point_margin").get_to(p.point_margin);
  j.at("budget").get_to(p.budget);
  j.at("root_depth").get_to(p.root_depth);
  j.at("record_trace").get_to(p.record_trace);
}

void to_json(json& j, const Certificate& c) {
  j = json::object();
  j["verdict"] = enum_to(c.verdict, kVerdicts);
  if (c.witness) {
    j["witness"] = json{{"x", c.witness->x}, {"y", c.witness->y}, {"chi_lower_bound", c.witness->chi_lower_bound}};
  } else {
    j["witness"] = nullptr;
  }
  j["frontier"] = c.frontier;
  j["params"] = c.params;
  j["domain"] = c.domain;
  j["components"] = c.components;
  j["seams"] = c.seams;
  j["boxes_processed"] = c.boxes_processed;
  if (!c.trace.empty()) {
    json t = json::array();
    for (const TraceEntry& e : c.trace) t.push_back(json{{"box", e.box}, {"how", enum_to(e.how, kDischarges)}});
    j["trace"] = std::move(t);
  }
  j["notes"] = c.notes;
}

void from_json(const json& j, Certificate& c) {
  c.verdict = enum_from(j.at("verdict"), kVerdicts);
  const json& w = j.at("witness");
  if (w.is_null()) {
    c.witness.reset();
  } else {
    c.witness = Witness{w.at("x").get<double>(), w.at("y").get<double>(), w.at("chi_lower_bound").get<double>()};
  }
  j.at("frontier").get_to(c.frontier);
  j.at("params").get_to(c.params);
  j.at("domain").get_to(c.domain);
  j.at("components").get_to(c.components);
  j.at("seams").get_to(c.seams);
  j.at("boxes_processed").get_to(c.boxes_processed);
  c.trace.clear();
  if (j.contains("trace")) {
    for (const json& e : j.at("trace")) c.trace.push_back({e.at("box").get<Box2>(), enum_from(e.at("how"), kDischarges)});
  }
  j.at("notes").get_to(c.notes);
  c.wall_time = {};
}

void to_json(json& j, const GlueableResult& g) {
  j = json{{"status", enum_to(g.status, kGlueStatus)},
           {"witness", g.witness ? json(*g.witness) : json(nullptr)},
           {"reason", g.reason},
           {"component", g.component}};
}

void from_json(const json& j, GlueableResult& g) {
  g.status = enum_from(j.at("status"), kGlueStatus);
  const json& w = j.at("witness");
  g.witness = w.is_null() ? std::nullopt : std::optional<double>(w.get<double>());
  j.at("reason").get_to(g.reason);
  j.at("component").get_to(g.component);
}

void to_json(json& j, const FixSetClass& f) {
  j = json{{"kind", enum_to(f.kind, kKinds)},
           {"points", f.points},
           {"interval", f.interval},
           {"evidence", enum_to(f.evidence, kEvidence)},
           {"reaches_domain_lo", f.reaches_domain_lo},
           {"reaches_domain_hi", f.reaches_domain_hi},
           {"theorem_alarm", f.theorem_alarm},
           {"note", f.note}};
}

void from_json(const json& j, FixSetClass& f) {
  f.kind = enum_from(j.at("kind"), kKinds);
  j.at("points").get_to(f.points);
  j.at("interval").get_to(f.interval);
  f.evidence = enum_from(j.at("evidence"), kEvidence);
  j.at("reaches_domain_lo").get_to(f.reaches_domain_lo);
  j.at("reaches_domain_hi").get_to(f.reaches_domain_hi);
  j.at("theorem_alarm").get_to(f.theorem_alarm);
  j.at("note").get_to(f.note);
}

void to_json(json& j, const AttractingOrbit& o) {
  j = json{{"period", o.period},
           {"orbit", o.orbit},
           {"multiplier", o.multiplier},
           {"basin_lo", o.basin_lo},
           {"basin_hi", o.basin_hi},
           {"reaches_lo", o.reaches_lo},
           {"reaches_hi", o.reaches_hi},
           {"attracted_critical_points", o.attracted_critical_points},
           {"dichotomy_holds", o.dichotomy_holds}};
}

void from_json(const json& j, AttractingOrbit& o) {
  j.at("period").get_to(o.period);
  j.at("orbit").get_to(o.orbit);
  j.at("multiplier").get_to(o.multiplier);
  j.at("basin_lo").get_to(o.basin_lo);
  j.at("basin_hi").get_to(o.basin_hi);
  j.at("reaches_lo").get_to(o.reaches_lo);
  j.at("reaches_hi").get_to(o.reaches_hi);
  j.at("attracted_critical_points").get_to(o.attracted_critical_points);
  j.at("dichotomy_holds").get_to(o.dichotomy_holds);
}

void to_json(json& j, const SingerReport& s) {
  j = json{{"orbits", s.orbits},
           {"critical", s.critical},
           {"membership", s.membership ? json(enum_to(*s.membership, kVerdicts)) : json(nullptr)},
           {"theorem_alarm", s.theorem_alarm}};
}

void from_json(const json& j, SingerReport& s) {
  j.at("orbits").get_to(s.orbits);
  j.at("critical").get_to(s.critical);
  const json& m = j.at("membership");
  s.membership = m.is_null() ? std::nullopt : std::optional<Verdict>(enum_from(m, kVerdicts));
  j.at("theorem_alarm").get_to(s.theorem_alarm);
}

std::string serialize(const Report& r, int indent) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  j["input"] = r.input;
  j["domain"] = r.domain ? json(*r.domain) : json(nullptr);
  j["results"] = nlohmann::ordered_json::parse(r.results.dump());
  j["wall_time"] = r.wall_time.count();
  j["tool_version"] = r.tool_version;
  return j.dump(indent);
}

Report deserialize(std::string_view text) {
  json j = json::parse(text);
  int schema = j.at("schema").get<int>();
  if (schema != kReportSchema) throw std::invalid_argument("unsupported report schema " + std::to_string(schema));
  Report r;
  j.at("command").get_to(r.command);
  j.at("input").get_to(r.input);
  const json& d = j.at("domain");
  if (!d.is_null()) r.domain = d.get<Interval>();
  r.results = j.at("results");
  r.wall_time = std::chrono::duration<double>(j.at("wall_time").get<double>());
  j.at("tool_version").get_to(r.tool_version);
  return r;
}

}  // namespace coexpand
