#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "coexpand/analysis.hpp"
#include "coexpand/interval.hpp"

namespace coexpand {

inline constexpr int kReportSchema = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Everything one CLI invocation produced.  `results` holds the
/// command-specific payload in its JSON form.
struct Report {
  std::string command;
  std::string input;
  std::optional<Interval> domain;
  nlohmann::json results = nlohmann::json::object();
  std::chrono::duration<double> wall_time{0};
  std::string tool_version{kToolVersion};

  friend bool operator==(const Report&, const Report&) = default;
};

std::string serialize(const Report& r, int indent = 2);
/// Throws nlohmann::json::exception on malformed input.
Report deserialize(std::string_view text);

// JSON mappings.  Intervals are {"lo": .., "hi": ..} with infinite ends
// written as null.  Wall times never appear inside payloads.
void to_json(nlohmann::json& j, const Interval& x);
void from_json(const nlohmann::json& j, Interval& x);
void to_json(nlohmann::json& j, const Box2& b);
void from_json(const nlohmann::json& j, Box2& b);
void to_json(nlohmann::json& j, const FixedPoint& p);
void from_json(const nlohmann::json& j, FixedPoint& p);
void to_json(nlohmann::json& j, const CritReport& c);
void from_json(const nlohmann::json& j, CritReport& c);
void to_json(nlohmann::json& j, const CertifyParams& p);
void from_json(const nlohmann::json& j, CertifyParams& p);
void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);
void to_json(nlohmann::json& j, const GlueableResult& g);
void from_json(const nlohmann::json& j, GlueableResult& g);
void to_json(nlohmann::json& j, const FixSetClass& f);
void from_json(const nlohmann::json& j, FixSetClass& f);
void to_json(nlohmann::json& j, const AttractingOrbit& o);
void from_json(const nlohmann::json& j, AttractingOrbit& o);
void to_json(nlohmann::json& j, const SingerReport& s);
void from_json(const nlohmann::json& j, SingerReport& s);

}  // namespace coexpand
