#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coexpand/interval.hpp"
#include "coexpand/report.hpp"

namespace coexpand::cli {

/// Bad flag values, out-of-domain points, unwritable paths.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string expr;   // expression, or the reproduce target
  std::string right;  // second expression of glue
  std::vector<double> points;
  std::optional<Interval> domain;
  bool json = false;
  std::string csv;
  std::string svg;
  std::optional<int> depth;
  std::optional<double> delta;
  std::optional<std::size_t> budget;
  std::optional<double> tol;
};

struct Outcome {
  int code = 0;
  Report report;
  std::vector<std::string> lines;  // text rendering
};

Outcome run_command(const Options& o);
Outcome reproduce(const Options& o);

}  // namespace coexpand::cli
