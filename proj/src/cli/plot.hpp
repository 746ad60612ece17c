#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "coexpand/interval.hpp"

namespace coexpand::cli {

inline constexpr int kSamples = 512;

/// Uniform samples of g over the window, both ends included.  Points where
/// g throws or is not finite are stored as NaN.
struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

Series sample(const std::function<double(double)>& g, const Interval& window, int n = kSamples);

/// Shortest decimal that reads back to the same double.
std::string num(double v);

/// `x,<column>` header, one row per finite sample.  Throws std::runtime_error
/// if the file cannot be written.
void write_csv(const std::string& path, const Series& s, std::string_view column);

/// 640x480 polyline with the diagonal y = x in grey.
void write_svg(const std::string& path, const Series& s, std::string_view title);

}  // namespace coexpand::cli
