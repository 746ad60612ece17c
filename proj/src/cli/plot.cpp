#include "plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace coexpand::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kMargin = 40;

std::ofstream open(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  return os;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Series sample(const std::function<double(double)>& g, const Interval& window, int n) {
  Series s;
  for (int k = 0; k < n; ++k) {
    double x = k == n - 1 ? window.hi() : window.lo() + window.width() * k / (n - 1);
    double y = std::numeric_limits<double>::quiet_NaN();
    try {
      y = g(x);
    } catch (const std::exception&) {
    }
    s.x.push_back(x);
    s.y.push_back(std::isfinite(y) ? y : std::numeric_limits<double>::quiet_NaN());
  }
  return s;
}

std::string num(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_csv(const std::string& path, const Series& s, std::string_view column) {
  std::ofstream os = open(path);
  os << "x," << column << "\n";
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    if (std::isnan(s.y[k])) continue;
    os << num(s.x[k]) << ',' << num(s.y[k]) << "\n";
  }
  if (!os) throw std::runtime_error("cannot write " + path);
}

void write_svg(const std::string& path, const Series& s, std::string_view title) {
  double x0 = s.x.front(), x1 = s.x.back();
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (double y : s.y) {
    if (std::isnan(y)) continue;
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (!(y0 <= y1)) y0 = x0, y1 = x1;
  if (y0 == y1) y0 -= 1, y1 += 1;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg << "<title>" << escape(title) << "</title>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
      << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  double d0 = std::max(x0, y0), d1 = std::min(x1, y1);
  if (d0 < d1) {
    svg << "<line x1=\"" << num(px(d0)) << "\" y1=\"" << num(py(d0)) << "\" x2=\"" << num(px(d1)) << "\" y2=\""
        << num(py(d1)) << "\" stroke=\"grey\"/>\n";
  }
  // One polyline per run of finite samples.
  std::string points;
  auto flush = [&] {
    if (!points.empty()) svg << "<polyline fill=\"none\" stroke=\"blue\" points=\"" << points << "\"/>\n";
    points.clear();
  };
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    if (std::isnan(s.y[k])) {
      flush();
      continue;
    }
    if (!points.empty()) points += ' ';
    points += num(px(s.x[k])) + "," + num(py(s.y[k]));
  }
  flush();
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 12 << "\" font-size=\"12\">x in [" << num(x0) << ", "
      << num(x1) << "]</text>\n";
  svg << "</svg>\n";
  std::ofstream os = open(path);
  os << svg.str();
  if (!os) throw std::runtime_error("cannot write " + path);
}

}  // namespace coexpand::cli
