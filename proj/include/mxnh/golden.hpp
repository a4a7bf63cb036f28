#pragma once

// Golden figure coordinates: parsing the fixture CSVs and comparing each
// point against the library.
//
// Fixture columns: trace,dist,N,m,c,p,y,value
//   dist = maxnh   -> maxnh_pmf(N, m, c, y)
//   dist = maxnb   -> maxnb_pmf(c, p, y)
//   dist = loglik  -> loglik_kernel(m, N, c, y)   (m may be fractional)

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mxnh/csv.hpp"
#include "mxnh/distributions.hpp"
#include "mxnh/estimation.hpp"

namespace mxnh::golden {

struct Point {
  int trace = 0;
  std::string dist;
  int total = 0;
  double first = 0.0;
  int required = 0;
  double p = 0.0;
  int y = 0;
  double value = 0.0;
};

inline std::vector<Point> parse_points(std::string_view text) {
  const csv::Table table = csv::parse(text);
  const csv::Row expected{"trace", "dist", "N", "m", "c", "p", "y", "value"};
  if (table.header() != expected) throw std::runtime_error("golden fixture: unexpected header");
  auto num = [](const std::string& s) { return s.empty() ? 0.0 : std::stod(s); };
  std::vector<Point> out;
  for (const auto& r : table.rows()) {
    if (r.size() != expected.size()) throw std::runtime_error("golden fixture: bad column count");
    out.push_back({std::stoi(r[0]), r[1], static_cast<int>(num(r[2])), num(r[3]),
                   static_cast<int>(num(r[4])), num(r[5]), std::stoi(r[6]), std::stod(r[7])});
  }
  return out;
}

inline double evaluate(const Point& pt) {
  if (pt.dist == "maxnh") {
    return maxnh_pmf(UrnParams(pt.total, static_cast<int>(pt.first), pt.required), pt.y);
  }
  if (pt.dist == "maxnb") return maxnb_pmf(BernoulliParams(pt.required, pt.p), pt.y);
  if (pt.dist == "loglik") return loglik_kernel(pt.first, pt.total, pt.required, pt.y);
  throw std::runtime_error("golden fixture: unknown dist '" + pt.dist + "'");
}

struct SuiteResult {
  std::string name;
  std::size_t points = 0;
  double max_abs_dev = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline SuiteResult check(std::string name, const std::vector<Point>& points, double tolerance) {
  SuiteResult r{std::move(name), points.size(), 0.0, tolerance, false};
  for (const auto& pt : points) r.max_abs_dev = std::max(r.max_abs_dev, std::fabs(evaluate(pt) - pt.value));
  r.passed = !points.empty() && r.max_abs_dev <= tolerance;
  return r;
}

/// Tolerance for plotted pmf values (Figures 1-5) and for the likelihood
/// grid (Figure 6).
inline constexpr double kPmfTolerance = 1e-4;
inline constexpr double kLoglikTolerance = 1e-5;

inline double tolerance_for_figure(int figure) { return figure == 6 ? kLoglikTolerance : kPmfTolerance; }

}  // namespace mxnh::golden
