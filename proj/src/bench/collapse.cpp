#include <algorithm>
#include <map>

#include "sgm/collapse.hpp"
#include "sgm/errors.hpp"
#include "sgm/io.hpp"

namespace sgm::bench {

std::optional<double> crossing_point(const std::vector<CurvePoint>& points, double level) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].accuracy < level) continue;
    if (i == 0) return std::nullopt;
    const CurvePoint& a = points[i - 1];
    const CurvePoint& b = points[i];
    return a.x + (level - a.accuracy) * (b.x - a.x) / (b.accuracy - a.accuracy);
  }
  return std::nullopt;
}

std::vector<Curve> rescaled_curves(const SweepResult& sweep, Rescale rescale) {
  std::map<std::size_t, Curve> by_n;
  for (const SweepPoint& pt : sweep.points) {
    Curve& c = by_n[pt.n];
    c.n = pt.n;
    c.p = pt.p;
    const double scale = rescale_factor(rescale, static_cast<double>(pt.n), pt.p);
    c.points.push_back({pt.beta / scale, pt.median_accuracy});
  }
  std::vector<Curve> out;
  for (auto& [n, c] : by_n) {
    std::sort(c.points.begin(), c.points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
    out.push_back(std::move(c));
  }
  return out;
}

CollapseResult collapse_curves(std::vector<Curve> curves, Rescale rescale,
                               const std::vector<double>& levels) {
  CollapseResult r;
  r.rescale = rescale;
  r.curves = std::move(curves);
  for (double level : levels) {
    Crossing c;
    c.level = level;
    std::vector<double> defined;
    for (const Curve& curve : r.curves) {
      const auto x = crossing_point(curve.points, level);
      c.x.push_back(x);
      if (x) {
        defined.push_back(*x);
      } else {
        r.warnings.push_back("n=" + std::to_string(curve.n) + ": accuracy " +
                             format_double(level) + " not bracketed by the grid");
      }
    }
    if (defined.size() >= 2 && defined.size() == r.curves.size()) {
      const auto [lo, hi] = std::minmax_element(defined.begin(), defined.end());
      if (*lo > 0.0) c.spread = (*hi - *lo) / *lo;
    }
    r.crossings.push_back(std::move(c));
  }
  return r;
}

CollapseResult collapse_analysis(const SweepResult& sweep, Rescale rescale,
                                 const std::vector<double>& levels) {
  auto curves = rescaled_curves(sweep, rescale);
  if (curves.size() < 2) throw DomainError("collapse analysis needs at least two n values");
  return collapse_curves(std::move(curves), rescale, levels);
}

}  // namespace sgm::bench
