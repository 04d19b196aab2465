#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgm/bench.hpp"

namespace sgm::bench {

struct CurvePoint {
  double x = 0.0;
  double accuracy = 0.0;
};

struct Curve {
  std::size_t n = 0;
  double p = 0.0;
  std::vector<CurvePoint> points;  // increasing x
};

struct Crossing {
  double level = 0.0;
  std::vector<std::optional<double>> x;  // per curve, in rescaled units
  std::optional<double> spread;          // (max - min) / min over defined crossings
};

struct CollapseResult {
  Rescale rescale = Rescale::raw;
  std::vector<Curve> curves;
  std::vector<Crossing> crossings;
  std::vector<std::string> warnings;
};

// x where the accuracy first reaches `level`, interpolated linearly between
// the last point below it and the first at or above it. Undefined when the
// first point is already at or above the level or no point reaches it.
std::optional<double> crossing_point(const std::vector<CurvePoint>& points, double level);

// Median curves per n with x = beta / rescale_factor(n, p).
std::vector<Curve> rescaled_curves(const SweepResult& sweep, Rescale rescale);

CollapseResult collapse_analysis(const SweepResult& sweep, Rescale rescale,
                                 const std::vector<double>& levels = {0.5, 0.95});
CollapseResult collapse_curves(std::vector<Curve> curves, Rescale rescale,
                               const std::vector<double>& levels = {0.5, 0.95});

}  // namespace sgm::bench
