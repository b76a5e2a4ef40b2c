#pragma once

#include <span>
#include <vector>

#include "sfmoea/core.hpp"
#include "sfmoea/scalarizing.hpp"

namespace sfmoea {

/// Mean over the weight set of the best weighted Chebycheff value reached by
/// any point. Lower is better. Parallel over weights (OpenMP); the result is
/// bit-identical to r_measure_serial for any thread count.
double r_measure(std::span<const ObjectivePoint> points,
                 std::span<const WeightVector> weights,
                 std::span<const double> reference);

/// Single-threaded reference implementation of r_measure.
double r_measure_serial(std::span<const ObjectivePoint> points,
                        std::span<const WeightVector> weights,
                        std::span<const double> reference);

/// Lattice granularity for R weight sets: 999 (1000 vectors) for two
/// objectives, 122 (7626 vectors) for three, otherwise the smallest lattice
/// with at least 1000 vectors.
std::size_t r_weight_granularity(std::size_t objectives);

/// Exact dominated hypervolume for 2 or 3 objectives. Every point must
/// strictly dominate `reference`.
double hypervolume(std::span<const ObjectivePoint> points,
                   std::span<const double> reference);

struct ReferencePoints {
  ObjectivePoint ideal;  ///< componentwise minimum over the union (R)
  ObjectivePoint nadir;  ///< componentwise maximum plus 1% padding (HV)
};

/// Reference points shared by all point sets compared on one instance.
ReferencePoints union_reference_points(
    std::span<const std::vector<ObjectivePoint>> sets);

struct WilcoxonResult {
  double statistic = 0.0;  ///< W+, sum of ranks of positive differences
  double p_value = 1.0;    ///< two-sided
  bool significant = false;
  std::size_t nonzero = 0;
  bool exact = true;
};

/// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped,
/// tied magnitudes get average ranks. Exact null distribution for up to 20
/// nonzero pairs, normal approximation with continuity correction beyond.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b, double alpha);

}  // namespace sfmoea
