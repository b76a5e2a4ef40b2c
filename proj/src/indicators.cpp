#include "sfmoea/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "sfmoea/archive.hpp"

namespace sfmoea {

namespace {

void check_r_inputs(std::span<const ObjectivePoint> points,
                    std::span<const WeightVector> weights,
                    std::span<const double> reference) {
  require(!points.empty(), "R measure needs a nonempty point set");
  require(!weights.empty(), "R measure needs a nonempty weight set");
  for (const auto& p : points)
    require(p.size() == reference.size(), "point dimension mismatch");
  for (const auto& w : weights)
    require(w.size() == reference.size(), "weight dimension mismatch");
}

double best_for_weight(std::span<const ObjectivePoint> points,
                       const WeightVector& w, std::span<const double> reference) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, evaluate_chebycheff(p, w, reference));
  return best;
}

}  // namespace

double r_measure_serial(std::span<const ObjectivePoint> points,
                        std::span<const WeightVector> weights,
                        std::span<const double> reference) {
  check_r_inputs(points, weights, reference);
  double sum = 0.0;
  for (const auto& w : weights) sum += best_for_weight(points, w, reference);
  return sum / static_cast<double>(weights.size());
}

double r_measure(std::span<const ObjectivePoint> points,
                 std::span<const WeightVector> weights,
                 std::span<const double> reference) {
  check_r_inputs(points, weights, reference);
  const auto n = static_cast<std::ptrdiff_t>(weights.size());
  std::vector<double> minima(weights.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    minima[static_cast<std::size_t>(k)] =
        best_for_weight(points, weights[static_cast<std::size_t>(k)], reference);
  double sum = 0.0;
  for (double m : minima) sum += m;
  return sum / static_cast<double>(weights.size());
}

std::size_t r_weight_granularity(std::size_t objectives) {
  if (objectives == 2) return 999;
  if (objectives == 3) return 122;
  return granularity_for_count(objectives, 1000);
}

namespace {

double hv2d(std::vector<std::pair<double, double>> pts, double rx, double ry) {
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double prev_y = ry;
  for (auto [x, y] : pts) {
    if (y < prev_y) {
      area += (rx - x) * (prev_y - y);
      prev_y = y;
    }
  }
  return area;
}

}  // namespace

double hypervolume(std::span<const ObjectivePoint> points,
                   std::span<const double> reference) {
  const std::size_t dims = reference.size();
  require(dims == 2 || dims == 3, "hypervolume supports 2 or 3 objectives");
  for (const auto& p : points) {
    require(p.size() == dims, "point dimension mismatch");
    for (std::size_t j = 0; j < dims; ++j)
      require(p[j] < reference[j], "every point must strictly dominate the reference point");
  }
  if (points.empty()) return 0.0;

  if (dims == 2) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(points.size());
    for (const auto& p : points) pts.emplace_back(p[0], p[1]);
    return hv2d(std::move(pts), reference[0], reference[1]);
  }

  // Slice along the third objective; each slab's cross-section is the 2-D
  // hypervolume of the points at or below the slab.
  std::vector<const ObjectivePoint*> sorted;
  for (const auto& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjectivePoint* a, const ObjectivePoint* b) { return (*a)[2] < (*b)[2]; });
  double volume = 0.0;
  std::vector<std::pair<double, double>> active;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    active.emplace_back((*sorted[k])[0], (*sorted[k])[1]);
    const double lower = (*sorted[k])[2];
    const double upper = k + 1 < sorted.size() ? (*sorted[k + 1])[2] : reference[2];
    if (upper > lower) volume += hv2d(active, reference[0], reference[1]) * (upper - lower);
  }
  return volume;
}

ReferencePoints union_reference_points(
    std::span<const std::vector<ObjectivePoint>> sets) {
  ReferencePoints ref;
  std::size_t dims = 0;
  for (const auto& s : sets)
    for (const auto& p : s) {
      if (dims == 0) {
        dims = p.size();
        ref.ideal.assign(dims, std::numeric_limits<double>::infinity());
        ref.nadir.assign(dims, -std::numeric_limits<double>::infinity());
      }
      require(p.size() == dims, "point dimension mismatch");
      for (std::size_t j = 0; j < dims; ++j) {
        ref.ideal[j] = std::min(ref.ideal[j], p[j]);
        ref.nadir[j] = std::max(ref.nadir[j], p[j]);
      }
    }
  require(dims > 0, "reference points need at least one point");
  for (std::size_t j = 0; j < dims; ++j) {
    double pad = 0.01 * (ref.nadir[j] - ref.ideal[j]);
    if (pad == 0.0) pad = 0.01 * std::abs(ref.nadir[j]);
    if (pad == 0.0) pad = 1.0;
    ref.nadir[j] += pad;
  }
  return ref;
}

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b, double alpha) {
  require(a.size() == b.size(), "paired samples must have equal length");
  require(a.size() >= 5, "need at least 5 pairs");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");

  struct Diff {
    double magnitude;
    bool positive;
  };
  std::vector<Diff> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back({std::abs(d), d > 0.0});
  }
  WilcoxonResult result;
  result.nonzero = diffs.size();
  if (diffs.empty()) return result;

  std::sort(diffs.begin(), diffs.end(),
            [](const Diff& x, const Diff& y) { return x.magnitude < y.magnitude; });
  // Doubled average ranks are integers.
  const std::size_t n = diffs.size();
  std::vector<std::int64_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t k = i;
    while (k + 1 < n && diffs[k + 1].magnitude == diffs[i].magnitude) ++k;
    const auto r2 = static_cast<std::int64_t>(i + 1 + k + 1);  // 2 * mean of ranks i+1..k+1
    for (std::size_t m = i; m <= k; ++m) rank2[m] = r2;
    const double t = static_cast<double>(k - i + 1);
    tie_term += t * t * t - t;
    i = k + 1;
  }
  std::int64_t w2 = 0, total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (diffs[i].positive) w2 += rank2[i];
  }
  result.statistic = static_cast<double>(w2) / 2.0;

  if (n <= 20) {
    // Null distribution of the doubled positive-rank sum by subset-sum DP.
    std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
    count[0] = 1.0;
    std::int64_t reach = 0;
    for (std::int64_t r : rank2) {
      for (std::int64_t s = reach; s >= 0; --s)
        count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
      reach += r;
    }
    const std::int64_t observed = std::llabs(2 * w2 - total2);
    double extreme = 0.0;
    for (std::int64_t s = 0; s <= total2; ++s)
      if (std::llabs(2 * s - total2) >= observed) extreme += count[static_cast<std::size_t>(s)];
    result.p_value = std::min(1.0, extreme / std::ldexp(1.0, static_cast<int>(n)));
    result.exact = true;
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double dev = std::max(0.0, std::abs(result.statistic - mean) - 0.5);
    result.p_value = var > 0.0 ? std::min(1.0, 2.0 * normal_sf(dev / std::sqrt(var))) : 1.0;
    result.exact = false;
  }
  result.significant = result.p_value <= alpha;
  return result;
}

}  // namespace sfmoea
