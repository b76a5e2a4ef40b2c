#include "sfmoea/generate.hpp"

#include <cmath>

namespace sfmoea {

std::vector<Coordinate> generate_euclidean(std::size_t n, double range, Rng& rng) {
  require(range > 0.0, "coordinate range must be positive");
  std::uniform_int_distribution<long long> coord(0, static_cast<long long>(range));
  std::vector<Coordinate> pts(n);
  for (auto& p : pts) {
    p.x = static_cast<double>(coord(rng));
    p.y = static_cast<double>(coord(rng));
  }
  return pts;
}

ClusteredPoints generate_clustered(std::size_t n, std::size_t clusters, double range,
                                   double sigma, Rng& rng) {
  require(clusters >= 1, "need at least one cluster");
  require(range > 0.0, "coordinate range must be positive");
  ClusteredPoints out;
  out.sigma = sigma > 0.0 ? sigma : range / 40.0;
  std::uniform_real_distribution<double> uni(0.0, range);
  out.centers.resize(clusters);
  for (auto& c : out.centers) {
    c.x = std::round(uni(rng));
    c.y = std::round(uni(rng));
  }
  std::normal_distribution<double> offset(0.0, out.sigma);
  out.points.resize(n);
  out.cluster_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = uniform_index(rng, clusters);
    out.cluster_of[i] = k;
    out.points[i].x = std::round(out.centers[k].x + offset(rng));
    out.points[i].y = std::round(out.centers[k].y + offset(rng));
  }
  return out;
}

std::vector<int> generate_profits(std::size_t n, int lo, int hi, Rng& rng) {
  require(0 <= lo && lo <= hi, "profit range must satisfy 0 <= lo <= hi");
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<int> profits(n);
  for (int& p : profits) p = dist(rng);
  return profits;
}

ScpInstance generate_scp(std::size_t rows, std::size_t columns, std::size_t objectives,
                         double density, int cost_lo, int cost_hi, Rng& rng) {
  require(rows >= 1 && columns >= 1, "need at least one row and one column");
  require(objectives >= 2, "need at least two objectives");
  require(density > 0.0 && density <= 1.0, "density must lie in (0, 1]");
  require(0 < cost_lo && cost_lo <= cost_hi, "costs must satisfy 0 < lo <= hi");
  constexpr int kRetries = 100;
  std::vector<std::vector<int>> row_columns(rows);
  for (auto& r : row_columns) {
    for (int attempt = 0; attempt < kRetries && r.empty(); ++attempt)
      for (std::size_t c = 0; c < columns; ++c)
        if (uniform01(rng) < density) r.push_back(static_cast<int>(c));
    if (r.empty())
      throw std::runtime_error("density too low: a row stayed uncovered after retries");
  }
  std::uniform_int_distribution<int> cost(cost_lo, cost_hi);
  std::vector<std::vector<int>> costs(objectives, std::vector<int>(columns));
  for (auto& cv : costs)
    for (int& v : cv) v = cost(rng);
  return ScpInstance(columns, std::move(row_columns), std::move(costs));
}

ScpInstance combine_scp3(const ScpInstance& first, const ScpInstance& second) {
  require(first.objectives() >= 2 && second.objectives() >= 1, "need bi-objective inputs");
  require(first.columns() == second.columns(), "instances must have equal column counts");
  std::vector<std::vector<int>> costs{first.costs()[0], first.costs()[1], second.costs()[0]};
  return ScpInstance(first.columns(), first.row_columns(), std::move(costs));
}

}  // namespace sfmoea
