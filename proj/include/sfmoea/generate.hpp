#pragma once

#include <vector>

#include "sfmoea/core.hpp"
#include "sfmoea/instance_io.hpp"
#include "sfmoea/scp.hpp"

namespace sfmoea {

/// Integer coordinates drawn uniformly from [0, range]^2.
std::vector<Coordinate> generate_euclidean(std::size_t n, double range, Rng& rng);

struct ClusteredPoints {
  std::vector<Coordinate> points;
  std::vector<Coordinate> centers;
  std::vector<std::size_t> cluster_of;
  double sigma = 0.0;
};

/// Cluster centers uniform in [0, range]^2; each point picks a center
/// uniformly and is offset by N(0, sigma^2) per coordinate, then rounded.
/// sigma <= 0 selects the default range / 40.
ClusteredPoints generate_clustered(std::size_t n, std::size_t clusters, double range,
                                   double sigma, Rng& rng);

/// Integer profits uniform in [lo, hi].
std::vector<int> generate_profits(std::size_t n, int lo, int hi, Rng& rng);

/// Each row/column incidence is present with probability `density`; a row
/// left empty is redrawn (bounded retries). Costs uniform in [cost_lo, cost_hi].
ScpInstance generate_scp(std::size_t rows, std::size_t columns, std::size_t objectives,
                         double density, int cost_lo, int cost_hi, Rng& rng);

/// Three-objective instance: coverage and objectives 1-2 from `first`,
/// objective 3 is objective 1 of `second`.
ScpInstance combine_scp3(const ScpInstance& first, const ScpInstance& second);

}  // namespace sfmoea
