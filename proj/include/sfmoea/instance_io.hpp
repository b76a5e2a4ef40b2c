#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfmoea/scp.hpp"
#include "sfmoea/tsp.hpp"
#include "sfmoea/tspwp.hpp"

namespace sfmoea {

struct Coordinate {
  double x = 0.0;
  double y = 0.0;
};

/// TSP objective file: line 1 `n`, then n lines `x y`.
std::vector<Coordinate> parse_tsp_objective(const std::string& path);
void write_tsp_objective(const std::string& path, std::span<const Coordinate> points);

/// Row-major n*n matrix of nint(Euclidean distance), nint(x) = floor(x + 0.5).
std::vector<int> euclidean_cost_matrix(std::span<const Coordinate> points);

/// One objective file per objective; all must have the same n.
TspInstance load_tsp_instance(std::span<const std::string> objective_files);

/// Profit file: line 1 `n`, then n lines with one integer each.
std::vector<int> parse_profits(const std::string& path);
void write_profits(const std::string& path, std::span<const int> profits);

TspwpInstance load_tspwp_instance(const std::string& objective_file,
                                  const std::string& profit_file);

/// SCP file: `L I J`; J blocks of I costs (free line wrapping); then L rows,
/// each `k` followed by k 1-based column indices.
ScpInstance parse_scp(const std::string& path);
void write_scp(const std::string& path, const ScpInstance& inst);

}  // namespace sfmoea
