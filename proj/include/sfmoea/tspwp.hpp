#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfmoea/core.hpp"
#include "sfmoea/scalarizing.hpp"

namespace sfmoea {

/// Symmetric integer distances plus a nonnegative profit per city.
class TspwpInstance {
 public:
  TspwpInstance() = default;
  TspwpInstance(std::size_t n, std::vector<int> cost, std::vector<int> profit);

  std::size_t size() const { return n_; }
  int cost(int a, int b) const {
    return cost_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  }
  int profit(int city) const { return profit_[static_cast<std::size_t>(city)]; }
  long long total_profit() const { return total_profit_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> cost_;
  std::vector<int> profit_;
  long long total_profit_ = 0;
};

/// Distinct cities visited as a cycle; a single city is a cycle of length 0.
using SubTour = std::vector<int>;

bool is_valid_subtour(const SubTour& t, std::size_t n);
SubTour random_subtour(std::size_t n, Rng& rng);

/// (cycle length, -collected profit).
ObjectivePoint tspwp_evaluate(const TspwpInstance& inst, const SubTour& t);

/// Runs the local search from random starts under mixed scalarizers with
/// weights (0.999, 0.001) and (0.001, 0.999) on raw objectives, then pads the
/// min/max box of the two results by 1% (or by 1 when degenerate).
ObjectiveRanges estimate_ranges(const TspwpInstance& inst, Rng& rng,
                                double w_linear = 0.001, double w_cheby = 0.999);

/// Steepest descent over edge exchange, node insertion, node deletion and node
/// exchange; every move of every type is evaluated each step.
SubTour tspwp_local_search(const TspwpInstance& inst, SubTour t,
                           const ScalarizingFunction& s);

/// Extended DPX: common edges and common nodes are kept, every other city
/// joins with probability (avg parent size - common nodes) / |remaining|, and
/// the fragments are chained in random order and orientation.
SubTour dpx_wp_recombine(const SubTour& p1, const SubTour& p2, std::size_t n,
                         Rng& rng);

class TspwpProblem {
 public:
  using Solution = SubTour;

  explicit TspwpProblem(const TspwpInstance& inst, double w_linear = 0.001,
                        double w_cheby = 0.999)
      : inst_(&inst), w_linear_(w_linear), w_cheby_(w_cheby) {}

  std::size_t num_objectives() const { return 2; }
  ObjectivePoint evaluate(const SubTour& t) const { return tspwp_evaluate(*inst_, t); }
  SubTour random_solution(Rng& rng) const { return random_subtour(inst_->size(), rng); }
  SubTour local_search(const SubTour& t, const ScalarizingFunction& s, Rng&) const {
    return tspwp_local_search(*inst_, t, s);
  }
  SubTour recombine(const SubTour& a, const SubTour& b, Rng& rng) const {
    return dpx_wp_recombine(a, b, inst_->size(), rng);
  }
  std::optional<ObjectiveRanges> prepare(Rng& rng) {
    return estimate_ranges(*inst_, rng, w_linear_, w_cheby_);
  }

 private:
  const TspwpInstance* inst_;
  double w_linear_;
  double w_cheby_;
};

}  // namespace sfmoea
