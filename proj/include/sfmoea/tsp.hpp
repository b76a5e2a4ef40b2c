#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfmoea/core.hpp"
#include "sfmoea/scalarizing.hpp"

namespace sfmoea {

/// J symmetric integer cost matrices over n cities.
class TspInstance {
 public:
  TspInstance() = default;
  /// `matrices[j]` is the row-major n*n cost matrix of objective j.
  TspInstance(std::size_t n, std::vector<std::vector<int>> matrices);

  std::size_t size() const { return n_; }
  std::size_t objectives() const { return cost_.size(); }
  int cost(std::size_t objective, int a, int b) const {
    return cost_[objective][static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  }
  const std::vector<int>& matrix(std::size_t objective) const { return cost_[objective]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<int>> cost_;
};

/// A permutation of 0..n-1, read as a closed cycle.
using Tour = std::vector<int>;

bool is_valid_tour(const Tour& tour, std::size_t n);
Tour random_tour(std::size_t n, Rng& rng);

ObjectivePoint tsp_evaluate(const TspInstance& inst, const Tour& tour);

/// Undirected edge set of a cycle as sorted (min, max) pairs.
std::vector<std::pair<int, int>> tour_edges(const Tour& tour);

/// Symmetric per-city neighbor sets.
class CandidateLists {
 public:
  explicit CandidateLists(std::size_t n) : lists_(n), member_(n * n, 0) {}

  void add(int a, int b);
  bool contains(int a, int b) const {
    return member_[static_cast<std::size_t>(a) * lists_.size() + static_cast<std::size_t>(b)] != 0;
  }
  const std::vector<int>& of(int a) const { return lists_[static_cast<std::size_t>(a)]; }
  std::size_t size() const { return lists_.size(); }

 private:
  std::vector<std::vector<int>> lists_;
  std::vector<char> member_;
};

/// cand(a) = every city adjacent to a in at least one of the tours.
CandidateLists build_candidate_lists(std::span<const Tour> tours);

/// Steepest-descent 2-opt under `s`. With candidate lists, only exchanges that
/// create an edge a-c with c in cand(a), or b-d with d in cand(b), are tried.
Tour two_opt_local_search(const TspInstance& inst, Tour tour,
                          const ScalarizingFunction& s,
                          const CandidateLists* candidates = nullptr);

/// Distance-preserving crossover: keeps all common edges and joins the
/// fragments with random edges that belong to neither parent where possible.
Tour dpx_recombine(const Tour& p1, const Tour& p2, Rng& rng);

/// Engine adapter for the multiobjective symmetric TSP. Candidate lists are
/// built from the initial local optima and used in the main phase only.
class TspProblem {
 public:
  using Solution = Tour;

  explicit TspProblem(const TspInstance& inst, bool use_candidate_lists = true)
      : inst_(&inst), use_candidates_(use_candidate_lists) {}

  std::size_t num_objectives() const { return inst_->objectives(); }
  ObjectivePoint evaluate(const Tour& t) const { return tsp_evaluate(*inst_, t); }
  Tour random_solution(Rng& rng) const { return random_tour(inst_->size(), rng); }
  Tour local_search(const Tour& t, const ScalarizingFunction& s, Rng&) const {
    return two_opt_local_search(*inst_, t, s, candidates_ ? &*candidates_ : nullptr);
  }
  Tour recombine(const Tour& a, const Tour& b, Rng& rng) const {
    return dpx_recombine(a, b, rng);
  }
  void begin_main_phase(std::span<const Tour> initial) {
    if (use_candidates_ && !initial.empty()) candidates_ = build_candidate_lists(initial);
  }

 private:
  const TspInstance* inst_;
  bool use_candidates_;
  std::optional<CandidateLists> candidates_;
};

}  // namespace sfmoea
