#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sfmoea/core.hpp"
#include "sfmoea/scalarizing.hpp"

namespace sfmoea {

/// Multiobjective set covering: L rows, I columns, J positive cost vectors.
class ScpInstance {
 public:
  ScpInstance() = default;
  /// `row_columns[l]` lists the (0-based) columns covering row l;
  /// `costs[j][i]` is the cost of column i under objective j.
  ScpInstance(std::size_t columns, std::vector<std::vector<int>> row_columns,
              std::vector<std::vector<int>> costs);

  std::size_t rows() const { return row_columns_.size(); }
  std::size_t columns() const { return column_rows_.size(); }
  std::size_t objectives() const { return costs_.size(); }
  const std::vector<int>& covering(std::size_t row) const { return row_columns_[row]; }
  const std::vector<int>& rows_of(int column) const {
    return column_rows_[static_cast<std::size_t>(column)];
  }
  int cost(std::size_t objective, int column) const {
    return costs_[objective][static_cast<std::size_t>(column)];
  }
  const std::vector<std::vector<int>>& costs() const { return costs_; }
  const std::vector<std::vector<int>>& row_columns() const { return row_columns_; }

 private:
  std::vector<std::vector<int>> row_columns_;
  std::vector<std::vector<int>> column_rows_;
  std::vector<std::vector<int>> costs_;
};

/// Selected columns, kept sorted ascending.
using CoverSolution = std::vector<int>;

class RepairImpossible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_feasible(const ScpInstance& inst, const CoverSolution& sol);

ObjectivePoint scp_evaluate(const ScpInstance& inst, const CoverSolution& sol);

/// Greedily covers the rows `partial` leaves uncovered, each step inserting
/// the column with the lowest (scalarizing increase / newly covered rows);
/// ties go to the lowest index. `excluded` is never inserted.
CoverSolution greedy_repair(const ScpInstance& inst, CoverSolution partial,
                            const ScalarizingFunction& s,
                            std::optional<int> excluded = std::nullopt);

/// Steepest descent over "remove one selected column, then greedy-repair
/// without it".
CoverSolution scp_local_search(const ScpInstance& inst, CoverSolution sol,
                               const ScalarizingFunction& s);

/// Common columns plus each one-parent column with probability 1/2; may be
/// infeasible.
CoverSolution scp_crossover_columns(const CoverSolution& p1,
                                    const CoverSolution& p2, Rng& rng);

/// scp_crossover_columns followed by covering each still-uncovered row (in
/// row order) with a uniformly drawn covering column.
CoverSolution scp_recombine(const ScpInstance& inst, const CoverSolution& p1,
                            const CoverSolution& p2, Rng& rng);

/// Rows in random order; each uncovered row gets a uniformly drawn covering
/// column.
CoverSolution random_cover(const ScpInstance& inst, Rng& rng);

class ScpProblem {
 public:
  using Solution = CoverSolution;

  explicit ScpProblem(const ScpInstance& inst) : inst_(&inst) {}

  std::size_t num_objectives() const { return inst_->objectives(); }
  ObjectivePoint evaluate(const CoverSolution& s) const { return scp_evaluate(*inst_, s); }
  CoverSolution random_solution(Rng& rng) const { return random_cover(*inst_, rng); }
  CoverSolution local_search(const CoverSolution& x, const ScalarizingFunction& s,
                             Rng&) const {
    return scp_local_search(*inst_, x, s);
  }
  CoverSolution recombine(const CoverSolution& a, const CoverSolution& b,
                          Rng& rng) const {
    return scp_recombine(*inst_, a, b, rng);
  }

 private:
  const ScpInstance* inst_;
};

}  // namespace sfmoea
