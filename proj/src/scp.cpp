#include "sfmoea/scp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sfmoea {

ScpInstance::ScpInstance(std::size_t columns,
                         std::vector<std::vector<int>> row_columns,
                         std::vector<std::vector<int>> costs)
    : row_columns_(std::move(row_columns)), column_rows_(columns),
      costs_(std::move(costs)) {
  require(!row_columns_.empty(), "SCP instance needs at least one row");
  require(columns >= 1, "SCP instance needs at least one column");
  require(costs_.size() >= 2, "SCP instance needs at least two objectives");
  for (const auto& c : costs_) {
    require(c.size() == columns, "cost vector has wrong length");
    for (int v : c) require(v > 0, "column costs must be positive");
  }
  for (std::size_t l = 0; l < row_columns_.size(); ++l) {
    auto& cols = row_columns_[l];
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    require(!cols.empty(), "every row must be covered by some column");
    for (int c : cols) {
      require(c >= 0 && static_cast<std::size_t>(c) < columns, "column index out of range");
      column_rows_[static_cast<std::size_t>(c)].push_back(static_cast<int>(l));
    }
  }
}

bool is_feasible(const ScpInstance& inst, const CoverSolution& sol) {
  std::vector<char> covered(inst.rows(), 0);
  for (int c : sol) {
    if (c < 0 || static_cast<std::size_t>(c) >= inst.columns()) return false;
    for (int r : inst.rows_of(c)) covered[static_cast<std::size_t>(r)] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char v) { return v != 0; });
}

ObjectivePoint scp_evaluate(const ScpInstance& inst, const CoverSolution& sol) {
  require(is_feasible(inst, sol), "infeasible cover");
  ObjectivePoint z(inst.objectives(), 0.0);
  for (std::size_t j = 0; j < z.size(); ++j) {
    long long sum = 0;
    for (int c : sol) sum += inst.cost(j, c);
    z[j] = static_cast<double>(sum);
  }
  return z;
}

namespace {

void normalize(CoverSolution& sol) {
  std::sort(sol.begin(), sol.end());
  sol.erase(std::unique(sol.begin(), sol.end()), sol.end());
}

ObjectivePoint raw_costs(const ScpInstance& inst, const CoverSolution& sol) {
  ObjectivePoint z(inst.objectives(), 0.0);
  for (int c : sol)
    for (std::size_t j = 0; j < z.size(); ++j) z[j] += inst.cost(j, c);
  return z;
}

// Greedy insertion over the rows in `uncovered`; `z` holds the objective sums
// of `sol` and is updated in place.
void greedy_cover(const ScpInstance& inst, CoverSolution& sol, ObjectivePoint& z,
                  std::vector<int> uncovered, const ScalarizingFunction& s,
                  std::optional<int> excluded, std::vector<int>& mark) {
  // mark[row] == 1 while the row is uncovered.
  for (int r : uncovered) mark[static_cast<std::size_t>(r)] = 1;
  ObjectivePoint trial(z.size());
  std::vector<int> candidates;
  while (!uncovered.empty()) {
    candidates.clear();
    for (int r : uncovered) {
      bool any = false;
      for (int c : inst.covering(static_cast<std::size_t>(r))) {
        if (excluded && c == *excluded) continue;
        candidates.push_back(c);
        any = true;
      }
      if (!any) {
        for (int rr : uncovered) mark[static_cast<std::size_t>(rr)] = 0;
        throw RepairImpossible("row " + std::to_string(r) +
                               " has no admissible covering column");
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const double base = s(z);
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int c : candidates) {
      int count = 0;
      for (int r : inst.rows_of(c)) count += mark[static_cast<std::size_t>(r)];
      for (std::size_t j = 0; j < z.size(); ++j) trial[j] = z[j] + inst.cost(j, c);
      const double ratio = (s(trial) - base) / count;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        best = c;
      }
    }
    sol.push_back(best);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] += inst.cost(j, best);
    for (int r : inst.rows_of(best)) mark[static_cast<std::size_t>(r)] = 0;
    std::erase_if(uncovered, [&](int r) { return mark[static_cast<std::size_t>(r)] == 0; });
  }
  normalize(sol);
}

std::vector<int> uncovered_rows(const ScpInstance& inst, const CoverSolution& sol) {
  std::vector<char> covered(inst.rows(), 0);
  for (int c : sol)
    for (int r : inst.rows_of(c)) covered[static_cast<std::size_t>(r)] = 1;
  std::vector<int> out;
  for (std::size_t r = 0; r < covered.size(); ++r)
    if (!covered[r]) out.push_back(static_cast<int>(r));
  return out;
}

}  // namespace

CoverSolution greedy_repair(const ScpInstance& inst, CoverSolution partial,
                            const ScalarizingFunction& s, std::optional<int> excluded) {
  normalize(partial);
  ObjectivePoint z = raw_costs(inst, partial);
  std::vector<int> mark(inst.rows(), 0);
  greedy_cover(inst, partial, z, uncovered_rows(inst, partial), s, excluded, mark);
  return partial;
}

CoverSolution scp_local_search(const ScpInstance& inst, CoverSolution sol,
                               const ScalarizingFunction& s) {
  require(is_feasible(inst, sol), "local search needs a feasible start");
  normalize(sol);
  ObjectivePoint z = raw_costs(inst, sol);
  std::vector<int> cover_count(inst.rows(), 0);
  for (int c : sol)
    for (int r : inst.rows_of(c)) ++cover_count[static_cast<std::size_t>(r)];
  std::vector<int> mark(inst.rows(), 0);

  while (true) {
    const double current = s(z);
    double best_value = current - 1e-9 * (1.0 + std::abs(current));
    CoverSolution best_sol;
    ObjectivePoint best_z;
    bool found = false;

    for (int removed : sol) {
      std::vector<int> lost;
      for (int r : inst.rows_of(removed))
        if (cover_count[static_cast<std::size_t>(r)] == 1) lost.push_back(r);
      CoverSolution cand;
      cand.reserve(sol.size());
      for (int c : sol)
        if (c != removed) cand.push_back(c);
      ObjectivePoint zc = z;
      for (std::size_t j = 0; j < zc.size(); ++j) zc[j] -= inst.cost(j, removed);
      try {
        greedy_cover(inst, cand, zc, std::move(lost), s, removed, mark);
      } catch (const RepairImpossible&) {
        continue;
      }
      const double v = s(zc);
      if (v < best_value) {
        best_value = v;
        best_sol = std::move(cand);
        best_z = zc;
        found = true;
      }
    }
    if (!found) break;
    for (int c : sol)
      for (int r : inst.rows_of(c)) --cover_count[static_cast<std::size_t>(r)];
    sol = std::move(best_sol);
    z = std::move(best_z);
    for (int c : sol)
      for (int r : inst.rows_of(c)) ++cover_count[static_cast<std::size_t>(r)];
  }
  return sol;
}

CoverSolution scp_crossover_columns(const CoverSolution& p1,
                                    const CoverSolution& p2, Rng& rng) {
  CoverSolution a = p1, b = p2;
  normalize(a);
  normalize(b);
  CoverSolution child;
  std::size_t i = 0, k = 0;
  // Merge walk in column order so the coin flips follow a fixed sequence.
  while (i < a.size() || k < b.size()) {
    if (k == b.size() || (i < a.size() && a[i] < b[k])) {
      if (uniform01(rng) < 0.5) child.push_back(a[i]);
      ++i;
    } else if (i == a.size() || b[k] < a[i]) {
      if (uniform01(rng) < 0.5) child.push_back(b[k]);
      ++k;
    } else {
      child.push_back(a[i]);
      ++i;
      ++k;
    }
  }
  return child;
}

CoverSolution scp_recombine(const ScpInstance& inst, const CoverSolution& p1,
                            const CoverSolution& p2, Rng& rng) {
  require(is_feasible(inst, p1) && is_feasible(inst, p2), "parents must be feasible");
  CoverSolution child = scp_crossover_columns(p1, p2, rng);
  std::vector<char> covered(inst.rows(), 0);
  for (int c : child)
    for (int r : inst.rows_of(c)) covered[static_cast<std::size_t>(r)] = 1;
  for (std::size_t r = 0; r < inst.rows(); ++r) {
    if (covered[r]) continue;
    const auto& cols = inst.covering(r);
    const int c = cols[uniform_index(rng, cols.size())];
    child.push_back(c);
    for (int rr : inst.rows_of(c)) covered[static_cast<std::size_t>(rr)] = 1;
  }
  normalize(child);
  return child;
}

CoverSolution random_cover(const ScpInstance& inst, Rng& rng) {
  std::vector<std::size_t> order(inst.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> covered(inst.rows(), 0);
  CoverSolution sol;
  for (std::size_t r : order) {
    if (covered[r]) continue;
    const auto& cols = inst.covering(r);
    const int c = cols[uniform_index(rng, cols.size())];
    sol.push_back(c);
    for (int rr : inst.rows_of(c)) covered[static_cast<std::size_t>(rr)] = 1;
  }
  normalize(sol);
  return sol;
}

}  // namespace sfmoea
