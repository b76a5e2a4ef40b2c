#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sfmoea/core.hpp"

namespace sfmoea {

/// a dominates b: no worse in every objective, strictly better in one.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Set of mutually nondominated (solution, point) pairs with distinct points.
/// Flat storage with a linear scan per update.
template <class Solution>
class ParetoArchive {
 public:
  struct Entry {
    Solution solution;
    ObjectivePoint point;
  };

  /// Inserts the candidate unless an archived point dominates or equals it;
  /// evicts every entry the candidate dominates. Returns true iff the point
  /// set changed.
  bool update(Solution solution, ObjectivePoint point) {
    if (!entries_.empty())
      require(point.size() == entries_.front().point.size(),
              "candidate dimension does not match archive");
    for (const Entry& e : entries_) {
      if (e.point == point || dominates(e.point, point)) return false;
    }
    std::erase_if(entries_,
                  [&](const Entry& e) { return dominates(point, e.point); });
    entries_.push_back({std::move(solution), std::move(point)});
    return true;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

  std::vector<ObjectivePoint> points() const {
    std::vector<ObjectivePoint> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) out.push_back(e.point);
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

/// Archive CSV: header `obj1,...,objJ`, then one point per line written with
/// round-trip precision.
void write_points_csv(std::ostream& out, const std::vector<ObjectivePoint>& points,
                      std::size_t objectives);
void write_points_csv(const std::string& path,
                      const std::vector<ObjectivePoint>& points,
                      std::size_t objectives);
std::vector<ObjectivePoint> read_points_csv(const std::string& path);

/// Points sorted lexicographically; archive order depends on insertion history,
/// exports use this for stable output.
std::vector<ObjectivePoint> sorted_points(std::vector<ObjectivePoint> points);

}  // namespace sfmoea
