#include "sfmoea/tspwp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sfmoea/tsp.hpp"

namespace sfmoea {

TspwpInstance::TspwpInstance(std::size_t n, std::vector<int> cost,
                             std::vector<int> profit)
    : n_(n), cost_(std::move(cost)), profit_(std::move(profit)) {
  require(n_ >= 4, "TSPWP instance needs at least 4 cities");
  require(cost_.size() == n_ * n_, "cost matrix has wrong size");
  require(profit_.size() == n_, "profit vector has wrong size");
  for (std::size_t a = 0; a < n_; ++a) {
    require(cost_[a * n_ + a] == 0, "cost matrix diagonal must be zero");
    for (std::size_t b = a + 1; b < n_; ++b)
      require(cost_[a * n_ + b] == cost_[b * n_ + a] && cost_[a * n_ + b] >= 0,
              "cost matrix must be symmetric and nonnegative");
    require(profit_[a] >= 0, "profits must be nonnegative");
    total_profit_ += profit_[a];
  }
}

bool is_valid_subtour(const SubTour& t, std::size_t n) {
  if (t.empty() || t.size() > n) return false;
  std::vector<char> seen(n, 0);
  for (int c : t) {
    if (c < 0 || static_cast<std::size_t>(c) >= n || seen[static_cast<std::size_t>(c)]) return false;
    seen[static_cast<std::size_t>(c)] = 1;
  }
  return true;
}

SubTour random_subtour(std::size_t n, Rng& rng) {
  SubTour t;
  for (std::size_t c = 0; c < n; ++c)
    if (uniform01(rng) < 0.5) t.push_back(static_cast<int>(c));
  if (t.empty()) t.push_back(static_cast<int>(uniform_index(rng, n)));
  std::shuffle(t.begin(), t.end(), rng);
  return t;
}

namespace {

long long cycle_length(const TspwpInstance& inst, const SubTour& t) {
  long long len = 0;
  const std::size_t m = t.size();
  if (m < 2) return 0;
  for (std::size_t i = 0; i < m; ++i) len += inst.cost(t[i], t[(i + 1) % m]);
  return len;
}

}  // namespace

ObjectivePoint tspwp_evaluate(const TspwpInstance& inst, const SubTour& t) {
  require(is_valid_subtour(t, inst.size()), "invalid sub-tour");
  long long profit = 0;
  for (int c : t) profit += inst.profit(c);
  return {static_cast<double>(cycle_length(inst, t)), -static_cast<double>(profit)};
}

namespace {

enum class MoveType { edge_exchange, insertion, deletion, exchange };

struct Move {
  MoveType type;
  std::size_t i = 0;
  std::size_t j = 0;
  int city = -1;
};

class SubTourSearch {
 public:
  SubTourSearch(const TspwpInstance& inst, SubTour& t, const ScalarizingFunction& s)
      : inst_(inst), t_(t), s_(s), in_tour_(inst.size(), 0) {
    for (int c : t_) {
      in_tour_[static_cast<std::size_t>(c)] = 1;
      profit_ += inst_.profit(c);
    }
    length_ = cycle_length(inst_, t_);
  }

  void run() {
    while (true) {
      current_ = value(length_, profit_);
      best_ = current_ - 1e-9 * (1.0 + std::abs(current_));
      found_ = false;
      scan_edge_exchange();
      scan_insertion();
      scan_deletion();
      scan_exchange();
      if (!found_) break;
      apply(move_);
    }
  }

 private:
  double value(long long length, long long profit) const {
    const double z[2] = {static_cast<double>(length), -static_cast<double>(profit)};
    return s_(z);
  }

  void offer(double v, const Move& m) {
    if (v < best_) {
      best_ = v;
      move_ = m;
      found_ = true;
    }
  }

  int at(std::size_t k) const { return t_[k % t_.size()]; }

  void scan_edge_exchange() {
    const std::size_t m = t_.size();
    if (m < 4) return;
    for (std::size_t i = 0; i + 2 < m; ++i) {
      for (std::size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        const int a = t_[i], b = t_[i + 1], c = t_[j], d = at(j + 1);
        const long long dl = inst_.cost(a, c) + inst_.cost(b, d) -
                             inst_.cost(a, b) - inst_.cost(c, d);
        offer(value(length_ + dl, profit_), {MoveType::edge_exchange, i, j});
      }
    }
  }

  // Absent city inserted at its shortest position.
  void scan_insertion() {
    const std::size_t m = t_.size();
    for (std::size_t v = 0; v < in_tour_.size(); ++v) {
      if (in_tour_[v]) continue;
      const int city = static_cast<int>(v);
      long long best_dl = std::numeric_limits<long long>::max();
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const int p = t_[k], q = at(k + 1);
        const long long dl = inst_.cost(p, city) + inst_.cost(city, q) - inst_.cost(p, q);
        if (dl < best_dl) {
          best_dl = dl;
          best_k = k;
        }
      }
      offer(value(length_ + best_dl, profit_ + inst_.profit(city)),
            {MoveType::insertion, best_k, 0, city});
    }
  }

  void scan_deletion() {
    const std::size_t m = t_.size();
    if (m < 2) return;
    for (std::size_t k = 0; k < m; ++k) {
      const int p = at(k + m - 1), v = t_[k], q = at(k + 1);
      const long long dl = inst_.cost(p, q) - inst_.cost(p, v) - inst_.cost(v, q);
      offer(value(length_ + dl, profit_ - inst_.profit(v)), {MoveType::deletion, k});
    }
  }

  void scan_exchange() {
    const std::size_t m = t_.size();
    for (std::size_t k = 0; k < m; ++k) {
      const int p = at(k + m - 1), u = t_[k], q = at(k + 1);
      for (std::size_t v = 0; v < in_tour_.size(); ++v) {
        if (in_tour_[v]) continue;
        const int city = static_cast<int>(v);
        const long long dl =
            m == 1 ? 0
                   : inst_.cost(p, city) + inst_.cost(city, q) - inst_.cost(p, u) -
                         inst_.cost(u, q);
        offer(value(length_ + dl, profit_ - inst_.profit(u) + inst_.profit(city)),
              {MoveType::exchange, k, 0, city});
      }
    }
  }

  void apply(const Move& mv) {
    switch (mv.type) {
      case MoveType::edge_exchange:
        std::reverse(t_.begin() + static_cast<std::ptrdiff_t>(mv.i + 1),
                     t_.begin() + static_cast<std::ptrdiff_t>(mv.j + 1));
        break;
      case MoveType::insertion:
        t_.insert(t_.begin() + static_cast<std::ptrdiff_t>(mv.i + 1), mv.city);
        in_tour_[static_cast<std::size_t>(mv.city)] = 1;
        profit_ += inst_.profit(mv.city);
        break;
      case MoveType::deletion:
        in_tour_[static_cast<std::size_t>(t_[mv.i])] = 0;
        profit_ -= inst_.profit(t_[mv.i]);
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(mv.i));
        break;
      case MoveType::exchange:
        in_tour_[static_cast<std::size_t>(t_[mv.i])] = 0;
        profit_ -= inst_.profit(t_[mv.i]);
        t_[mv.i] = mv.city;
        in_tour_[static_cast<std::size_t>(mv.city)] = 1;
        profit_ += inst_.profit(mv.city);
        break;
    }
    length_ = cycle_length(inst_, t_);
  }

  const TspwpInstance& inst_;
  SubTour& t_;
  const ScalarizingFunction& s_;
  std::vector<char> in_tour_;
  long long length_ = 0;
  long long profit_ = 0;
  double current_ = 0.0;
  double best_ = 0.0;
  bool found_ = false;
  Move move_{MoveType::deletion};
};

}  // namespace

SubTour tspwp_local_search(const TspwpInstance& inst, SubTour t,
                           const ScalarizingFunction& s) {
  require(is_valid_subtour(t, inst.size()), "invalid sub-tour");
  require(s.weights().size() == 2, "TSPWP has two objectives");
  SubTourSearch search(inst, t, s);
  search.run();
  return t;
}

ObjectiveRanges estimate_ranges(const TspwpInstance& inst, Rng& rng,
                                double w_linear, double w_cheby) {
  // Raw-unit lower bounds: length >= 0, -profit >= -(total profit).
  const ObjectivePoint utopia{0.0, -static_cast<double>(inst.total_profit())};
  ObjectiveRanges r{{std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()},
                    {-std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()}};
  for (const auto& lambdas : {std::vector<double>{0.999, 0.001},
                              std::vector<double>{0.001, 0.999}}) {
    const ScalarizingFunction s(ScalarizerSpec::mixed(utopia, w_linear, w_cheby),
                                WeightVector(lambdas));
    const SubTour t = tspwp_local_search(inst, random_subtour(inst.size(), rng), s);
    const ObjectivePoint z = tspwp_evaluate(inst, t);
    for (std::size_t j = 0; j < 2; ++j) {
      r.min[j] = std::min(r.min[j], z[j]);
      r.max[j] = std::max(r.max[j], z[j]);
    }
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const double pad = 0.01 * (r.max[j] - r.min[j]);
    r.min[j] -= pad;
    r.max[j] += pad;
    if (!(r.max[j] > r.min[j])) r.max[j] = r.min[j] + 1.0;
  }
  return r;
}

SubTour dpx_wp_recombine(const SubTour& p1, const SubTour& p2, std::size_t n,
                         Rng& rng) {
  require(is_valid_subtour(p1, n) && is_valid_subtour(p2, n), "invalid parent sub-tours");
  std::vector<char> in1(n, 0), in2(n, 0);
  for (int c : p1) in1[static_cast<std::size_t>(c)] = 1;
  for (int c : p2) in2[static_cast<std::size_t>(c)] = 1;

  const auto e1 = tour_edges(p1), e2 = tour_edges(p2);
  if (in1 == in2 && e1 == e2) return p1;

  std::vector<std::pair<int, int>> shared;
  std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(),
                        std::back_inserter(shared));
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : shared) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }

  // Fragments: paths of common edges, plus isolated common nodes.
  std::vector<std::vector<int>> fragments;
  std::vector<char> used(n, 0);
  std::size_t common_nodes = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!(in1[v] && in2[v])) continue;
    ++common_nodes;
    if (used[v] || adj[v].size() == 2) continue;
    std::vector<int> path{static_cast<int>(v)};
    used[v] = 1;
    int prev = -1, cur = static_cast<int>(v);
    while (true) {
      int nxt = -1;
      for (int w : adj[static_cast<std::size_t>(cur)])
        if (w != prev && !used[static_cast<std::size_t>(w)]) nxt = w;
      if (nxt < 0) break;
      path.push_back(nxt);
      used[static_cast<std::size_t>(nxt)] = 1;
      prev = cur;
      cur = nxt;
    }
    fragments.push_back(std::move(path));
  }

  std::vector<int> remaining;
  for (std::size_t v = 0; v < n; ++v)
    if (!(in1[v] && in2[v])) remaining.push_back(static_cast<int>(v));

  const double expected = 0.5 * static_cast<double>(p1.size() + p2.size());
  double add_probability = 0.0;
  if (!remaining.empty())
    add_probability = std::clamp(
        (expected - static_cast<double>(common_nodes)) / static_cast<double>(remaining.size()),
        0.0, 1.0);
  for (int v : remaining)
    if (uniform01(rng) < add_probability) fragments.push_back({v});
  if (fragments.empty())
    fragments.push_back({remaining[uniform_index(rng, remaining.size())]});

  std::shuffle(fragments.begin(), fragments.end(), rng);
  SubTour child;
  for (const auto& f : fragments) {
    if (f.size() > 1 && uniform01(rng) < 0.5) child.insert(child.end(), f.rbegin(), f.rend());
    else child.insert(child.end(), f.begin(), f.end());
  }
  return child;
}

}  // namespace sfmoea
