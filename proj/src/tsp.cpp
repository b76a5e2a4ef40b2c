#include "sfmoea/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sfmoea {

TspInstance::TspInstance(std::size_t n, std::vector<std::vector<int>> matrices)
    : n_(n), cost_(std::move(matrices)) {
  require(n_ >= 4, "TSP instance needs at least 4 cities");
  require(!cost_.empty(), "TSP instance needs at least one objective");
  for (const auto& m : cost_) {
    require(m.size() == n_ * n_, "cost matrix has wrong size");
    for (std::size_t a = 0; a < n_; ++a) {
      require(m[a * n_ + a] == 0, "cost matrix diagonal must be zero");
      for (std::size_t b = a + 1; b < n_; ++b) {
        require(m[a * n_ + b] == m[b * n_ + a], "cost matrix must be symmetric");
        require(m[a * n_ + b] >= 0, "costs must be nonnegative");
      }
    }
  }
}

bool is_valid_tour(const Tour& tour, std::size_t n) {
  if (tour.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (int c : tour) {
    if (c < 0 || static_cast<std::size_t>(c) >= n || seen[static_cast<std::size_t>(c)]) return false;
    seen[static_cast<std::size_t>(c)] = 1;
  }
  return true;
}

Tour random_tour(std::size_t n, Rng& rng) {
  Tour t(n);
  std::iota(t.begin(), t.end(), 0);
  std::shuffle(t.begin(), t.end(), rng);
  return t;
}

ObjectivePoint tsp_evaluate(const TspInstance& inst, const Tour& tour) {
  require(is_valid_tour(tour, inst.size()), "invalid tour");
  ObjectivePoint z(inst.objectives(), 0.0);
  const std::size_t n = tour.size();
  for (std::size_t j = 0; j < z.size(); ++j) {
    long long len = 0;
    for (std::size_t i = 0; i < n; ++i) len += inst.cost(j, tour[i], tour[(i + 1) % n]);
    z[j] = static_cast<double>(len);
  }
  return z;
}

std::vector<std::pair<int, int>> tour_edges(const Tour& tour) {
  std::vector<std::pair<int, int>> edges;
  const std::size_t n = tour.size();
  if (n < 2) return edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = tour[i], b = tour[(i + 1) % n];
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void CandidateLists::add(int a, int b) {
  if (a == b) return;
  const std::size_t n = lists_.size();
  const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
  if (!member_[ua * n + ub]) {
    member_[ua * n + ub] = 1;
    lists_[ua].push_back(b);
  }
  if (!member_[ub * n + ua]) {
    member_[ub * n + ua] = 1;
    lists_[ub].push_back(a);
  }
}

CandidateLists build_candidate_lists(std::span<const Tour> tours) {
  require(!tours.empty(), "candidate lists need at least one tour");
  const std::size_t n = tours.front().size();
  CandidateLists cand(n);
  for (const Tour& t : tours) {
    require(is_valid_tour(t, n), "invalid tour");
    for (std::size_t i = 0; i < n; ++i) cand.add(t[i], t[(i + 1) % n]);
  }
  return cand;
}

namespace {

class TwoOptSearch {
 public:
  TwoOptSearch(const TspInstance& inst, Tour& tour, const ScalarizingFunction& s)
      : inst_(inst), tour_(tour), s_(s), n_(tour.size()), pos_(n_),
        z_(tsp_evaluate(inst, tour)), trial_(z_.size()), delta_(z_.size()) {
    for (std::size_t i = 0; i < n_; ++i) pos_[static_cast<std::size_t>(tour_[i])] = i;
    if (s_.is_linear() && !s_.is_normalized()) {
      combined_.assign(n_ * n_, 0.0);
      for (std::size_t j = 0; j < inst_.objectives(); ++j) {
        const double w = s_.weights()[j];
        if (w == 0.0) continue;
        const auto& m = inst_.matrix(j);
        for (std::size_t k = 0; k < n_ * n_; ++k) combined_[k] += w * m[k];
      }
    }
  }

  void run(const CandidateLists* cand) {
    if (n_ < 4) return;
    current_ = s_(z_);
    while (true) {
      best_value_ = current_ - tolerance();
      found_ = false;
      if (cand) {
        scan_candidates(*cand);
      } else {
        for (std::size_t i = 0; i + 2 < n_; ++i)
          for (std::size_t j = i + 2; j < n_; ++j)
            if (!(i == 0 && j == n_ - 1)) consider(i, j);
      }
      if (!found_) break;
      apply(best_i_, best_j_);
    }
  }

 private:
  double tolerance() const { return 1e-9 * (1.0 + std::abs(current_)); }

  double c(const std::vector<double>& m, int a, int b) const {
    return m[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  }

  void scan_candidates(const CandidateLists& cand) {
    for (std::size_t i = 0; i < n_; ++i) {
      const int a = tour_[i];
      const int b = tour_[(i + 1) % n_];
      for (int city : cand.of(a)) try_pair(i, pos_[static_cast<std::size_t>(city)]);
      for (int city : cand.of(b))
        try_pair(i, (pos_[static_cast<std::size_t>(city)] + n_ - 1) % n_);
    }
  }

  void try_pair(std::size_t i, std::size_t j) {
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    if (hi < lo + 2 || (lo == 0 && hi == n_ - 1)) return;
    consider(lo, hi);
  }

  // Exchange edges (t[i], t[i+1]) and (t[j], t[j+1]) for (t[i], t[j]) and
  // (t[i+1], t[j+1]); requires i + 2 <= j.
  void consider(std::size_t i, std::size_t j) {
    const int a = tour_[i], b = tour_[i + 1], cc = tour_[j], d = tour_[(j + 1) % n_];
    double value;
    if (!combined_.empty()) {
      value = current_ + c(combined_, a, cc) + c(combined_, b, d) -
              c(combined_, a, b) - c(combined_, cc, d);
    } else {
      for (std::size_t k = 0; k < z_.size(); ++k) {
        delta_[k] = inst_.cost(k, a, cc) + inst_.cost(k, b, d) -
                    inst_.cost(k, a, b) - inst_.cost(k, cc, d);
        trial_[k] = z_[k] + delta_[k];
      }
      value = s_(trial_);
    }
    if (value < best_value_) {
      best_value_ = value;
      best_i_ = i;
      best_j_ = j;
      found_ = true;
    }
  }

  void apply(std::size_t i, std::size_t j) {
    const int a = tour_[i], b = tour_[i + 1], cc = tour_[j], d = tour_[(j + 1) % n_];
    for (std::size_t k = 0; k < z_.size(); ++k)
      z_[k] += inst_.cost(k, a, cc) + inst_.cost(k, b, d) - inst_.cost(k, a, b) -
               inst_.cost(k, cc, d);
    std::reverse(tour_.begin() + static_cast<std::ptrdiff_t>(i + 1),
                 tour_.begin() + static_cast<std::ptrdiff_t>(j + 1));
    for (std::size_t k = i + 1; k <= j; ++k) pos_[static_cast<std::size_t>(tour_[k])] = k;
    current_ = s_(z_);
  }

  const TspInstance& inst_;
  Tour& tour_;
  const ScalarizingFunction& s_;
  std::size_t n_;
  std::vector<std::size_t> pos_;
  ObjectivePoint z_;
  ObjectivePoint trial_;
  std::vector<double> delta_;
  std::vector<double> combined_;
  double current_ = 0.0;
  double best_value_ = 0.0;
  bool found_ = false;
  std::size_t best_i_ = 0, best_j_ = 0;
};

}  // namespace

Tour two_opt_local_search(const TspInstance& inst, Tour tour,
                          const ScalarizingFunction& s,
                          const CandidateLists* candidates) {
  require(is_valid_tour(tour, inst.size()), "invalid tour");
  if (candidates) require(candidates->size() == inst.size(), "candidate lists size mismatch");
  TwoOptSearch search(inst, tour, s);
  search.run(candidates);
  return tour;
}

namespace {

struct Adjacency {
  explicit Adjacency(const Tour& t) : next(t.size()), prev(t.size()) {
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
      next[static_cast<std::size_t>(t[i])] = t[(i + 1) % n];
      prev[static_cast<std::size_t>(t[i])] = t[(i + n - 1) % n];
    }
  }
  bool has(int a, int b) const {
    const auto ua = static_cast<std::size_t>(a);
    return next[ua] == b || prev[ua] == b;
  }
  std::vector<int> next, prev;
};

}  // namespace

Tour dpx_recombine(const Tour& p1, const Tour& p2, Rng& rng) {
  const std::size_t n = p1.size();
  require(is_valid_tour(p1, n) && is_valid_tour(p2, n), "invalid parent tours");
  const Adjacency a1(p1), a2(p2);

  // Common-edge graph: each city has at most two common neighbors.
  std::vector<std::vector<int>> common(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (int v : {a1.next[u], a1.prev[u]}) {
      if (a2.has(static_cast<int>(u), v) &&
          std::find(common[u].begin(), common[u].end(), v) == common[u].end())
        common[u].push_back(v);
    }
  }
  if (std::all_of(common.begin(), common.end(),
                  [](const auto& c) { return c.size() == 2; }))
    return p1;

  // Fragments are the maximal paths of the common-edge graph.
  std::vector<std::vector<int>> fragments;
  std::vector<char> used(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (used[start] || common[start].size() == 2) continue;
    std::vector<int> path{static_cast<int>(start)};
    used[start] = 1;
    int prev = -1, cur = static_cast<int>(start);
    while (true) {
      int nxt = -1;
      for (int v : common[static_cast<std::size_t>(cur)])
        if (v != prev && !used[static_cast<std::size_t>(v)]) nxt = v;
      if (nxt < 0) break;
      path.push_back(nxt);
      used[static_cast<std::size_t>(nxt)] = 1;
      prev = cur;
      cur = nxt;
    }
    fragments.push_back(std::move(path));
  }

  auto parent_edge = [&](int u, int v) { return a1.has(u, v) || a2.has(u, v); };

  // A completion is scored by how unbalanced its parent edges are, then by
  // how many it uses: equal counts from each parent still give equal distance.
  constexpr int kAttempts = 64;
  Tour best;
  std::pair<std::size_t, std::size_t> best_score{std::numeric_limits<std::size_t>::max(), 0};
  const std::size_t f = fragments.size();

  for (int attempt = 0; attempt < kAttempts && best_score.first + best_score.second > 0;
       ++attempt) {
    std::vector<std::size_t> remaining(f);
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    Tour child;
    child.reserve(n);

    auto append = [&](std::size_t frag, bool reversed) {
      const auto& p = fragments[frag];
      if (reversed) child.insert(child.end(), p.rbegin(), p.rend());
      else child.insert(child.end(), p.begin(), p.end());
    };

    const std::size_t first = uniform_index(rng, f);
    append(remaining[first], uniform01(rng) < 0.5);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(first));
    const int head = child.front();

    std::vector<std::pair<std::size_t, bool>> options;
    while (!remaining.empty()) {
      const int tail = child.back();
      const bool last = remaining.size() == 1;
      options.clear();
      for (std::size_t r = 0; r < remaining.size(); ++r) {
        const auto& p = fragments[remaining[r]];
        for (bool rev : {false, true}) {
          if (p.size() == 1 && rev) continue;
          const int entry = rev ? p.back() : p.front();
          const int exit = rev ? p.front() : p.back();
          if (parent_edge(tail, entry)) continue;
          if (last && parent_edge(exit, head)) continue;
          options.emplace_back(r, rev);
        }
      }
      std::pair<std::size_t, bool> pick;
      if (!options.empty()) {
        pick = options[uniform_index(rng, options.size())];
      } else {
        const std::size_t r = uniform_index(rng, remaining.size());
        pick = {r, fragments[remaining[r]].size() > 1 && uniform01(rng) < 0.5};
      }
      append(remaining[pick.first], pick.second);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick.first));
    }
    std::size_t from1 = 0, from2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const int u = child[k], w = child[(k + 1) % n];
      const bool in1 = a1.has(u, w), in2 = a2.has(u, w);
      from1 += in1 && !in2;
      from2 += in2 && !in1;
    }
    const std::pair<std::size_t, std::size_t> score{from1 > from2 ? from1 - from2 : from2 - from1,
                                                     from1 + from2};
    if (score < best_score) {
      best_score = score;
      best = std::move(child);
    }
  }
  return best;
}

}  // namespace sfmoea
