#pragma once

#include <algorithm>
#include <chrono>
#include <concepts>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfmoea/archive.hpp"
#include "sfmoea/core.hpp"
#include "sfmoea/scalarizing.hpp"

namespace sfmoea {

enum class Method { momsls, mogls, umogls, moead };

const char* to_string(Method method);
Method method_from_string(const std::string& name);
inline constexpr Method kAllMethods[] = {Method::momsls, Method::mogls,
                                         Method::umogls, Method::moead};

/// Uses the uniform cyclic weight schedule (UMOGLS, MOEA/D) rather than random
/// weights (MOMSLS, MOGLS).
constexpr bool uses_uniform_weights(Method m) {
  return m == Method::umogls || m == Method::moead;
}

struct MethodConfig {
  Method method = Method::mogls;
  std::size_t objectives = 2;
  /// Kind and mix weights; the reference point is maintained online.
  ScalarizerSpec scalarizer;
  /// Lattice granularity H. K = C(H+J-1, J-1) for every method, so that all
  /// methods perform the same number of local-search runs.
  std::size_t weight_granularity = 100;
  /// Overrides K for random-weight methods only.
  std::optional<std::size_t> weight_count;
  std::size_t generations = 50;
  /// Overrides the main-phase length G*K (used to hold total iterations
  /// constant while varying K).
  std::optional<std::size_t> main_iterations;
  double expected_rank = 10.0;
  std::size_t neighborhood_size = 20;
  double mating_probability = 0.9;
  std::size_t max_replacements = 2;
  std::uint64_t seed = 1;

  void validate() const;
  std::size_t initial_solutions() const;
  std::size_t main_phase_iterations() const;
  std::size_t total_iterations() const {
    return initial_solutions() + main_phase_iterations();
  }
};

/// T = clamp(round(3M / (2 Er)), 2, M).
std::size_t tournament_size(std::size_t archive_size, double expected_rank);

/// Cyclic iteration over the uniform lattice, or fresh random draws.
class WeightSchedule {
 public:
  static WeightSchedule uniform(std::vector<WeightVector> weights);
  static WeightSchedule random(std::size_t objectives, Rng rng);

  struct Next {
    WeightVector weights;
    /// Lattice index for uniform schedules, nullopt for random draws.
    std::optional<std::size_t> index;
  };
  Next next();

  bool is_uniform() const { return !uniform_.empty(); }
  const std::vector<WeightVector>& uniform_set() const { return uniform_; }

 private:
  std::vector<WeightVector> uniform_;
  std::size_t cursor_ = 0;
  std::size_t objectives_ = 0;
  Rng rng_;
};

/// B(i): indices of the `size` weight vectors closest to i in Euclidean
/// distance (i itself included, ties by index).
std::vector<std::vector<std::size_t>> weight_neighborhoods(
    const std::vector<WeightVector>& weights, std::size_t size);

template <class Solution>
struct MoeadState {
  struct Incumbent {
    Solution solution;
    ObjectivePoint point;
  };
  std::vector<WeightVector> weights;
  std::vector<std::vector<std::size_t>> neighbors;
  std::vector<Incumbent> incumbents;
};

struct NeighborhoodChoice {
  std::size_t parent1;
  std::size_t parent2;
  bool neighborhood_scope;
  std::vector<std::size_t> scope;
};

/// With probability `mating_probability` the scope is B(i), otherwise all
/// subproblems; two distinct indices are drawn uniformly from the scope.
NeighborhoodChoice choose_neighborhood_parents(
    const std::vector<std::vector<std::size_t>>& neighbors,
    std::size_t subproblems, std::size_t i, double mating_probability, Rng& rng);

template <class Solution>
NeighborhoodChoice get_parents_neighborhood(const MoeadState<Solution>& state,
                                            std::size_t i,
                                            double mating_probability,
                                            Rng& rng) {
  require(i < state.incumbents.size(), "subproblem index out of range");
  return choose_neighborhood_parents(state.neighbors, state.incumbents.size(), i,
                                     mating_probability, rng);
}

/// Samples T archive entries without replacement and returns the indices of the
/// best and second-best under `s`.
template <class Solution>
std::pair<std::size_t, std::size_t> get_parents_tournament(
    const ParetoArchive<Solution>& archive,
    const std::function<double(std::span<const double>)>& s,
    double expected_rank, Rng& rng) {
  const std::size_t m = archive.size();
  if (m < 2) throw ContractViolation("tournament needs at least two archive entries");
  const std::size_t t = tournament_size(m, expected_rank);
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::size_t best = m, second = m;
  double best_v = std::numeric_limits<double>::infinity();
  double second_v = best_v;
  for (std::size_t k = 0; k < t; ++k) {
    const std::size_t pick = k + uniform_index(rng, m - k);
    std::swap(idx[k], idx[pick]);
    const std::size_t e = idx[k];
    const double v = s(archive[e].point);
    if (best == m || v < best_v) {
      second = best;
      second_v = best_v;
      best = e;
      best_v = v;
    } else if (second == m || v < second_v) {
      second = e;
      second_v = v;
    }
  }
  return {best, second};
}

/// Offers the offspring to the subproblems in `scope`, visited in random
/// order; replaces incumbents it strictly improves on, up to `max_replacements`.
template <class Solution>
std::size_t moead_update(MoeadState<Solution>& state, const Solution& offspring,
                         const ObjectivePoint& point,
                         std::span<const std::size_t> scope,
                         const std::function<ScalarizingFunction(const WeightVector&)>& make_scalarizer,
                         std::size_t max_replacements, Rng& rng) {
  std::vector<std::size_t> order(scope.begin(), scope.end());
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t replaced = 0;
  for (std::size_t j : order) {
    if (replaced >= max_replacements) break;
    const ScalarizingFunction s = make_scalarizer(state.weights[j]);
    if (s(point) < s(state.incumbents[j].point)) {
      state.incumbents[j] = {offspring, point};
      ++replaced;
    }
  }
  return replaced;
}

/// Operations the engine needs from a problem. Optional hooks:
///   std::optional<ObjectiveRanges> prepare(Rng&)   -- before the initial phase
///   void begin_main_phase(std::span<const Solution>) -- after it
template <class P>
concept ProblemAdapter = requires(P& p, const P& cp,
                                  const typename P::Solution& s,
                                  const ScalarizingFunction& f, Rng& rng) {
  typename P::Solution;
  { cp.num_objectives() } -> std::convertible_to<std::size_t>;
  { cp.evaluate(s) } -> std::same_as<ObjectivePoint>;
  { p.random_solution(rng) } -> std::same_as<typename P::Solution>;
  { p.local_search(s, f, rng) } -> std::same_as<typename P::Solution>;
  { p.recombine(s, s, rng) } -> std::same_as<typename P::Solution>;
};

enum class Phase { initial, main };

/// Per-iteration diagnostics handed to an optional observer.
struct IterationEvent {
  Phase phase;
  std::size_t iteration;
  std::optional<std::size_t> weight_index;
  std::vector<ObjectivePoint> parents;
  bool parents_from_archive = false;
  std::size_t replacements = 0;
  double offspring_value = 0.0;
  std::vector<double> replaced_old_values;
  std::vector<double> replaced_new_values;
};

template <class Solution>
struct RunResult {
  ParetoArchive<Solution> archive;
  std::size_t iteration_count = 0;
  std::size_t local_search_runs = 0;
  std::size_t recombinations = 0;
  std::size_t initial_solutions = 0;
  std::chrono::nanoseconds wallclock{0};
  MethodConfig config;
};

/// Random-stream offsets; each concern draws from its own stream so adding
/// draws in one never shifts another.
namespace streams {
inline constexpr std::uint64_t kWeights = 1;
inline constexpr std::uint64_t kConstruct = 2;
inline constexpr std::uint64_t kSelect = 3;
inline constexpr std::uint64_t kRecombine = 4;
inline constexpr std::uint64_t kLocalSearch = 5;
inline constexpr std::uint64_t kReplace = 6;
inline constexpr std::uint64_t kPrepare = 7;
}  // namespace streams

template <ProblemAdapter P>
RunResult<typename P::Solution> run_method(
    const MethodConfig& config, P& problem,
    const std::function<void(const IterationEvent&)>& observer = {}) {
  using Solution = typename P::Solution;
  config.validate();
  require(problem.num_objectives() == config.objectives,
          "config objective count does not match problem");
  const auto started = std::chrono::steady_clock::now();

  Rng prepare_rng = make_stream(config.seed, streams::kPrepare);
  Rng construct_rng = make_stream(config.seed, streams::kConstruct);
  Rng select_rng = make_stream(config.seed, streams::kSelect);
  Rng recombine_rng = make_stream(config.seed, streams::kRecombine);
  Rng ls_rng = make_stream(config.seed, streams::kLocalSearch);
  Rng replace_rng = make_stream(config.seed, streams::kReplace);

  std::optional<ObjectiveRanges> ranges;
  if constexpr (requires { { problem.prepare(prepare_rng) } -> std::same_as<std::optional<ObjectiveRanges>>; })
    ranges = problem.prepare(prepare_rng);

  const std::size_t k_initial = config.initial_solutions();
  WeightSchedule schedule =
      uses_uniform_weights(config.method)
          ? WeightSchedule::uniform(generate_uniform_weights(config.objectives,
                                                             config.weight_granularity))
          : WeightSchedule::random(config.objectives,
                                   make_stream(config.seed, streams::kWeights));

  ObjectivePoint ideal(config.objectives, std::numeric_limits<double>::infinity());
  auto observe_point = [&](const ObjectivePoint& z) {
    for (std::size_t j = 0; j < z.size(); ++j) ideal[j] = std::min(ideal[j], z[j]);
  };
  auto make_scalarizer = [&](const WeightVector& w) {
    ScalarizerSpec spec = config.scalarizer;
    if (spec.kind != ScalarizerKind::linear) spec.reference_point = ideal;
    return ScalarizingFunction(std::move(spec), w, ranges);
  };

  RunResult<Solution> result;
  result.config = config;
  result.initial_solutions = k_initial;

  const bool is_moead = config.method == Method::moead;
  MoeadState<Solution> moead;
  if (is_moead) {
    moead.weights = schedule.uniform_set();
    moead.neighbors = weight_neighborhoods(
        moead.weights, std::min(config.neighborhood_size, moead.weights.size()));
    moead.incumbents.reserve(moead.weights.size());
  }

  std::vector<Solution> initial;
  initial.reserve(k_initial);
  for (std::size_t it = 0; it < k_initial; ++it) {
    const auto w = schedule.next();
    Solution x = problem.random_solution(construct_rng);
    observe_point(problem.evaluate(x));
    const ScalarizingFunction s = make_scalarizer(w.weights);
    x = problem.local_search(x, s, ls_rng);
    ++result.local_search_runs;
    ObjectivePoint z = problem.evaluate(x);
    observe_point(z);
    if (is_moead) moead.incumbents.push_back({x, z});
    result.archive.update(x, z);
    initial.push_back(std::move(x));
    ++result.iteration_count;
    if (observer) {
      IterationEvent ev{Phase::initial, it, w.index, {}, false, 0, 0.0, {}, {}};
      observer(ev);
    }
  }

  if constexpr (requires { problem.begin_main_phase(std::span<const Solution>(initial)); })
    problem.begin_main_phase(std::span<const Solution>(initial));
  initial.clear();

  const std::size_t main_iters = config.main_phase_iterations();
  for (std::size_t it = 0; it < main_iters; ++it) {
    const auto w = schedule.next();
    const ScalarizingFunction s = make_scalarizer(w.weights);
    IterationEvent ev{Phase::main, it, w.index, {}, false, 0, 0.0, {}, {}};
    std::optional<NeighborhoodChoice> mating;

    Solution x;
    if (config.method == Method::momsls) {
      x = problem.random_solution(construct_rng);
    } else if (is_moead) {
      mating = get_parents_neighborhood(moead, *w.index, config.mating_probability,
                                        select_rng);
      const auto& p1 = moead.incumbents[mating->parent1];
      const auto& p2 = moead.incumbents[mating->parent2];
      if (observer) ev.parents = {p1.point, p2.point};
      x = problem.recombine(p1.solution, p2.solution, recombine_rng);
      ++result.recombinations;
    } else {
      std::size_t i1 = 0, i2 = 0;
      if (result.archive.size() >= 2) {
        std::tie(i1, i2) = get_parents_tournament(
            result.archive, [&](std::span<const double> z) { return s(z); },
            config.expected_rank, select_rng);
      }
      const auto& p1 = result.archive[i1];
      const auto& p2 = result.archive[i2];
      if (observer) {
        ev.parents = {p1.point, p2.point};
        ev.parents_from_archive = true;
      }
      x = problem.recombine(p1.solution, p2.solution, recombine_rng);
      ++result.recombinations;
    }

    observe_point(problem.evaluate(x));
    const ScalarizingFunction s_ls = make_scalarizer(w.weights);
    x = problem.local_search(x, s_ls, ls_rng);
    ++result.local_search_runs;
    ObjectivePoint z = problem.evaluate(x);
    observe_point(z);
    ev.offspring_value = s_ls(z);

    if (is_moead) {
      auto maker = [&](const WeightVector& wv) { return make_scalarizer(wv); };
      if (observer) {
        // Record the before/after values of every replaced incumbent.
        auto before = moead.incumbents;
        ev.replacements = moead_update(moead, x, z, mating->scope, maker,
                                       config.max_replacements, replace_rng);
        for (std::size_t j = 0; j < before.size(); ++j) {
          if (before[j].point != moead.incumbents[j].point) {
            const ScalarizingFunction sj = maker(moead.weights[j]);
            ev.replaced_old_values.push_back(sj(before[j].point));
            ev.replaced_new_values.push_back(sj(moead.incumbents[j].point));
          }
        }
      } else {
        moead_update(moead, x, z, mating->scope, maker, config.max_replacements,
                     replace_rng);
      }
    }
    result.archive.update(std::move(x), std::move(z));
    ++result.iteration_count;
    if (observer) observer(ev);
  }

  result.wallclock = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - started);
  return result;
}

}  // namespace sfmoea
