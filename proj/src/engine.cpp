#include "sfmoea/engine.hpp"

#include <cmath>

namespace sfmoea {

const char* to_string(Method method) {
  switch (method) {
    case Method::momsls: return "momsls";
    case Method::mogls: return "mogls";
    case Method::umogls: return "umogls";
    case Method::moead: return "moead";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "momsls") return Method::momsls;
  if (name == "mogls") return Method::mogls;
  if (name == "umogls") return Method::umogls;
  if (name == "moead" || name == "moea/d") return Method::moead;
  throw ContractViolation("unknown method: " + name);
}

void MethodConfig::validate() const {
  require(objectives >= 2, "need at least two objectives");
  require(weight_granularity >= 1, "weight granularity must be >= 1");
  require(expected_rank >= 1.0, "expected rank must be >= 1");
  require(neighborhood_size >= 2, "neighborhood size must be >= 2");
  require(max_replacements >= 1, "max replacements must be >= 1");
  require(mating_probability >= 0.0 && mating_probability <= 1.0,
          "mating probability must lie in [0, 1]");
  if (weight_count) require(*weight_count >= 1, "weight count must be >= 1");
  ScalarizerSpec probe = scalarizer;
  if (probe.kind != ScalarizerKind::linear)
    probe.reference_point = ObjectivePoint(objectives, 0.0);
  probe.validate();
}

std::size_t MethodConfig::initial_solutions() const {
  if (weight_count && !uses_uniform_weights(method)) return *weight_count;
  return uniform_weight_count(objectives, weight_granularity);
}

std::size_t MethodConfig::main_phase_iterations() const {
  if (main_iterations) return *main_iterations;
  return generations * initial_solutions();
}

std::size_t tournament_size(std::size_t archive_size, double expected_rank) {
  require(expected_rank >= 1.0, "expected rank must be >= 1");
  if (archive_size <= 2) return archive_size;
  const double t = std::round(3.0 * static_cast<double>(archive_size) /
                              (2.0 * expected_rank));
  return std::clamp<std::size_t>(static_cast<std::size_t>(t), 2, archive_size);
}

WeightSchedule WeightSchedule::uniform(std::vector<WeightVector> weights) {
  require(!weights.empty(), "uniform weight set is empty");
  WeightSchedule s;
  s.objectives_ = weights.front().size();
  s.uniform_ = std::move(weights);
  return s;
}

WeightSchedule WeightSchedule::random(std::size_t objectives, Rng rng) {
  WeightSchedule s;
  s.objectives_ = objectives;
  s.rng_ = rng;
  return s;
}

WeightSchedule::Next WeightSchedule::next() {
  if (uniform_.empty()) return {draw_random_weight(objectives_, rng_), std::nullopt};
  const std::size_t i = cursor_;
  cursor_ = (cursor_ + 1) % uniform_.size();
  return {uniform_[i], i};
}

std::vector<std::vector<std::size_t>> weight_neighborhoods(
    const std::vector<WeightVector>& weights, std::size_t size) {
  require(size >= 1 && size <= weights.size(), "neighborhood size out of range");
  const std::size_t n = weights.size();
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      double d = 0.0;
      for (std::size_t j = 0; j < weights[i].size(); ++j) {
        const double diff = weights[i][j] - weights[k][j];
        d += diff * diff;
      }
      dist[k] = {d, k};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(size),
                      dist.end());
    out[i].reserve(size);
    for (std::size_t k = 0; k < size; ++k) out[i].push_back(dist[k].second);
  }
  return out;
}

NeighborhoodChoice choose_neighborhood_parents(
    const std::vector<std::vector<std::size_t>>& neighbors,
    std::size_t subproblems, std::size_t i, double mating_probability, Rng& rng) {
  require(i < neighbors.size(), "subproblem index out of range");
  NeighborhoodChoice choice;
  choice.neighborhood_scope = uniform01(rng) < mating_probability;
  if (choice.neighborhood_scope) {
    choice.scope = neighbors[i];
  } else {
    choice.scope.resize(subproblems);
    std::iota(choice.scope.begin(), choice.scope.end(), std::size_t{0});
  }
  const std::size_t n = choice.scope.size();
  if (n == 1) {
    choice.parent1 = choice.parent2 = choice.scope[0];
    return choice;
  }
  const std::size_t a = uniform_index(rng, n);
  std::size_t b = uniform_index(rng, n - 1);
  if (b >= a) ++b;
  choice.parent1 = choice.scope[a];
  choice.parent2 = choice.scope[b];
  return choice;
}

}  // namespace sfmoea
