#include <doctest.h>

#include <algorithm>
#include <set>

#include "sfmoea/engine.hpp"

using namespace sfmoea;

namespace {

// Unconstrained bi-objective bit string: f1 = sum x_i a_i, f2 = sum (1 - x_i) b_i.
// Small and fast, with a nontrivial front.
struct BitProblem {
  using Solution = std::vector<char>;

  std::vector<int> a, b;
  std::vector<ObjectivePoint> ls_log;

  explicit BitProblem(std::size_t n, std::uint64_t seed = 1) : a(n), b(n) {
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 1 + static_cast<int>(uniform_index(rng, 50));
      b[i] = 1 + static_cast<int>(uniform_index(rng, 50));
    }
  }

  std::size_t num_objectives() const { return 2; }
  ObjectivePoint evaluate(const Solution& x) const {
    double f1 = 0, f2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) (x[i] ? f1 : f2) += x[i] ? a[i] : b[i];
    return {f1, f2};
  }
  Solution random_solution(Rng& rng) const {
    Solution x(a.size());
    for (auto& v : x) v = uniform01(rng) < 0.5;
    return x;
  }
  Solution local_search(Solution x, const ScalarizingFunction& s, Rng&) {
    while (true) {
      double best = s(evaluate(x));
      std::size_t flip = x.size();
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = !x[i];
        const double v = s(evaluate(x));
        x[i] = !x[i];
        if (v < best) {
          best = v;
          flip = i;
        }
      }
      if (flip == x.size()) break;
      x[flip] = !x[flip];
    }
    ls_log.push_back(evaluate(x));
    return x;
  }
  Solution recombine(const Solution& p, const Solution& q, Rng& rng) const {
    Solution x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) x[i] = uniform01(rng) < 0.5 ? p[i] : q[i];
    return x;
  }
};

static_assert(ProblemAdapter<BitProblem>);

MethodConfig small_config(Method m, std::uint64_t seed = 1) {
  MethodConfig c;
  c.method = m;
  c.weight_granularity = 20;
  c.generations = 3;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("tournament size") {
  CHECK(tournament_size(1000, 10) == 150);
  CHECK(tournament_size(10, 10) == 2);
  CHECK(tournament_size(2, 10) == 2);
  CHECK(tournament_size(100, 1) == 100);
  CHECK_THROWS_AS(tournament_size(100, 0.5), ContractViolation);
}

TEST_CASE("tournament parents") {
  ParetoArchive<int> two;
  two.update(0, {1, 5});
  two.update(1, {5, 1});
  Rng rng(1);
  const auto first = [](std::span<const double> z) { return z[0]; };
  for (int i = 0; i < 20; ++i) {
    auto [p1, p2] = get_parents_tournament(two, first, 10.0, rng);
    CHECK(p1 == 0);
    CHECK(p2 == 1);
  }

  ParetoArchive<int> many;
  for (int i = 0; i < 30; ++i) many.update(i, {double(i), double(100 - i)});
  for (int i = 0; i < 20; ++i) {
    // Er = 1 makes the tournament the whole archive.
    auto [p1, p2] = get_parents_tournament(many, first, 1.0, rng);
    CHECK(many[p1].point[0] == 0.0);
    CHECK(many[p2].point[0] == 1.0);
  }

  ParetoArchive<int> one;
  one.update(0, {1, 1});
  CHECK_THROWS_AS(get_parents_tournament(one, first, 10.0, rng), ContractViolation);
}

TEST_CASE("expected rank of tournament parents") {
  // Scalarizing rank of entry i is i + 1.
  ParetoArchive<int> archive;
  for (int i = 0; i < 1000; ++i) archive.update(i, {double(i), double(1000 - i)});
  const auto s = [](std::span<const double> z) { return z[0]; };
  Rng rng(42);
  const int trials = 100000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto [p1, p2] = get_parents_tournament(archive, s, 10.0, rng);
    REQUIRE(p1 != p2);
    sum += (archive[p1].point[0] + 1 + archive[p2].point[0] + 1) / 2.0;
  }
  const double mean = sum / trials;
  // Exact expectation: ((M+1)/(T+1) + 2(M+1)/(T+1)) / 2 = 1.5 * 1001 / 151.
  CHECK(mean == doctest::Approx(1.5 * 1001.0 / 151.0).epsilon(0.02));
  CHECK(mean >= 9.5);
  CHECK(mean <= 10.5);
}

TEST_CASE("weight schedules") {
  auto uni = WeightSchedule::uniform(generate_uniform_weights(2, 4));
  const auto set = generate_uniform_weights(2, 4);
  for (std::size_t i = 0; i < 5; ++i) {
    auto n = uni.next();
    CHECK(n.weights == set[i]);
    CHECK(n.index == i);
  }
  CHECK(uni.next().weights == set[0]);

  auto r1 = WeightSchedule::random(3, Rng(5));
  auto r2 = WeightSchedule::random(3, Rng(5));
  for (int i = 0; i < 10; ++i) {
    auto a = r1.next();
    CHECK(a.weights == r2.next().weights);
    CHECK_FALSE(a.index.has_value());
  }
}

TEST_CASE("MOEA/D neighborhoods") {
  const auto w = generate_uniform_weights(2, 4);
  const auto b = weight_neighborhoods(w, 3);
  CHECK(b[0] == std::vector<std::size_t>{0, 1, 2});
  // Equidistant neighbors 1 and 3 are ordered by index.
  CHECK(b[2] == std::vector<std::size_t>{2, 1, 3});
  CHECK(b[4] == std::vector<std::size_t>{4, 3, 2});

  const auto big = generate_uniform_weights(3, 12);
  const auto nb = weight_neighborhoods(big, 20);
  for (std::size_t i = 0; i < big.size(); ++i) {
    REQUIRE(nb[i].size() == 20);
    REQUIRE(nb[i][0] == i);
    REQUIRE(std::set<std::size_t>(nb[i].begin(), nb[i].end()).size() == 20);
  }
}

TEST_CASE("neighborhood parent selection") {
  const auto w = generate_uniform_weights(2, 100);
  const auto nb = weight_neighborhoods(w, 20);
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t i = uniform_index(rng, w.size());
    auto c = choose_neighborhood_parents(nb, w.size(), i, 1.0, rng);
    REQUIRE(c.neighborhood_scope);
    REQUIRE(c.parent1 != c.parent2);
    REQUIRE(std::count(nb[i].begin(), nb[i].end(), c.parent1) == 1);
    REQUIRE(std::count(nb[i].begin(), nb[i].end(), c.parent2) == 1);
    auto g = choose_neighborhood_parents(nb, w.size(), i, 0.0, rng);
    REQUIRE_FALSE(g.neighborhood_scope);
    REQUIRE(g.scope.size() == w.size());
  }
  int local = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t)
    local += choose_neighborhood_parents(nb, w.size(), 50, 0.9, rng).neighborhood_scope;
  CHECK(std::abs(local / double(trials) - 0.9) <= 0.01);
}

TEST_CASE("MOEA/D update") {
  MoeadState<int> st;
  st.weights = generate_uniform_weights(2, 4);
  st.neighbors = weight_neighborhoods(st.weights, 3);
  for (int i = 0; i < 5; ++i) st.incumbents.push_back({i, {10, 10}});
  const auto make = [](const WeightVector& w) {
    return ScalarizingFunction(ScalarizerSpec::linear(), w);
  };
  const std::vector<std::size_t> all{0, 1, 2, 3, 4};
  Rng rng(1);

  CHECK(moead_update(st, 99, {20, 20}, all, make, 2, rng) == 0);
  CHECK(moead_update(st, 7, {1, 1}, all, make, 2, rng) == 2);
  CHECK(std::count_if(st.incumbents.begin(), st.incumbents.end(),
                      [](const auto& e) { return e.solution == 7; }) == 2);

  MoeadState<int> single = st;
  for (auto& e : single.incumbents) e = {0, {10, 10}};
  const std::vector<std::size_t> only{3};
  CHECK(moead_update(single, 5, {9, 11}, only, make, 2, rng) == 1);  // 0.75*9+0.25*11 < 10
  CHECK(single.incumbents[3].solution == 5);
}

TEST_CASE("config accounting") {
  MethodConfig c;
  c.weight_granularity = 100;
  c.generations = 50;
  CHECK(c.initial_solutions() == 101);
  CHECK(c.total_iterations() == 5151);
  c.objectives = 3;
  c.weight_granularity = 81;
  c.generations = 5;
  CHECK(c.initial_solutions() == 3403);
  c.main_iterations = 1000;
  CHECK(c.total_iterations() == 4403);

  MethodConfig bad;
  bad.mating_probability = 1.5;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
  bad = {};
  bad.neighborhood_size = 1;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
  CHECK(method_from_string("umogls") == Method::umogls);
  CHECK_THROWS_AS(method_from_string("nsga2"), ContractViolation);
}

TEST_CASE("iteration counts and fairness across methods") {
  for (Method m : kAllMethods) {
    BitProblem p(12);
    MethodConfig c = small_config(m);
    c.weight_granularity = 100;
    c.generations = 50;
    auto r = run_method(c, p);
    CHECK(r.iteration_count == 5151);
    CHECK(r.local_search_runs == 5151);
    CHECK(r.initial_solutions == 101);
    CHECK(r.recombinations == (m == Method::momsls ? 0u : 5050u));
  }
  BitProblem p(12);
  MethodConfig c = small_config(Method::momsls);
  c.generations = 0;
  auto r = run_method(c, p);
  CHECK(r.local_search_runs == 21);
  CHECK(r.iteration_count == 21);
}

TEST_CASE("runs are deterministic per seed") {
  for (Method m : kAllMethods) {
    BitProblem p1(16), p2(16), p3(16);
    auto a = run_method(small_config(m, 7), p1);
    auto b = run_method(small_config(m, 7), p2);
    auto c = run_method(small_config(m, 8), p3);
    CHECK(a.archive.points() == b.archive.points());
    CHECK(p1.ls_log == p2.ls_log);
    CHECK(p1.ls_log != p3.ls_log);
  }
}

TEST_CASE("tournament methods mate archive members; weights differ by schedule only") {
  for (Method m : {Method::mogls, Method::umogls}) {
    BitProblem p(16);
    std::size_t checked = 0;
    std::vector<std::optional<std::size_t>> indices;
    auto observer = [&](const IterationEvent& ev) {
      indices.push_back(ev.weight_index);
      if (ev.phase != Phase::main) return;
      REQUIRE(ev.parents_from_archive);
      // Archive before this iteration = nondominated filter of earlier outputs.
      const std::vector<ObjectivePoint> before(p.ls_log.begin(), p.ls_log.end() - 1);
      for (const auto& parent : ev.parents) {
        REQUIRE(std::find(before.begin(), before.end(), parent) != before.end());
        for (const auto& q : before) REQUIRE_FALSE(dominates(q, parent));
      }
      ++checked;
    };
    auto r = run_method(small_config(m), p, observer);
    CHECK(checked == 63);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (m == Method::umogls) CHECK(indices[i] == i % 21);
      else CHECK_FALSE(indices[i].has_value());
    }
    const auto pts = r.archive.points();
    for (const auto& x : pts)
      for (const auto& y : pts) CHECK_FALSE(dominates(x, y));
  }
}

TEST_CASE("MOEA/D replacements are capped and strictly improving") {
  BitProblem p(20);
  MethodConfig c = small_config(Method::moead);
  // Bit flips solve the separable linear case exactly, so nothing would
  // ever be replaced; Chebycheff leaves room for improvement.
  c.scalarizer = {ScalarizerKind::chebycheff, std::nullopt, 0.0, 1.0};
  c.generations = 10;
  c.max_replacements = 2;
  std::size_t total = 0;
  auto observer = [&](const IterationEvent& ev) {
    if (ev.phase != Phase::main) return;
    REQUIRE(ev.replacements <= 2);
    REQUIRE(ev.replaced_old_values.size() == ev.replacements);
    for (std::size_t k = 0; k < ev.replacements; ++k)
      REQUIRE(ev.replaced_new_values[k] < ev.replaced_old_values[k]);
    total += ev.replacements;
  };
  run_method(c, p, observer);
  CHECK(total > 0);
}

TEST_CASE("chebycheff runs track the ideal point online") {
  BitProblem p(12);
  MethodConfig c = small_config(Method::mogls);
  c.scalarizer = {ScalarizerKind::chebycheff, std::nullopt, 0.0, 1.0};
  auto r = run_method(c, p);
  CHECK(r.archive.size() >= 2);
  MethodConfig wrong = small_config(Method::mogls);
  wrong.objectives = 3;
  CHECK_THROWS_AS(run_method(wrong, p), ContractViolation);
}
