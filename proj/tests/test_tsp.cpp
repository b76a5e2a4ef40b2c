#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sfmoea/generate.hpp"
#include "sfmoea/instance_io.hpp"
#include "sfmoea/tsp.hpp"

using namespace sfmoea;

namespace {

TspInstance random_instance(std::size_t n, std::size_t objectives, Rng& rng) {
  std::vector<std::vector<int>> m;
  for (std::size_t j = 0; j < objectives; ++j)
    m.push_back(euclidean_cost_matrix(generate_euclidean(n, 1000, rng)));
  return TspInstance(n, std::move(m));
}

ScalarizingFunction linear(std::vector<double> w) {
  return ScalarizingFunction(ScalarizerSpec::linear(), WeightVector(std::move(w)));
}

double value(const TspInstance& inst, const Tour& t, const ScalarizingFunction& s) {
  return s(tsp_evaluate(inst, t));
}

Tour apply_two_opt(Tour t, std::size_t i, std::size_t j) {
  std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i + 1),
               t.begin() + static_cast<std::ptrdiff_t>(j + 1));
  return t;
}

// Best value over all 2-opt exchanges, optionally filtered by candidates;
// tours are re-evaluated from scratch.
double best_neighbor(const TspInstance& inst, const Tour& t, const ScalarizingFunction& s,
                     const CandidateLists* cand) {
  const std::size_t n = t.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (cand && !cand->contains(t[i], t[j]) && !cand->contains(t[i + 1], t[(j + 1) % n]))
        continue;
      best = std::min(best, value(inst, apply_two_opt(t, i, j), s));
    }
  return best;
}

std::set<std::pair<int, int>> edge_set(const Tour& t) {
  const auto e = tour_edges(t);
  return {e.begin(), e.end()};
}

std::size_t distance(const Tour& a, const Tour& b) {
  const auto ea = edge_set(a), eb = edge_set(b);
  std::size_t d = 0;
  for (const auto& e : ea) d += eb.count(e) == 0;
  return d;
}

}  // namespace

TEST_CASE("tour evaluation") {
  std::vector<int> ones(16, 1);
  for (int a = 0; a < 4; ++a) ones[static_cast<std::size_t>(a * 4 + a)] = 0;
  const TspInstance uniform(4, {ones, ones});
  CHECK(tsp_evaluate(uniform, {0, 1, 2, 3}) == ObjectivePoint{4, 4});

  const std::vector<Coordinate> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto m = euclidean_cost_matrix(square);
  const TspInstance sq(4, {m, m});
  CHECK(tsp_evaluate(sq, {0, 1, 2, 3})[0] == 4.0);
  CHECK(tsp_evaluate(sq, {0, 2, 1, 3})[0] == 4.0);  // diagonals round to 1

  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(8, 3, rng);
    const auto t = random_tour(8, rng);
    const auto z = tsp_evaluate(inst, t);
    for (std::size_t j = 0; j < 3; ++j) {
      long long sum = inst.cost(j, t.back(), t.front());
      for (std::size_t i = 0; i + 1 < 8; ++i) sum += inst.matrix(j)[static_cast<std::size_t>(t[i] * 8 + t[i + 1])];
      CHECK(z[j] == static_cast<double>(sum));
    }
  }
  CHECK_THROWS_AS(tsp_evaluate(uniform, {0, 1, 1, 3}), ContractViolation);
}

TEST_CASE("instance validation") {
  std::vector<int> asym(16, 1);
  for (int a = 0; a < 4; ++a) asym[static_cast<std::size_t>(a * 5)] = 0;
  asym[1] = 2;
  CHECK_THROWS_AS(TspInstance(4, {asym, asym}), ContractViolation);
  CHECK_THROWS_AS(TspInstance(3, {std::vector<int>(9, 0)}), ContractViolation);
}

TEST_CASE("candidate lists") {
  const std::vector<Tour> one{{0, 1, 2, 3}};
  const auto c1 = build_candidate_lists(one);
  CHECK(std::set<int>(c1.of(0).begin(), c1.of(0).end()) == std::set<int>{1, 3});

  const std::vector<Tour> twice{{0, 1, 2, 3}, {0, 1, 2, 3}};
  const auto c2 = build_candidate_lists(twice);
  for (int a = 0; a < 4; ++a)
    CHECK(std::set<int>(c1.of(a).begin(), c1.of(a).end()) ==
          std::set<int>(c2.of(a).begin(), c2.of(a).end()));

  const std::vector<Tour> two{{0, 1, 2, 3}, {0, 2, 1, 3}};
  const auto c3 = build_candidate_lists(two);
  CHECK(std::set<int>(c3.of(1).begin(), c3.of(1).end()) == std::set<int>{0, 2, 3});

  Rng rng(4);
  std::vector<Tour> tours;
  for (int i = 0; i < 5; ++i) tours.push_back(random_tour(30, rng));
  const auto c = build_candidate_lists(tours);
  for (int a = 0; a < 30; ++a) {
    CHECK_FALSE(c.of(a).empty());
    for (int b : c.of(a)) CHECK(c.contains(b, a));
  }
  CHECK_THROWS_AS(build_candidate_lists(std::vector<Tour>{}), ContractViolation);
}

TEST_CASE("2-opt reaches a 2-opt local optimum and never worsens") {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + uniform_index(rng, 30);
    const auto inst = random_instance(n, 2, rng);
    const double w = uniform01(rng) * 0.5 + 0.25;
    const auto sw = linear({w, 1 - w});
    const auto start = random_tour(n, rng);
    const auto out = two_opt_local_search(inst, start, sw);
    REQUIRE(is_valid_tour(out, n));
    REQUIRE(value(inst, out, sw) <= value(inst, start, sw));
    REQUIRE(best_neighbor(inst, out, sw, nullptr) >= value(inst, out, sw) - 1e-9);
    // Fixed point.
    REQUIRE(two_opt_local_search(inst, out, sw) == out);
  }
}

TEST_CASE("2-opt under chebycheff and normalized scalarizers") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(15, 2, rng);
    const auto w = draw_random_weight(2, rng);
    const ScalarizingFunction s(ScalarizerSpec::chebycheff({0, 0}), w);
    const ScalarizingFunction sn(ScalarizerSpec::linear(), w,
                                 ObjectiveRanges{{0, 0}, {10000, 20000}});
    for (const auto* f : {&s, &sn}) {
      const auto start = random_tour(15, rng);
      const auto out = two_opt_local_search(inst, start, *f);
      REQUIRE(value(inst, out, *f) <= value(inst, start, *f));
      REQUIRE(best_neighbor(inst, out, *f, nullptr) >= value(inst, out, *f) - 1e-9);
    }
  }
}

TEST_CASE("candidate-restricted 2-opt stops at a restricted local optimum") {
  Rng rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 30;
    const auto inst = random_instance(n, 2, rng);
    const auto w = draw_random_weight(2, rng);
    const ScalarizingFunction s(ScalarizerSpec::linear(), w);
    std::vector<Tour> optima;
    for (int k = 0; k < 4; ++k) optima.push_back(two_opt_local_search(inst, random_tour(n, rng), s));
    const auto cand = build_candidate_lists(optima);
    const auto start = random_tour(n, rng);
    const auto out = two_opt_local_search(inst, start, s, &cand);
    REQUIRE(is_valid_tour(out, n));
    REQUIRE(value(inst, out, s) <= value(inst, start, s));
    REQUIRE(best_neighbor(inst, out, s, &cand) >= value(inst, out, s) - 1e-9);
  }
}

TEST_CASE("2-opt finds the exhaustive optimum on 6 cities") {
  Rng rng(6);
  const auto inst = random_instance(6, 2, rng);
  const auto s = linear({1.0, 0.0});
  Tour perm{0, 1, 2, 3, 4, 5};
  double optimum = std::numeric_limits<double>::infinity();
  do optimum = std::min(optimum, value(inst, perm, s));
  while (std::next_permutation(perm.begin() + 1, perm.end()));

  int hits = 0;
  for (int start = 0; start < 20; ++start) {
    const auto out = two_opt_local_search(inst, random_tour(6, rng), s);
    if (value(inst, out, s) == optimum) ++hits;
  }
  CHECK(hits >= 15);

  // A deliberate crossing on a convex hexagon is removed.
  const std::vector<Coordinate> hex{{0, 10}, {9, 5}, {9, -5}, {0, -10}, {-9, -5}, {-9, 5}};
  const auto m = euclidean_cost_matrix(hex);
  const TspInstance h(6, {m, m});
  const Tour crossed{0, 1, 3, 2, 4, 5};
  const auto fixed = two_opt_local_search(h, crossed, s);
  CHECK(value(h, fixed, s) < value(h, crossed, s));
  CHECK(value(h, fixed, s) == value(h, {0, 1, 2, 3, 4, 5}, s));
}

TEST_CASE("DPX") {
  Rng rng(30);
  const Tour p{0, 1, 2, 3, 4, 5, 6};
  CHECK(dpx_recombine(p, p, rng) == p);
  // Same cycle written from another start and direction.
  CHECK(edge_set(dpx_recombine(p, {3, 2, 1, 0, 6, 5, 4}, rng)) == edge_set(p));

  // 1-based (1,2,3,4,5) and (1,3,2,4,5) in 0-based form.
  const Tour a{0, 1, 2, 3, 4}, b{0, 2, 1, 3, 4};
  for (int k = 0; k < 50; ++k) {
    const auto off = dpx_recombine(a, b, rng);
    REQUIRE(is_valid_tour(off, 5));
    const auto e = edge_set(off);
    CHECK(e.count({1, 2}) == 1);
    CHECK(e.count({3, 4}) == 1);
    CHECK(e.count({0, 4}) == 1);
    // Only the parents complete these fragments, so the distances sum to 2.
    CHECK(distance(off, a) + distance(off, b) == 2);
  }

  int equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p1 = random_tour(20, rng), p2 = random_tour(20, rng);
    const auto off = dpx_recombine(p1, p2, rng);
    REQUIRE(is_valid_tour(off, 20));
    const auto eo = edge_set(off), e1 = edge_set(p1), e2 = edge_set(p2);
    for (const auto& e : e1)
      if (e2.count(e)) REQUIRE(eo.count(e) == 1);
    equal += distance(off, p1) == distance(off, p2);
  }
  CHECK(equal == 100);

  // Closely related parents: few fragments, so balance is not always
  // reachable, but common edges always survive.
  for (int trial = 0; trial < 100; ++trial) {
    const auto p1 = random_tour(20, rng);
    Tour p2 = p1;
    for (int k = 0; k < 3; ++k) {
      std::size_t i = uniform_index(rng, 20), j = uniform_index(rng, 20);
      if (i > j) std::swap(i, j);
      std::reverse(p2.begin() + static_cast<std::ptrdiff_t>(i), p2.begin() + static_cast<std::ptrdiff_t>(j));
    }
    const auto off = dpx_recombine(p1, p2, rng);
    REQUIRE(is_valid_tour(off, 20));
    const auto eo = edge_set(off), e1 = edge_set(p1), e2 = edge_set(p2);
    for (const auto& e : e1)
      if (e2.count(e)) REQUIRE(eo.count(e) == 1);
  }
}

TEST_CASE("TSP adapter uses candidate lists only after the initial phase") {
  Rng rng(40);
  const auto inst = random_instance(12, 2, rng);
  TspProblem with(inst, true), without(inst, false);
  const auto s = linear({0.5, 0.5});
  const auto t = random_tour(12, rng);
  Rng dummy(0);
  CHECK(with.local_search(t, s, dummy) == without.local_search(t, s, dummy));
  const std::vector<Tour> init{two_opt_local_search(inst, random_tour(12, rng), s)};
  with.begin_main_phase(init);
  without.begin_main_phase(init);
  const auto restricted = with.local_search(t, s, dummy);
  CHECK(is_valid_tour(restricted, 12));
  CHECK(value(inst, restricted, s) <= value(inst, t, s));
}
