#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfmoea/scalarizing.hpp"

using namespace sfmoea;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  // Pascal's triangle, independent of the incremental formula under test.
  std::vector<std::vector<std::size_t>> c(n + 1, std::vector<std::size_t>(k + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (std::size_t j = 1; j <= std::min(i, k); ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c[n][k];
}

bool valid_weight(const WeightVector& w) {
  double s = 0.0;
  for (double l : w.values()) {
    if (l < 0.0) return false;
    s += l;
  }
  return std::abs(s - 1.0) <= 1e-9;
}

}  // namespace

TEST_CASE("weight vector construction validates the simplex") {
  CHECK_NOTHROW(WeightVector({0.25, 0.75}));
  CHECK_THROWS_AS(WeightVector({0.5, 0.6}), ContractViolation);
  CHECK_THROWS_AS(WeightVector({-0.1, 1.1}), ContractViolation);
  CHECK_THROWS_AS(WeightVector({1.0}), ContractViolation);

  const auto w = WeightVector::renormalized({0.3, 0.7 + 5e-7});
  CHECK(valid_weight(w));
  CHECK_THROWS_AS(WeightVector::renormalized({0.3, 0.7 + 1e-5}), ContractViolation);
}

TEST_CASE("linear scalarizer") {
  CHECK(evaluate_linear(ObjectivePoint{2, 3}, WeightVector({0.5, 0.5})) == doctest::Approx(2.5));
  CHECK(evaluate_linear(ObjectivePoint{7, 9}, WeightVector({1.0, 0.0})) == 7.0);
  CHECK(evaluate_linear(ObjectivePoint{4, 4, 4}, WeightVector({1.0 / 3, 1.0 / 3, 1.0 / 3 + 1e-17})) ==
        doctest::Approx(4.0));
  CHECK_THROWS_AS(evaluate_linear(ObjectivePoint{1, 2, 3}, WeightVector({0.5, 0.5})),
                  ContractViolation);
}

TEST_CASE("chebycheff scalarizer") {
  const ObjectivePoint zero{0, 0};
  CHECK(evaluate_chebycheff(ObjectivePoint{2, 4}, WeightVector({0.5, 0.5}), zero) == 2.0);
  CHECK(evaluate_chebycheff(ObjectivePoint{10, 1}, WeightVector({0.1, 0.9}), zero) ==
        doctest::Approx(1.0));
  CHECK(evaluate_chebycheff(ObjectivePoint{3, 5}, WeightVector({0.3, 0.7}), ObjectivePoint{3, 5}) ==
        0.0);
  CHECK_THROWS_AS(evaluate_chebycheff(ObjectivePoint{1, 2}, WeightVector({0.5, 0.5}),
                                      ObjectivePoint{0, 0, 0}),
                  ContractViolation);
}

TEST_CASE("mixed scalarizer") {
  const ObjectivePoint z{2, 4};
  const WeightVector w({0.5, 0.5});
  const ObjectivePoint ref{0, 0};
  CHECK(evaluate_mixed(z, w, ScalarizerSpec::mixed(ref, 0.001, 0.999)) == doctest::Approx(2.001));
  // Boundary mix weights bit-match the pure evaluators.
  CHECK(evaluate_mixed(z, w, ScalarizerSpec::mixed(ref, 1.0, 0.0)) == evaluate_linear(z, w));
  CHECK(evaluate_mixed(z, w, ScalarizerSpec::mixed(ref, 0.0, 1.0)) ==
        evaluate_chebycheff(z, w, ref));
  ScalarizerSpec missing;
  missing.kind = ScalarizerKind::mixed;
  CHECK_THROWS_AS(evaluate_mixed(z, w, missing), ContractViolation);
}

TEST_CASE("scalarizing function matches the free evaluators, with and without ranges") {
  Rng rng(5);
  const ObjectiveRanges ranges{{10, -200}, {110, -20}};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto w = draw_random_weight(2, rng);
    const ObjectivePoint z{10 + 100 * uniform01(rng), -200 + 180 * uniform01(rng)};
    const ObjectivePoint ref{10 + 10 * uniform01(rng), -200 + 10 * uniform01(rng)};
    const auto spec = ScalarizerSpec::mixed(ref, 0.3, 0.7);

    CHECK(ScalarizingFunction(spec, w)(z) == doctest::Approx(evaluate_mixed(z, w, spec)));

    const auto zn = ranges.normalize(z);
    const auto refn = ranges.normalize(ref);
    const double expect = 0.3 * evaluate_linear(zn, w) + 0.7 * evaluate_chebycheff(zn, w, refn);
    CHECK(ScalarizingFunction(spec, w, ranges)(z) == doctest::Approx(expect));
  }
}

TEST_CASE("uniform lattice weights") {
  const auto w = generate_uniform_weights(2, 4);
  REQUIRE(w.size() == 5);
  const double expected[5][2] = {{0, 1}, {0.25, 0.75}, {0.5, 0.5}, {0.75, 0.25}, {1, 0}};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(w[i][0] == doctest::Approx(expected[i][0]));
    CHECK(w[i][1] == doctest::Approx(expected[i][1]));
  }
  CHECK(generate_uniform_weights(2, 100).size() == 101);
  CHECK(generate_uniform_weights(3, 81).size() == 3403);
  CHECK(uniform_weight_count(3, 122) == 7626);
  CHECK(generate_uniform_weights(2, 999).size() == 1000);
  CHECK_THROWS_AS(generate_uniform_weights(1, 4), ContractViolation);
  CHECK_THROWS_AS(generate_uniform_weights(2, 0), ContractViolation);
}

TEST_CASE("lattice property sweep: counts, validity, unit vectors, distinctness") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t j = 2 + uniform_index(rng, 3);
    const std::size_t h = 1 + uniform_index(rng, j == 2 ? 60 : (j == 3 ? 20 : 8));
    const auto w = generate_uniform_weights(j, h);
    REQUIRE(w.size() == binomial(h + j - 1, j - 1));
    REQUIRE(uniform_weight_count(j, h) == w.size());
    std::size_t units = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      REQUIRE(valid_weight(w[i]));
      if (std::count(w[i].values().begin(), w[i].values().end(), 1.0) == 1) ++units;
      if (i > 0) {
        // Compare lattice coordinates; renormalization may nudge the doubles.
        std::vector<long> a, b;
        for (double x : w[i - 1].values()) a.push_back(std::lround(x * double(h)));
        for (double x : w[i].values()) b.push_back(std::lround(x * double(h)));
        REQUIRE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
      }
    }
    REQUIRE(units == j);
  }
}

TEST_CASE("granularity_for_count") {
  CHECK(granularity_for_count(2, 1000) == 999);
  CHECK(granularity_for_count(3, 7562) == 122);
  CHECK(granularity_for_count(2, 101) == 100);
}

TEST_CASE("random weights are valid and uniform on the simplex") {
  Rng rng(2024);
  double sum1 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto w = draw_random_weight(2, rng);
    REQUIRE(valid_weight(w));
    sum1 += w[0];
  }
  CHECK(sum1 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(sum1 / n - 0.5) <= 0.01);

  int above = 0;
  for (int i = 0; i < n; ++i) {
    const auto w = draw_random_weight(3, rng);
    REQUIRE(valid_weight(w));
    if (w[0] > 0.5) ++above;
  }
  // Volume of {l1 > 1/2} on the 2-simplex is (1 - 1/2)^2.
  CHECK(std::abs(static_cast<double>(above) / n - 0.25) <= 0.01);

  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(draw_random_weight(4, a) == draw_random_weight(4, b));
}

TEST_CASE("chebycheff monotonicity and linear strict monotonicity") {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t j = 2 + uniform_index(rng, 3);
    const auto w = draw_random_weight(j, rng);
    ObjectivePoint z(j), better(j), ref(j);
    for (std::size_t k = 0; k < j; ++k) {
      z[k] = 100 * uniform01(rng);
      better[k] = z[k] - 10 * uniform01(rng) - 1e-3;
      ref[k] = -5 * uniform01(rng);
    }
    CHECK(evaluate_chebycheff(z, w, z) == 0.0);
    CHECK(evaluate_chebycheff(better, w, ref) <= evaluate_chebycheff(z, w, ref));
    bool positive = true;
    for (double l : w.values()) positive = positive && l > 0.0;
    if (positive) CHECK(evaluate_linear(better, w) < evaluate_linear(z, w));
  }
}

TEST_CASE("spec validation") {
  CHECK_NOTHROW(ScalarizerSpec::linear().validate());
  ScalarizerSpec bad = ScalarizerSpec::linear();
  bad.w_linear = 0.6;
  bad.w_cheby = 0.6;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
  ScalarizerSpec no_ref;
  no_ref.kind = ScalarizerKind::chebycheff;
  no_ref.w_linear = 0.0;
  no_ref.w_cheby = 1.0;
  CHECK_THROWS_AS(no_ref.validate(), ContractViolation);
  CHECK(scalarizer_kind_from_string("mixed") == ScalarizerKind::mixed);
  CHECK_THROWS_AS(scalarizer_kind_from_string("tchebycheff?"), ContractViolation);
  CHECK_THROWS_AS((ObjectiveRanges{{0, 1}, {0, 2}}.validate()), ContractViolation);
}
