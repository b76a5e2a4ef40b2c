#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfmoea/core.hpp"

namespace sfmoea {

/// Nonnegative weights summing to one. Construction validates the invariant.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-9;
  static constexpr double kRenormalizeTolerance = 1e-6;

  WeightVector() = default;
  explicit WeightVector(std::vector<double> lambdas);

  /// Accepts weights whose sum is within 1e-6 of one and rescales them;
  /// anything further off is rejected.
  static WeightVector renormalized(std::vector<double> lambdas);

  std::size_t size() const { return lambdas_.size(); }
  double operator[](std::size_t j) const { return lambdas_[j]; }
  std::span<const double> values() const { return lambdas_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> lambdas_;
};

enum class ScalarizerKind { linear, chebycheff, mixed };

const char* to_string(ScalarizerKind kind);
ScalarizerKind scalarizer_kind_from_string(const std::string& name);

struct ScalarizerSpec {
  ScalarizerKind kind = ScalarizerKind::linear;
  std::optional<ObjectivePoint> reference_point;
  double w_linear = 1.0;
  double w_cheby = 0.0;

  void validate() const;

  static ScalarizerSpec linear() { return {}; }
  static ScalarizerSpec chebycheff(ObjectivePoint ref) {
    return {ScalarizerKind::chebycheff, std::move(ref), 0.0, 1.0};
  }
  static ScalarizerSpec mixed(ObjectivePoint ref, double w_linear,
                              double w_cheby) {
    return {ScalarizerKind::mixed, std::move(ref), w_linear, w_cheby};
  }
};

double evaluate_linear(std::span<const double> z, const WeightVector& weights);

/// max_j lambda_j (z_j - ref_j). Components with zero weight contribute 0.
double evaluate_chebycheff(std::span<const double> z,
                           const WeightVector& weights,
                           std::span<const double> reference);

double evaluate_mixed(std::span<const double> z, const WeightVector& weights,
                      const ScalarizerSpec& spec);

/// Approximate per-objective ranges used to rescale heterogeneous objectives
/// to roughly [0, 1] before scalarizing.
struct ObjectiveRanges {
  std::vector<double> min;
  std::vector<double> max;

  void validate() const;
  ObjectivePoint normalize(std::span<const double> z) const;
};

/// A scalarizing function bound to one weight vector, optionally evaluated on
/// range-normalized objectives. The reference point (if any) is given in raw
/// objective units and normalized alongside z.
class ScalarizingFunction {
 public:
  ScalarizingFunction(ScalarizerSpec spec, WeightVector weights,
                      std::optional<ObjectiveRanges> ranges = std::nullopt);

  double operator()(std::span<const double> z) const;

  const ScalarizerSpec& spec() const { return spec_; }
  const WeightVector& weights() const { return weights_; }
  bool is_linear() const { return spec_.kind == ScalarizerKind::linear; }
  bool is_normalized() const { return ranges_.has_value(); }

 private:
  ScalarizerSpec spec_;
  WeightVector weights_;
  std::optional<ObjectiveRanges> ranges_;
  ObjectivePoint normalized_reference_;
};

/// All weight vectors with components k/H (simplex lattice), lexicographic
/// order. Count is C(H+J-1, J-1).
std::vector<WeightVector> generate_uniform_weights(std::size_t objectives,
                                                   std::size_t granularity);

std::size_t uniform_weight_count(std::size_t objectives,
                                 std::size_t granularity);

/// Smallest granularity H whose lattice has at least `target` vectors.
std::size_t granularity_for_count(std::size_t objectives, std::size_t target);

/// Uniform draw from the standard simplex via sorted-uniform spacings.
WeightVector draw_random_weight(std::size_t objectives, Rng& rng);

}  // namespace sfmoea
