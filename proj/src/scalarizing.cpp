#include "sfmoea/scalarizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sfmoea {

namespace {

void check_weights(const std::vector<double>& lambdas, double tolerance) {
  require(lambdas.size() >= 2, "weight vector needs at least two components");
  double sum = 0.0;
  for (double l : lambdas) {
    require(std::isfinite(l) && l >= 0.0, "weight components must be >= 0");
    sum += l;
  }
  require(std::abs(sum - 1.0) <= tolerance, "weights must sum to one");
}

}  // namespace

WeightVector::WeightVector(std::vector<double> lambdas)
    : lambdas_(std::move(lambdas)) {
  check_weights(lambdas_, kSumTolerance);
}

WeightVector WeightVector::renormalized(std::vector<double> lambdas) {
  check_weights(lambdas, kRenormalizeTolerance);
  const double sum = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  for (double& l : lambdas) l /= sum;
  return WeightVector(std::move(lambdas));
}

const char* to_string(ScalarizerKind kind) {
  switch (kind) {
    case ScalarizerKind::linear: return "linear";
    case ScalarizerKind::chebycheff: return "chebycheff";
    case ScalarizerKind::mixed: return "mixed";
  }
  return "?";
}

ScalarizerKind scalarizer_kind_from_string(const std::string& name) {
  if (name == "linear") return ScalarizerKind::linear;
  if (name == "chebycheff" || name == "chebyshev") return ScalarizerKind::chebycheff;
  if (name == "mixed") return ScalarizerKind::mixed;
  throw ContractViolation("unknown scalarizer kind: " + name);
}

void ScalarizerSpec::validate() const {
  require(w_linear >= 0.0 && w_cheby >= 0.0, "mix weights must be >= 0");
  require(std::abs(w_linear + w_cheby - 1.0) <= 1e-9,
          "mix weights must sum to one");
  if (kind != ScalarizerKind::linear)
    require(reference_point.has_value(),
            "chebycheff and mixed scalarizers need a reference point");
}

double evaluate_linear(std::span<const double> z, const WeightVector& weights) {
  require(z.size() == weights.size(), "dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += weights[j] * z[j];
  return s;
}

double evaluate_chebycheff(std::span<const double> z,
                           const WeightVector& weights,
                           std::span<const double> reference) {
  require(z.size() == weights.size() && z.size() == reference.size(),
          "dimension mismatch");
  double s = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double term = weights[j] == 0.0 ? 0.0 : weights[j] * (z[j] - reference[j]);
    s = std::max(s, term);
  }
  return s;
}

double evaluate_mixed(std::span<const double> z, const WeightVector& weights,
                      const ScalarizerSpec& spec) {
  require(spec.reference_point.has_value(),
          "mixed scalarizer needs a reference point");
  return spec.w_linear * evaluate_linear(z, weights) +
         spec.w_cheby * evaluate_chebycheff(z, weights, *spec.reference_point);
}

void ObjectiveRanges::validate() const {
  require(min.size() == max.size() && !min.empty(), "range dimension mismatch");
  for (std::size_t j = 0; j < min.size(); ++j)
    require(max[j] > min[j], "objective range must have max > min");
}

ObjectivePoint ObjectiveRanges::normalize(std::span<const double> z) const {
  require(z.size() == min.size(), "dimension mismatch");
  ObjectivePoint out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j)
    out[j] = (z[j] - min[j]) / (max[j] - min[j]);
  return out;
}

ScalarizingFunction::ScalarizingFunction(ScalarizerSpec spec,
                                         WeightVector weights,
                                         std::optional<ObjectiveRanges> ranges)
    : spec_(std::move(spec)),
      weights_(std::move(weights)),
      ranges_(std::move(ranges)) {
  spec_.validate();
  if (ranges_) ranges_->validate();
  if (spec_.reference_point) {
    require(spec_.reference_point->size() == weights_.size(),
            "reference point dimension mismatch");
    normalized_reference_ =
        ranges_ ? ranges_->normalize(*spec_.reference_point) : *spec_.reference_point;
  }
}

double ScalarizingFunction::operator()(std::span<const double> z) const {
  if (ranges_) {
    require(z.size() == weights_.size(), "dimension mismatch");
    double lin = 0.0;
    double cheb = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double zn = (z[j] - ranges_->min[j]) / (ranges_->max[j] - ranges_->min[j]);
      lin += weights_[j] * zn;
      if (spec_.kind != ScalarizerKind::linear)
        cheb = std::max(cheb, weights_[j] == 0.0
                                  ? 0.0
                                  : weights_[j] * (zn - normalized_reference_[j]));
    }
    switch (spec_.kind) {
      case ScalarizerKind::linear: return lin;
      case ScalarizerKind::chebycheff: return cheb;
      case ScalarizerKind::mixed: return spec_.w_linear * lin + spec_.w_cheby * cheb;
    }
  }
  switch (spec_.kind) {
    case ScalarizerKind::linear:
      return evaluate_linear(z, weights_);
    case ScalarizerKind::chebycheff:
      return evaluate_chebycheff(z, weights_, normalized_reference_);
    case ScalarizerKind::mixed:
      return spec_.w_linear * evaluate_linear(z, weights_) +
             spec_.w_cheby * evaluate_chebycheff(z, weights_, normalized_reference_);
  }
  return 0.0;
}

std::size_t uniform_weight_count(std::size_t objectives,
                                 std::size_t granularity) {
  // C(H + J - 1, J - 1), computed incrementally to stay exact.
  std::size_t count = 1;
  for (std::size_t k = 1; k < objectives; ++k)
    count = count * (granularity + k) / k;
  return count;
}

std::size_t granularity_for_count(std::size_t objectives, std::size_t target) {
  require(objectives >= 2, "need at least two objectives");
  std::size_t h = 1;
  while (uniform_weight_count(objectives, h) < target) ++h;
  return h;
}

namespace {

void enumerate_lattice(std::size_t objectives, std::size_t granularity,
                       std::vector<std::size_t>& prefix, std::size_t remaining,
                       std::vector<WeightVector>& out) {
  if (prefix.size() + 1 == objectives) {
    prefix.push_back(remaining);
    std::vector<double> lambdas(objectives);
    for (std::size_t j = 0; j < objectives; ++j)
      lambdas[j] = static_cast<double>(prefix[j]) / static_cast<double>(granularity);
    out.push_back(WeightVector::renormalized(std::move(lambdas)));
    prefix.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    prefix.push_back(k);
    enumerate_lattice(objectives, granularity, prefix, remaining - k, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<WeightVector> generate_uniform_weights(std::size_t objectives,
                                                   std::size_t granularity) {
  require(objectives >= 2, "need at least two objectives");
  require(granularity >= 1, "granularity must be >= 1");
  std::vector<WeightVector> out;
  out.reserve(uniform_weight_count(objectives, granularity));
  std::vector<std::size_t> prefix;
  enumerate_lattice(objectives, granularity, prefix, granularity, out);
  return out;
}

WeightVector draw_random_weight(std::size_t objectives, Rng& rng) {
  require(objectives >= 2, "need at least two objectives");
  std::vector<double> cuts(objectives + 1);
  cuts[0] = 0.0;
  cuts[objectives] = 1.0;
  for (std::size_t j = 1; j < objectives; ++j) cuts[j] = uniform01(rng);
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  std::vector<double> lambdas(objectives);
  for (std::size_t j = 0; j < objectives; ++j) lambdas[j] = cuts[j + 1] - cuts[j];
  return WeightVector::renormalized(std::move(lambdas));
}

}  // namespace sfmoea
