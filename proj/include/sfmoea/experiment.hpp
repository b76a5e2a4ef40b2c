#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sfmoea/engine.hpp"
#include "sfmoea/indicators.hpp"
#include "sfmoea/scp.hpp"
#include "sfmoea/tsp.hpp"
#include "sfmoea/tspwp.hpp"

namespace sfmoea {

enum class ProblemKind { mstsp, tspwp, moscp };

const char* to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

/// A loaded instance of any of the three problems.
struct LoadedInstance {
  ProblemKind kind = ProblemKind::mstsp;
  std::string name;
  std::variant<TspInstance, TspwpInstance, ScpInstance> data;

  std::size_t objectives() const;
};

/// mstsp: one objective file per objective; tspwp: objective file + profit
/// file; moscp: one SCP file.
LoadedInstance load_instance(ProblemKind kind, const std::vector<std::string>& files,
                             std::string name = {});

/// Default scalarizer per problem: linear for MSTSP and MOSCP, mixed
/// (0.001 linear / 0.999 Chebycheff) for TSPWP.
ScalarizerSpec default_scalarizer(ProblemKind kind);

/// Parameter presets. Generation/weight presets: mstsp2, mstsp3, tspwp, moscp2,
/// moscp3. Per-instance expected-rank presets: kroab100, clusterab300,
/// euclideanab500, kroabc100, clusterabc300.
struct Preset {
  std::string name;
  std::size_t objectives;
  std::size_t generations;
  std::size_t weight_granularity;
  double expected_rank;
};
const std::vector<Preset>& presets();
std::optional<Preset> find_preset(const std::string& name);
MethodConfig config_from_preset(const Preset& preset, Method method, ProblemKind kind,
                                std::uint64_t seed);

struct RunOutcome {
  std::vector<ObjectivePoint> points;  ///< archive points, sorted
  std::size_t iteration_count = 0;
  std::size_t local_search_runs = 0;
  double wallclock_ms = 0.0;
};

RunOutcome run_on_instance(const LoadedInstance& inst, const MethodConfig& config,
                           bool candidate_lists = true);

struct ExperimentPlan {
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  MethodConfig base;
  std::size_t replications = 10;
  std::uint64_t seed_base = 1;
  std::string output_dir;  ///< empty: nothing written
  std::size_t workers = 0;  ///< 0: OpenMP default, 1: serial
  double alpha = 0.05;
  bool candidate_lists = true;

  void validate() const;
};

struct ResultRecord {
  std::string method;
  std::string problem;
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t iteration_count = 0;
  double r = 0.0;
  double hv = 0.0;
  double wallclock_ms = 0.0;
};

struct MethodSummary {
  std::string instance;
  std::string method;
  std::size_t runs = 0;
  double r_mean = 0.0, r_std = 0.0;
  double hv_mean = 0.0, hv_std = 0.0;
};

struct PairwiseTest {
  std::string instance;
  std::string indicator;  ///< "R" or "HV"
  std::string method_a;
  std::string method_b;
  WilcoxonResult test;
  std::string better;  ///< method with the better mean, or "-" if not significant
};

struct ExperimentReport {
  std::vector<ResultRecord> records;
  std::vector<MethodSummary> summaries;
  std::vector<PairwiseTest> tests;
  std::vector<std::string> failures;
  std::size_t r_weight_count = 0;
  ReferencePoints reference;
  /// Archive points per record, in record order.
  std::vector<std::vector<ObjectivePoint>> archives;
};

/// Runs every (method, replication) with seed = seed_base + replication,
/// scores all archives against union reference points, and summarizes.
/// Writes results.csv, timings.csv, summary.csv, comparisons.csv, report.txt
/// and archives/ when plan.output_dir is set.
ExperimentReport run_experiment(const ExperimentPlan& plan, const LoadedInstance& inst);

/// Job execution policies; run_experiment uses the parallel one unless
/// plan.workers == 1.
std::vector<RunOutcome> execute_runs_serial(const LoadedInstance& inst,
                                            const std::vector<MethodConfig>& jobs,
                                            bool candidate_lists);
std::vector<RunOutcome> execute_runs_parallel(const LoadedInstance& inst,
                                              const std::vector<MethodConfig>& jobs,
                                              bool candidate_lists, std::size_t workers);

std::vector<MethodSummary> summarize(const std::vector<ResultRecord>& records);
std::vector<PairwiseTest> pairwise_tests(const std::vector<ResultRecord>& records,
                                         double alpha);

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_results_csv(const std::string& path);
void write_summary_csv(std::ostream& out, const std::vector<MethodSummary>& summaries);
void write_tests_csv(std::ostream& out, const std::vector<PairwiseTest>& tests);
/// Plain-text grid of "mean (std)" cells, one block per instance.
void write_table(std::ostream& out, const std::vector<MethodSummary>& summaries);
void write_tests_text(std::ostream& out, const std::vector<PairwiseTest>& tests);

/// Six significant digits.
std::string format_indicator(double v);

}  // namespace sfmoea
