// Command-line front end: instance generation, single runs, indicator
// evaluation, statistical comparison, tables and full experiments.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sfmoea/archive.hpp"
#include "sfmoea/experiment.hpp"
#include "sfmoea/generate.hpp"
#include "sfmoea/indicators.hpp"
#include "sfmoea/instance_io.hpp"

using namespace sfmoea;

namespace {

struct ConfigFlags {
  std::string problem = "mstsp";
  std::vector<std::string> instances;
  std::string name;
  std::string preset;
  std::string scalarizer;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> weights;
  std::optional<std::size_t> main_iterations;
  std::optional<double> expected_rank;
  std::optional<std::size_t> neigh;
  std::optional<double> delta;
  std::optional<std::size_t> nr;
  bool no_candidate_lists = false;
};

void add_config_options(CLI::App* app, ConfigFlags& f) {
  app->add_option("--problem", f.problem, "mstsp | tspwp | moscp")->capture_default_str();
  app->add_option("--instance", f.instances,
                  "instance file(s): one per objective for mstsp, objective + profit "
                  "file for tspwp, one file for moscp")
      ->required();
  app->add_option("--name", f.name, "instance name used in outputs (default: file stem)");
  app->add_option("--preset", f.preset,
                  "mstsp2 | mstsp3 | tspwp | moscp2 | moscp3 | kroab100 | clusterab300 | "
                  "euclideanab500 | kroabc100 | clusterabc300");
  app->add_option("--scalarizer", f.scalarizer, "linear | chebycheff | mixed");
  app->add_option("--generations", f.generations, "G");
  app->add_option("--weights", f.weights, "lattice granularity H; K = C(H+J-1, J-1)");
  app->add_option("--main-iterations", f.main_iterations,
                  "main-phase iterations (default G*K)");
  app->add_option("--expected-rank", f.expected_rank, "Er for MOGLS/UMOGLS");
  app->add_option("--neigh", f.neigh, "MOEA/D neighborhood size N");
  app->add_option("--delta", f.delta, "MOEA/D mating probability");
  app->add_option("--nr", f.nr, "MOEA/D replacement limit");
  app->add_flag("--no-candidate-lists", f.no_candidate_lists,
                "disable 2-opt candidate lists in the main phase (mstsp)");
}

MethodConfig resolve_config(const ConfigFlags& f, ProblemKind kind, std::size_t objectives,
                            Method method, std::uint64_t seed) {
  // Without --preset, use the parameter-table row for this problem class.
  std::string name = f.preset;
  if (name.empty()) {
    if (kind == ProblemKind::tspwp) name = "tspwp";
    else name = std::string(kind == ProblemKind::mstsp ? "mstsp" : "moscp") +
                (objectives == 3 ? "3" : "2");
  }
  const auto found = find_preset(name);
  if (!found) throw ContractViolation("unknown preset: " + name);
  const Preset preset = *found;
  if (preset.objectives != objectives)
    throw ContractViolation("preset " + preset.name + " is for " +
                            std::to_string(preset.objectives) + " objectives, instance has " +
                            std::to_string(objectives));
  MethodConfig c = config_from_preset(preset, method, kind, seed);
  if (!f.scalarizer.empty()) {
    const auto k = scalarizer_kind_from_string(f.scalarizer);
    if (k == ScalarizerKind::linear) c.scalarizer = ScalarizerSpec::linear();
    else if (k == ScalarizerKind::chebycheff) c.scalarizer = {k, std::nullopt, 0.0, 1.0};
    else c.scalarizer = {k, std::nullopt, 0.001, 0.999};
  }
  if (f.generations) c.generations = *f.generations;
  if (f.weights) c.weight_granularity = *f.weights;
  if (f.main_iterations) c.main_iterations = *f.main_iterations;
  if (f.expected_rank) c.expected_rank = *f.expected_rank;
  if (f.neigh) c.neighborhood_size = *f.neigh;
  if (f.delta) c.mating_probability = *f.delta;
  if (f.nr) c.max_replacements = *f.nr;
  c.validate();
  return c;
}

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ContractViolation("bad point component '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

std::vector<ResultRecord> read_all_results(const std::vector<std::string>& files) {
  std::vector<ResultRecord> all;
  for (const auto& f : files) {
    auto r = read_results_csv(f);
    all.insert(all.end(), r.begin(), r.end());
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalarizing-function multiobjective evolutionary algorithms"};
  app.require_subcommand(1);

  // gen
  struct {
    std::string kind, out;
    std::size_t n = 100, clusters = 6, rows = 200, cols = 1000, objectives = 2;
    std::uint64_t seed = 1;
    double range = 3163.0, sigma = 0.0, density = 0.02;
    int profit_lo = 1, profit_hi = 100, cost_lo = 1, cost_hi = 100;
    std::vector<std::string> from;
  } g;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--kind", g.kind, "euclidean | cluster | profits | scp | scp3")->required();
  gen->add_option("--out", g.out, "output file")->required();
  gen->add_option("--n", g.n, "number of cities")->capture_default_str();
  gen->add_option("--seed", g.seed)->capture_default_str();
  gen->add_option("--range", g.range, "coordinate range")->capture_default_str();
  gen->add_option("--clusters", g.clusters)->capture_default_str();
  gen->add_option("--sigma", g.sigma, "cluster spread (0: range/40)")->capture_default_str();
  gen->add_option("--profit-lo", g.profit_lo)->capture_default_str();
  gen->add_option("--profit-hi", g.profit_hi)->capture_default_str();
  gen->add_option("--rows", g.rows)->capture_default_str();
  gen->add_option("--cols", g.cols)->capture_default_str();
  gen->add_option("--density", g.density)->capture_default_str();
  gen->add_option("--objectives", g.objectives)->capture_default_str();
  gen->add_option("--cost-lo", g.cost_lo)->capture_default_str();
  gen->add_option("--cost-hi", g.cost_hi)->capture_default_str();
  gen->add_option("--from", g.from, "two 2-objective SCP files (scp3)");

  // run
  ConfigFlags rf;
  std::string run_method_name, run_out;
  std::uint64_t run_seed = 1;
  auto* run = app.add_subcommand("run", "run one method once and write its archive CSV");
  run->add_option("--method", run_method_name, "momsls | mogls | umogls | moead")->required();
  add_config_options(run, rf);
  run->add_option("--seed", run_seed)->capture_default_str();
  run->add_option("--out", run_out, "archive CSV path")->required();

  // eval
  std::vector<std::string> eval_archives;
  std::string ref_mode = "union", z_ref_text, hv_ref_text;
  std::optional<std::size_t> r_weights;
  auto* eval = app.add_subcommand("eval", "compute R and hypervolume of archive CSVs");
  eval->add_option("--archive", eval_archives)->required();
  eval->add_option("--ref-mode", ref_mode, "union | explicit")->capture_default_str();
  eval->add_option("--z-ref", z_ref_text, "R reference point, comma separated (explicit)");
  eval->add_option("--hv-ref", hv_ref_text, "hypervolume reference point (explicit)");
  eval->add_option("--r-weights", r_weights, "lattice granularity of the R weight set");

  // compare
  std::vector<std::string> cmp_results;
  double cmp_alpha = 0.05;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "pairwise Wilcoxon tests over result CSVs");
  compare->add_option("--results", cmp_results)->required();
  compare->add_option("--alpha", cmp_alpha)->capture_default_str();
  compare->add_option("--out", cmp_out, "also write the tests as CSV");

  // table
  std::vector<std::string> tbl_results;
  std::string tbl_out;
  auto* table = app.add_subcommand("table", "mean (std) grid over result CSVs");
  table->add_option("--results", tbl_results)->required();
  table->add_option("--out", tbl_out, "also write the summary as CSV");

  // experiment
  ConfigFlags ef;
  std::vector<std::string> exp_methods;
  std::size_t exp_reps = 10, exp_workers = 0;
  std::uint64_t exp_seed_base = 1;
  double exp_alpha = 0.05;
  std::string exp_out;
  auto* experiment =
      app.add_subcommand("experiment", "all methods x replications on one instance");
  add_config_options(experiment, ef);
  experiment->add_option("--methods", exp_methods, "subset of methods (default: all)");
  experiment->add_option("--replications", exp_reps)->capture_default_str();
  experiment->add_option("--seed-base", exp_seed_base)->capture_default_str();
  experiment->add_option("--workers", exp_workers, "0: OpenMP default, 1: serial")
      ->capture_default_str();
  experiment->add_option("--alpha", exp_alpha)->capture_default_str();
  experiment->add_option("--out", exp_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Rng rng(g.seed);
      if (g.kind == "euclidean") {
        write_tsp_objective(g.out, generate_euclidean(g.n, g.range, rng));
      } else if (g.kind == "cluster") {
        write_tsp_objective(g.out,
                            generate_clustered(g.n, g.clusters, g.range, g.sigma, rng).points);
      } else if (g.kind == "profits") {
        write_profits(g.out, generate_profits(g.n, g.profit_lo, g.profit_hi, rng));
      } else if (g.kind == "scp") {
        write_scp(g.out, generate_scp(g.rows, g.cols, g.objectives, g.density, g.cost_lo,
                                      g.cost_hi, rng));
      } else if (g.kind == "scp3") {
        if (g.from.size() != 2) throw ContractViolation("scp3 needs --from FIRST SECOND");
        write_scp(g.out, combine_scp3(parse_scp(g.from[0]), parse_scp(g.from[1])));
      } else {
        throw ContractViolation("unknown --kind: " + g.kind);
      }
      return 0;
    }

    if (*run) {
      const auto kind = problem_kind_from_string(rf.problem);
      const auto inst = load_instance(kind, rf.instances, rf.name);
      const auto config = resolve_config(rf, kind, inst.objectives(),
                                         method_from_string(run_method_name), run_seed);
      const auto outcome = run_on_instance(inst, config, !rf.no_candidate_lists);
      write_points_csv(run_out, outcome.points, inst.objectives());
      std::cout << to_string(config.method) << ' ' << inst.name << " seed " << run_seed
                << ": " << outcome.points.size() << " nondominated points, "
                << outcome.iteration_count << " iterations\n";
      return 0;
    }

    if (*eval) {
      std::vector<std::vector<ObjectivePoint>> sets;
      for (const auto& a : eval_archives) sets.push_back(read_points_csv(a));
      std::size_t dims = 0;
      for (const auto& s : sets)
        if (!s.empty()) dims = s.front().size();
      if (dims == 0) throw ContractViolation("all archives are empty");
      ReferencePoints ref;
      if (ref_mode == "union") {
        ref = union_reference_points(sets);
      } else if (ref_mode == "explicit") {
        if (z_ref_text.empty() || hv_ref_text.empty())
          throw ContractViolation("explicit mode needs --z-ref and --hv-ref");
        ref.ideal = parse_point(z_ref_text);
        ref.nadir = parse_point(hv_ref_text);
        if (ref.ideal.size() != dims || ref.nadir.size() != dims)
          throw ContractViolation("reference point dimension does not match the archives");
      } else {
        throw ContractViolation("unknown --ref-mode: " + ref_mode);
      }
      const auto weights =
          generate_uniform_weights(dims, r_weights ? *r_weights : r_weight_granularity(dims));
      std::cout << "archive,R,HV\n";
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) throw ContractViolation("empty archive: " + eval_archives[i]);
        std::cout << eval_archives[i] << ','
                  << format_indicator(r_measure(sets[i], weights, ref.ideal)) << ','
                  << format_indicator(hypervolume(sets[i], ref.nadir)) << '\n';
      }
      return 0;
    }

    if (*compare) {
      const auto tests = pairwise_tests(read_all_results(cmp_results), cmp_alpha);
      if (tests.empty()) std::cout << "no method pair has 5 or more paired replications\n";
      write_tests_text(std::cout, tests);
      if (!cmp_out.empty()) {
        auto out = open_out(cmp_out);
        write_tests_csv(out, tests);
      }
      return 0;
    }

    if (*table) {
      const auto summaries = summarize(read_all_results(tbl_results));
      write_table(std::cout, summaries);
      if (!tbl_out.empty()) {
        auto out = open_out(tbl_out);
        write_summary_csv(out, summaries);
      }
      return 0;
    }

    if (*experiment) {
      const auto kind = problem_kind_from_string(ef.problem);
      const auto inst = load_instance(kind, ef.instances, ef.name);
      ExperimentPlan plan;
      if (!exp_methods.empty()) {
        plan.methods.clear();
        for (const auto& m : exp_methods) plan.methods.push_back(method_from_string(m));
      }
      plan.base = resolve_config(ef, kind, inst.objectives(), plan.methods.front(), 1);
      plan.replications = exp_reps;
      plan.seed_base = exp_seed_base;
      plan.output_dir = exp_out;
      plan.workers = exp_workers;
      plan.alpha = exp_alpha;
      plan.candidate_lists = !ef.no_candidate_lists;
      const auto report = run_experiment(plan, inst);
      write_table(std::cout, report.summaries);
      write_tests_text(std::cout, report.tests);
      for (const auto& f : report.failures) std::cerr << "run failed: " << f << '\n';
      return report.failures.empty() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
