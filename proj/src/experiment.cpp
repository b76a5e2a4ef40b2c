#include "sfmoea/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "sfmoea/archive.hpp"
#include "sfmoea/instance_io.hpp"

namespace sfmoea {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::mstsp: return "mstsp";
    case ProblemKind::tspwp: return "tspwp";
    case ProblemKind::moscp: return "moscp";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "mstsp" || name == "tsp") return ProblemKind::mstsp;
  if (name == "tspwp") return ProblemKind::tspwp;
  if (name == "moscp" || name == "scp") return ProblemKind::moscp;
  throw ContractViolation("unknown problem: " + name);
}

std::size_t LoadedInstance::objectives() const {
  switch (kind) {
    case ProblemKind::mstsp: return std::get<TspInstance>(data).objectives();
    case ProblemKind::tspwp: return 2;
    case ProblemKind::moscp: return std::get<ScpInstance>(data).objectives();
  }
  return 0;
}

LoadedInstance load_instance(ProblemKind kind, const std::vector<std::string>& files,
                             std::string name) {
  require(!files.empty(), "no instance files given");
  LoadedInstance inst;
  inst.kind = kind;
  if (name.empty()) name = std::filesystem::path(files.front()).stem().string();
  inst.name = std::move(name);
  switch (kind) {
    case ProblemKind::mstsp:
      require(files.size() >= 2, "MSTSP needs one objective file per objective (>= 2)");
      inst.data = load_tsp_instance(files);
      break;
    case ProblemKind::tspwp:
      require(files.size() == 2, "TSPWP needs an objective file and a profit file");
      inst.data = load_tspwp_instance(files[0], files[1]);
      break;
    case ProblemKind::moscp:
      require(files.size() == 1, "MOSCP needs exactly one SCP file");
      inst.data = parse_scp(files[0]);
      break;
  }
  return inst;
}

ScalarizerSpec default_scalarizer(ProblemKind kind) {
  if (kind == ProblemKind::tspwp) {
    ScalarizerSpec s;
    s.kind = ScalarizerKind::mixed;
    s.w_linear = 0.001;
    s.w_cheby = 0.999;
    return s;
  }
  return ScalarizerSpec::linear();
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets{
      {"mstsp2", 2, 50, 100, 10.0},
      {"mstsp3", 3, 5, 81, 10.0},
      {"tspwp", 2, 17, 300, 10.0},
      {"moscp2", 2, 17, 300, 10.0},
      {"moscp3", 3, 5, 81, 10.0},
      {"kroab100", 2, 50, 100, 10.0},
      {"clusterab300", 2, 50, 100, 5.0},
      {"euclideanab500", 2, 50, 100, 4.0},
      {"kroabc100", 3, 5, 81, 10.0},
      {"clusterabc300", 3, 5, 81, 8.0},
  };
  return kPresets;
}

std::optional<Preset> find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  return std::nullopt;
}

MethodConfig config_from_preset(const Preset& preset, Method method, ProblemKind kind,
                                std::uint64_t seed) {
  MethodConfig c;
  c.method = method;
  c.objectives = preset.objectives;
  c.scalarizer = default_scalarizer(kind);
  c.weight_granularity = preset.weight_granularity;
  c.generations = preset.generations;
  c.expected_rank = preset.expected_rank;
  c.neighborhood_size = 20;
  c.mating_probability = 0.9;
  c.max_replacements = 2;
  c.seed = seed;
  return c;
}

namespace {

template <class P>
RunOutcome collect(const MethodConfig& config, P& problem) {
  auto result = run_method(config, problem);
  RunOutcome out;
  out.points = sorted_points(result.archive.points());
  out.iteration_count = result.iteration_count;
  out.local_search_runs = result.local_search_runs;
  out.wallclock_ms =
      std::chrono::duration<double, std::milli>(result.wallclock).count();
  return out;
}

}  // namespace

RunOutcome run_on_instance(const LoadedInstance& inst, const MethodConfig& config,
                           bool candidate_lists) {
  switch (inst.kind) {
    case ProblemKind::mstsp: {
      TspProblem p(std::get<TspInstance>(inst.data), candidate_lists);
      return collect(config, p);
    }
    case ProblemKind::tspwp: {
      TspwpProblem p(std::get<TspwpInstance>(inst.data), config.scalarizer.w_linear,
                     config.scalarizer.w_cheby);
      return collect(config, p);
    }
    case ProblemKind::moscp: {
      ScpProblem p(std::get<ScpInstance>(inst.data));
      return collect(config, p);
    }
  }
  throw ContractViolation("unknown problem kind");
}

void ExperimentPlan::validate() const {
  require(replications >= 1, "replications must be >= 1");
  require(!methods.empty(), "plan needs at least one method");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  std::set<Method> seen(methods.begin(), methods.end());
  require(seen.size() == methods.size(), "duplicate method in plan");
  base.validate();
  // Same K and the same iteration budget for every method.
  std::optional<std::size_t> k, total;
  for (Method m : methods) {
    MethodConfig c = base;
    c.method = m;
    if (!k) {
      k = c.initial_solutions();
      total = c.total_iterations();
    }
    require(c.initial_solutions() == *k && c.total_iterations() == *total,
            "all methods in a plan must share K and the iteration budget");
  }
}

namespace {

RunOutcome guarded_run(const LoadedInstance& inst, const MethodConfig& config,
                       bool candidate_lists, std::string& error) {
  try {
    return run_on_instance(inst, config, candidate_lists);
  } catch (const std::exception& e) {
    error = e.what();
    return {};
  }
}

}  // namespace

std::vector<RunOutcome> execute_runs_serial(const LoadedInstance& inst,
                                            const std::vector<MethodConfig>& jobs,
                                            bool candidate_lists) {
  std::vector<RunOutcome> out(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::string error;
    out[i] = guarded_run(inst, jobs[i], candidate_lists, error);
    if (!error.empty()) throw std::runtime_error(error);
  }
  return out;
}

std::vector<RunOutcome> execute_runs_parallel(const LoadedInstance& inst,
                                              const std::vector<MethodConfig>& jobs,
                                              bool candidate_lists, std::size_t workers) {
  std::vector<RunOutcome> out(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const int threads = workers == 0 ? omp_get_max_threads() : static_cast<int>(workers);
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = guarded_run(inst, jobs[k], candidate_lists, errors[k]);
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  return out;
}

std::string format_indicator(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

int method_rank(const std::string& name) {
  try {
    return static_cast<int>(method_from_string(name));
  } catch (const ContractViolation&) {
    return 100;
  }
}

// Groups in (instance, method order, method name) order.
std::map<std::pair<std::string, std::pair<int, std::string>>, std::vector<const ResultRecord*>>
group_records(const std::vector<ResultRecord>& records) {
  std::map<std::pair<std::string, std::pair<int, std::string>>, std::vector<const ResultRecord*>> g;
  for (const auto& r : records)
    g[{r.instance, {method_rank(r.method), r.method}}].push_back(&r);
  return g;
}

}  // namespace

std::vector<MethodSummary> summarize(const std::vector<ResultRecord>& records) {
  std::vector<MethodSummary> out;
  for (const auto& [key, recs] : group_records(records)) {
    std::vector<double> r, hv;
    for (const auto* rec : recs) {
      r.push_back(rec->r);
      hv.push_back(rec->hv);
    }
    out.push_back({key.first, key.second.second, recs.size(), mean_of(r), std_of(r),
                   mean_of(hv), std_of(hv)});
  }
  return out;
}

std::vector<PairwiseTest> pairwise_tests(const std::vector<ResultRecord>& records,
                                         double alpha) {
  std::vector<PairwiseTest> out;
  const auto groups = group_records(records);
  std::map<std::string, std::vector<std::pair<std::string, std::vector<const ResultRecord*>>>>
      by_instance;
  for (const auto& [key, recs] : groups)
    by_instance[key.first].emplace_back(key.second.second, recs);

  for (const auto& [instance, methods] : by_instance) {
    for (const char* indicator : {"R", "HV"}) {
      const bool is_r = indicator[0] == 'R';
      for (std::size_t a = 0; a < methods.size(); ++a) {
        for (std::size_t b = a + 1; b < methods.size(); ++b) {
          // Pair replications by seed.
          std::map<std::uint64_t, double> va;
          for (const auto* r : methods[a].second) va[r->seed] = is_r ? r->r : r->hv;
          std::vector<double> xa, xb;
          for (const auto* r : methods[b].second) {
            auto it = va.find(r->seed);
            if (it == va.end()) continue;
            xa.push_back(it->second);
            xb.push_back(is_r ? r->r : r->hv);
          }
          if (xa.size() < 5) continue;
          PairwiseTest t;
          t.instance = instance;
          t.indicator = indicator;
          t.method_a = methods[a].first;
          t.method_b = methods[b].first;
          t.test = wilcoxon_signed_rank(xa, xb, alpha);
          const double ma = mean_of(xa), mb = mean_of(xb);
          const bool a_better = is_r ? ma < mb : ma > mb;
          t.better = t.test.significant ? (a_better ? t.method_a : t.method_b) : "-";
          out.push_back(std::move(t));
        }
      }
    }
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << "method,problem,instance,seed,iteration_count,R,HV\n";
  for (const auto& r : records)
    out << r.method << ',' << r.problem << ',' << r.instance << ',' << r.seed << ','
        << r.iteration_count << ',' << format_indicator(r.r) << ',' << format_indicator(r.hv)
        << '\n';
}

std::vector<ResultRecord> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) header.push_back(f);
  }
  auto col = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };
  const auto c_method = col("method"), c_problem = col("problem"), c_instance = col("instance"),
             c_seed = col("seed"), c_iter = col("iteration_count"), c_r = col("R"),
             c_hv = col("HV"), c_wall = col("wallclock_ms");
  if (!c_method || !c_instance || !c_seed || !c_r || !c_hv)
    throw ParseError(path, 1, "header must contain method,instance,seed,R,HV");

  std::vector<ResultRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    if (f.size() != header.size()) throw ParseError(path, line_no, "wrong field count");
    try {
      ResultRecord r;
      r.method = f[*c_method];
      r.problem = c_problem ? f[*c_problem] : "";
      r.instance = f[*c_instance];
      r.seed = std::stoull(f[*c_seed]);
      r.iteration_count = c_iter ? std::stoull(f[*c_iter]) : 0;
      r.r = std::stod(f[*c_r]);
      r.hv = std::stod(f[*c_hv]);
      r.wallclock_ms = c_wall ? std::stod(f[*c_wall]) : 0.0;
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(path, line_no, "bad numeric field");
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<MethodSummary>& summaries) {
  out << "instance,method,runs,R_mean,R_std,HV_mean,HV_std\n";
  for (const auto& s : summaries)
    out << s.instance << ',' << s.method << ',' << s.runs << ',' << format_indicator(s.r_mean)
        << ',' << format_indicator(s.r_std) << ',' << format_indicator(s.hv_mean) << ','
        << format_indicator(s.hv_std) << '\n';
}

void write_tests_csv(std::ostream& out, const std::vector<PairwiseTest>& tests) {
  out << "instance,indicator,method_a,method_b,n,W,p_value,significant,better\n";
  for (const auto& t : tests)
    out << t.instance << ',' << t.indicator << ',' << t.method_a << ',' << t.method_b << ','
        << t.test.nonzero << ',' << format_indicator(t.test.statistic) << ','
        << format_indicator(t.test.p_value) << ',' << (t.test.significant ? 1 : 0) << ','
        << t.better << '\n';
}

void write_table(std::ostream& out, const std::vector<MethodSummary>& summaries) {
  std::string current;
  std::vector<const MethodSummary*> block;
  auto flush = [&] {
    if (block.empty()) return;
    char buf[256];
    out << "Instance " << current << '\n';
    std::snprintf(buf, sizeof(buf), "  %-9s", "");
    out << buf;
    for (const auto* s : block) {
      std::snprintf(buf, sizeof(buf), " %-26s", s->method.c_str());
      out << buf;
    }
    out << '\n';
    for (const char* ind : {"R", "HV"}) {
      std::snprintf(buf, sizeof(buf), "  %-9s", ind);
      out << buf;
      for (const auto* s : block) {
        const bool r = ind[0] == 'R';
        const std::string cell = format_indicator(r ? s->r_mean : s->hv_mean) + " (" +
                                 format_indicator(r ? s->r_std : s->hv_std) + ")";
        std::snprintf(buf, sizeof(buf), " %-26s", cell.c_str());
        out << buf;
      }
      out << '\n';
    }
    out << '\n';
    block.clear();
  };
  for (const auto& s : summaries) {
    if (s.instance != current) {
      flush();
      current = s.instance;
    }
    block.push_back(&s);
  }
  flush();
}

void write_tests_text(std::ostream& out, const std::vector<PairwiseTest>& tests) {
  if (tests.empty()) return;
  out << "Wilcoxon signed-rank tests (two-sided)\n";
  for (const auto& t : tests) {
    out << "  " << t.instance << "  " << t.indicator << "  " << t.method_a << " vs "
        << t.method_b << "  W=" << format_indicator(t.test.statistic)
        << "  p=" << format_indicator(t.test.p_value)
        << (t.test.significant ? "  significant, better: " + t.better : "  not significant")
        << '\n';
  }
}

ExperimentReport run_experiment(const ExperimentPlan& plan, const LoadedInstance& inst) {
  plan.validate();
  require(plan.base.objectives == inst.objectives(),
          "plan objective count does not match the instance");

  std::vector<MethodConfig> jobs;
  for (Method m : plan.methods)
    for (std::size_t rep = 0; rep < plan.replications; ++rep) {
      MethodConfig c = plan.base;
      c.method = m;
      c.seed = plan.seed_base + rep;
      jobs.push_back(c);
    }

  std::vector<RunOutcome> outcomes(jobs.size());
  std::vector<std::string> errors(jobs.size());
  if (plan.workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      outcomes[i] = guarded_run(inst, jobs[i], plan.candidate_lists, errors[i]);
  } else {
    const int threads =
        plan.workers == 0 ? omp_get_max_threads() : static_cast<int>(plan.workers);
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      outcomes[k] = guarded_run(inst, jobs[k], plan.candidate_lists, errors[k]);
    }
  }

  ExperimentReport report;
  std::vector<std::vector<ObjectivePoint>> ok_sets;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) {
      report.failures.push_back(std::string(to_string(jobs[i].method)) + " seed " +
                                std::to_string(jobs[i].seed) + ": " + errors[i]);
    } else {
      ok_sets.push_back(outcomes[i].points);
    }
  }
  require(!ok_sets.empty(), "every run in the plan failed");
  report.reference = union_reference_points(ok_sets);
  const std::size_t dims = inst.objectives();
  const auto r_weights = generate_uniform_weights(dims, r_weight_granularity(dims));
  report.r_weight_count = r_weights.size();

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) continue;
    const auto& o = outcomes[i];
    ResultRecord rec;
    rec.method = to_string(jobs[i].method);
    rec.problem = to_string(inst.kind);
    rec.instance = inst.name;
    rec.seed = jobs[i].seed;
    rec.iteration_count = o.iteration_count;
    rec.r = r_measure(o.points, r_weights, report.reference.ideal);
    rec.hv = dims <= 3 ? hypervolume(o.points, report.reference.nadir)
                       : std::numeric_limits<double>::quiet_NaN();
    rec.wallclock_ms = o.wallclock_ms;
    report.records.push_back(std::move(rec));
    report.archives.push_back(o.points);
  }
  report.summaries = summarize(report.records);
  report.tests = pairwise_tests(report.records, plan.alpha);

  if (!plan.output_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(plan.output_dir);
    fs::create_directories(dir / "archives");
    {
      std::ofstream f(dir / "results.csv");
      write_results_csv(f, report.records);
    }
    {
      std::ofstream f(dir / "timings.csv");
      f << "method,instance,seed,wallclock_ms\n";
      for (const auto& r : report.records)
        f << r.method << ',' << r.instance << ',' << r.seed << ','
          << static_cast<long long>(std::llround(r.wallclock_ms)) << '\n';
    }
    {
      std::ofstream f(dir / "summary.csv");
      write_summary_csv(f, report.summaries);
    }
    {
      std::ofstream f(dir / "comparisons.csv");
      write_tests_csv(f, report.tests);
    }
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      const auto& r = report.records[i];
      write_points_csv((dir / "archives" /
                        (r.instance + "_" + r.method + "_" + std::to_string(r.seed) + ".csv"))
                           .string(),
                       report.archives[i], dims);
    }
    std::ofstream f(dir / "report.txt");
    f << "problem " << to_string(inst.kind) << ", instance " << inst.name << ", "
      << plan.replications << " replications, " << plan.base.total_iterations()
      << " iterations per run\n";
    f << "R weight vectors: " << report.r_weight_count << "\n";
    f << "R reference point:";
    for (double v : report.reference.ideal) f << ' ' << format_indicator(v);
    f << "\nHV reference point:";
    for (double v : report.reference.nadir) f << ' ' << format_indicator(v);
    f << "\n\n";
    write_table(f, report.summaries);
    write_tests_text(f, report.tests);
    for (const auto& e : report.failures) f << "FAILED: " << e << '\n';
  }
  return report;
}

}  // namespace sfmoea
