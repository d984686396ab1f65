#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "vrpdecomp/bench.hpp"

using namespace vrpdecomp;
namespace fs = std::filesystem;

namespace {

// "example" selects the built-in three-customer instance; a directory expands to its files.
std::vector<Instance> load_instances(const std::vector<std::string>& paths, int customers) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    if (p == "example") {
      files.push_back(p);
    } else if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file()) found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<Instance> out;
  for (const auto& f : files) {
    Instance in = f == "example" ? builtin_example() : load_solomon(f);
    if (customers > 0 && customers < in.customers()) in = in.subset(customers);
    out.push_back(std::move(in));
  }
  return out;
}

const std::map<std::string, Form> kForms{{"dw", Form::Dw}, {"af", Form::Af}};
const std::map<std::string, PricerKind> kPricers{
    {"labeling", PricerKind::Labeling}, {"dag", PricerKind::Dag}, {"beam", PricerKind::Beam}};
const std::map<std::string, CutMode> kCuts{{"none", CutMode::None}, {"src3", CutMode::Src3}};
const std::map<std::string, StrengthenMode> kStrengthen{
    {"none", StrengthenMode::None}, {"dssr", StrengthenMode::Dssr}, {"ce", StrengthenMode::Ce}};

struct SolverFlags {
  std::string pricer = "labeling";
  double smoothing = -1;
  int price_limit = 200;
  double time_limit = std::numeric_limits<double>::infinity();
  SrcSeparationOptions src;

  void attach(CLI::App* app) {
    app->add_option("--pricer", pricer, "labeling, dag or beam")->check(CLI::IsMember({"labeling", "dag", "beam"}));
    app->add_option("--smoothing", smoothing, "Wentges alpha; negative uses the form default");
    app->add_option("--price-limit", price_limit, "Columns or paths added per pricing call");
    app->add_option("--time-limit", time_limit, "Seconds per run");
    app->add_option("--src-max", src.max_total, "SRC cap in total");
    app->add_option("--src-per-round", src.max_per_round, "SRC cap per separation round");
    app->add_option("--src-per-customer", src.max_per_customer, "SRC cap per customer");
    app->add_option("--src-min-violation", src.min_violation, "Minimum SRC violation");
  }
  SolveOptions options() const {
    SolveOptions o;
    o.pricer = kPricers.at(pricer);
    o.smoothing = smoothing;
    o.price_limit = price_limit;
    o.time_limit = time_limit;
    o.src = src;
    return o;
  }
};

bool write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return true;
  std::ofstream f(path);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dantzig-Wolfe and Arc-Flow root bounds for the VRPTW"};
  app.require_subcommand(1);

  std::vector<std::string> instances;
  int customers = 0;

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve the root relaxation of one instance");
  std::string form = "dw", cuts = "none", strengthen = "none", trace_path;
  int ng = 8;
  SolverFlags solve_flags;
  solve_cmd->add_option("--instance", instances, "Solomon file, directory or 'example'")->required();
  solve_cmd->add_option("--customers", customers, "Keep the first n customers");
  solve_cmd->add_option("--form", form)->check(CLI::IsMember({"dw", "af"}));
  solve_cmd->add_option("--ng", ng, "ng-set size (Delta)");
  solve_cmd->add_option("--cuts", cuts)->check(CLI::IsMember({"none", "src3"}));
  solve_cmd->add_option("--strengthen", strengthen)->check(CLI::IsMember({"none", "dssr", "ce"}));
  solve_cmd->add_option("--start-ng", ng, "Alias of --ng for strengthening runs");
  solve_cmd->add_option("--json", trace_path, "Write the report and iteration trace as JSON");
  solve_flags.attach(solve_cmd);

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate every ng-route and solve both full masters");
  int enum_ng = 6;
  bool no_solve = false;
  enum_cmd->add_option("--instance", instances, "Solomon file, directory or 'example'")->required();
  enum_cmd->add_option("--customers", customers, "Keep the first n customers");
  enum_cmd->add_option("--ng", enum_ng, "ng-set size (Delta)");
  enum_cmd->add_flag("--no-solve", no_solve, "Only count columns and paths");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a DW versus AF comparison matrix");
  std::vector<std::string> forms{"dw", "af"}, cut_modes{"none"}, strengthen_modes{"none"};
  std::vector<int> deltas{6};
  std::string tsv_path, json_path;
  bool no_timing = false;
  int threads = 0;
  SolverFlags bench_flags;
  bench_cmd->add_option("--instance", instances, "Solomon files, directories or 'example'")->required();
  bench_cmd->add_option("--customers", customers, "Keep the first n customers");
  bench_cmd->add_option("--form", forms)->check(CLI::IsMember({"dw", "af"}));
  bench_cmd->add_option("--ng", deltas, "ng-set sizes");
  bench_cmd->add_option("--cuts", cut_modes)->check(CLI::IsMember({"none", "src3"}));
  bench_cmd->add_option("--strengthen", strengthen_modes)->check(CLI::IsMember({"none", "dssr", "ce"}));
  bench_cmd->add_option("--out", tsv_path, "TSV report path (default stdout)");
  bench_cmd->add_option("--json", json_path, "JSON sidecar with per-iteration traces");
  bench_cmd->add_option("--threads", threads, "Worker threads (default DECOMP_BENCH_THREADS or 1)");
  bench_cmd->add_flag("--no-timing", no_timing, "Omit wall-clock columns");
  bench_flags.attach(bench_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto set = load_instances(instances, customers);
    if (*solve_cmd) {
      if (set.size() != 1) throw std::invalid_argument("solve takes exactly one instance");
      SolveOptions o = solve_flags.options();
      o.form = kForms.at(form);
      o.ng = ng;
      o.cuts = kCuts.at(cuts);
      o.strengthen = kStrengthen.at(strengthen);
      MatrixSpec spec;
      spec.forms = {o.form};
      spec.deltas = {ng};
      spec.cuts = {o.cuts};
      spec.strengthen = {o.strengthen};
      spec.base = o;
      spec.threads = 1;
      const auto rep = run_matrix(set, spec);
      const RunOutcome& r = rep.runs.front();
      const SolveStats& s = r.stats;
      std::printf("instance\t%s\nform\t%s\nng\t%d\nlb\t%.9f\ncertified\t%d\niterations\t%d\nvariables\t%lld\n"
                  "rows\t%lld\ncuts\t%d\nrecombination\t%.4f\nstrength_iterations\t%d\neliminated\t%lld\n"
                  "dag_delta\t%lld\nrmp_seconds\t%.3f\npp_seconds\t%.3f\ntotal_seconds\t%.3f\n",
                  r.instance.c_str(), form.c_str(), ng, s.lb, s.certified ? 1 : 0, s.iterations,
                  static_cast<long long>(s.variables), static_cast<long long>(s.rows), s.cuts_added,
                  s.recombination, s.strengthening.iterations, static_cast<long long>(s.strengthening.eliminated),
                  static_cast<long long>(s.strengthening.dag_delta), s.rmp_seconds, s.pp_seconds, s.total_seconds);
      if (!r.completed) std::fprintf(stderr, "run incomplete: %s\n", r.error.c_str());
      if (!write_file(trace_path, rep.json)) return 2;
      return r.completed ? 0 : 1;
    }
    if (*enum_cmd) {
      bool ok = true;
      std::printf("Instance\tDelta\tColumns\tPaths\tDAG Nodes\tDAG Arcs\tDW LB\tAF LB\tEnum (s)\tDW (s)\tAF (s)\n");
      for (const auto& in : set) {
        const auto r = enumerate_full(in, NgConfig(in, enum_ng), !no_solve);
        if (r.overflow) {
          ok = false;
          std::printf("%s\t%d\toverflow\n", r.instance.c_str(), r.delta);
          continue;
        }
        ok = ok && r.columns == r.paths;
        std::printf("%s\t%d\t%zu\t%llu\t%zu\t%zu\t%.6f\t%.6f\t%.3f\t%.3f\t%.3f\n", r.instance.c_str(), r.delta,
                    r.columns, static_cast<unsigned long long>(r.paths), r.dag_nodes, r.dag_arcs, r.dw_lb, r.af_lb,
                    r.enumerate_seconds, r.dw_seconds, r.af_seconds);
      }
      return ok ? 0 : 1;
    }
    MatrixSpec spec;
    spec.forms.clear();
    for (const auto& f : forms) spec.forms.push_back(kForms.at(f));
    spec.deltas = deltas;
    spec.cuts.clear();
    for (const auto& c : cut_modes) spec.cuts.push_back(kCuts.at(c));
    spec.strengthen.clear();
    for (const auto& m : strengthen_modes) spec.strengthen.push_back(kStrengthen.at(m));
    spec.base = bench_flags.options();
    spec.timing = !no_timing;
    spec.threads = threads;
    const auto rep = run_matrix(set, spec);
    if (tsv_path.empty()) {
      std::fputs(rep.tsv.c_str(), stdout);
    } else if (!write_file(tsv_path, rep.tsv)) {
      return 2;
    }
    if (!write_file(json_path, rep.json)) return 2;
    return rep.all_completed ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
