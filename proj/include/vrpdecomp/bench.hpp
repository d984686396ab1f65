#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/ng.hpp"
#include "vrpdecomp/solver.hpp"

namespace vrpdecomp {

/// Full master problems built from complete enumeration.
struct EnumerationResult {
  std::string instance;
  int delta = 0;
  bool overflow = false;
  std::size_t columns = 0;   // non-empty ng-routes (DW)
  std::uint64_t paths = 0;   // non-empty r-t paths (AF)
  std::size_t dag_nodes = 0;
  std::size_t dag_arcs = 0;
  double dw_lb = 0;
  double af_lb = 0;
  double enumerate_seconds = 0;
  double dw_seconds = 0;
  double af_seconds = 0;
};

/// Enumerates every ng-route and the explicit DAG, then (when `solve_masters`)
/// solves both full masters once. Overflow of either cap is reported, not thrown.
EnumerationResult enumerate_full(const Instance& instance, const NgConfig& ng, bool solve_masters = true,
                                 std::size_t arc_cap = Dag::kDefaultArcCap, std::size_t route_cap = 5'000'000);

/// Geometric mean; 0 when any value is 0, NaN when empty.
double geo_mean(const std::vector<double>& values);

/// "R101-25" -> "R1-25", "RC204-50" -> "RC2-50"; other names map to themselves.
std::string instance_group(const std::string& name);

struct MatrixSpec {
  std::vector<Form> forms = {Form::Dw, Form::Af};
  std::vector<int> deltas = {6};
  std::vector<CutMode> cuts = {CutMode::None};
  std::vector<StrengthenMode> strengthen = {StrengthenMode::None};
  /// Remaining solver settings; form, ng, cuts and strengthen are overridden.
  SolveOptions base;
  /// Print wall-clock columns; without them the report is reproducible byte for byte.
  bool timing = true;
  /// Worker threads; 0 reads DECOMP_BENCH_THREADS and defaults to 1.
  int threads = 0;
};

struct RunOutcome {
  std::string instance;
  std::string group;
  int delta = 0;
  CutMode cuts = CutMode::None;
  StrengthenMode strengthen = StrengthenMode::None;
  Form form = Form::Dw;
  bool completed = false;
  std::string error;
  SolveStats stats;
};

struct MatrixReport {
  std::vector<RunOutcome> runs;  // instance-major, then delta, cuts, strengthen, form
  std::string tsv;
  std::string json;
  bool all_completed = true;
};

MatrixReport run_matrix(const std::vector<Instance>& instances, const MatrixSpec& spec);

}  // namespace vrpdecomp
