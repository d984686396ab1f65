#pragma once

#include <vector>

#include "vrpdecomp/dag.hpp"
#include "vrpdecomp/ng.hpp"
#include "vrpdecomp/route.hpp"

namespace vrpdecomp {

/// Decremental state-space step: for every revisit cycle on j in the given
/// routes, j joins M_i of each customer i strictly inside the cycle. Returns
/// the grown configuration; `additions` receives the number of new entries.
NgConfig dssr_step(const NgConfig& ng, const std::vector<Route>& conflicting, int* additions = nullptr);

struct CeOutcome {
  int eliminated = 0;  // routes whose first cycle was cut out
  int skipped = 0;     // routes with no path left (removed by an earlier one)
  std::vector<Route> applied;
};

/// Column elimination on a compiled DAG: removes the first cycle of each
/// route in turn, then prunes.
CeOutcome ce_step(Dag& dag, const std::vector<Route>& conflicting);

struct StrengtheningReport {
  int iterations = 0;
  /// Master variables dropped by the relaxation changes (DW: routes, AF: arcs).
  int eliminated = 0;
  /// (arcs + nodes) final minus initial; 0 without an explicit DAG.
  long long dag_delta = 0;
  std::vector<double> bound_trace;
  /// The last support was elementary.
  bool complete = false;
};

}  // namespace vrpdecomp
