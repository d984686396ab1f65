#pragma once

#include <memory>
#include <vector>

#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/dag.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/ng.hpp"
#include "vrpdecomp/route.hpp"
#include "vrpdecomp/simplex.hpp"
#include "vrpdecomp/state.hpp"

namespace vrpdecomp {

/// The current subproblem relaxation shared by a master and its pricer.
/// `dag` is set when an explicit DAG backs pricing or has been refined by
/// cycle elimination.
struct Relaxation {
  const Instance* instance = nullptr;
  NgConfig ng;
  CutPool cuts;
  std::unique_ptr<Dag> dag;

  Relaxation(const Instance& in, NgConfig n) : instance(&in), ng(std::move(n)), cuts(in.customers()) {}
  /// Whether `route` is still a solution of the relaxation.
  bool admits(const Route& route) const;
};

struct RouteWeight {
  Route route;
  double weight = 0;
};

/// Sum of rhs times dual over every master row. Identical for both
/// formulations because node rows have rhs 0.
double dual_objective(const Instance& instance, const CutPool& cuts, const MasterDuals& duals);

class RestrictedMaster {
 public:
  virtual ~RestrictedMaster() = default;

  virtual LpStatus solve() = 0;
  /// Objective without artificial penalties.
  virtual double objective() const = 0;
  virtual double infeasibility() const = 0;
  /// Duals in the shared layout; entry 0 is the convexity or source-flow dual.
  virtual MasterDuals duals() const = 0;
  /// Adds routes not yet represented. Returns the number of new routes.
  virtual int add_routes(const std::vector<Route>& routes) = 0;
  /// Primal solution as weighted routes (DW: columns; AF: flow decomposition).
  virtual std::vector<RouteWeight> support() const = 0;
  /// Picks up cuts appended to the relaxation's pool.
  virtual void sync_cuts() = 0;
  /// Drops what the changed relaxation no longer admits. Returns the number of
  /// eliminated variables (DW columns, AF arcs).
  virtual int sync_relaxation() = 0;

  virtual int variable_count() const = 0;
  virtual int row_count() const = 0;
  /// Distinct non-empty routes that have entered the master.
  virtual int routes_added() const = 0;
  virtual const LinearProgram& lp() const = 0;
};

}  // namespace vrpdecomp
