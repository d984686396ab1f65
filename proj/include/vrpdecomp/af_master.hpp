#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "vrpdecomp/master.hpp"

namespace vrpdecomp {

/// Arc-flow restricted master. Rows: one per customer (arcs leaving a node of
/// that customer), the source-flow row with rhs K, cut rows in pool order,
/// then flow conservation for each interior node touched by a registered arc.
///
/// Works on the relaxation's compiled DAG when present, otherwise on a private
/// lazy DAG grown from lifted routes. Lifted routes are kept so the LP can be
/// rebuilt when the DAG is recompiled or refined.
class AfMaster final : public RestrictedMaster {
 public:
  explicit AfMaster(Relaxation& relaxation, SimplexOptions simplex = {});

  LpStatus solve() override;
  double objective() const override { return lp_.objective(); }
  double infeasibility() const override { return lp_.infeasibility(); }
  MasterDuals duals() const override;
  int add_routes(const std::vector<Route>& routes) override;
  std::vector<RouteWeight> support() const override;
  void sync_cuts() override;
  int sync_relaxation() override;

  int variable_count() const override { return static_cast<int>(arc_col_.size()); }
  int row_count() const override { return lp_.row_count(); }
  int routes_added() const override { return routes_added_; }
  const LinearProgram& lp() const override { return lp_; }

  /// Adds the arcs of a path; returns the number of new arc columns.
  int add_path(const std::vector<int>& arcs);
  /// Registers every arc of the DAG (full master).
  void add_all_arcs();

  const Dag& dag() const;
  bool has_arc(int dag_arc) const { return arc_col_.count(dag_arc) != 0; }
  bool has_node_row(int dag_node) const { return node_row_.count(dag_node) != 0; }
  int node_rows() const { return static_cast<int>(node_row_.size()); }
  /// Current flow per DAG arc (0 for unregistered arcs).
  std::vector<double> arc_flows() const;
  /// r-t paths over registered arcs (empty arc excluded) per distinct route
  /// added; 1 when nothing was added.
  double recombination() const;
  std::uint64_t registered_paths() const;

 private:
  Dag& mutable_dag();
  void rebuild();
  /// Returns the arc variables with no equivalent (same end states and
  /// vertex) after the rebuild.
  int rebuild_and_replay();
  using ArcKey = std::tuple<State, State, int>;
  int node_row(int node);
  std::vector<SparseEntry> arc_entries(int a);

  Relaxation& relax_;
  SimplexOptions simplex_;
  std::unique_ptr<Dag> own_;
  LinearProgram lp_;
  int source_row_ = 0;
  std::unordered_map<int, int> arc_col_;   // DAG arc -> LP column
  std::vector<int> col_arc_;               // LP column -> DAG arc
  std::unordered_map<int, int> node_row_;  // DAG node -> LP row
  std::vector<int> gsec_rows_;
  std::vector<int> src_rows_;
  std::set<ArcKey> keys_;   // end states of registered arcs
  std::set<Route> routes_;  // lifted routes, replayed on rebuild
  int routes_added_ = 0;
};

}  // namespace vrpdecomp
