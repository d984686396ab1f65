#pragma once

#include <unordered_map>
#include <vector>

#include "vrpdecomp/master.hpp"

namespace vrpdecomp {

/// Route column with its master coefficients.
struct Column {
  Route route;
  Scaled cost = 0;
  std::vector<int> visits;  // per vertex
  int lp_id = -1;
};

/// Aggregated Dantzig-Wolfe restricted master: one partition row per
/// customer, one convexity row with rhs K, then one row per cut in pool order.
/// Starts with the singleton routes and the empty route.
class DwMaster final : public RestrictedMaster {
 public:
  explicit DwMaster(Relaxation& relaxation, SimplexOptions simplex = {});

  LpStatus solve() override;
  double objective() const override { return lp_.objective(); }
  double infeasibility() const override { return lp_.infeasibility(); }
  MasterDuals duals() const override;
  int add_routes(const std::vector<Route>& routes) override;
  std::vector<RouteWeight> support() const override;
  void sync_cuts() override;
  int sync_relaxation() override;

  int variable_count() const override { return static_cast<int>(columns_.size()); }
  int row_count() const override { return lp_.row_count(); }
  int routes_added() const override { return routes_added_; }
  const LinearProgram& lp() const override { return lp_; }

  const std::vector<Column>& columns() const { return columns_; }
  double value(const Column& c) const { return lp_.value(c.lp_id); }
  int convexity_row() const { return relax_.instance->customers(); }
  int cut_row_gsec(int g) const { return gsec_rows_[g]; }
  int cut_row_src(int m) const { return src_rows_[m]; }

 private:
  bool add_column(const Route& route);
  std::vector<SparseEntry> entries(const Column& c) const;

  Relaxation& relax_;
  LinearProgram lp_;
  std::vector<Column> columns_;
  std::unordered_map<Route, int, RouteHash> index_;
  std::vector<int> gsec_rows_;
  std::vector<int> src_rows_;
  int routes_added_ = 0;
};

}  // namespace vrpdecomp
