#include "vrpdecomp/dw_master.hpp"

#include "vrpdecomp/pricing.hpp"

namespace vrpdecomp {

bool Relaxation::admits(const Route& route) const {
  if (route.empty_route()) return instance->has_arc(instance->source(), instance->sink());
  if (dag) return std::as_const(*dag).find_path(route).has_value();
  return is_ng_route(*instance, ng, route);
}

double dual_objective(const Instance& instance, const CutPool& cuts, const MasterDuals& duals) {
  double s = instance.vehicles() * duals.vertex[0];
  for (int i = 1; i <= instance.customers(); ++i) s += duals.vertex[i];
  for (std::size_t g = 0; g < cuts.gsecs().size(); ++g) s += cuts.gsecs()[g].rhs * duals.gsec[g];
  for (double m : duals.src) s += m;
  return s;
}

DwMaster::DwMaster(Relaxation& relaxation, SimplexOptions simplex) : relax_(relaxation), lp_(simplex) {
  const Instance& in = *relax_.instance;
  for (int i = 1; i <= in.customers(); ++i) lp_.add_row(RowSense::Equal, 1.0);
  lp_.add_row(RowSense::Equal, in.vehicles());
  sync_cuts();
  std::vector<Route> init;
  for (int i = 1; i <= in.customers(); ++i) {
    Route r{{in.source(), i, in.sink()}};
    if (route_resource_feasible(in, r)) init.push_back(r);
  }
  if (in.has_arc(in.source(), in.sink())) init.push_back(Route{{in.source(), in.sink()}});
  add_routes(init);
}

std::vector<SparseEntry> DwMaster::entries(const Column& c) const {
  const Instance& in = *relax_.instance;
  std::vector<SparseEntry> e;
  for (int i = 1; i <= in.customers(); ++i) {
    if (c.visits[i] != 0) e.push_back({i - 1, static_cast<double>(c.visits[i])});
  }
  e.push_back({convexity_row(), 1.0});
  const auto& cuts = relax_.cuts;
  for (std::size_t g = 0; g < gsec_rows_.size(); ++g) {
    const int k = gsec_coeff(cuts.gsecs()[g], c.route);
    if (k != 0) e.push_back({gsec_rows_[g], static_cast<double>(k)});
  }
  for (std::size_t m = 0; m < src_rows_.size(); ++m) {
    const int k = src_coeff(cuts.srcs()[m], c.route);
    if (k != 0) e.push_back({src_rows_[m], static_cast<double>(k)});
  }
  return e;
}

bool DwMaster::add_column(const Route& route) {
  if (index_.count(route)) return false;
  Column c;
  c.route = route;
  c.cost = route_cost(*relax_.instance, route);
  c.visits = visit_counts(*relax_.instance, route);
  const auto e = entries(c);
  c.lp_id = lp_.add_column(descale(c.cost), e);
  index_.emplace(route, static_cast<int>(columns_.size()));
  columns_.push_back(std::move(c));
  if (!route.empty_route()) ++routes_added_;
  return true;
}

int DwMaster::add_routes(const std::vector<Route>& routes) {
  int added = 0;
  for (const auto& r : routes) added += add_column(r) ? 1 : 0;
  return added;
}

LpStatus DwMaster::solve() { return lp_.solve(); }

MasterDuals DwMaster::duals() const {
  const Instance& in = *relax_.instance;
  MasterDuals d = MasterDuals::zero(in, relax_.cuts);
  d.vertex[0] = lp_.dual(convexity_row());
  for (int i = 1; i <= in.customers(); ++i) d.vertex[i] = lp_.dual(i - 1);
  for (std::size_t g = 0; g < gsec_rows_.size(); ++g) d.gsec[g] = lp_.dual(gsec_rows_[g]);
  for (std::size_t m = 0; m < src_rows_.size(); ++m) d.src[m] = lp_.dual(src_rows_[m]);
  return d;
}

std::vector<RouteWeight> DwMaster::support() const {
  std::vector<RouteWeight> out;
  for (const auto& c : columns_) {
    const double v = lp_.value(c.lp_id);
    if (v > 1e-9) out.push_back({c.route, v});
  }
  return out;
}

void DwMaster::sync_cuts() {
  const auto& cuts = relax_.cuts;
  while (gsec_rows_.size() < cuts.gsecs().size()) {
    const GsecCut& g = cuts.gsecs()[gsec_rows_.size()];
    std::vector<SparseEntry> e;
    for (const auto& c : columns_) {
      const int k = gsec_coeff(g, c.route);
      if (k != 0) e.push_back({c.lp_id, static_cast<double>(k)});
    }
    gsec_rows_.push_back(lp_.add_row(RowSense::GreaterEqual, g.rhs, e));
  }
  while (src_rows_.size() < cuts.srcs().size()) {
    const SrcCut& s = cuts.srcs()[src_rows_.size()];
    std::vector<SparseEntry> e;
    for (const auto& c : columns_) {
      const int k = src_coeff(s, c.route);
      if (k != 0) e.push_back({c.lp_id, static_cast<double>(k)});
    }
    src_rows_.push_back(lp_.add_row(RowSense::LessEqual, 1.0, e));
  }
}

int DwMaster::sync_relaxation() {
  std::vector<int> drop;
  std::vector<Column> kept;
  for (auto& c : columns_) {
    if (relax_.admits(c.route)) {
      kept.push_back(std::move(c));
    } else {
      drop.push_back(c.lp_id);
    }
  }
  if (drop.empty()) {
    columns_ = std::move(kept);
    return 0;
  }
  lp_.drop_columns(drop);
  columns_ = std::move(kept);
  index_.clear();
  for (std::size_t k = 0; k < columns_.size(); ++k) index_.emplace(columns_[k].route, static_cast<int>(k));
  return static_cast<int>(drop.size());
}

}  // namespace vrpdecomp
