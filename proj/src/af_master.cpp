#include "vrpdecomp/af_master.hpp"

#include "vrpdecomp/errors.hpp"

namespace vrpdecomp {

AfMaster::AfMaster(Relaxation& relaxation, SimplexOptions simplex)
    : relax_(relaxation), simplex_(simplex), lp_(simplex) {
  rebuild();
  const Instance& in = *relax_.instance;
  std::vector<Route> init;
  for (int i = 1; i <= in.customers(); ++i) {
    Route r{{in.source(), i, in.sink()}};
    if (route_resource_feasible(in, r)) init.push_back(r);
  }
  if (in.has_arc(in.source(), in.sink())) init.push_back(Route{{in.source(), in.sink()}});
  add_routes(init);
}

const Dag& AfMaster::dag() const { return relax_.dag ? *relax_.dag : *own_; }
Dag& AfMaster::mutable_dag() { return relax_.dag ? *relax_.dag : *own_; }

void AfMaster::rebuild() {
  const Instance& in = *relax_.instance;
  lp_ = LinearProgram(simplex_);
  arc_col_.clear();
  col_arc_.clear();
  node_row_.clear();
  keys_.clear();
  gsec_rows_.clear();
  src_rows_.clear();
  if (relax_.dag) {
    own_.reset();
  } else {
    own_ = std::make_unique<Dag>(Dag::lazy(in, relax_.ng, relax_.cuts));
  }
  for (int i = 1; i <= in.customers(); ++i) lp_.add_row(RowSense::Equal, 1.0);
  source_row_ = lp_.add_row(RowSense::Equal, in.vehicles());
  for (const auto& g : relax_.cuts.gsecs()) gsec_rows_.push_back(lp_.add_row(RowSense::GreaterEqual, g.rhs));
  for (std::size_t m = 0; m < relax_.cuts.srcs().size(); ++m) {
    src_rows_.push_back(lp_.add_row(RowSense::LessEqual, 1.0));
  }
}

int AfMaster::node_row(int node) {
  auto it = node_row_.find(node);
  if (it != node_row_.end()) return it->second;
  const int row = lp_.add_row(RowSense::Equal, 0.0);
  node_row_.emplace(node, row);
  return row;
}

std::vector<SparseEntry> AfMaster::arc_entries(int a) {
  const Dag& g = dag();
  const DagArc e = g.arc(a);
  std::vector<SparseEntry> out;
  if (relax_.instance->is_customer(e.from)) out.push_back({e.from - 1, 1.0});
  if (e.tail == g.root()) {
    out.push_back({source_row_, 1.0});
  } else {
    out.push_back({node_row(e.tail), 1.0});
  }
  if (e.head != g.terminal()) out.push_back({node_row(e.head), -1.0});
  const auto& cuts = relax_.cuts;
  for (std::size_t k = 0; k < gsec_rows_.size(); ++k) {
    if (gsec_enters(cuts.gsecs()[k], e.from, e.to)) out.push_back({gsec_rows_[k], 1.0});
  }
  e.wraps.for_each([&](int m) { out.push_back({src_rows_[m], 1.0}); });
  return out;
}

int AfMaster::add_path(const std::vector<int>& arcs) {
  int added = 0;
  for (int a : arcs) {
    if (a < 0 || a >= static_cast<int>(dag().arc_count())) throw ContractError("unknown DAG arc " + std::to_string(a));
    if (arc_col_.count(a)) continue;
    const auto e = arc_entries(a);
    const int col = lp_.add_column(descale(dag().arc(a).cost), e);
    arc_col_.emplace(a, col);
    const DagArc& arc = dag().arc(a);
    keys_.insert({dag().node(arc.tail).state, dag().node(arc.head).state, arc.to});
    if (static_cast<int>(col_arc_.size()) <= col) col_arc_.resize(col + 1, -1);
    col_arc_[col] = a;
    ++added;
  }
  return added;
}

void AfMaster::add_all_arcs() {
  std::vector<int> all(dag().arc_count());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<int>(a);
  add_path(all);
}

int AfMaster::add_routes(const std::vector<Route>& routes) {
  int changed = 0;
  for (const auto& r : routes) {
    auto p = mutable_dag().find_path(r);
    if (!p) continue;
    if (routes_.insert(r).second && !r.empty_route()) ++routes_added_;
    if (add_path(*p) > 0) ++changed;
  }
  return changed;
}

LpStatus AfMaster::solve() { return lp_.solve(); }

MasterDuals AfMaster::duals() const {
  const Instance& in = *relax_.instance;
  MasterDuals d = MasterDuals::zero(in, relax_.cuts);
  d.vertex[0] = lp_.dual(source_row_);
  for (int i = 1; i <= in.customers(); ++i) d.vertex[i] = lp_.dual(i - 1);
  for (std::size_t g = 0; g < gsec_rows_.size(); ++g) d.gsec[g] = lp_.dual(gsec_rows_[g]);
  for (std::size_t m = 0; m < src_rows_.size(); ++m) d.src[m] = lp_.dual(src_rows_[m]);
  return d;
}

std::vector<double> AfMaster::arc_flows() const {
  std::vector<double> f(dag().arc_count(), 0.0);
  for (const auto& [a, col] : arc_col_) f[a] = lp_.value(col);
  return f;
}

std::vector<RouteWeight> AfMaster::support() const {
  std::vector<RouteWeight> out;
  for (const auto& p : dag().flow_decompose(arc_flows(), relax_.instance->vehicles())) {
    out.push_back({dag().project(p.arcs), p.weight});
  }
  return out;
}

void AfMaster::sync_cuts() { rebuild_and_replay(); }

int AfMaster::sync_relaxation() { return rebuild_and_replay(); }

int AfMaster::rebuild_and_replay() {
  // The DAG may already be replaced, so compare by stored end states.
  const auto before = std::move(keys_);
  rebuild();
  for (auto it = routes_.begin(); it != routes_.end();) {
    auto p = mutable_dag().find_path(*it);
    if (!p) {
      it = routes_.erase(it);
      continue;
    }
    add_path(*p);
    ++it;
  }
  int eliminated = 0;
  for (const auto& k : before) eliminated += keys_.count(k) ? 0 : 1;
  return eliminated;
}

std::uint64_t AfMaster::registered_paths() const {
  std::vector<char> mask(dag().arc_count(), 0);
  for (const auto& [a, col] : arc_col_) mask[a] = 1;
  const int empty = dag().empty_arc();
  if (empty >= 0) mask[empty] = 0;
  return dag().count_paths(mask);
}

double AfMaster::recombination() const {
  if (routes_added_ == 0) return 1.0;
  return static_cast<double>(registered_paths()) / routes_added_;
}

}  // namespace vrpdecomp
