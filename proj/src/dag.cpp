#include "vrpdecomp/dag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "vrpdecomp/errors.hpp"

namespace vrpdecomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string set_text(const SmallBitset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int i) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

}  // namespace

Dag Dag::compile(const Instance& instance, const NgConfig& ng, const CutPool& cuts, std::size_t arc_cap) {
  const int sink = instance.sink();
  const int cap = instance.capacity();

  // Forward generation by load layer. Demands are positive, so every
  // non-terminal arc climbs to a higher layer.
  struct RawArc {
    int tail;
    int head;  // -1 for the terminal
    int to;
    SmallBitset wraps;
  };
  std::vector<State> raw{initial_state(instance)};
  std::unordered_map<State, int, StateHash> index{{raw[0], 0}};
  std::vector<std::vector<int>> layer(cap + 1);
  layer[0].push_back(0);
  std::vector<RawArc> ra;
  std::vector<std::vector<int>> raw_out(1);

  for (int l = 0; l <= cap; ++l) {
    for (std::size_t k = 0; k < layer[l].size(); ++k) {
      const int u = layer[l][k];
      for (int j = 1; j <= sink; ++j) {
        auto step = advance(instance, ng, cuts, raw[u], j);
        if (!step) continue;
        int head = -1;
        if (j != sink) {
          auto [it, inserted] = index.try_emplace(step->next, static_cast<int>(raw.size()));
          if (inserted) {
            raw.push_back(step->next);
            raw_out.emplace_back();
            layer[step->next.load].push_back(it->second);
          }
          head = it->second;
        }
        raw_out[u].push_back(static_cast<int>(ra.size()));
        ra.push_back({u, head, j, step->wraps});
        if (ra.size() > arc_cap) {
          throw CompileOverflow("DAG exceeds " + std::to_string(arc_cap) + " arcs");
        }
      }
    }
  }
  index.clear();

  // Keep states that can still reach the terminal.
  std::vector<char> alive(raw.size(), 0);
  for (int l = cap; l >= 0; --l) {
    for (int u : layer[l]) {
      for (int a : raw_out[u]) {
        if (ra[a].head < 0 || alive[ra[a].head]) {
          alive[u] = 1;
          break;
        }
      }
    }
  }
  alive[0] = 1;
  raw_out.clear();
  raw_out.shrink_to_fit();

  Dag g;
  g.instance_ = &instance;
  g.ng_ = ng;
  g.cuts_ = cuts;
  std::vector<int> new_id(raw.size(), -1);
  for (int l = 0; l <= cap; ++l) {
    std::vector<int> keep;
    for (int u : layer[l]) {
      if (alive[u]) keep.push_back(u);
    }
    std::sort(keep.begin(), keep.end(), [&](int a, int b) { return raw[a] < raw[b]; });
    for (int u : keep) {
      new_id[u] = static_cast<int>(g.nodes_.size());
      g.nodes_.push_back({raw[u], false});
    }
  }
  g.terminal_ = static_cast<int>(g.nodes_.size());
  State tstate;
  tstate.vertex = sink;
  g.nodes_.push_back({tstate, true});

  std::vector<std::size_t> order;
  order.reserve(ra.size());
  for (std::size_t a = 0; a < ra.size(); ++a) {
    if (new_id[ra[a].tail] >= 0 && (ra[a].head < 0 || new_id[ra[a].head] >= 0)) order.push_back(a);
  }
  auto key = [&](std::size_t a) {
    const RawArc& e = ra[a];
    const int tail = new_id[e.tail];
    if (e.head >= 0) {
      const State& s = raw[e.tail];
      return std::make_tuple(0, s.load, s.vertex, e.to, tail, new_id[e.head]);
    }
    if (tail == 0) return std::make_tuple(1, 0, 0, 0, 0, 0);
    return std::make_tuple(2, 0, 0, 0, tail, 0);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  g.out_.assign(g.nodes_.size(), {});
  g.in_.assign(g.nodes_.size(), {});
  g.arcs_.reserve(order.size());
  for (std::size_t a : order) {
    const RawArc& e = ra[a];
    g.add_arc(new_id[e.tail], e.head < 0 ? g.terminal_ : new_id[e.head], e.to, e.wraps);
  }
  return g;
}

Dag Dag::lazy(const Instance& instance, const NgConfig& ng, const CutPool& cuts) {
  Dag g;
  g.instance_ = &instance;
  g.ng_ = ng;
  g.cuts_ = cuts;
  g.lazy_ = true;
  g.add_node(initial_state(instance), false);
  State tstate;
  tstate.vertex = instance.sink();
  g.terminal_ = g.add_node(tstate, true);
  g.index_.emplace(g.nodes_[0].state, 0);
  return g;
}

int Dag::add_node(const State& s, bool terminal) {
  nodes_.push_back({s, terminal});
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<int>(nodes_.size()) - 1;
}

int Dag::add_arc(int tail, int head, int to, const SmallBitset& wraps) {
  DagArc e;
  e.tail = tail;
  e.head = head;
  e.from = nodes_[tail].state.vertex;
  e.to = to;
  e.cost = instance_->cost(e.from, to);
  e.wraps = wraps;
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back(e);
  out_[tail].push_back(id);
  in_[head].push_back(id);
  return id;
}

int Dag::out_arc_to(int node, int vertex) const {
  for (int a : out_[node]) {
    if (arcs_[a].to == vertex) return a;
  }
  return -1;
}

int Dag::empty_arc() const { return out_arc_to(root(), instance_->sink()); }

std::optional<std::vector<int>> Dag::find_path(const Route& route) const {
  const auto& v = route.vertices;
  if (v.size() < 2 || v.front() != instance_->source()) return std::nullopt;
  std::vector<int> arcs;
  int u = root();
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (u == terminal_) return std::nullopt;
    const int a = out_arc_to(u, v[k]);
    if (a < 0) return std::nullopt;
    arcs.push_back(a);
    u = arcs_[a].head;
  }
  if (u != terminal_) return std::nullopt;
  return arcs;
}

std::optional<std::vector<int>> Dag::find_path(const Route& route) {
  if (!lazy_) return std::as_const(*this).find_path(route);
  const auto& v = route.vertices;
  if (v.size() < 2 || v.front() != instance_->source()) return std::nullopt;
  std::vector<int> arcs;
  int u = root();
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (u == terminal_) return std::nullopt;
    int a = out_arc_to(u, v[k]);
    if (a < 0) {
      auto step = advance(*instance_, ng_, cuts_, nodes_[u].state, v[k]);
      if (!step) return std::nullopt;
      int head = terminal_;
      if (v[k] != instance_->sink()) {
        auto it = index_.find(step->next);
        if (it == index_.end()) {
          head = add_node(step->next, false);
          index_.emplace(step->next, head);
        } else {
          head = it->second;
        }
      }
      a = add_arc(u, head, v[k], step->wraps);
    }
    arcs.push_back(a);
    u = arcs_[a].head;
  }
  if (u != terminal_) return std::nullopt;
  return arcs;
}

std::vector<int> Dag::lift_route(const Route& route) {
  auto p = find_path(route);
  if (!p) throw LiftFailure("route " + to_string(*instance_, route) + " has no path in the DAG");
  return *p;
}

Route Dag::project(const std::vector<int>& arcs) const {
  Route r;
  if (arcs.empty()) return r;
  r.vertices.push_back(arcs_[arcs.front()].from);
  for (int a : arcs) r.vertices.push_back(arcs_[a].to);
  return r;
}

std::vector<int> Dag::topological_order() const {
  std::vector<int> order(nodes_.size());
  std::iota(order.begin(), order.end(), 0);
  auto rank = [&](int u) { return nodes_[u].terminal ? std::numeric_limits<int>::max() : nodes_[u].state.load; };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rank(a) < rank(b); });
  return order;
}

std::uint64_t Dag::count_paths() const { return count_paths(std::vector<char>(arcs_.size(), 1)); }

std::uint64_t Dag::count_paths(const std::vector<char>& arc_mask) const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> paths(nodes_.size(), 0);
  paths[root()] = 1;
  for (int u : topological_order()) {
    if (paths[u] == 0) continue;
    for (int a : out_[u]) {
      if (!arc_mask[a]) continue;
      auto& h = paths[arcs_[a].head];
      if (__builtin_add_overflow(h, paths[u], &h)) h = kMax;
    }
  }
  return paths[terminal_];
}

double Dag::arc_reduced_cost(int a, const ReducedCosts& rc) const {
  const DagArc& e = arcs_[a];
  return rc.arc(e.from, e.to) - rc.wrap_charge(e.wraps);
}

std::optional<PricedPath> Dag::shortest_path(const ReducedCosts& rc, bool include_empty) const {
  const int skip = include_empty ? -1 : empty_arc();
  std::vector<double> best(nodes_.size(), kInf);
  std::vector<int> choice(nodes_.size(), -1);
  best[terminal_] = 0;
  const auto order = topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    if (u == terminal_) continue;
    for (int a : out_[u]) {
      if (a == skip) continue;
      const double hb = best[arcs_[a].head];
      if (hb == kInf) continue;
      const double val = arc_reduced_cost(a, rc) + hb;
      if (choice[u] < 0 || val < best[u] - 1e-9) {
        best[u] = val;
        choice[u] = a;
      }
    }
  }
  if (choice[root()] < 0) return std::nullopt;
  PricedPath p;
  p.reduced_cost = best[root()];
  for (int u = root(); u != terminal_; u = arcs_[choice[u]].head) p.arcs.push_back(choice[u]);
  return p;
}

std::vector<PricedPath> Dag::price(const ReducedCosts& rc, int width, int limit, double threshold,
                                   bool include_empty, double* best) const {
  std::vector<double> arc_rc(arcs_.size());
  for (std::size_t a = 0; a < arcs_.size(); ++a) arc_rc[a] = arc_reduced_cost(static_cast<int>(a), rc);

  std::vector<double> f(nodes_.size(), kInf);
  std::vector<int> pred(nodes_.size(), -1);
  f[root()] = 0;
  std::vector<std::pair<double, int>> cand;
  for (int u : topological_order()) {
    if (u == terminal_ || f[u] == kInf) continue;
    cand.clear();
    for (int a : out_[u]) {
      if (arcs_[a].head != terminal_) cand.emplace_back(arc_rc[a], a);
    }
    if (width > 0 && static_cast<int>(cand.size()) > width) {
      std::partial_sort(cand.begin(), cand.begin() + width, cand.end());
      cand.resize(width);
    }
    for (auto [r, a] : cand) {
      const int h = arcs_[a].head;
      const double val = f[u] + r;
      if (val < f[h] - 1e-12) {
        f[h] = val;
        pred[h] = a;
      }
    }
  }

  const int empty = empty_arc();
  std::vector<std::pair<double, int>> ends;
  double lowest = kInf;
  for (int a : in_[terminal_]) {
    if (a == empty && !include_empty) continue;
    const int tail = arcs_[a].tail;
    if (f[tail] == kInf) continue;
    const double val = f[tail] + arc_rc[a];
    lowest = std::min(lowest, val);
    if (val < threshold) ends.emplace_back(val, a);
  }
  if (best) *best = lowest;
  std::sort(ends.begin(), ends.end());
  if (static_cast<int>(ends.size()) > limit) ends.resize(limit);

  std::vector<PricedPath> out;
  for (auto [val, a] : ends) {
    PricedPath p;
    p.reduced_cost = val;
    for (int e = a; e >= 0; e = pred[arcs_[e].tail]) p.arcs.push_back(e);
    std::reverse(p.arcs.begin(), p.arcs.end());
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<DagPath> Dag::flow_decompose(const std::vector<double>& flow, int vehicles) const {
  if (flow.size() != arcs_.size()) throw ContractError("flow vector does not match the arc count");
  std::vector<double> net(nodes_.size(), 0.0);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (flow[a] < -1e-7) throw ContractError("negative arc flow");
    net[arcs_[a].tail] -= flow[a];
    net[arcs_[a].head] += flow[a];
  }
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    if (static_cast<int>(u) == root() || static_cast<int>(u) == terminal_) continue;
    if (std::abs(net[u]) > 1e-7) throw ContractError("flow conservation violated at node " + std::to_string(u));
  }
  if (std::abs(-net[root()] - vehicles) > 1e-6) throw ContractError("root outflow differs from the fleet size");

  std::vector<double> f(flow);
  std::vector<DagPath> out;
  auto outflow = [&]() {
    double s = 0;
    for (int a : out_[root()]) s += std::max(f[a], 0.0);
    return s;
  };
  for (std::size_t guard = 0; guard <= arcs_.size() && outflow() > 1e-9; ++guard) {
    DagPath p;
    double theta = kInf;
    int u = root();
    while (u != terminal_) {
      int next = -1;
      for (int a : out_[u]) {
        if (f[a] > 1e-9) {
          next = a;
          break;
        }
      }
      if (next < 0) break;
      p.arcs.push_back(next);
      theta = std::min(theta, f[next]);
      u = arcs_[next].head;
    }
    if (u != terminal_) break;  // only rounding residue is left
    for (int a : p.arcs) f[a] -= theta;
    p.weight = theta;
    out.push_back(std::move(p));
  }
  return out;
}

bool Dag::eliminate_cycle(const Route& route) {
  if (lazy_) throw ContractError("cycle elimination needs a compiled DAG");
  const auto path = std::as_const(*this).find_path(route);
  if (!path) return false;
  const auto cycles = find_cycles(route);
  if (cycles.empty()) return false;
  const int j = cycles.front().customer;
  const int first = cycles.front().first;
  const int second = cycles.front().second;

  // pn[k] is the node reached after k arcs.
  std::vector<int> pn{root()};
  for (int a : *path) pn.push_back(arcs_[a].head);

  std::vector<int> dup(second, -1);
  for (int k = first + 1; k < second; ++k) {
    State s = nodes_[pn[k]].state;
    s.memory.set(j);
    dup[k] = add_node(s, false);
  }
  for (int k = first + 1; k < second; ++k) {
    const std::vector<int> outs = out_[pn[k]];
    for (int a : outs) {
      const DagArc e = arcs_[a];
      if (e.to == j) continue;
      const int head = (k + 1 < second && a == (*path)[k]) ? dup[k + 1] : e.head;
      add_arc(dup[k], head, e.to, e.wraps);
    }
  }
  const int entry = (*path)[first];
  auto& old_in = in_[arcs_[entry].head];
  old_in.erase(std::find(old_in.begin(), old_in.end(), entry));
  arcs_[entry].head = dup[first + 1];
  in_[dup[first + 1]].push_back(entry);
  return true;
}

void Dag::prune() {
  const std::size_t n = nodes_.size();
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<int> stack{root()};
  fwd[root()] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int a : out_[u]) {
      const int h = arcs_[a].head;
      if (!fwd[h]) {
        fwd[h] = 1;
        stack.push_back(h);
      }
    }
  }
  stack.push_back(terminal_);
  bwd[terminal_] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int a : in_[u]) {
      const int t = arcs_[a].tail;
      if (!bwd[t]) {
        bwd[t] = 1;
        stack.push_back(t);
      }
    }
  }
  std::vector<int> remap(n, -1);
  std::vector<DagNode> nodes;
  for (std::size_t u = 0; u < n; ++u) {
    const bool keep = (fwd[u] && bwd[u]) || static_cast<int>(u) == root() || static_cast<int>(u) == terminal_;
    if (keep) {
      remap[u] = static_cast<int>(nodes.size());
      nodes.push_back(nodes_[u]);
    }
  }
  std::vector<DagArc> arcs;
  for (const DagArc& e : arcs_) {
    if (remap[e.tail] < 0 || remap[e.head] < 0) continue;
    DagArc c = e;
    c.tail = remap[e.tail];
    c.head = remap[e.head];
    arcs.push_back(c);
  }
  terminal_ = remap[terminal_];
  nodes_ = std::move(nodes);
  arcs_.clear();
  out_.assign(nodes_.size(), {});
  in_.assign(nodes_.size(), {});
  for (const DagArc& e : arcs) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back(e);
    out_[e.tail].push_back(id);
    in_[e.head].push_back(id);
  }
  if (lazy_) {
    index_.clear();
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
      if (!nodes_[u].terminal) index_.emplace(nodes_[u].state, static_cast<int>(u));
    }
  }
}

std::string Dag::to_text() const {
  std::ostringstream os;
  os << "dag nodes " << nodes_.size() << " arcs " << arcs_.size() << "\n";
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    const State& s = nodes_[u].state;
    os << "node " << u;
    if (static_cast<int>(u) == root()) os << " r";
    if (nodes_[u].terminal) {
      os << " t\n";
      continue;
    }
    os << " v=" << s.vertex << " d=" << s.load << " t=" << descale(s.time) << " U=" << set_text(s.memory)
       << " g=" << set_text(s.src) << "\n";
  }
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const DagArc& e = arcs_[a];
    os << "arc " << a << " " << e.tail << " " << e.head << " " << e.from << " " << e.to << " " << descale(e.cost);
    if (!e.wraps.empty()) os << " wraps=" << set_text(e.wraps);
    os << "\n";
  }
  return os.str();
}

}  // namespace vrpdecomp
