#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/ng.hpp"
#include "vrpdecomp/route.hpp"
#include "vrpdecomp/state.hpp"

namespace vrpdecomp {

struct DagNode {
  State state;
  bool terminal = false;
};

struct DagArc {
  int tail = 0;
  int head = 0;
  int from = 0;  // instance vertex of the tail
  int to = 0;    // instance vertex of the head
  Scaled cost = 0;
  SmallBitset wraps;  // SRCs whose coefficient grows on this arc
};

/// One r-t path through the DAG with a weight (flow value or 1).
struct DagPath {
  std::vector<int> arcs;
  double weight = 1.0;
};

struct PricedPath {
  std::vector<int> arcs;
  double reduced_cost = 0;
};

/// Layered DAG of ng-route states. Node 0 is the root r (source state); the
/// terminal t stands for every arrival at the sink depot. Each node has at most
/// one out-arc per instance vertex, so a route maps to at most one path.
///
/// Compiled DAGs number nodes root first, then by load layer with nodes in a
/// layer ordered by (vertex, time, memory, SRC state), then t. Arcs between
/// non-terminal nodes come first ordered by (tail load, tail vertex, head
/// vertex, tail id), then r->t, then arcs into t by tail id.
class Dag {
 public:
  static constexpr std::size_t kDefaultArcCap = 50'000'000;

  static Dag compile(const Instance& instance, const NgConfig& ng, const CutPool& cuts,
                     std::size_t arc_cap = kDefaultArcCap);
  /// Starts with r and t only; states are created as routes are lifted.
  static Dag lazy(const Instance& instance, const NgConfig& ng, const CutPool& cuts);

  const Instance& instance() const { return *instance_; }
  const NgConfig& ng() const { return ng_; }
  const CutPool& cuts() const { return cuts_; }
  bool is_lazy() const { return lazy_; }

  int root() const { return 0; }
  int terminal() const { return terminal_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const DagNode& node(int id) const { return nodes_[id]; }
  const DagArc& arc(int id) const { return arcs_[id]; }
  const std::vector<int>& out_arcs(int id) const { return out_[id]; }
  const std::vector<int>& in_arcs(int id) const { return in_[id]; }
  /// The r->t arc, or -1.
  int empty_arc() const;

  /// Path of `route`; nullopt if some step has no arc. Lazy DAGs create
  /// missing states when the step is feasible.
  std::optional<std::vector<int>> find_path(const Route& route);
  std::optional<std::vector<int>> find_path(const Route& route) const;
  /// As find_path but throws LiftFailure.
  std::vector<int> lift_route(const Route& route);
  Route project(const std::vector<int>& arcs) const;

  /// Nodes ordered so every arc goes forward.
  std::vector<int> topological_order() const;

  /// Number of r-t paths (saturating at UINT64_MAX), optionally restricted to
  /// arcs with mask[a] != 0.
  std::uint64_t count_paths() const;
  std::uint64_t count_paths(const std::vector<char>& arc_mask) const;

  double arc_reduced_cost(int a, const ReducedCosts& rc) const;

  /// Minimum reduced-cost r-t path; ties go to the lexicographically smallest
  /// arc-id sequence. The r->t arc is skipped unless `include_empty`.
  std::optional<PricedPath> shortest_path(const ReducedCosts& rc, bool include_empty = false) const;

  /// Forward DP keeping the best path into every node, then one candidate per
  /// arc into t. `width` > 0 relaxes only that many cheapest out-arcs per
  /// node (heuristic). Returns candidates below `threshold`, best first, plus
  /// the best value seen through `best`.
  std::vector<PricedPath> price(const ReducedCosts& rc, int width, int limit, double threshold,
                                bool include_empty, double* best = nullptr) const;

  /// Splits arc flows into weighted paths. Requires conservation within 1e-7
  /// and `vehicles` units leaving r.
  std::vector<DagPath> flow_decompose(const std::vector<double>& flow, int vehicles) const;

  /// Cycle elimination on the first revisit cycle of `route`. Returns false
  /// when the route has no path here or is elementary. Leaves dead nodes for
  /// prune().
  bool eliminate_cycle(const Route& route);
  /// Drops nodes that are unreachable from r or cannot reach t, and renumbers
  /// the rest keeping relative order.
  void prune();

  /// "node <id> v=.. d=.. t=.. U={..} g={..}" and "arc <id> <tail> <head> <from> <to> <cost>".
  std::string to_text() const;

 private:
  Dag() = default;
  int add_node(const State& s, bool terminal);
  int add_arc(int tail, int head, int to, const SmallBitset& wraps);
  int out_arc_to(int node, int vertex) const;

  const Instance* instance_ = nullptr;
  NgConfig ng_;
  CutPool cuts_;
  bool lazy_ = false;
  int terminal_ = 1;
  std::vector<DagNode> nodes_;
  std::vector<DagArc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::unordered_map<State, int, StateHash> index_;  // lazy mode only
};

}  // namespace vrpdecomp
