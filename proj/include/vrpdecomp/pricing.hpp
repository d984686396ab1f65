#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/ng.hpp"
#include "vrpdecomp/route.hpp"
#include "vrpdecomp/state.hpp"

namespace vrpdecomp {

enum class PricingMode { Exact, Heuristic };

struct PricingOptions {
  PricingMode mode = PricingMode::Exact;
  int limit = 200;
  /// Routes are returned only below this reduced cost.
  double threshold = -1e-6;
  /// Also consider the direct source-sink route.
  bool include_empty = false;
};

struct PricedRoute {
  Route route;
  double reduced_cost = 0;
};

struct PricingResult {
  /// At most `limit` routes, by reduced cost then vertex sequence.
  std::vector<PricedRoute> routes;
  /// Smallest reduced cost seen over completed routes (+inf if none). Exact
  /// mode makes this the true minimum.
  double best = std::numeric_limits<double>::infinity();
  std::int64_t labels = 0;
};

struct Label {
  State state;
  double cost = 0;
  int parent = -1;
};

/// Extends a label along (label.vertex, j); the returned label has no parent.
std::optional<Label> extend(const Instance& instance, const NgConfig& ng, const CutPool& cuts,
                            const ReducedCosts& rc, const Label& label, int j);

/// Label `a` dominates `b` at the same vertex. With `check_memory` false the
/// ng-memory condition is skipped (heuristic dominance).
bool dominates(const Label& a, const Label& b, const ReducedCosts& rc, bool check_memory = true);

/// Bucket labeling over (vertex, load), processed by increasing load.
PricingResult price_labeling(const Instance& instance, const NgConfig& ng, const CutPool& cuts,
                             const MasterDuals& duals, const PricingOptions& options = {});

/// The route is resource feasible and every revisit is allowed by `ng`.
bool is_ng_route(const Instance& instance, const NgConfig& ng, const Route& route);

/// All non-empty ng-routes by depth-first search. Throws CompileOverflow past
/// `cap` routes.
std::vector<Route> enumerate_ng_routes(const Instance& instance, const NgConfig& ng,
                                       std::size_t cap = 5'000'000);

}  // namespace vrpdecomp
