#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "vrpdecomp/bitset.hpp"
#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/ng.hpp"

namespace vrpdecomp {

/// Resource state of a partial ng-route: vertex, load, earliest service
/// start, ng-memory U and half-unit SRC resources.
struct State {
  int vertex = 0;
  int load = 0;
  Scaled time = 0;
  SmallBitset memory;
  SmallBitset src;

  auto operator<=>(const State&) const = default;
  bool operator==(const State&) const = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept;
};

State initial_state(const Instance& instance);

struct Step {
  State next;
  SmallBitset wraps;  // SRCs whose coefficient grows on this arc
};

/// Extends `s` along arc (s.vertex, j). Rejects missing arcs, capacity and
/// window violations and revisits forbidden by the ng-memory. Arriving at the
/// sink clears memory and SRC state.
std::optional<Step> advance(const Instance& instance, const NgConfig& ng, const CutPool& cuts, const State& s,
                            int j);

/// Master duals in the shared layout: `vertex[0]` is the convexity (or source
/// flow) dual, `vertex[i]` the partition dual of customer i.
struct MasterDuals {
  std::vector<double> vertex;
  std::vector<double> gsec;
  std::vector<double> src;

  static MasterDuals zero(const Instance& instance, const CutPool& cuts);
};

/// Reduced arc costs under fixed duals. SRC terms are charged separately
/// through wraps.
class ReducedCosts {
 public:
  ReducedCosts(const Instance& instance, const CutPool& cuts, const MasterDuals& duals);

  double arc(int i, int j) const { return arc_[static_cast<std::size_t>(i) * width_ + j]; }
  double src(int m) const { return src_[m]; }
  /// Sum of SRC duals over the wrapped cuts (to subtract).
  double wrap_charge(const SmallBitset& wraps) const;

 private:
  int width_ = 0;
  std::vector<double> arc_;
  std::vector<double> src_;
};

}  // namespace vrpdecomp
