#pragma once

#include <vector>

#include "vrpdecomp/bitset.hpp"
#include "vrpdecomp/instance.hpp"

namespace vrpdecomp {

/// Per-customer ng-neighbourhoods M_i. Each M_i holds i and its `delta`
/// closest customers by arc cost from i (ties by lower index). Strengthening
/// may later grow individual sets beyond that rule.
class NgConfig {
 public:
  NgConfig() = default;
  NgConfig(const Instance& instance, int delta);

  /// delta = n-1: every set is N, so ng-routes are elementary.
  static NgConfig elementary(const Instance& instance);

  int delta() const { return delta_; }
  int customers() const { return static_cast<int>(sets_.size()) - 2; }
  const SmallBitset& neighbours(int customer) const { return sets_[customer]; }

  /// Adds `customer` to M_target. Returns false when already present.
  bool add(int target, int customer);

  bool operator==(const NgConfig&) const = default;

 private:
  int delta_ = 0;
  std::vector<SmallBitset> sets_;  // indexed by vertex; depots empty
};

}  // namespace vrpdecomp
