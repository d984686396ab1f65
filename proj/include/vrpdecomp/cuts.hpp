#pragma once

#include <vector>

#include "vrpdecomp/bitset.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/route.hpp"

namespace vrpdecomp {

/// Capacity cut: at least `rhs` vehicles enter the customer set `members`.
struct GsecCut {
  SmallBitset members;
  int rhs = 0;
  bool operator==(const GsecCut&) const = default;
};

/// Subset-row cut with multiplier 1/2 on each listed customer and rhs 1.
/// Separation produces triplets; two-customer cuts are accepted as well.
struct SrcCut {
  std::vector<int> customers;  // sorted, distinct
  bool operator==(const SrcCut&) const = default;
};

/// All cuts currently in a master. SRC resources are indexed by position in
/// `srcs()`.
class CutPool {
 public:
  explicit CutPool(int customers = 0) : of_customer_(customers + 2) {}

  int add_gsec(GsecCut cut);
  int add_src(SrcCut cut);

  const std::vector<GsecCut>& gsecs() const { return gsecs_; }
  const std::vector<SrcCut>& srcs() const { return srcs_; }
  bool has_src(const SrcCut& cut) const;

  /// Indices of SRC cuts whose triplet contains `customer`.
  const std::vector<int>& srcs_of(int customer) const { return of_customer_[customer]; }

  bool operator==(const CutPool&) const = default;

 private:
  std::vector<GsecCut> gsecs_;
  std::vector<SrcCut> srcs_;
  std::vector<std::vector<int>> of_customer_;
};

/// The a-priori capacity cut over all customers: kappa = ceil(total demand / C).
GsecCut capacity_gsec(const Instance& instance);

/// Number of arcs of the route entering the set.
int gsec_coeff(const GsecCut& cut, const Route& route);
inline bool gsec_enters(const GsecCut& cut, int from, int to) {
  return !cut.members.test(from) && cut.members.test(to);
}

/// floor(visits to the cut's customers / 2).
int src_coeff(const SrcCut& cut, const Route& route);

/// Advances the half-unit SRC resource vector on arrival at `customer`.
/// Returns the cuts whose coefficient grows by one on this step.
SmallBitset src_advance(const CutPool& pool, SmallBitset& state, int customer);

struct SrcSeparationOptions {
  double min_violation = 0.1;
  int max_per_round = 30;
  int max_per_customer = 5;
  int max_total = 100;
};

/// A column in a master's primal solution, as the separator sees it.
struct WeightedRoute {
  const Route* route = nullptr;
  double weight = 0;
};

/// Enumerates every customer triplet and returns the most violated SRCs not
/// already in the pool, ordered by decreasing violation (ties by triplet).
std::vector<SrcCut> separate_src3(const Instance& instance, const std::vector<WeightedRoute>& solution,
                                  const CutPool& pool, const SrcSeparationOptions& options);

}  // namespace vrpdecomp
