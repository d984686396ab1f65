#include "vrpdecomp/strengthening.hpp"

namespace vrpdecomp {

NgConfig dssr_step(const NgConfig& ng, const std::vector<Route>& conflicting, int* additions) {
  NgConfig out = ng;
  int added = 0;
  for (const auto& r : conflicting) {
    for (const auto& c : find_cycles(r)) {
      for (int k = c.first + 1; k < c.second; ++k) {
        added += out.add(r.vertices[k], c.customer) ? 1 : 0;
      }
    }
  }
  if (additions) *additions = added;
  return out;
}

CeOutcome ce_step(Dag& dag, const std::vector<Route>& conflicting) {
  CeOutcome out;
  for (const auto& r : conflicting) {
    if (dag.eliminate_cycle(r)) {
      ++out.eliminated;
      out.applied.push_back(r);
    } else {
      ++out.skipped;
    }
  }
  dag.prune();
  return out;
}

}  // namespace vrpdecomp
