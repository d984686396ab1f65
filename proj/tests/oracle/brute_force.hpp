#pragma once

// Route enumeration for tests, written from the definitions rather than the
// labeling state machine. A revisit of customer i is allowed only if some
// vertex visited strictly between the two visits does not have i in its
// neighbourhood.

#include <algorithm>
#include <vector>

#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/ng.hpp"
#include "vrpdecomp/route.hpp"
#include "vrpdecomp/state.hpp"

namespace oracle {

inline bool ng_feasible(const vrpdecomp::NgConfig& ng, const std::vector<int>& seq) {
  // seq holds customers only.
  for (std::size_t q = 0; q < seq.size(); ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      if (seq[p] != seq[q]) continue;
      bool forgotten = false;
      for (std::size_t r = p + 1; r < q; ++r) {
        if (!ng.neighbours(seq[r]).test(seq[p])) forgotten = true;
      }
      if (!forgotten) return false;
    }
  }
  return true;
}

/// Every non-empty resource-feasible ng-route.
inline std::vector<vrpdecomp::Route> all_routes(const vrpdecomp::Instance& inst, const vrpdecomp::NgConfig& ng) {
  std::vector<vrpdecomp::Route> out;
  std::vector<int> seq;
  const int n = inst.customers();
  auto rec = [&](auto&& self, int last, int load, vrpdecomp::Scaled t) -> void {
    if (!seq.empty() && inst.has_arc(last, inst.sink())) {
      const vrpdecomp::Scaled ts = std::max(t + inst.travel(last, inst.sink()), inst.ready(inst.sink()));
      if (ts <= inst.due(inst.sink())) {
        vrpdecomp::Route r;
        r.vertices.push_back(inst.source());
        r.vertices.insert(r.vertices.end(), seq.begin(), seq.end());
        r.vertices.push_back(inst.sink());
        out.push_back(r);
      }
    }
    for (int j = 1; j <= n; ++j) {
      if (j == last || !inst.has_arc(last, j)) continue;
      const int l2 = load + inst.demand(j);
      if (l2 > inst.capacity()) continue;
      const vrpdecomp::Scaled t2 = std::max(t + inst.travel(last, j), inst.ready(j));
      if (t2 > inst.due(j)) continue;
      seq.push_back(j);
      if (ng_feasible(ng, seq)) self(self, j, l2, t2);
      seq.pop_back();
    }
  };
  rec(rec, inst.source(), 0, inst.horizon_start());
  std::sort(out.begin(), out.end());
  return out;
}

/// Reduced cost from route-level coefficients.
inline double reduced_cost(const vrpdecomp::Instance& inst, const vrpdecomp::CutPool& cuts,
                           const vrpdecomp::MasterDuals& d, const vrpdecomp::Route& r) {
  double rc = vrpdecomp::descale(vrpdecomp::route_cost(inst, r)) - d.vertex[0];
  const auto z = vrpdecomp::visit_counts(inst, r);
  for (int i = 1; i <= inst.customers(); ++i) rc -= z[i] * d.vertex[i];
  for (std::size_t g = 0; g < cuts.gsecs().size(); ++g) rc -= vrpdecomp::gsec_coeff(cuts.gsecs()[g], r) * d.gsec[g];
  for (std::size_t m = 0; m < cuts.srcs().size(); ++m) rc -= vrpdecomp::src_coeff(cuts.srcs()[m], r) * d.src[m];
  return rc;
}

}  // namespace oracle
