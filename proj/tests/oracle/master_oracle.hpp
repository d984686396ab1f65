#pragma once

// Full aggregated master over an explicit route list, solved in exact
// arithmetic. Coefficients are counted directly from the vertex sequences.

#include <algorithm>
#include <vector>

#include "oracle/rational_lp.hpp"
#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/instance.hpp"
#include "vrpdecomp/route.hpp"

namespace oracle {

inline ExactLp full_master(const vrpdecomp::Instance& inst, const vrpdecomp::CutPool& cuts,
                           const std::vector<vrpdecomp::Route>& routes) {
  ExactLp lp;
  const int n = inst.customers();
  for (int i = 1; i <= n; ++i) lp.add_row(Sense::Eq, 1);
  const int conv = lp.add_row(Sense::Eq, inst.vehicles());
  std::vector<int> gsec_rows, src_rows;
  for (const auto& g : cuts.gsecs()) gsec_rows.push_back(lp.add_row(Sense::Ge, g.rhs));
  for (std::size_t m = 0; m < cuts.srcs().size(); ++m) src_rows.push_back(lp.add_row(Sense::Le, 1));

  std::vector<vrpdecomp::Route> all = routes;
  all.push_back(vrpdecomp::Route{{inst.source(), inst.sink()}});
  for (const auto& r : all) {
    const auto& v = r.vertices;
    long long tenths = 0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) tenths += inst.cost(v[k], v[k + 1]);
    const int c = lp.add_column(Rational(tenths, 10));
    lp.a[conv][c] = 1;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) lp.a[v[k] - 1][c] += 1;
    for (std::size_t g = 0; g < gsec_rows.size(); ++g) {
      const auto& s = cuts.gsecs()[g].members;
      int enter = 0;
      for (std::size_t k = 0; k + 1 < v.size(); ++k) enter += (!s.test(v[k]) && s.test(v[k + 1])) ? 1 : 0;
      lp.a[gsec_rows[g]][c] = enter;
    }
    for (std::size_t m = 0; m < src_rows.size(); ++m) {
      const auto& t = cuts.srcs()[m].customers;
      int hits = 0;
      for (int x : v) hits += std::count(t.begin(), t.end(), x) ? 1 : 0;
      lp.a[src_rows[m]][c] = hits / 2;
    }
  }
  return lp;
}

/// Optimal objective of the full master, as a double.
inline double full_master_value(const vrpdecomp::Instance& inst, const vrpdecomp::CutPool& cuts,
                                const std::vector<vrpdecomp::Route>& routes) {
  const auto sol = solve(full_master(inst, cuts, routes));
  if (sol.status != Status::Optimal) return std::numeric_limits<double>::infinity();
  return to_double(sol.objective);
}

}  // namespace oracle
