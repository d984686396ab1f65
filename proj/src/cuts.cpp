#include "vrpdecomp/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "vrpdecomp/errors.hpp"

namespace vrpdecomp {

int CutPool::add_gsec(GsecCut cut) {
  gsecs_.push_back(cut);
  return static_cast<int>(gsecs_.size()) - 1;
}

int CutPool::add_src(SrcCut cut) {
  std::sort(cut.customers.begin(), cut.customers.end());
  if (cut.customers.size() < 2 || cut.customers.size() > 3 ||
      std::adjacent_find(cut.customers.begin(), cut.customers.end()) != cut.customers.end()) {
    throw ContractError("subset-row cut needs two or three distinct customers");
  }
  if (srcs_.size() >= static_cast<std::size_t>(SmallBitset::kCapacity)) {
    throw ContractError("subset-row cut pool is full");
  }
  const int id = static_cast<int>(srcs_.size());
  srcs_.push_back(cut);
  for (int c : cut.customers) of_customer_.at(c).push_back(id);
  return id;
}

bool CutPool::has_src(const SrcCut& cut) const {
  auto t = cut.customers;
  std::sort(t.begin(), t.end());
  return std::any_of(srcs_.begin(), srcs_.end(), [&](const SrcCut& s) { return s.customers == t; });
}

GsecCut capacity_gsec(const Instance& instance) {
  GsecCut cut;
  for (int i = 1; i <= instance.customers(); ++i) cut.members.set(i);
  const int c = instance.capacity();
  cut.rhs = (instance.total_demand() + c - 1) / c;
  return cut;
}

int gsec_coeff(const GsecCut& cut, const Route& route) {
  int k = 0;
  for (std::size_t p = 1; p < route.vertices.size(); ++p) {
    if (gsec_enters(cut, route.vertices[p - 1], route.vertices[p])) ++k;
  }
  return k;
}

int src_coeff(const SrcCut& cut, const Route& route) {
  int hits = 0;
  for (int v : route.vertices) {
    if (std::find(cut.customers.begin(), cut.customers.end(), v) != cut.customers.end()) ++hits;
  }
  return hits / 2;
}

SmallBitset src_advance(const CutPool& pool, SmallBitset& state, int customer) {
  SmallBitset wraps;
  for (int m : pool.srcs_of(customer)) {
    if (state.test(m)) wraps.set(m);
    state.flip(m);
  }
  return wraps;
}

std::vector<SrcCut> separate_src3(const Instance& instance, const std::vector<WeightedRoute>& solution,
                                  const CutPool& pool, const SrcSeparationOptions& options) {
  const int n = instance.customers();
  const int room = std::min(options.max_per_round,
                            options.max_total - static_cast<int>(pool.srcs().size()));
  if (room <= 0) return {};

  // Visit counts per customer for every column in the support.
  struct Col {
    std::vector<int> visits;
    double weight;
  };
  std::vector<Col> cols;
  for (const auto& wr : solution) {
    if (wr.weight <= 1e-9) continue;
    cols.push_back({visit_counts(instance, *wr.route), wr.weight});
  }

  std::vector<std::tuple<double, SrcCut>> found;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        double lhs = 0;
        for (const auto& col : cols) {
          const int hits = col.visits[a] + col.visits[b] + col.visits[c];
          if (hits >= 2) lhs += (hits / 2) * col.weight;
        }
        const double violation = lhs - 1.0;
        if (violation < options.min_violation) continue;
        SrcCut cut{{a, b, c}};
        if (pool.has_src(cut)) continue;
        found.emplace_back(violation, cut);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::get<1>(x).customers < std::get<1>(y).customers;
  });

  // Per-customer limits count cuts already in the pool.
  std::vector<int> per(n + 2, 0);
  for (const auto& s : pool.srcs()) {
    for (int c : s.customers) ++per[c];
  }
  std::vector<SrcCut> out;
  for (const auto& [viol, cut] : found) {
    if (static_cast<int>(out.size()) >= room) break;
    const auto& t = cut.customers;
    if (per[t[0]] >= options.max_per_customer || per[t[1]] >= options.max_per_customer ||
        per[t[2]] >= options.max_per_customer) {
      continue;
    }
    for (int c : t) ++per[c];
    out.push_back(cut);
  }
  return out;
}

}  // namespace vrpdecomp
