#include "vrpdecomp/pricing.hpp"

#include <algorithm>

#include "vrpdecomp/errors.hpp"

namespace vrpdecomp {

std::optional<Label> extend(const Instance& instance, const NgConfig& ng, const CutPool& cuts,
                            const ReducedCosts& rc, const Label& label, int j) {
  auto step = advance(instance, ng, cuts, label.state, j);
  if (!step) return std::nullopt;
  Label out;
  out.state = step->next;
  out.cost = label.cost + rc.arc(label.state.vertex, j) - rc.wrap_charge(step->wraps);
  return out;
}

bool dominates(const Label& a, const Label& b, const ReducedCosts& rc, bool check_memory) {
  if (a.state.load > b.state.load || a.state.time > b.state.time) return false;
  if (check_memory && !a.state.memory.subset_of(b.state.memory)) return false;
  // b may later collect SRC refunds that a cannot: charge a for each.
  double penalty = 0;
  a.state.src.minus(b.state.src).for_each([&](int m) { penalty -= rc.src(m); });
  return a.cost + penalty <= b.cost + 1e-9;
}

namespace {

Route trace(const std::vector<Label>& labels, int idx, int sink) {
  Route r;
  r.vertices.push_back(sink);
  for (int k = idx; k >= 0; k = labels[k].parent) r.vertices.push_back(labels[k].state.vertex);
  std::reverse(r.vertices.begin(), r.vertices.end());
  return r;
}

}  // namespace

PricingResult price_labeling(const Instance& instance, const NgConfig& ng, const CutPool& cuts,
                             const MasterDuals& duals, const PricingOptions& options) {
  const ReducedCosts rc(instance, cuts, duals);
  const int cap = instance.capacity();
  const int nv = instance.vertex_count();
  const int sink = instance.sink();
  const bool exact = options.mode == PricingMode::Exact;

  std::vector<Label> labels;
  std::vector<char> alive;
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(nv) * (cap + 1));
  auto at = [&](int v, int load) -> std::vector<int>& { return bucket[static_cast<std::size_t>(v) * (cap + 1) + load]; };

  labels.push_back({initial_state(instance), 0.0, -1});
  alive.push_back(1);
  at(instance.source(), 0).push_back(0);

  struct Done {
    double rc;
    int idx;  // -1 marks the empty route
  };
  std::vector<Done> done;
  PricingResult result;

  auto insert = [&](Label cand) {
    const int v = cand.state.vertex;
    const int ld = cand.state.load;
    for (int l = 0; l <= ld; ++l) {
      for (int k : at(v, l)) {
        if (alive[k] && dominates(labels[k], cand, rc, exact)) return;
      }
    }
    for (int l = ld; l <= cap; ++l) {
      auto& b = at(v, l);
      std::erase_if(b, [&](int k) {
        if (alive[k] && dominates(cand, labels[k], rc, exact)) alive[k] = 0;
        return !alive[k];
      });
    }
    labels.push_back(cand);
    alive.push_back(1);
    at(v, ld).push_back(static_cast<int>(labels.size()) - 1);
  };

  for (int load = 0; load <= cap; ++load) {
    for (int v = 0; v < nv; ++v) {
      if (v == sink) continue;
      // Extensions only land in higher loads, so this bucket is stable.
      const std::vector<int> current = at(v, load);
      for (int idx : current) {
        if (!alive[idx]) continue;
        const Label base = labels[idx];
        for (int j = 1; j < nv; ++j) {
          auto next = extend(instance, ng, cuts, rc, base, j);
          if (!next) continue;
          if (j == sink) {
            if (v == instance.source() && !options.include_empty) continue;
            done.push_back({next->cost, v == instance.source() ? -1 : idx});
            continue;
          }
          next->parent = idx;
          insert(*next);
        }
      }
    }
  }

  result.labels = static_cast<std::int64_t>(labels.size());
  for (const auto& d : done) result.best = std::min(result.best, d.rc);

  std::sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.rc < b.rc; });
  std::vector<PricedRoute> picked;
  for (std::size_t k = 0; k < done.size(); ++k) {
    if (done[k].rc >= options.threshold) break;
    // Keep exact ties at the cut-off so the final order is by vertex sequence.
    if (static_cast<int>(picked.size()) >= options.limit && done[k].rc > picked.back().reduced_cost) break;
    Route r = done[k].idx < 0 ? Route{{instance.source(), sink}} : trace(labels, done[k].idx, sink);
    picked.push_back({std::move(r), done[k].rc});
  }
  std::sort(picked.begin(), picked.end(), [](const PricedRoute& a, const PricedRoute& b) {
    if (a.reduced_cost != b.reduced_cost) return a.reduced_cost < b.reduced_cost;
    return a.route < b.route;
  });
  if (static_cast<int>(picked.size()) > options.limit) picked.resize(options.limit);
  result.routes = std::move(picked);
  return result;
}

bool is_ng_route(const Instance& instance, const NgConfig& ng, const Route& route) {
  const CutPool none(instance.customers());
  const auto& v = route.vertices;
  if (v.size() < 2 || v.front() != instance.source() || v.back() != instance.sink()) return false;
  State s = initial_state(instance);
  for (std::size_t k = 1; k < v.size(); ++k) {
    auto step = advance(instance, ng, none, s, v[k]);
    if (!step) return false;
    s = step->next;
  }
  return true;
}

std::vector<Route> enumerate_ng_routes(const Instance& instance, const NgConfig& ng, std::size_t cap) {
  const CutPool none(instance.customers());
  std::vector<Route> out;
  std::vector<int> path{instance.source()};
  const int sink = instance.sink();
  auto dfs = [&](auto&& self, const State& s) -> void {
    for (int j = 1; j <= sink; ++j) {
      auto step = advance(instance, ng, none, s, j);
      if (!step) continue;
      if (j == sink) {
        if (path.size() == 1) continue;
        if (out.size() >= cap) throw CompileOverflow("more than " + std::to_string(cap) + " ng-routes");
        Route r{path};
        r.vertices.push_back(sink);
        out.push_back(std::move(r));
        continue;
      }
      path.push_back(j);
      self(self, step->next);
      path.pop_back();
    }
  };
  dfs(dfs, initial_state(instance));
  return out;
}

}  // namespace vrpdecomp
