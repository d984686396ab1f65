#include "vrpdecomp/state.hpp"

#include <algorithm>

namespace vrpdecomp {

std::size_t StateHash::operator()(const State& s) const noexcept {
  std::size_t h = static_cast<std::size_t>(s.vertex) * 0x9E3779B97F4A7C15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(s.load));
  mix(static_cast<std::size_t>(s.time));
  mix(s.memory.hash());
  mix(s.src.hash());
  return h;
}

State initial_state(const Instance& instance) {
  State s;
  s.vertex = instance.source();
  s.time = instance.horizon_start();
  return s;
}

std::optional<Step> advance(const Instance& instance, const NgConfig& ng, const CutPool& cuts, const State& s,
                            int j) {
  const int i = s.vertex;
  if (i == j || !instance.has_arc(i, j) || j == instance.source() || i == instance.sink()) return std::nullopt;
  Step out;
  State& t = out.next;
  t.vertex = j;
  t.load = s.load + instance.demand(j);
  if (t.load > instance.capacity()) return std::nullopt;
  t.time = std::max(s.time + instance.travel(i, j), instance.ready(j));
  if (t.time > instance.due(j)) return std::nullopt;
  if (j == instance.sink()) return out;
  if (s.memory.test(j)) return std::nullopt;
  t.memory = s.memory & ng.neighbours(j);
  t.memory.set(j);
  t.src = s.src;
  out.wraps = src_advance(cuts, t.src, j);
  return out;
}

MasterDuals MasterDuals::zero(const Instance& instance, const CutPool& cuts) {
  MasterDuals d;
  d.vertex.assign(instance.vertex_count(), 0.0);
  d.gsec.assign(cuts.gsecs().size(), 0.0);
  d.src.assign(cuts.srcs().size(), 0.0);
  return d;
}

ReducedCosts::ReducedCosts(const Instance& instance, const CutPool& cuts, const MasterDuals& duals)
    : width_(instance.vertex_count()), src_(duals.src) {
  arc_.assign(static_cast<std::size_t>(width_) * width_, 0.0);
  for (int i = 0; i < width_; ++i) {
    for (int j = 0; j < width_; ++j) {
      if (!instance.has_arc(i, j)) continue;
      double r = descale(instance.cost(i, j)) - duals.vertex[i];
      for (std::size_t g = 0; g < cuts.gsecs().size(); ++g) {
        if (gsec_enters(cuts.gsecs()[g], i, j)) r -= duals.gsec[g];
      }
      arc_[static_cast<std::size_t>(i) * width_ + j] = r;
    }
  }
}

double ReducedCosts::wrap_charge(const SmallBitset& wraps) const {
  double s = 0;
  wraps.for_each([&](int m) { s += src_[m]; });
  return s;
}

}  // namespace vrpdecomp
