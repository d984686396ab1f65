#include "vrpdecomp/route.hpp"

#include <algorithm>
#include <unordered_map>

namespace vrpdecomp {

std::size_t RouteHash::operator()(const Route& r) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int v : r.vertices) {
    h ^= static_cast<std::size_t>(v) + 0x9E3779B97F4A7C15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

Scaled route_cost(const Instance& instance, const Route& route) {
  Scaled c = 0;
  for (std::size_t k = 1; k < route.vertices.size(); ++k) c += instance.cost(route.vertices[k - 1], route.vertices[k]);
  return c;
}

std::vector<int> visit_counts(const Instance& instance, const Route& route) {
  std::vector<int> z(instance.vertex_count(), 0);
  for (int v : route.vertices) {
    if (instance.is_customer(v)) ++z[v];
  }
  return z;
}

bool route_resource_feasible(const Instance& instance, const Route& route) {
  const auto& v = route.vertices;
  if (v.size() < 2 || v.front() != instance.source() || v.back() != instance.sink()) return false;
  int load = 0;
  Scaled t = instance.horizon_start();
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!instance.has_arc(v[k - 1], v[k])) return false;
    load += instance.demand(v[k]);
    t = std::max(t + instance.travel(v[k - 1], v[k]), instance.ready(v[k]));
    if (load > instance.capacity() || t > instance.due(v[k])) return false;
  }
  return true;
}

std::string to_string(const Instance& instance, const Route& route) {
  std::string s;
  for (std::size_t k = 0; k < route.vertices.size(); ++k) {
    if (k) s += '-';
    const int v = route.vertices[k];
    s += std::to_string(v == instance.sink() ? 0 : v);
  }
  return s;
}

std::vector<Cycle> find_cycles(const Route& route) {
  std::vector<Cycle> out;
  std::unordered_map<int, int> last;
  const auto& v = route.vertices;
  // Depots are the first and last entries and never repeat inside.
  for (int k = 1; k + 1 < static_cast<int>(v.size()); ++k) {
    auto it = last.find(v[k]);
    if (it != last.end()) out.push_back({v[k], it->second, k});
    last[v[k]] = k;
  }
  return out;
}

bool is_elementary(const Route& route) { return find_cycles(route).empty(); }

}  // namespace vrpdecomp
