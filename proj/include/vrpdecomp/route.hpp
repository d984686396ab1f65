#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "vrpdecomp/instance.hpp"

namespace vrpdecomp {

/// Vertex sequence from the source depot (0) to the sink depot (n+1).
struct Route {
  std::vector<int> vertices;

  bool empty_route() const { return vertices.size() <= 2; }
  auto operator<=>(const Route&) const = default;
  bool operator==(const Route&) const = default;
};

struct RouteHash {
  std::size_t operator()(const Route& r) const noexcept;
};

/// Sum of arc costs, in tenths.
Scaled route_cost(const Instance& instance, const Route& route);

/// Visit count per vertex (size n+2); depots stay 0.
std::vector<int> visit_counts(const Instance& instance, const Route& route);

/// Load, windows and arc presence are respected (cycles are not checked).
bool route_resource_feasible(const Instance& instance, const Route& route);

/// "0-1-2-0" style, both depot copies printed as 0.
std::string to_string(const Instance& instance, const Route& route);

/// A minimal revisit cycle: customer visited at `first` and again at `second`
/// (indices into Route::vertices) with no repeat of it in between.
struct Cycle {
  int customer = 0;
  int first = 0;
  int second = 0;
  bool operator==(const Cycle&) const = default;
};

/// Every minimal revisit cycle, ordered by position of the closing visit.
std::vector<Cycle> find_cycles(const Route& route);

bool is_elementary(const Route& route);

}  // namespace vrpdecomp
