#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace vrpdecomp {

/// Times, distances and costs are stored as integers in tenths of a unit.
using Scaled = std::int64_t;
inline constexpr int kScale = 10;

inline double descale(Scaled v) { return static_cast<double>(v) / kScale; }

/// Truncates a nonnegative distance to one decimal and returns it in tenths.
Scaled truncate_to_tenths(double distance);

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

/// A VRPTW instance over V = {source} ∪ N ∪ {sink}. Vertex 0 is the source
/// depot, customers are 1..n and vertex n+1 is the sink depot. Immutable once
/// built; all accessors are const.
class Instance {
 public:
  /// Raw per-site data as read from a Solomon file (site 0 is the depot).
  struct Site {
    Point at;
    int demand = 0;
    Scaled ready = 0;
    Scaled due = 0;
    Scaled service = 0;
    bool operator==(const Site&) const = default;
  };

  /// Builds an instance with Euclidean (truncated) distances from sites.
  static Instance from_sites(std::string name, int vehicles, int capacity, std::vector<Site> sites);

  /// Builds an instance from explicit matrices indexed by V (size n+2).
  /// `present[i][j]` marks arcs of A; absent arcs are never traversed.
  static Instance from_matrices(std::string name, int vehicles, int capacity, std::vector<int> demand,
                                std::vector<Scaled> ready, std::vector<Scaled> due,
                                std::vector<std::vector<Scaled>> cost,
                                std::vector<std::vector<Scaled>> travel,
                                std::vector<std::vector<bool>> present);

  const std::string& name() const { return name_; }
  int customers() const { return n_; }
  int vertex_count() const { return n_ + 2; }
  int source() const { return 0; }
  int sink() const { return n_ + 1; }
  bool is_customer(int v) const { return v >= 1 && v <= n_; }
  int vehicles() const { return vehicles_; }
  int capacity() const { return capacity_; }

  int demand(int v) const { return demand_[v]; }
  Scaled ready(int v) const { return ready_[v]; }
  Scaled due(int v) const { return due_[v]; }
  Scaled horizon_start() const { return ready_[0]; }
  Scaled horizon_end() const { return due_[0]; }

  bool has_arc(int i, int j) const { return present_[idx(i, j)] != 0; }
  Scaled cost(int i, int j) const { return cost_[idx(i, j)]; }
  Scaled travel(int i, int j) const { return travel_[idx(i, j)]; }

  int total_demand() const;

  /// Sites as parsed; empty for matrix-built instances.
  const std::vector<Site>& sites() const { return sites_; }

  /// Keeps the first `n` customers in file order; the name gains a "-n" suffix.
  Instance subset(int n) const;

  bool operator==(const Instance&) const = default;

 private:
  Instance() = default;
  void validate() const;
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * (n_ + 2) + j; }

  std::string name_;
  int n_ = 0;
  int vehicles_ = 0;
  int capacity_ = 0;
  std::vector<int> demand_;
  std::vector<Scaled> ready_;
  std::vector<Scaled> due_;
  std::vector<Scaled> cost_;
  std::vector<Scaled> travel_;
  std::vector<char> present_;
  std::vector<Site> sites_;
};

/// Parses the Solomon layout. Throws ParseError naming the line.
Instance parse_solomon(std::istream& in);
Instance parse_solomon_text(const std::string& text);
Instance load_solomon(const std::string& path);

/// Emits the Solomon layout; only valid for site-based instances.
std::string to_solomon(const Instance& instance);

/// The three-customer instance used throughout the documentation:
/// K=2, C=3, unit demands, c = tau, arc (1,3) absent.
Instance builtin_example();

}  // namespace vrpdecomp
