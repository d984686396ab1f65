#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vrpdecomp {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct SparseEntry {
  int index = 0;
  double value = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  double artificial_cost = 1e7;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 1000;
  /// Pivots between fresh factorizations.
  int refactor_every = 128;
  std::int64_t iteration_limit = 5'000'000;
};

/// Minimization LP over nonnegative columns with optional finite upper bounds.
/// Rows and columns carry stable ids that survive later additions; dropped
/// column ids are never reused. Every row owns an internal artificial with a
/// large cost so that any basis extension stays primal feasible. When an
/// optimum still uses an artificial the status is Infeasible, but primal and
/// dual values of the penalized problem remain available (column generation
/// prices against them).
class LinearProgram {
 public:
  explicit LinearProgram(SimplexOptions options = {});
  ~LinearProgram();
  LinearProgram(LinearProgram&&) noexcept;
  LinearProgram& operator=(LinearProgram&&) noexcept;

  /// Entries index existing columns.
  int add_row(RowSense sense, double rhs, std::span<const SparseEntry> entries = {});
  /// Entries index existing rows.
  int add_column(double cost, std::span<const SparseEntry> entries,
                 double upper = std::numeric_limits<double>::infinity());
  void drop_columns(std::span<const int> ids);

  LpStatus solve();

  int row_count() const;
  int column_count() const;  ///< live columns
  int column_id_bound() const;
  bool column_alive(int id) const;

  LpStatus status() const { return status_; }
  /// Objective excluding artificial penalties.
  double objective() const;
  /// Sum of artificial values at the last solve.
  double infeasibility() const;
  double value(int column) const;
  double dual(int row) const;
  double reduced_cost(int column) const;
  double column_cost(int column) const;
  std::span<const SparseEntry> column_entries(int column) const;
  RowSense row_sense(int row) const;
  double row_rhs(int row) const;
  std::int64_t total_iterations() const { return iterations_; }

  /// Plain-text dump: one line per row then one per live column.
  std::string dump() const;

 private:
  LpStatus iterate();

  struct Impl;
  std::unique_ptr<Impl> impl_;
  LpStatus status_ = LpStatus::Infeasible;
  std::int64_t iterations_ = 0;
};

}  // namespace vrpdecomp
