#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "vrpdecomp/af_master.hpp"
#include "vrpdecomp/dw_master.hpp"
#include "vrpdecomp/master.hpp"
#include "vrpdecomp/strengthening.hpp"

namespace vrpdecomp {

enum class Form { Dw, Af };
enum class PricerKind { Labeling, Dag, Beam };
enum class CutMode { None, Src3 };
enum class StrengthenMode { None, Dssr, Ce };

const char* to_string(Form f);
const char* to_string(PricerKind p);
const char* to_string(CutMode c);
const char* to_string(StrengthenMode s);

struct SolveOptions {
  Form form = Form::Dw;
  int ng = 8;
  /// Initial smoothing factor; negative picks 0.65 (DW) or 0.50 (AF).
  double smoothing = -1;
  double misprice_decay = 0.8;
  PricerKind pricer = PricerKind::Labeling;
  CutMode cuts = CutMode::None;
  SrcSeparationOptions src;
  StrengthenMode strengthen = StrengthenMode::None;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  int price_limit = 200;
  int beam_width = 3;
  bool capacity_cut = true;
  std::size_t arc_cap = Dag::kDefaultArcCap;
  std::int64_t iteration_limit = 1'000'000;
};

struct IterationRecord {
  int iteration = 0;
  double rmp = 0;
  /// NaN when only heuristic pricing ran.
  double lagrangian = 0;
  double alpha = 0;
  int added = 0;
};

struct SolveStats {
  double lb = std::numeric_limits<double>::quiet_NaN();
  /// Exact pricing at unsmoothed duals found nothing after the last change.
  bool certified = false;
  bool budget_exhausted = false;
  bool overflow = false;
  /// The final master still needs artificials (no feasible fleet plan).
  bool infeasible = false;
  int iterations = 0;
  double rmp_seconds = 0;
  double pp_seconds = 0;
  double total_seconds = 0;
  int variables = 0;
  int rows = 0;
  int routes_added = 0;
  double recombination = 1.0;
  std::uint64_t registered_paths = 0;
  int cuts_added = 0;
  int src_rounds = 0;
  double lb_before_cuts = std::numeric_limits<double>::quiet_NaN();
  std::size_t dag_nodes = 0;
  std::size_t dag_arcs = 0;
  StrengtheningReport strengthening;
  std::vector<IterationRecord> trace;
};

/// Root relaxation driver shared by both formulations: column (or arc)
/// generation with Wentges smoothing, then SRC separation, then subproblem
/// strengthening, repeated until nothing changes.
class Solver {
 public:
  Solver(const Instance& instance, SolveOptions options);
  ~Solver();

  SolveStats run();

  /// Converges the current master. Returns true when certified optimal.
  bool column_generation();
  /// One SRC separation round; returns the number of cuts added.
  int separate_cuts();
  /// One strengthening step on the current support; returns the number of
  /// conflicting routes handled (0 when the support is elementary).
  int strengthen_step();

  /// Manual cuts (tests and the cut-translation checks).
  void add_gsec(const GsecCut& cut);
  void add_src(const SrcCut& cut);

  RestrictedMaster& master() { return *master_; }
  const RestrictedMaster& master() const { return *master_; }
  Relaxation& relaxation() { return relax_; }
  const SolveStats& stats() const { return stats_; }
  const SolveOptions& options() const { return options_; }
  PricerKind effective_pricer() const { return pricer_; }

 private:
  struct Priced {
    std::vector<Route> routes;
    double best = std::numeric_limits<double>::infinity();
  };
  Priced price(const MasterDuals& duals, bool exact) const;
  void recompile();
  double elapsed() const;
  void finish();

  const Instance& instance_;
  SolveOptions options_;
  PricerKind pricer_;
  Relaxation relax_;
  std::unique_ptr<RestrictedMaster> master_;
  std::vector<Route> ce_history_;
  SolveStats stats_;
  double alpha_ = 0;
  double started_ = 0;
  long long dag_size0_ = 0;
};

/// Convenience wrapper around Solver::run.
SolveStats solve(const Instance& instance, const SolveOptions& options);

}  // namespace vrpdecomp
