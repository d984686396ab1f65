#include "vrpdecomp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <set>

#include "vrpdecomp/errors.hpp"
#include "vrpdecomp/pricing.hpp"

namespace vrpdecomp {

const char* to_string(Form f) { return f == Form::Dw ? "dw" : "af"; }

const char* to_string(PricerKind p) {
  switch (p) {
    case PricerKind::Labeling: return "labeling";
    case PricerKind::Dag: return "dag";
    case PricerKind::Beam: return "beam";
  }
  return "?";
}

const char* to_string(CutMode c) { return c == CutMode::Src3 ? "src3" : "none"; }

const char* to_string(StrengthenMode s) {
  switch (s) {
    case StrengthenMode::None: return "none";
    case StrengthenMode::Dssr: return "dssr";
    case StrengthenMode::Ce: return "ce";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPriceThreshold = -1e-6;

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

MasterDuals mix(const MasterDuals& center, const MasterDuals& current, double a) {
  MasterDuals out = current;
  auto blend = [a](std::vector<double>& dst, const std::vector<double>& c) {
    for (std::size_t k = 0; k < dst.size() && k < c.size(); ++k) dst[k] = a * c[k] + (1 - a) * dst[k];
  };
  blend(out.vertex, center.vertex);
  blend(out.gsec, center.gsec);
  blend(out.src, center.src);
  return out;
}

long long dag_size(const Dag* g) { return g ? static_cast<long long>(g->arc_count() + g->node_count()) : 0; }

}  // namespace

Solver::Solver(const Instance& instance, SolveOptions options)
    : instance_(instance),
      options_(options),
      pricer_(options.pricer),
      relax_(instance, NgConfig(instance, std::clamp(options.ng, 0, std::max(0, instance.customers() - 1)))) {
  if (options_.strengthen == StrengthenMode::Ce && pricer_ == PricerKind::Labeling) pricer_ = PricerKind::Dag;
  if (options_.smoothing < 0) options_.smoothing = options_.form == Form::Dw ? 0.65 : 0.50;
  if (options_.smoothing >= 1) throw ContractError("smoothing factor must be below 1");
  if (options_.capacity_cut) relax_.cuts.add_gsec(capacity_gsec(instance));
  started_ = now_seconds();
  if (pricer_ != PricerKind::Labeling) {
    try {
      relax_.dag = std::make_unique<Dag>(Dag::compile(instance, relax_.ng, relax_.cuts, options_.arc_cap));
    } catch (const CompileOverflow&) {
      stats_.overflow = true;
      return;
    }
  }
  dag_size0_ = dag_size(relax_.dag.get());
  if (options_.form == Form::Dw) {
    master_ = std::make_unique<DwMaster>(relax_);
  } else {
    master_ = std::make_unique<AfMaster>(relax_);
  }
}

Solver::~Solver() = default;

double Solver::elapsed() const { return now_seconds() - started_; }

void Solver::recompile() {
  relax_.dag = std::make_unique<Dag>(Dag::compile(instance_, relax_.ng, relax_.cuts, options_.arc_cap));
  if (ce_history_.empty()) return;
  for (const auto& r : ce_history_) relax_.dag->eliminate_cycle(r);
  relax_.dag->prune();
}

Solver::Priced Solver::price(const MasterDuals& duals, bool exact) const {
  Priced out;
  if (pricer_ == PricerKind::Labeling) {
    PricingOptions po;
    po.mode = exact ? PricingMode::Exact : PricingMode::Heuristic;
    po.limit = options_.price_limit;
    po.threshold = kPriceThreshold;
    auto res = price_labeling(instance_, relax_.ng, relax_.cuts, duals, po);
    out.best = res.best;
    for (auto& p : res.routes) out.routes.push_back(std::move(p.route));
    return out;
  }
  const ReducedCosts rc(instance_, relax_.cuts, duals);
  const int width = exact ? 0 : options_.beam_width;
  auto paths = relax_.dag->price(rc, width, options_.price_limit, kPriceThreshold, false, &out.best);
  for (const auto& p : paths) out.routes.push_back(relax_.dag->project(p.arcs));
  return out;
}

bool Solver::column_generation() {
  if (!master_) return false;
  const int K = instance_.vehicles();
  double alpha = options_.smoothing;
  std::optional<MasterDuals> center;
  double best_l = -kInf;
  bool force_exact = false;
  stats_.certified = false;

  for (;;) {
    if (elapsed() > options_.time_limit || stats_.iterations >= options_.iteration_limit) {
      stats_.budget_exhausted = true;
      stats_.lb = best_l;
      return false;
    }
    double t0 = now_seconds();
    master_->solve();
    stats_.rmp_seconds += now_seconds() - t0;
    ++stats_.iterations;

    const double d = master_->objective();
    const MasterDuals pi = master_->duals();
    const bool feasible = master_->infeasibility() <= 1e-7;
    const double a = (feasible && center) ? alpha : 0.0;
    const MasterDuals pt = a > 0 ? mix(*center, pi, a) : pi;

    IterationRecord rec;
    rec.iteration = stats_.iterations;
    rec.rmp = d;
    rec.lagrangian = std::numeric_limits<double>::quiet_NaN();
    rec.alpha = a;

    t0 = now_seconds();
    Priced found;
    bool exact = false;
    if (pricer_ != PricerKind::Dag && !force_exact) found = price(pt, false);
    if (found.routes.empty()) {
      found = price(pt, true);
      exact = true;
    }
    stats_.pp_seconds += now_seconds() - t0;
    force_exact = false;

    if (exact) {
      double rc_empty = kInf;
      if (instance_.has_arc(instance_.source(), instance_.sink())) {
        rc_empty = descale(instance_.cost(instance_.source(), instance_.sink())) - pt.vertex[0];
      }
      const double l = dual_objective(instance_, relax_.cuts, pt) + K * std::min(found.best, rc_empty);
      rec.lagrangian = l;
      if (l > best_l) {
        best_l = l;
        center = pt;
      }
      if (feasible && l >= d - 1e-7 * std::max(1.0, std::abs(d))) alpha = 0;
    }

    const int added = master_->add_routes(found.routes);
    rec.added = added;
    stats_.trace.push_back(rec);
    if (added > 0) continue;

    if (!exact) {
      force_exact = true;
    } else if (a > 0) {
      alpha *= options_.misprice_decay;
      if (alpha < 0.05) alpha = 0;
    } else {
      stats_.certified = true;
      stats_.infeasible = !feasible;
      stats_.lb = feasible ? d : kInf;
      return true;
    }
  }
}

int Solver::separate_cuts() {
  if (options_.cuts != CutMode::Src3 || !master_ || !stats_.certified || stats_.infeasible) return 0;
  const auto support = master_->support();
  std::vector<WeightedRoute> weighted;
  for (const auto& rw : support) weighted.push_back({&rw.route, rw.weight});
  const auto found = separate_src3(instance_, weighted, relax_.cuts, options_.src);
  if (found.empty()) return 0;
  for (const auto& c : found) relax_.cuts.add_src(c);
  ++stats_.src_rounds;
  stats_.cuts_added += static_cast<int>(found.size());
  if (relax_.dag) recompile();
  master_->sync_cuts();
  return static_cast<int>(found.size());
}

int Solver::strengthen_step() {
  if (options_.strengthen == StrengthenMode::None || !master_ || !stats_.certified || stats_.infeasible) return 0;
  std::set<Route> conflicting;
  for (const auto& rw : master_->support()) {
    if (!is_elementary(rw.route)) conflicting.insert(rw.route);
  }
  auto& rep = stats_.strengthening;
  if (conflicting.empty()) {
    rep.complete = true;
    return 0;
  }
  const std::vector<Route> routes(conflicting.begin(), conflicting.end());
  if (options_.strengthen == StrengthenMode::Dssr) {
    int additions = 0;
    NgConfig grown = dssr_step(relax_.ng, routes, &additions);
    if (additions == 0) return 0;
    relax_.ng = std::move(grown);
    if (relax_.dag) recompile();
  } else {
    const CeOutcome out = ce_step(*relax_.dag, routes);
    if (out.eliminated == 0) return 0;
    ce_history_.insert(ce_history_.end(), out.applied.begin(), out.applied.end());
  }
  rep.eliminated += master_->sync_relaxation();
  ++rep.iterations;
  return static_cast<int>(routes.size());
}

void Solver::add_gsec(const GsecCut& cut) {
  relax_.cuts.add_gsec(cut);
  if (master_) master_->sync_cuts();
}

void Solver::add_src(const SrcCut& cut) {
  relax_.cuts.add_src(cut);
  if (relax_.dag) recompile();
  if (master_) master_->sync_cuts();
}

void Solver::finish() {
  stats_.total_seconds = elapsed();
  if (!master_) return;
  stats_.variables = master_->variable_count();
  stats_.rows = master_->row_count();
  stats_.routes_added = master_->routes_added();
  if (const auto* af = dynamic_cast<const AfMaster*>(master_.get())) {
    stats_.recombination = af->recombination();
    stats_.registered_paths = af->registered_paths();
    stats_.dag_nodes = af->dag().node_count();
    stats_.dag_arcs = af->dag().arc_count();
  } else if (relax_.dag) {
    stats_.dag_nodes = relax_.dag->node_count();
    stats_.dag_arcs = relax_.dag->arc_count();
  }
  if (relax_.dag) stats_.strengthening.dag_delta = dag_size(relax_.dag.get()) - dag_size0_;
}

SolveStats Solver::run() {
  if (!master_) {
    finish();
    return stats_;
  }
  const bool strengthen = options_.strengthen != StrengthenMode::None;
  try {
    column_generation();
    stats_.lb_before_cuts = stats_.lb;
    if (strengthen) stats_.strengthening.bound_trace.push_back(stats_.lb);
    while (stats_.certified) {
      if (separate_cuts() > 0) {
        column_generation();
        continue;
      }
      if (strengthen && strengthen_step() > 0) {
        column_generation();
        if (stats_.certified) stats_.strengthening.bound_trace.push_back(stats_.lb);
        continue;
      }
      break;
    }
  } catch (const CompileOverflow&) {
    stats_.overflow = true;
  }
  finish();
  return stats_;
}

SolveStats solve(const Instance& instance, const SolveOptions& options) {
  Solver s(instance, options);
  return s.run();
}

}  // namespace vrpdecomp
