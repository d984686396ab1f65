#include "vrpdecomp/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>
#include <tuple>

#include "vrpdecomp/af_master.hpp"
#include "vrpdecomp/dw_master.hpp"
#include "vrpdecomp/errors.hpp"
#include "vrpdecomp/pricing.hpp"

namespace vrpdecomp {

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::string num(double v, int precision) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DECOMP_BENCH_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

using Key = std::tuple<std::string, int, CutMode, StrengthenMode>;

struct Cell {
  const RunOutcome* dw = nullptr;
  const RunOutcome* af = nullptr;
};

// Per-form column values, NaN where not applicable.
struct FormCols {
  double lb, rmp, pp, time, iterations, variables, cuts, recomb, siter, elim, dag_delta;
};

FormCols cols_of(const RunOutcome& r) {
  const SolveStats& s = r.stats;
  const bool str = r.strengthen != StrengthenMode::None;
  const double nan = std::nan("");
  return {s.lb,
          s.rmp_seconds,
          s.pp_seconds,
          s.total_seconds,
          static_cast<double>(s.iterations),
          static_cast<double>(s.variables),
          static_cast<double>(s.cuts_added),
          r.form == Form::Af ? s.recombination : nan,
          str ? static_cast<double>(s.strengthening.iterations) : nan,
          str ? static_cast<double>(s.strengthening.eliminated) : nan,
          str ? static_cast<double>(s.strengthening.dag_delta) : nan};
}

void emit_form(std::ostringstream& out, const std::vector<FormCols>& rows, int solved, int total, bool af, bool timing) {
  auto column = [&](double FormCols::*f) {
    std::vector<double> v;
    for (const auto& r : rows) {
      if (!std::isnan(r.*f)) v.push_back(r.*f);
    }
    return v;
  };
  auto geo = [&](double FormCols::*f, int prec) { return num(rows.empty() ? std::nan("") : geo_mean(column(f)), prec); };
  auto time = [&](double FormCols::*f) { return timing ? geo(f, 2) : std::string("-"); };
  out << '\t' << geo(&FormCols::lb, 6) << '\t' << time(&FormCols::rmp) << '\t' << time(&FormCols::pp) << '\t'
      << time(&FormCols::time) << '\t' << geo(&FormCols::iterations, 1) << '\t' << geo(&FormCols::variables, 1) << '\t'
      << geo(&FormCols::cuts, 1);
  if (af) out << '\t' << geo(&FormCols::recomb, 2);
  out << '\t' << geo(&FormCols::siter, 1) << '\t' << geo(&FormCols::elim, 1);
  // Signed, so averaged arithmetically.
  if (af) out << '\t' << num(mean(column(&FormCols::dag_delta)), 1);
  out << '\t' << solved << '/' << total;
}

constexpr int kDwCols = 10;
constexpr int kAfCols = 12;

void emit_blank(std::ostringstream& out, int n) {
  for (int k = 0; k < n; ++k) out << "\t-";
}

}  // namespace

double geo_mean(const std::vector<double>& values) {
  if (values.empty()) return std::nan("");
  double s = 0;
  for (double v : values) {
    if (v <= 0) return 0;
    s += std::log(v);
  }
  return std::exp(s / static_cast<double>(values.size()));
}

std::string instance_group(const std::string& name) {
  std::size_t k = 0;
  while (k < name.size() && std::isalpha(static_cast<unsigned char>(name[k]))) ++k;
  if (k == 0 || k >= name.size() || !std::isdigit(static_cast<unsigned char>(name[k]))) return name;
  const auto dash = name.find('-', k);
  std::string g = name.substr(0, k + 1);
  if (dash != std::string::npos) g += name.substr(dash);
  return g;
}

EnumerationResult enumerate_full(const Instance& instance, const NgConfig& ng, bool solve_masters,
                                 std::size_t arc_cap, std::size_t route_cap) {
  EnumerationResult r;
  r.instance = instance.name();
  r.delta = ng.delta();
  double t0 = now_seconds();
  std::vector<Route> routes;
  std::unique_ptr<Dag> dag;
  try {
    routes = enumerate_ng_routes(instance, ng, route_cap);
    dag = std::make_unique<Dag>(Dag::compile(instance, ng, CutPool(instance.customers()), arc_cap));
  } catch (const CompileOverflow&) {
    r.overflow = true;
    return r;
  }
  r.enumerate_seconds = now_seconds() - t0;
  r.columns = routes.size();
  r.paths = dag->count_paths() - (dag->empty_arc() >= 0 ? 1 : 0);
  r.dag_nodes = dag->node_count();
  r.dag_arcs = dag->arc_count();
  if (!solve_masters) return r;

  auto value = [](const RestrictedMaster& m) {
    return m.infeasibility() > 1e-7 ? std::numeric_limits<double>::infinity() : m.objective();
  };
  {
    t0 = now_seconds();
    Relaxation rel(instance, ng);
    rel.cuts.add_gsec(capacity_gsec(instance));
    DwMaster dw(rel);
    dw.add_routes(routes);
    dw.solve();
    r.dw_lb = value(dw);
    r.dw_seconds = now_seconds() - t0;
  }
  {
    t0 = now_seconds();
    Relaxation rel(instance, ng);
    rel.cuts.add_gsec(capacity_gsec(instance));
    rel.dag = std::move(dag);
    AfMaster af(rel);
    af.add_all_arcs();
    af.solve();
    r.af_lb = value(af);
    r.af_seconds = now_seconds() - t0;
  }
  return r;
}

MatrixReport run_matrix(const std::vector<Instance>& instances, const MatrixSpec& spec) {
  MatrixReport rep;
  for (const auto& in : instances) {
    for (int d : spec.deltas) {
      for (CutMode c : spec.cuts) {
        for (StrengthenMode s : spec.strengthen) {
          for (Form f : spec.forms) {
            RunOutcome o;
            o.instance = in.name();
            o.group = instance_group(in.name());
            o.delta = d;
            o.cuts = c;
            o.strengthen = s;
            o.form = f;
            rep.runs.push_back(o);
          }
        }
      }
    }
  }
  std::map<std::string, const Instance*> by_name;
  for (const auto& in : instances) by_name.emplace(in.name(), &in);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < rep.runs.size(); k = next++) {
      RunOutcome& o = rep.runs[k];
      SolveOptions opt = spec.base;
      opt.form = o.form;
      opt.ng = o.delta;
      opt.cuts = o.cuts;
      opt.strengthen = o.strengthen;
      try {
        o.stats = solve(*by_name.at(o.instance), opt);
        o.completed = o.stats.certified && !o.stats.overflow && !o.stats.budget_exhausted && !o.stats.infeasible;
        if (o.strengthen != StrengthenMode::None && !o.stats.strengthening.complete) o.completed = false;
        if (!o.completed) o.error = o.stats.overflow ? "overflow" : o.stats.budget_exhausted ? "budget" : "incomplete";
      } catch (const std::exception& e) {
        o.completed = false;
        o.error = e.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(resolve_threads(spec.threads), static_cast<int>(rep.runs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& o : rep.runs) rep.all_completed = rep.all_completed && o.completed;

  // Pair forms per configuration, keeping first-seen order.
  std::vector<Key> order;
  std::map<Key, Cell> cells;
  for (const auto& o : rep.runs) {
    const Key key{o.instance, o.delta, o.cuts, o.strengthen};
    auto [it, fresh] = cells.try_emplace(key);
    if (fresh) order.push_back(key);
    (o.form == Form::Dw ? it->second.dw : it->second.af) = &o;
  }

  std::ostringstream out;
  out << "# Recomb. = r-t paths over all arcs ever added to the AF master / distinct non-empty routes priced "
         "(initial singleton routes included)\n";
  out << "\t\t\t";
  for (int k = 0; k < kDwCols; ++k) out << "\tDantzig-Wolfe";
  for (int k = 0; k < kAfCols; ++k) out << "\tArc-Flow";
  out << "\tDW-to-AF Ratios\tDW-to-AF Ratios\tDW-to-AF Ratios\n";
  out << "Instance\tDelta\tCuts\tStrengthen"
      << "\tLB\tRMP (s)\tPP (s)\tTime (s)\tIterations\tVariables\tCuts\tStrength. Iter.\tElim. Routes\tSolved"
      << "\tLB\tRMP (s)\tPP (s)\tTime (s)\tIterations\tVariables\tCuts\tRecomb.\tStrength. Iter.\tElim. Arcs\tChange in "
         "DAG\tSolved"
      << "\tVariables\tIterations\tTime\n";

  struct Ratios {
    std::vector<double> vars, iters, time;
  };
  auto ratios_of = [&](const Cell& c, Ratios& r) {
    if (!c.dw || !c.af || !c.dw->completed || !c.af->completed) return;
    const SolveStats& a = c.dw->stats;
    const SolveStats& b = c.af->stats;
    if (b.variables > 0) r.vars.push_back(static_cast<double>(a.variables) / b.variables);
    if (b.iterations > 0) r.iters.push_back(static_cast<double>(a.iterations) / b.iterations);
    if (b.total_seconds > 0) r.time.push_back(a.total_seconds / b.total_seconds);
  };
  auto emit_ratios = [&](const Ratios& r) {
    out << '\t' << num(geo_mean(r.vars), 2) << '\t' << num(geo_mean(r.iters), 2) << '\t'
        << (spec.timing ? num(geo_mean(r.time), 2) : std::string("-")) << '\n';
  };
  auto emit_block = [&](const std::vector<const RunOutcome*>& runs, bool af) {
    if (runs.empty()) {
      emit_blank(out, af ? kAfCols : kDwCols);
      return;
    }
    std::vector<FormCols> rows;
    for (const auto* r : runs) {
      if (r->completed) rows.push_back(cols_of(*r));
    }
    emit_form(out, rows, static_cast<int>(rows.size()), static_cast<int>(runs.size()), af, spec.timing);
  };
  auto label = [](const Key& k) {
    return std::to_string(std::get<1>(k)) + '\t' + to_string(std::get<2>(k)) + '\t' + to_string(std::get<3>(k));
  };

  for (const auto& key : order) {
    const Cell& c = cells[key];
    out << std::get<0>(key) << '\t' << label(key);
    emit_block(c.dw ? std::vector<const RunOutcome*>{c.dw} : std::vector<const RunOutcome*>{}, false);
    emit_block(c.af ? std::vector<const RunOutcome*>{c.af} : std::vector<const RunOutcome*>{}, true);
    Ratios r;
    ratios_of(c, r);
    emit_ratios(r);
  }

  // Group rows, then one overall row per configuration.
  using GKey = std::tuple<std::string, int, CutMode, StrengthenMode>;
  std::vector<GKey> gorder;
  std::map<GKey, std::vector<Key>> members;
  for (const auto& key : order) {
    for (const std::string& g : {instance_group(std::get<0>(key)), std::string()}) {
      const GKey gk{g, std::get<1>(key), std::get<2>(key), std::get<3>(key)};
      auto [it, fresh] = members.try_emplace(gk);
      if (fresh) gorder.push_back(gk);
      it->second.push_back(key);
    }
  }
  std::stable_sort(gorder.begin(), gorder.end(),
                   [](const GKey& a, const GKey& b) { return std::get<0>(a).empty() < std::get<0>(b).empty(); });
  for (const auto& gk : gorder) {
    const auto& keys = members[gk];
    std::vector<const RunOutcome*> dw, af;
    Ratios r;
    for (const auto& k : keys) {
      const Cell& c = cells[k];
      if (c.dw) dw.push_back(c.dw);
      if (c.af) af.push_back(c.af);
      ratios_of(c, r);
    }
    const std::string& g = std::get<0>(gk);
    out << (g.empty() ? std::string("Geo. Mean") : "Geo. Mean " + g) << '\t' << label(gk);
    emit_block(dw, false);
    emit_block(af, true);
    emit_ratios(r);
  }
  rep.tsv = out.str();

  nlohmann::ordered_json js = nlohmann::ordered_json::array();
  for (const auto& o : rep.runs) {
    const SolveStats& s = o.stats;
    nlohmann::ordered_json j;
    j["instance"] = o.instance;
    j["group"] = o.group;
    j["form"] = to_string(o.form);
    j["delta"] = o.delta;
    j["cuts"] = to_string(o.cuts);
    j["strengthen"] = to_string(o.strengthen);
    j["completed"] = o.completed;
    j["error"] = o.error;
    j["lb"] = s.lb;
    j["lb_before_cuts"] = s.lb_before_cuts;
    j["iterations"] = s.iterations;
    j["variables"] = s.variables;
    j["rows"] = s.rows;
    j["routes_added"] = s.routes_added;
    j["recombination"] = s.recombination;
    j["cuts_added"] = s.cuts_added;
    j["src_rounds"] = s.src_rounds;
    j["strengthening"] = {{"iterations", s.strengthening.iterations},
                          {"eliminated", s.strengthening.eliminated},
                          {"dag_delta", s.strengthening.dag_delta},
                          {"bound_trace", s.strengthening.bound_trace}};
    if (spec.timing) {
      j["rmp_seconds"] = s.rmp_seconds;
      j["pp_seconds"] = s.pp_seconds;
      j["total_seconds"] = s.total_seconds;
    }
    nlohmann::ordered_json tr = nlohmann::ordered_json::array();
    for (const auto& it : s.trace) {
      tr.push_back({{"iteration", it.iteration},
                    {"rmp", it.rmp},
                    {"lagrangian", std::isnan(it.lagrangian) ? nlohmann::ordered_json() : nlohmann::ordered_json(it.lagrangian)},
                    {"alpha", it.alpha},
                    {"added", it.added}});
    }
    j["trace"] = std::move(tr);
    js.push_back(std::move(j));
  }
  rep.json = js.dump(1);
  return rep;
}

}  // namespace vrpdecomp
