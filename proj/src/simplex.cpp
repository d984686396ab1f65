#include "vrpdecomp/simplex.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vrpdecomp/errors.hpp"

namespace vrpdecomp {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "Optimal";
    case LpStatus::Infeasible:
      return "Infeasible";
    case LpStatus::Unbounded:
      return "Unbounded";
  }
  return "?";
}

namespace {

enum class VarKind : std::uint8_t { Structural, Slack, Artificial };

struct Var {
  VarKind kind = VarKind::Structural;
  double cost = 0;
  double upper = std::numeric_limits<double>::infinity();
  std::vector<SparseEntry> entries;  // (row, value)
  bool alive = true;
};

// One product-form update: column `pos` of the identity replaced by `eta`.
struct Eta {
  int pos = 0;
  double pivot = 1;  // eta[pos]
  std::vector<SparseEntry> others;
};

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

}  // namespace

struct LinearProgram::Impl {
  SimplexOptions opt;
  std::vector<Var> vars;
  std::vector<int> column_var;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
  std::vector<int> slack_var;
  std::vector<int> art_var;

  std::vector<int> basic;       // position -> var
  std::vector<int> pos_of;      // var -> position, -1 if nonbasic
  std::vector<char> at_upper;   // nonbasic at finite upper bound
  std::vector<double> x;        // all var values
  std::vector<double> y;        // row duals
  bool basis_valid = false;
  bool factor_valid = false;

  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  std::vector<Eta> etas;

  int m() const { return static_cast<int>(rhs.size()); }

  int new_var(VarKind kind, double cost, double upper, std::vector<SparseEntry> entries) {
    Var v;
    v.kind = kind;
    v.cost = cost;
    v.upper = upper;
    v.entries = std::move(entries);
    vars.push_back(std::move(v));
    pos_of.push_back(-1);
    at_upper.push_back(0);
    x.push_back(0.0);
    return static_cast<int>(vars.size()) - 1;
  }

  double nonbasic_value(int j) const { return at_upper[j] ? vars[j].upper : 0.0; }

  // b - sum over nonbasic structural columns; basic contributions excluded.
  std::vector<double> row_residuals_nonbasic() const {
    std::vector<double> res = rhs;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (!vars[j].alive || pos_of[j] >= 0) continue;
      const double v = nonbasic_value(static_cast<int>(j));
      if (v == 0.0) continue;
      for (const auto& e : vars[j].entries) res[e.index] -= e.value * v;
    }
    return res;
  }

  // Chooses slack or signed artificial as the basic variable of row r so that
  // its value is nonnegative given residual `res`.
  void seat_row(int r, double res) {
    int chosen = -1;
    double value = 0;
    if (sense[r] == RowSense::LessEqual && res >= -opt.feasibility_tol) {
      chosen = slack_var[r];
      value = std::max(res, 0.0);
    } else if (sense[r] == RowSense::GreaterEqual && res <= opt.feasibility_tol) {
      chosen = slack_var[r];
      value = std::max(-res, 0.0);
    } else {
      chosen = art_var[r];
      vars[chosen].entries[0].value = res >= 0 ? 1.0 : -1.0;
      value = std::abs(res);
    }
    pos_of[chosen] = static_cast<int>(basic.size());
    basic.push_back(chosen);
    x[chosen] = value;
  }

  void cold_start() {
    for (int b : basic) pos_of[b] = -1;
    basic.clear();
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].kind != VarKind::Structural) {
        x[j] = 0;
        at_upper[j] = 0;
      } else {
        x[j] = nonbasic_value(static_cast<int>(j));
      }
    }
    const auto res = row_residuals_nonbasic();
    for (int r = 0; r < m(); ++r) seat_row(r, res[r]);
    basis_valid = true;
    factor_valid = false;
  }

  bool refactor() {
    etas.clear();
    const int rows = m();
    std::vector<Eigen::Triplet<double>> trip;
    for (int p = 0; p < rows; ++p) {
      for (const auto& e : vars[basic[p]].entries) trip.emplace_back(e.index, p, e.value);
    }
    SpMat b(rows, rows);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu.analyzePattern(b);
    lu.factorize(b);
    factor_valid = lu.info() == Eigen::Success;
    return factor_valid;
  }

  // Basis swap after x has been moved along the entering column.
  void pivot_in(int enter, int leave_pos, const Eigen::VectorXd& alpha, double enter_value, bool leave_to_upper) {
    const int leave = basic[leave_pos];
    x[enter] = enter_value;
    x[leave] = leave_to_upper ? vars[leave].upper : 0.0;
    at_upper[leave] = leave_to_upper ? 1 : 0;
    at_upper[enter] = 0;
    pos_of[leave] = -1;
    pos_of[enter] = leave_pos;
    basic[leave_pos] = enter;

    Eta eta;
    eta.pos = leave_pos;
    const double piv = alpha[leave_pos];
    eta.pivot = 1.0 / piv;
    for (int p = 0; p < m(); ++p) {
      if (p == leave_pos || std::abs(alpha[p]) < 1e-14) continue;
      eta.others.push_back({p, -alpha[p] / piv});
    }
    etas.push_back(std::move(eta));
  }

  // Shifts every basic value off its bound by a small seeded amount through the rhs.
  void perturb() {
    std::mt19937 rng(5489u);
    std::uniform_real_distribution<double> u(0.5, 1.0);
    for (int p = 0; p < m(); ++p) {
      const int j = basic[p];
      const double e = 1e-6 * u(rng) * (1.0 + std::abs(x[j]));
      if (vars[j].upper - x[j] < 2 * e) continue;
      for (const auto& en : vars[j].entries) rhs[en.index] += en.value * e;
    }
    compute_primal();
  }

  // Dual simplex from a dual feasible basis until the basic values are within bounds.
  std::int64_t dual_cleanup() {
    std::int64_t it = 0;
    while (true) {
      if (static_cast<int>(etas.size()) >= opt.refactor_every) {
        if (!refactor()) throw NumericalFailure("singular basis during dual cleanup");
        compute_primal();
      }
      int r = -1;
      double worst = opt.feasibility_tol;
      for (int p = 0; p < m(); ++p) {
        const int j = basic[p];
        const double viol = std::max(-x[j], x[j] - vars[j].upper);
        if (viol > worst) {
          worst = viol;
          r = p;
        }
      }
      if (r < 0) return it;
      if (++it > opt.iteration_limit) throw NumericalFailure("dual cleanup iteration limit reached");
      const int lv = basic[r];
      const bool to_upper = x[lv] > vars[lv].upper;
      const double want = to_upper ? -1.0 : 1.0;
      compute_duals();
      Eigen::VectorXd er = Eigen::VectorXd::Zero(m());
      er[r] = 1.0;
      const Eigen::VectorXd rho = btran(er);

      int enter = -1, edir = 0;
      double best_ratio = std::numeric_limits<double>::infinity(), best_mag = 0;
      for (int j = 0; j < static_cast<int>(vars.size()); ++j) {
        const Var& v = vars[j];
        if (!v.alive || pos_of[j] >= 0 || v.kind == VarKind::Artificial || v.upper <= opt.feasibility_tol) continue;
        double arj = 0;
        for (const auto& e : v.entries) arj += rho[e.index] * e.value;
        if (std::abs(arj) <= opt.pivot_tol) continue;
        const int dir = at_upper[j] ? -1 : 1;
        // x_lv moves by -dir * t * arj.
        if (-dir * arj * want <= 0) continue;
        const double ratio = std::max(0.0, dir * reduced(j)) / std::abs(arj);
        if (ratio < best_ratio - 1e-12 || (std::abs(ratio - best_ratio) <= 1e-12 && std::abs(arj) > best_mag)) {
          best_ratio = ratio;
          best_mag = std::abs(arj);
          enter = j;
          edir = dir;
        }
      }
      if (enter < 0) throw NumericalFailure("dual cleanup found no entering column");

      const Eigen::VectorXd alpha = ftran(vars[enter].entries);
      const double target = to_upper ? vars[lv].upper : 0.0;
      const double t = (x[lv] - target) / (edir * alpha[r]);
      for (int p = 0; p < m(); ++p) x[basic[p]] -= edir * t * alpha[p];
      pivot_in(enter, r, alpha, nonbasic_value(enter) + edir * t, to_upper);
    }
  }

  Eigen::VectorXd ftran(const std::vector<SparseEntry>& col) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m());
    for (const auto& e : col) v[e.index] += e.value;
    return ftran_dense(v);
  }

  Eigen::VectorXd ftran_dense(const Eigen::VectorXd& v) {
    Eigen::VectorXd w = lu.solve(v);
    for (const auto& eta : etas) {
      const double xp = w[eta.pos];
      if (xp == 0.0) continue;
      w[eta.pos] = eta.pivot * xp;
      for (const auto& o : eta.others) w[o.index] += o.value * xp;
    }
    return w;
  }

  Eigen::VectorXd btran(Eigen::VectorXd c) {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = it->pivot * c[it->pos];
      for (const auto& o : it->others) s += o.value * c[o.index];
      c[it->pos] = s;
    }
    return lu.transpose().solve(c);
  }

  void compute_primal() {
    const auto res = row_residuals_nonbasic();
    Eigen::VectorXd b(m());
    for (int r = 0; r < m(); ++r) b[r] = res[r];
    const Eigen::VectorXd xb = ftran_dense(b);
    for (int p = 0; p < m(); ++p) x[basic[p]] = xb[p];
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (pos_of[j] < 0) x[j] = vars[j].alive ? nonbasic_value(static_cast<int>(j)) : 0.0;
    }
  }

  void compute_duals() {
    Eigen::VectorXd cb(m());
    for (int p = 0; p < m(); ++p) cb[p] = vars[basic[p]].cost;
    const Eigen::VectorXd yy = btran(cb);
    y.assign(yy.data(), yy.data() + m());
  }

  double reduced(int j) const {
    double d = vars[j].cost;
    for (const auto& e : vars[j].entries) d -= y[e.index] * e.value;
    return d;
  }
};

LinearProgram::LinearProgram(SimplexOptions options) : impl_(std::make_unique<Impl>()) { impl_->opt = options; }
LinearProgram::~LinearProgram() = default;
LinearProgram::LinearProgram(LinearProgram&&) noexcept = default;
LinearProgram& LinearProgram::operator=(LinearProgram&&) noexcept = default;

int LinearProgram::add_row(RowSense sense, double rhs, std::span<const SparseEntry> entries) {
  auto& d = *impl_;
  const int r = d.m();
  for (const auto& e : entries) {
    if (e.index < 0 || e.index >= static_cast<int>(d.column_var.size()) || !d.vars[d.column_var[e.index]].alive)
      throw std::out_of_range("row entry references unknown column " + std::to_string(e.index));
  }
  d.sense.push_back(sense);
  d.rhs.push_back(rhs);
  for (const auto& e : entries) {
    if (e.value != 0.0) d.vars[d.column_var[e.index]].entries.push_back({r, e.value});
  }
  const double slack_sign = sense == RowSense::LessEqual ? 1.0 : -1.0;
  d.slack_var.push_back(sense == RowSense::Equal ? -1
                                                 : d.new_var(VarKind::Slack, 0.0,
                                                             std::numeric_limits<double>::infinity(),
                                                             {{r, slack_sign}}));
  d.art_var.push_back(d.new_var(VarKind::Artificial, d.opt.artificial_cost,
                                std::numeric_limits<double>::infinity(), {{r, 1.0}}));
  d.y.push_back(0.0);
  if (d.basis_valid) {
    // Extend the basis with this row's slack or artificial; the bordered
    // basis stays nonsingular and primal feasible.
    double activity = 0;
    for (const auto& e : entries) activity += e.value * d.x[d.column_var[e.index]];
    d.seat_row(r, rhs - activity);
    d.factor_valid = false;
  }
  return r;
}

int LinearProgram::add_column(double cost, std::span<const SparseEntry> entries, double upper) {
  auto& d = *impl_;
  std::vector<SparseEntry> col;
  col.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.index < 0 || e.index >= d.m()) throw std::out_of_range("column entry references unknown row " + std::to_string(e.index));
    if (e.value != 0.0) col.push_back(e);
  }
  if (upper < 0) throw std::invalid_argument("column upper bound must be nonnegative");
  const int v = d.new_var(VarKind::Structural, cost, upper, std::move(col));
  d.column_var.push_back(v);
  return static_cast<int>(d.column_var.size()) - 1;
}

void LinearProgram::drop_columns(std::span<const int> ids) {
  auto& d = *impl_;
  bool basic_dropped = false;
  for (int id : ids) {
    if (id < 0 || id >= static_cast<int>(d.column_var.size()) || !d.vars[d.column_var[id]].alive)
      throw std::out_of_range("unknown column id " + std::to_string(id));
  }
  for (int id : ids) {
    const int v = d.column_var[id];
    d.vars[v].alive = false;
    if (d.pos_of[v] >= 0) basic_dropped = true;
    d.x[v] = 0;
    d.at_upper[v] = 0;
  }
  // Entries of dead columns are kept out of every row computation.
  for (int id : ids) d.vars[d.column_var[id]].entries.clear();
  if (basic_dropped) d.basis_valid = false;
}

LpStatus LinearProgram::iterate() {
  auto& d = *impl_;
  if (d.m() == 0) throw std::logic_error("LP has no rows");
  if (!d.basis_valid) d.cold_start();
  if (!d.factor_valid && !d.refactor()) {
    d.cold_start();
    if (!d.refactor()) throw NumericalFailure("basis factorization failed on the slack basis");
  }
  d.compute_primal();

  int degenerate_run = 0;
  bool bland = false;
  bool perturbed = false;
  std::vector<double> true_rhs;
  std::int64_t local_iters = 0;
  int refactor_failures = 0;
  const auto& opt = d.opt;

  while (true) {
    if (static_cast<int>(d.etas.size()) >= opt.refactor_every) {
      if (!d.refactor()) {
        if (++refactor_failures > 3) throw NumericalFailure("repeated singular basis during refactorization");
        d.cold_start();
        d.refactor();
      }
      d.compute_primal();
    }
    d.compute_duals();

    // Entering variable.
    int enter = -1;
    double best = 0;
    int direction = 1;
    for (int j = 0; j < static_cast<int>(d.vars.size()); ++j) {
      const Var& v = d.vars[j];
      if (!v.alive || d.pos_of[j] >= 0 || v.kind == VarKind::Artificial) continue;
      const double dj = d.reduced(j);
      int dir = 0;
      if (!d.at_upper[j] && dj < -opt.optimality_tol) dir = 1;
      else if (d.at_upper[j] && dj > opt.optimality_tol) dir = -1;
      if (dir == 0) continue;
      if (bland) {
        enter = j;
        direction = dir;
        break;
      }
      if (std::abs(dj) > best) {
        best = std::abs(dj);
        enter = j;
        direction = dir;
      }
    }

    if (enter < 0) {
      // Confirm optimality on a fresh factorization before reporting.
      if (!d.etas.empty()) {
        if (!d.refactor()) {
          d.cold_start();
          if (!d.refactor()) throw NumericalFailure("singular basis at optimality check");
        }
        d.compute_primal();
        continue;
      }
      if (perturbed) {
        d.rhs = true_rhs;
        perturbed = false;
        d.compute_primal();
        local_iters += d.dual_cleanup();
        continue;
      }
      break;
    }

    const Eigen::VectorXd alpha = d.ftran(d.vars[enter].entries);
    // x_B(theta) = x_B - direction * theta * alpha
    double theta = d.vars[enter].upper;  // bound flip limit
    int leave_pos = -1;
    bool leave_to_upper = false;
    double leave_mag = 0;
    for (int p = 0; p < d.m(); ++p) {
      const double a = direction * alpha[p];
      if (std::abs(a) <= opt.pivot_tol) continue;
      const int bv = d.basic[p];
      const double xv = d.x[bv];
      double ratio;
      bool to_upper = false;
      // Values within tolerance of a bound count as on it, so degenerate ratios tie exactly.
      if (a > 0) {
        ratio = xv <= opt.feasibility_tol ? 0.0 : xv / a;
      } else {
        const double u = d.vars[bv].upper;
        if (!std::isfinite(u)) continue;
        ratio = u - xv <= opt.feasibility_tol ? 0.0 : (u - xv) / (-a);
        to_upper = true;
      }
      bool take = false;
      if (ratio < theta - 1e-12 || (leave_pos < 0 && ratio <= theta)) {
        take = true;
      } else if (leave_pos >= 0 && std::abs(ratio - theta) <= 1e-12) {
        take = bland ? bv < d.basic[leave_pos] : std::abs(a) > leave_mag;
      }
      if (take) {
        theta = ratio;
        leave_pos = p;
        leave_to_upper = to_upper;
        leave_mag = std::abs(a);
      }
    }

    if (leave_pos < 0 && !std::isfinite(theta)) {
      if (perturbed) {
        d.rhs = true_rhs;
        d.compute_primal();
      }
      status_ = LpStatus::Unbounded;
      iterations_ += local_iters;
      return status_;
    }

    ++local_iters;
    if (local_iters > opt.iteration_limit) throw NumericalFailure("simplex iteration limit reached");

    if (theta <= 1e-12) {
      if (++degenerate_run >= opt.bland_after) bland = true;
    } else {
      degenerate_run = 0;
    }
    if (bland && !perturbed && degenerate_run > 5 * opt.bland_after) {
      // Bland's rule is cycling on round-off; solve a perturbed problem, then restore feasibility.
      true_rhs = d.rhs;
      d.perturb();
      perturbed = true;
      bland = false;
      degenerate_run = 0;
      continue;
    }
    if (bland && degenerate_run > 50 * opt.bland_after) {
      throw NumericalFailure("no progress after switching to Bland's rule");
    }

    for (int p = 0; p < d.m(); ++p) d.x[d.basic[p]] -= direction * theta * alpha[p];

    if (leave_pos < 0) {
      // Entering variable moves to its opposite bound; basis unchanged.
      d.at_upper[enter] = direction > 0 ? 1 : 0;
      d.x[enter] = d.nonbasic_value(enter);
      continue;
    }

    const int leave = d.basic[leave_pos];
    d.pivot_in(enter, leave_pos, alpha, d.nonbasic_value(enter) + direction * theta, leave_to_upper);
    if (d.vars[leave].kind == VarKind::Artificial) d.x[leave] = 0;
  }

  iterations_ += local_iters;
  status_ = infeasibility() > 1e-7 ? LpStatus::Infeasible : LpStatus::Optimal;
  return status_;
}

LpStatus LinearProgram::solve() {
  if (iterate() != LpStatus::Unbounded || infeasibility() <= 1e-7) return status_;
  // A ray of the penalized problem with artificials still positive: decide
  // feasibility with the artificials alone before trusting the ray.
  auto& d = *impl_;
  std::vector<double> saved(d.vars.size());
  for (std::size_t j = 0; j < d.vars.size(); ++j) {
    saved[j] = d.vars[j].cost;
    d.vars[j].cost = d.vars[j].kind == VarKind::Artificial ? 1.0 : 0.0;
  }
  iterate();
  for (std::size_t j = 0; j < d.vars.size(); ++j) d.vars[j].cost = saved[j];
  if (infeasibility() > 1e-7) {
    d.compute_duals();
    status_ = LpStatus::Infeasible;
    return status_;
  }
  return iterate();
}

int LinearProgram::row_count() const { return impl_->m(); }

int LinearProgram::column_count() const {
  int n = 0;
  for (int v : impl_->column_var) n += impl_->vars[v].alive ? 1 : 0;
  return n;
}

int LinearProgram::column_id_bound() const { return static_cast<int>(impl_->column_var.size()); }

bool LinearProgram::column_alive(int id) const {
  return id >= 0 && id < static_cast<int>(impl_->column_var.size()) && impl_->vars[impl_->column_var[id]].alive;
}

double LinearProgram::objective() const {
  double z = 0;
  for (int v : impl_->column_var) z += impl_->vars[v].cost * impl_->x[v];
  return z;
}

double LinearProgram::infeasibility() const {
  double s = 0;
  for (int v : impl_->art_var) s += std::abs(impl_->x[v]);
  return s;
}

double LinearProgram::value(int column) const {
  if (!column_alive(column)) throw std::out_of_range("unknown column id " + std::to_string(column));
  return impl_->x[impl_->column_var[column]];
}

double LinearProgram::dual(int row) const {
  if (row < 0 || row >= impl_->m()) throw std::out_of_range("unknown row id " + std::to_string(row));
  return impl_->y[row];
}

double LinearProgram::reduced_cost(int column) const {
  if (!column_alive(column)) throw std::out_of_range("unknown column id " + std::to_string(column));
  return impl_->reduced(impl_->column_var[column]);
}

double LinearProgram::column_cost(int column) const {
  if (column < 0 || column >= static_cast<int>(impl_->column_var.size()))
    throw std::out_of_range("unknown column id " + std::to_string(column));
  return impl_->vars[impl_->column_var[column]].cost;
}

std::span<const SparseEntry> LinearProgram::column_entries(int column) const {
  if (!column_alive(column)) throw std::out_of_range("unknown column id " + std::to_string(column));
  return impl_->vars[impl_->column_var[column]].entries;
}

RowSense LinearProgram::row_sense(int row) const { return impl_->sense.at(row); }
double LinearProgram::row_rhs(int row) const { return impl_->rhs.at(row); }

std::string LinearProgram::dump() const {
  const auto& d = *impl_;
  std::ostringstream os;
  os.precision(17);
  for (int r = 0; r < d.m(); ++r) {
    const char* s = d.sense[r] == RowSense::LessEqual ? "<=" : d.sense[r] == RowSense::Equal ? "=" : ">=";
    os << "row " << r << ' ' << s << ' ' << d.rhs[r] << '\n';
  }
  for (std::size_t c = 0; c < d.column_var.size(); ++c) {
    const Var& v = d.vars[d.column_var[c]];
    if (!v.alive) continue;
    os << "col " << c << " cost " << v.cost;
    if (std::isfinite(v.upper)) os << " ub " << v.upper;
    for (const auto& e : v.entries) os << ' ' << e.index << ':' << e.value;
    os << '\n';
  }
  return os.str();
}

}  // namespace vrpdecomp
