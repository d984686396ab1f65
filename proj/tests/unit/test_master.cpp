#include <gtest/gtest.h>

#include <cmath>

#include "oracle/brute_force.hpp"
#include "oracle/master_oracle.hpp"
#include "oracle/random_instance.hpp"
#include "vrpdecomp/af_master.hpp"
#include "vrpdecomp/dw_master.hpp"
#include "vrpdecomp/errors.hpp"
#include "vrpdecomp/pricing.hpp"
#include "vrpdecomp/solver.hpp"
#include "vrpdecomp/strengthening.hpp"

using namespace vrpdecomp;

namespace {

std::vector<int> y(std::initializer_list<int> ids) {
  std::vector<int> out;
  for (int k : ids) out.push_back(k - 1);
  return out;
}

CutPool capacity_pool(const Instance& in) {
  CutPool p(in.customers());
  p.add_gsec(capacity_gsec(in));
  return p;
}

}  // namespace

TEST(DwMaster, InitialRowsAndColumns) {
  const Instance in = builtin_example();
  Relaxation rel(in, NgConfig(in, 0));
  rel.cuts.add_gsec(capacity_gsec(in));
  DwMaster m(rel);
  ASSERT_EQ(m.row_count(), 5);
  EXPECT_EQ(m.lp().row_rhs(m.convexity_row()), 2.0);
  EXPECT_EQ(m.lp().row_rhs(m.cut_row_gsec(0)), 1.0);
  EXPECT_EQ(m.lp().row_sense(m.cut_row_gsec(0)), RowSense::GreaterEqual);
  ASSERT_EQ(m.columns().size(), 4u);

  const Column& c1 = m.columns()[0];
  EXPECT_EQ(c1.route.vertices, (std::vector<int>{0, 1, 4}));
  EXPECT_EQ(descale(c1.cost), 10.0);
  EXPECT_EQ(c1.visits[1], 1);
  EXPECT_EQ(c1.visits[2], 0);
  EXPECT_EQ(c1.visits[3], 0);

  const Column& e = m.columns().back();
  EXPECT_TRUE(e.route.empty_route());
  EXPECT_EQ(e.cost, 0);
  const auto entries = m.lp().column_entries(e.lp_id);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].index, m.convexity_row());
  EXPECT_EQ(m.routes_added(), 3);
}

TEST(DwMaster, AddRoutesDeduplicates) {
  const Instance in = builtin_example();
  Relaxation rel(in, NgConfig(in, 0));
  DwMaster m(rel);
  const Route r{{0, 1, 2, 4}};
  EXPECT_EQ(m.add_routes({r, r}), 1);
  EXPECT_EQ(m.add_routes({r}), 0);
}

TEST(DwMaster, ExampleBoundMatchesOracle) {
  const Instance in = builtin_example();
  for (int delta : {0, 2}) {
    const NgConfig ng(in, delta);
    const auto routes = oracle::all_routes(in, ng);
    EXPECT_EQ(routes.size(), delta == 0 ? 13u : 9u);
    const double want = oracle::full_master_value(in, capacity_pool(in), routes);
    for (Form f : {Form::Dw, Form::Af}) {
      SolveOptions o;
      o.form = f;
      o.ng = delta;
      const auto st = solve(in, o);
      ASSERT_TRUE(st.certified);
      EXPECT_NEAR(st.lb, want, 1e-9) << to_string(f) << " delta " << delta;
    }
  }
}

TEST(DwMaster, PartitionRowsHoldAtOptimum) {
  const Instance in = oracle::random_instance(11, 7);
  Solver s(in, SolveOptions{});
  s.run();
  auto& m = dynamic_cast<DwMaster&>(s.master());
  std::vector<double> cover(in.customers() + 1, 0.0);
  for (const auto& c : m.columns()) {
    for (int i = 1; i <= in.customers(); ++i) cover[i] += c.visits[i] * m.value(c);
  }
  for (int i = 1; i <= in.customers(); ++i) EXPECT_NEAR(cover[i], 1.0, 1e-7);
  EXPECT_LE(m.infeasibility(), 1e-9);
}

TEST(DwMaster, PurgeAfterDssr) {
  const Instance in = builtin_example();
  Relaxation rel(in, NgConfig(in, 0));
  DwMaster m(rel);
  const Route cyc{{0, 1, 2, 1, 4}};
  ASSERT_EQ(m.add_routes({cyc, Route{{0, 1, 2, 4}}}), 2);
  EXPECT_EQ(m.sync_relaxation(), 0);
  m.solve();
  ASSERT_LE(m.infeasibility(), 1e-9);
  const double before = m.objective();
  rel.ng = dssr_step(rel.ng, {cyc});
  EXPECT_TRUE(rel.ng.neighbours(2).test(1));
  EXPECT_EQ(m.sync_relaxation(), 1);
  m.solve();
  ASSERT_LE(m.infeasibility(), 1e-9);
  EXPECT_GE(m.objective(), before - 1e-9);
}

TEST(AfMaster, PathsShareArcColumns) {
  const Instance in = builtin_example();
  Relaxation rel(in, NgConfig(in, 0));
  rel.dag = std::make_unique<Dag>(Dag::compile(in, rel.ng, rel.cuts));
  AfMaster m(rel);
  // Singleton paths and the empty arc are there from the start.
  EXPECT_TRUE(m.has_arc(0));
  EXPECT_TRUE(m.has_arc(12));
  EXPECT_TRUE(m.has_node_row(1));
  EXPECT_EQ(m.add_path(y({1, 13})), 0);

  const int first = m.add_path(y({2, 5, 16}));
  EXPECT_EQ(first, 2);  // y2 came with the singleton route of customer 2
  EXPECT_EQ(m.add_path(y({2, 6, 18})), 2);
  EXPECT_EQ(m.add_path(y({2, 6, 18})), 0);
  EXPECT_THROW(m.add_path({99}), ContractError);
}

TEST(AfMaster, LazyDagFromEmpty) {
  const Instance in = builtin_example();
  Relaxation rel(in, NgConfig(in, 0));
  AfMaster m(rel);
  EXPECT_TRUE(m.dag().is_lazy());
  // r, t, and one node per singleton customer.
  EXPECT_EQ(m.dag().node_count(), 5u);
  EXPECT_EQ(m.node_rows(), 3);
  EXPECT_EQ(m.variable_count(), 7);
  EXPECT_DOUBLE_EQ(m.recombination(), 1.0);
}

TEST(AfMaster, FlowsConserveAndRoutesPriceOut) {
  for (unsigned seed : {3u, 4u, 5u}) {
    const Instance in = oracle::random_instance(seed, 7);
    SolveOptions o;
    o.form = Form::Af;
    o.ng = 2;
    Solver s(in, o);
    const auto st = s.run();
    ASSERT_TRUE(st.certified);
    const auto sup = s.master().support();
    double total = 0;
    for (const auto& rw : sup) total += rw.weight;
    EXPECT_NEAR(total, in.vehicles(), 1e-7);
    const MasterDuals d = s.master().duals();
    for (const auto& r : oracle::all_routes(in, s.relaxation().ng)) {
      EXPECT_GE(oracle::reduced_cost(in, s.relaxation().cuts, d, r), -1e-6);
    }
  }
}

TEST(Solver, FormsAndPricersAgreeWithOracle) {
  for (unsigned seed = 20; seed < 26; ++seed) {
    const Instance in = oracle::random_instance(seed, 6);
    for (int delta : {0, 2, 5}) {
      const NgConfig ng(in, delta);
      const double want = oracle::full_master_value(in, capacity_pool(in), oracle::all_routes(in, ng));
      for (Form f : {Form::Dw, Form::Af}) {
        for (PricerKind p : {PricerKind::Labeling, PricerKind::Dag, PricerKind::Beam}) {
          SolveOptions o;
          o.form = f;
          o.ng = delta;
          o.pricer = p;
          const auto st = solve(in, o);
          ASSERT_TRUE(st.certified);
          EXPECT_NEAR(st.lb, want, 1e-7) << "seed " << seed << " delta " << delta << " " << to_string(f) << " "
                                         << to_string(p);
        }
      }
    }
  }
}

TEST(Solver, LagrangianNeverExceedsFinalBound) {
  for (unsigned seed : {7u, 8u}) {
    const Instance in = oracle::random_instance(seed, 8);
    for (Form f : {Form::Dw, Form::Af}) {
      SolveOptions o;
      o.form = f;
      o.ng = 3;
      const auto st = solve(in, o);
      ASSERT_TRUE(st.certified);
      for (const auto& r : st.trace) {
        if (!std::isnan(r.lagrangian)) EXPECT_LE(r.lagrangian, st.lb + 1e-6);
      }
    }
  }
}

TEST(Solver, SmoothingOffGivesSameBound) {
  const Instance in = oracle::random_instance(9, 8);
  SolveOptions a, b;
  b.smoothing = 0;
  EXPECT_NEAR(solve(in, a).lb, solve(in, b).lb, 1e-7);
}

TEST(Solver, RepeatRunsAreIdentical) {
  const Instance in = oracle::random_instance(10, 8);
  for (Form f : {Form::Dw, Form::Af}) {
    SolveOptions o;
    o.form = f;
    o.cuts = CutMode::Src3;
    const auto s1 = solve(in, o);
    const auto s2 = solve(in, o);
    EXPECT_EQ(s1.lb, s2.lb);
    EXPECT_EQ(s1.iterations, s2.iterations);
    EXPECT_EQ(s1.variables, s2.variables);
    EXPECT_EQ(s1.cuts_added, s2.cuts_added);
  }
}

TEST(Solver, BudgetExhaustionReturnsBoundWithFlag) {
  const Instance in = oracle::random_instance(12, 8);
  SolveOptions o;
  o.iteration_limit = 2;
  const auto st = solve(in, o);
  EXPECT_TRUE(st.budget_exhausted);
  EXPECT_FALSE(st.certified);
  EXPECT_LE(st.lb, solve(in, SolveOptions{}).lb + 1e-7);
}
