#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracle/brute_force.hpp"
#include "oracle/master_oracle.hpp"
#include "oracle/random_instance.hpp"
#include "vrpdecomp/af_master.hpp"
#include "vrpdecomp/cuts.hpp"
#include "vrpdecomp/errors.hpp"
#include "vrpdecomp/solver.hpp"

using namespace vrpdecomp;

namespace {

// Routes q1..q13 of the example, sink written as 4.
const std::vector<Route> kExampleRoutes = {
    {{0, 1, 4}},       {{0, 2, 4}},       {{0, 3, 4}},       {{0, 1, 2, 4}},    {{0, 2, 1, 4}},
    {{0, 2, 3, 4}},    {{0, 3, 2, 4}},    {{0, 1, 2, 1, 4}}, {{0, 1, 2, 3, 4}}, {{0, 2, 1, 2, 4}},
    {{0, 2, 3, 2, 4}}, {{0, 3, 2, 1, 4}}, {{0, 3, 2, 3, 4}},
};

GsecCut gsec_of(std::initializer_list<int> members, int rhs) {
  GsecCut g;
  for (int i : members) g.members.set(i);
  g.rhs = rhs;
  return g;
}

}  // namespace

TEST(Cuts, CapacityCut) {
  const Instance in = builtin_example();
  const GsecCut g = capacity_gsec(in);
  EXPECT_EQ(g.rhs, 1);
  EXPECT_EQ(g.members.members(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(gsec_coeff(g, kExampleRoutes[0]), 1);
  EXPECT_EQ(gsec_coeff(g, Route{{0, 4}}), 0);
}

TEST(Cuts, GsecOnOneAndThree) {
  const GsecCut g = gsec_of({1, 3}, 1);
  // Arcs entering {1,3}: (0,1), (0,3), (2,1), (2,3).
  const std::vector<int> want = {1, 0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 2, 2};
  for (std::size_t q = 0; q < kExampleRoutes.size(); ++q) {
    EXPECT_EQ(gsec_coeff(g, kExampleRoutes[q]), want[q]) << "q" << q + 1;
  }
  EXPECT_TRUE(gsec_enters(g, 0, 1));
  EXPECT_TRUE(gsec_enters(g, 2, 3));
  EXPECT_FALSE(gsec_enters(g, 1, 2));
  EXPECT_FALSE(gsec_enters(g, 3, 4));
}

TEST(Cuts, SrcCoefficientsOfFigure) {
  const SrcCut cut{{1, 2}};
  std::set<int> ones;
  for (std::size_t q = 0; q < kExampleRoutes.size(); ++q) {
    if (src_coeff(cut, kExampleRoutes[q]) == 1) ones.insert(static_cast<int>(q) + 1);
    EXPECT_LE(src_coeff(cut, kExampleRoutes[q]), 1);
  }
  EXPECT_EQ(ones, (std::set<int>{4, 5, 8, 9, 10, 11, 12}));
  EXPECT_EQ(src_coeff(SrcCut{{1, 2, 3}}, Route{{0, 1, 2, 3, 4}}), 1);
}

TEST(Cuts, SrcAdvanceHalfUnits) {
  CutPool pool(3);
  pool.add_src(SrcCut{{1, 2}});
  SmallBitset g;
  EXPECT_TRUE(src_advance(pool, g, 1).empty());
  EXPECT_TRUE(g.test(0));
  EXPECT_TRUE(src_advance(pool, g, 3).empty());
  EXPECT_TRUE(g.test(0));
  const SmallBitset w = src_advance(pool, g, 2);
  EXPECT_TRUE(w.test(0));
  EXPECT_FALSE(g.test(0));
}

TEST(Cuts, PoolRejectsMalformedSrc) {
  CutPool pool(4);
  EXPECT_THROW(pool.add_src(SrcCut{{1}}), ContractError);
  EXPECT_THROW(pool.add_src(SrcCut{{1, 1, 2}}), ContractError);
  EXPECT_THROW(pool.add_src(SrcCut{{1, 2, 3, 4}}), ContractError);
  pool.add_src(SrcCut{{3, 1, 2}});
  EXPECT_EQ(pool.srcs()[0].customers, (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(pool.has_src(SrcCut{{1, 2, 3}}));
}

TEST(Cuts, SeparationOnHalfRoutes) {
  const Instance in = builtin_example();
  const std::vector<Route> r = {{{0, 1, 2, 4}}, {{0, 2, 3, 4}}, {{0, 1, 3, 4}}};
  std::vector<WeightedRoute> sol;
  for (const auto& x : r) sol.push_back({&x, 0.5});
  const auto cuts = separate_src3(in, sol, CutPool(3), SrcSeparationOptions{});
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0].customers, (std::vector<int>{1, 2, 3}));

  std::vector<WeightedRoute> integral = {{&r[0], 1.0}, {&kExampleRoutes[2], 1.0}};
  EXPECT_TRUE(separate_src3(in, integral, CutPool(3), SrcSeparationOptions{}).empty());
}

TEST(Cuts, SeparationRespectsCaps) {
  // Many customers, every pair of routes crossing: lots of violated triplets.
  const Instance in = oracle::random_instance(1, 12, 30, 4);
  std::vector<Route> routes;
  for (int a = 1; a <= 12; ++a) {
    for (int b = a + 1; b <= 12; ++b) routes.push_back(Route{{0, a, b, 13}});
  }
  std::vector<WeightedRoute> sol;
  for (const auto& x : routes) sol.push_back({&x, 0.45});

  SrcSeparationOptions opt;
  CutPool pool(12);
  std::map<int, int> per_customer;
  int rounds = 0;
  for (;;) {
    const auto found = separate_src3(in, sol, pool, opt);
    if (found.empty()) break;
    ++rounds;
    EXPECT_LE(static_cast<int>(found.size()), opt.max_per_round);
    for (const auto& c : found) {
      pool.add_src(c);
      for (int i : c.customers) ++per_customer[i];
    }
  }
  EXPECT_GT(rounds, 0);
  EXPECT_LE(static_cast<int>(pool.srcs().size()), opt.max_total);
  for (const auto& [i, k] : per_customer) EXPECT_LE(k, opt.max_per_customer) << "customer " << i;
}

TEST(Cuts, TotalCapStopsAtOneHundred) {
  const Instance in = oracle::random_instance(2, 60, 200, 20);
  std::vector<Route> routes;
  for (int a = 1; a <= 60; ++a) {
    for (int b = a + 1; b <= 60; ++b) routes.push_back(Route{{0, a, b, 61}});
  }
  std::vector<WeightedRoute> sol;
  for (const auto& x : routes) sol.push_back({&x, 0.4});
  SrcSeparationOptions opt;
  opt.max_per_round = 1000;
  opt.max_per_customer = 1000;
  CutPool pool(60);
  for (int round = 0; round < 10; ++round) {
    for (const auto& c : separate_src3(in, sol, pool, opt)) pool.add_src(c);
  }
  EXPECT_EQ(pool.srcs().size(), 100u);
}

TEST(Cuts, ManualGsecSameBoundInBothForms) {
  const Instance in = builtin_example();
  for (Form f : {Form::Dw, Form::Af}) {
    SolveOptions o;
    o.form = f;
    o.ng = 0;
    Solver s(in, o);
    s.add_gsec(gsec_of({1, 3}, 2));
    s.run();
    CutPool pool(3);
    pool.add_gsec(capacity_gsec(in));
    pool.add_gsec(gsec_of({1, 3}, 2));
    EXPECT_NEAR(s.stats().lb, oracle::full_master_value(in, pool, oracle::all_routes(in, NgConfig(in, 0))), 1e-9)
        << to_string(f);
  }
}

TEST(Cuts, ManualSrcSameBoundInBothForms) {
  for (unsigned seed : {30u, 31u, 32u}) {
    const Instance in = oracle::random_instance(seed, 6);
    const NgConfig ng(in, 0);
    double lb[2];
    for (Form f : {Form::Dw, Form::Af}) {
      for (PricerKind p : {PricerKind::Labeling, PricerKind::Dag}) {
        SolveOptions o;
        o.form = f;
        o.ng = 0;
        o.pricer = p;
        Solver s(in, o);
        s.add_src(SrcCut{{1, 2, 3}});
        s.add_src(SrcCut{{2, 4, 5}});
        s.run();
        CutPool pool(in.customers());
        pool.add_gsec(capacity_gsec(in));
        pool.add_src(SrcCut{{1, 2, 3}});
        pool.add_src(SrcCut{{2, 4, 5}});
        const double want = oracle::full_master_value(in, pool, oracle::all_routes(in, ng));
        EXPECT_NEAR(s.stats().lb, want, 1e-7) << "seed " << seed << " " << to_string(f) << " " << to_string(p);
        lb[f == Form::Dw ? 0 : 1] = s.stats().lb;
      }
    }
    EXPECT_NEAR(lb[0], lb[1], 1e-6);
  }
}

TEST(Cuts, SeparatedCutsTightenAndAgree) {
  int with_cuts = 0;
  for (unsigned seed = 40; seed < 52; ++seed) {
    const Instance in = oracle::random_instance(seed, 9, 6, 3);
    double lb[2];
    int count[2];
    for (Form f : {Form::Dw, Form::Af}) {
      SolveOptions o;
      o.form = f;
      o.ng = 2;
      o.cuts = CutMode::Src3;
      // Separate every violated triplet so both forms end on the same polytope.
      o.src.min_violation = 1e-6;
      o.src.max_per_customer = 1000;
      const auto st = solve(in, o);
      ASSERT_TRUE(st.certified);
      ASSERT_LT(st.cuts_added, o.src.max_total);
      EXPECT_GE(st.lb, st.lb_before_cuts - 1e-6);
      lb[f == Form::Dw ? 0 : 1] = st.lb;
      count[f == Form::Dw ? 0 : 1] = st.cuts_added;
    }
    if (count[0] > 0) ++with_cuts;
    EXPECT_NEAR(lb[0], lb[1], 1e-4 * std::max(1.0, std::abs(lb[0]))) << "seed " << seed;
  }
  EXPECT_GT(with_cuts, 0);
}
