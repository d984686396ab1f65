#include <gtest/gtest.h>

#include <cmath>

#include "oracle/brute_force.hpp"
#include "oracle/master_oracle.hpp"
#include "oracle/random_instance.hpp"
#include "vrpdecomp/bench.hpp"

using namespace vrpdecomp;

TEST(Bench, GeoMean) {
  EXPECT_DOUBLE_EQ(geo_mean({2, 8}), 4.0);
  EXPECT_EQ(geo_mean({3, 0}), 0.0);
  EXPECT_TRUE(std::isnan(geo_mean({})));
}

TEST(Bench, InstanceGroup) {
  EXPECT_EQ(instance_group("R101-25"), "R1-25");
  EXPECT_EQ(instance_group("RC204-50"), "RC2-50");
  EXPECT_EQ(instance_group("C201"), "C2");
  EXPECT_EQ(instance_group("example"), "example");
}

TEST(Bench, EnumerateExample) {
  const Instance in = builtin_example();
  const auto r = enumerate_full(in, NgConfig(in, 0));
  EXPECT_FALSE(r.overflow);
  EXPECT_EQ(r.columns, 13u);
  EXPECT_EQ(r.paths, 13u);
  EXPECT_EQ(r.dag_nodes, 11u);
  EXPECT_EQ(r.dag_arcs, 21u);
  CutPool pool(3);
  pool.add_gsec(capacity_gsec(in));
  const double want = oracle::full_master_value(in, pool, oracle::all_routes(in, NgConfig(in, 0)));
  EXPECT_NEAR(r.dw_lb, want, 1e-9);
  EXPECT_NEAR(r.af_lb, want, 1e-9);
}

TEST(Bench, EnumerationCountsAgree) {
  for (unsigned seed : {90u, 91u, 92u}) {
    const Instance in = oracle::random_instance(seed, 8);
    for (int delta : {2, 7}) {
      const auto r = enumerate_full(in, NgConfig(in, delta));
      EXPECT_EQ(r.columns, oracle::all_routes(in, NgConfig(in, delta)).size());
      EXPECT_EQ(r.paths, r.columns) << "seed " << seed << " delta " << delta;
      EXPECT_NEAR(r.dw_lb, r.af_lb, 1e-7);
    }
  }
}

TEST(Bench, OverflowIsReported) {
  const Instance in = oracle::random_instance(93, 8);
  const auto r = enumerate_full(in, NgConfig(in, 7), true, 10);
  EXPECT_TRUE(r.overflow);
}

TEST(Bench, MatrixIsDeterministicAndFormsAgree) {
  std::vector<Instance> ins;
  for (unsigned seed : {94u, 95u}) ins.push_back(oracle::random_instance(seed, 7));
  MatrixSpec spec;
  spec.deltas = {0, 3};
  spec.cuts = {CutMode::None, CutMode::Src3};
  spec.timing = false;
  spec.threads = 2;
  const auto a = run_matrix(ins, spec);
  const auto b = run_matrix(ins, spec);
  EXPECT_TRUE(a.all_completed);
  EXPECT_EQ(a.tsv, b.tsv);
  EXPECT_EQ(a.json, b.json);
  ASSERT_EQ(a.runs.size(), 16u);
  for (std::size_t k = 0; k + 1 < a.runs.size(); k += 2) {
    ASSERT_EQ(a.runs[k].form, Form::Dw);
    if (a.runs[k].cuts == CutMode::None) {
      EXPECT_NEAR(a.runs[k].stats.lb, a.runs[k + 1].stats.lb, 1e-4 * std::max(1.0, std::abs(a.runs[k].stats.lb)));
    }
  }
  EXPECT_NE(a.tsv.find("Instance\tDelta\tCuts\tStrengthen\tLB\tRMP (s)\tPP (s)\tTime (s)"), std::string::npos);
  EXPECT_NE(a.tsv.find("Geo. Mean\t0\tnone\tnone"), std::string::npos);
  EXPECT_NE(a.tsv.find("\tVariables\tIterations\tTime\n"), std::string::npos);
}
