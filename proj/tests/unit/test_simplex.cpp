#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle/rational_lp.hpp"
#include "vrpdecomp/simplex.hpp"

using namespace vrpdecomp;

namespace {

std::vector<SparseEntry> entries(std::initializer_list<std::pair<int, double>> xs) {
  std::vector<SparseEntry> out;
  for (auto [i, v] : xs) out.push_back({i, v});
  return out;
}

}  // namespace

TEST(Simplex, SingleBoundRow) {
  LinearProgram lp;
  const int r = lp.add_row(RowSense::GreaterEqual, 1.0);
  const int x = lp.add_column(1.0, entries({{r, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), 1.0, 1e-9);
  EXPECT_NEAR(lp.value(x), 1.0, 1e-9);
  EXPECT_NEAR(lp.dual(r), 1.0, 1e-9);
}

TEST(Simplex, FixedAssignment) {
  LinearProgram lp;
  const int r0 = lp.add_row(RowSense::Equal, 1.0);
  const int r1 = lp.add_row(RowSense::Equal, 1.0);
  lp.add_column(10.0, entries({{r0, 1.0}}));
  lp.add_column(10.0, entries({{r1, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), 20.0, 1e-9);
  EXPECT_NEAR(lp.dual(r0), 10.0, 1e-9);
  EXPECT_NEAR(lp.dual(r1), 10.0, 1e-9);
}

TEST(Simplex, DroppingCoverIsInfeasible) {
  LinearProgram lp;
  const int r0 = lp.add_row(RowSense::Equal, 1.0);
  const int r1 = lp.add_row(RowSense::Equal, 1.0);
  const int a = lp.add_column(3.0, entries({{r0, 1.0}}));
  lp.add_column(4.0, entries({{r1, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  const int drop[] = {a};
  lp.drop_columns(drop);
  EXPECT_EQ(lp.solve(), LpStatus::Infeasible);
  EXPECT_GT(lp.infeasibility(), 0.5);
  EXPECT_FALSE(lp.column_alive(a));
}

TEST(Simplex, UnboundedRay) {
  LinearProgram lp;
  const int r = lp.add_row(RowSense::GreaterEqual, 1.0);
  lp.add_column(-1.0, entries({{r, 1.0}}));
  EXPECT_EQ(lp.solve(), LpStatus::Unbounded);
}

TEST(Simplex, UpperBoundsRespected) {
  LinearProgram lp;
  const int r = lp.add_row(RowSense::LessEqual, 10.0);
  const int x = lp.add_column(-2.0, entries({{r, 1.0}}), 3.0);
  const int y = lp.add_column(-1.0, entries({{r, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.value(x), 3.0, 1e-9);
  EXPECT_NEAR(lp.value(y), 7.0, 1e-9);
  EXPECT_NEAR(lp.objective(), -13.0, 1e-9);
}

TEST(Simplex, AddedRowsAndColumnsWarmStart) {
  LinearProgram lp;
  const int r0 = lp.add_row(RowSense::GreaterEqual, 2.0);
  const int x = lp.add_column(1.0, entries({{r0, 1.0}}));
  const int y = lp.add_column(2.0, entries({{r0, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), 2.0, 1e-9);
  const double before = lp.objective();
  const int r1 = lp.add_row(RowSense::LessEqual, 1.0, entries({{x, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), 3.0, 1e-9);
  EXPECT_GE(lp.objective(), before - 1e-9);
  EXPECT_NEAR(lp.value(y), 1.0, 1e-9);
  EXPECT_LE(lp.dual(r1), 1e-9);
  lp.add_column(1.5, entries({{r0, 1.0}}));
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), 2.5, 1e-9);
}

// Random LPs against the rational oracle. Checks objective, primal
// feasibility and dual feasibility plus strong duality for our duals (duals
// need not be unique).
TEST(Simplex, MatchesExactOracleOnRandomLps) {
  std::mt19937 rng(12345);
  int optimal = 0;
  for (int trial = 0; trial < 800; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 9);
    const int n = 1 + static_cast<int>(rng() % 14);
    std::uniform_int_distribution<int> coef(-3, 4), cst(-5, 9), rhs(-2, 8);
    oracle::ExactLp ex;
    LinearProgram lp;
    std::vector<RowSense> senses;
    std::vector<double> b;
    for (int i = 0; i < m; ++i) {
      const int k = static_cast<int>(rng() % 3);
      const RowSense s = k == 0 ? RowSense::LessEqual : k == 1 ? RowSense::Equal : RowSense::GreaterEqual;
      const int bi = rhs(rng);
      senses.push_back(s);
      b.push_back(bi);
      lp.add_row(s, bi);
      ex.add_row(k == 0 ? oracle::Sense::Le : k == 1 ? oracle::Sense::Eq : oracle::Sense::Ge, bi);
    }
    std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
    std::vector<double> c(n);
    for (int j = 0; j < n; ++j) {
      c[j] = cst(rng);
      std::vector<SparseEntry> col;
      const int jj = ex.add_column(static_cast<int>(c[j]));
      for (int i = 0; i < m; ++i) {
        const int v = (rng() % 3 == 0) ? 0 : coef(rng);
        a[i][j] = v;
        ex.a[i][jj] = v;
        if (v != 0) col.push_back({i, static_cast<double>(v)});
      }
      lp.add_column(c[j], col);
    }
    const auto exact = oracle::solve(ex);
    const LpStatus st = lp.solve();
    if (exact.status == oracle::Status::Infeasible) {
      EXPECT_EQ(st, LpStatus::Infeasible) << "trial " << trial;
      continue;
    }
    if (exact.status == oracle::Status::Unbounded) {
      EXPECT_EQ(st, LpStatus::Unbounded) << "trial " << trial;
      continue;
    }
    ++optimal;
    ASSERT_EQ(st, LpStatus::Optimal) << "trial " << trial << "\n" << lp.dump();
    EXPECT_NEAR(lp.objective(), oracle::to_double(exact.objective), 1e-6) << "trial " << trial;
    double dual_obj = 0;
    for (int i = 0; i < m; ++i) {
      double act = 0;
      for (int j = 0; j < n; ++j) act += a[i][j] * lp.value(j);
      if (senses[i] == RowSense::LessEqual) EXPECT_LE(act, b[i] + 1e-7);
      if (senses[i] == RowSense::GreaterEqual) EXPECT_GE(act, b[i] - 1e-7);
      if (senses[i] == RowSense::Equal) EXPECT_NEAR(act, b[i], 1e-7);
      const double y = lp.dual(i);
      if (senses[i] == RowSense::LessEqual) EXPECT_LE(y, 1e-7);
      if (senses[i] == RowSense::GreaterEqual) EXPECT_GE(y, -1e-7);
      dual_obj += y * b[i];
    }
    for (int j = 0; j < n; ++j) {
      double d = c[j];
      for (int i = 0; i < m; ++i) d -= lp.dual(i) * a[i][j];
      EXPECT_GE(d, -1e-6) << "trial " << trial << " column " << j;
      EXPECT_NEAR(d, lp.reduced_cost(j), 1e-6);
      EXPECT_GE(lp.value(j), -1e-9);
    }
    EXPECT_NEAR(dual_obj, lp.objective(), 1e-6) << "trial " << trial;
  }
  EXPECT_GT(optimal, 20);
}

// Set-partitioning LPs are heavily degenerate. With bland_after = 1 the
// perturbed solve and the dual cleanup run on almost every instance.
TEST(Simplex, PerturbedSolveMatchesOracleOnDegenerateLps) {
  std::mt19937 rng(777);
  SimplexOptions opt;
  opt.bland_after = 1;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 6);
    const int n = m + static_cast<int>(rng() % 20);
    oracle::ExactLp ex;
    LinearProgram lp(opt);
    for (int i = 0; i < m; ++i) {
      lp.add_row(RowSense::Equal, 1);
      ex.add_row(oracle::Sense::Eq, 1);
    }
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows;
      if (j < m) rows.push_back(j);
      else
        for (int i = 0; i < m; ++i)
          if (rng() % 2) rows.push_back(i);
      if (rows.empty()) rows.push_back(static_cast<int>(rng() % m));
      const int c = 1 + static_cast<int>(rng() % 4) + static_cast<int>(rows.size());
      const int jj = ex.add_column(j < m ? 10 : c);
      std::vector<SparseEntry> col;
      for (int i : rows) {
        ex.a[i][jj] = 1;
        col.push_back({i, 1.0});
      }
      lp.add_column(j < m ? 10 : c, col);
      cols.push_back(rows);
    }
    const auto exact = oracle::solve(ex);
    ASSERT_EQ(exact.status, oracle::Status::Optimal);
    ASSERT_EQ(lp.solve(), LpStatus::Optimal) << "trial " << trial;
    EXPECT_NEAR(lp.objective(), oracle::to_double(exact.objective), 1e-6) << "trial " << trial;
    std::vector<double> act(m, 0.0);
    for (int j = 0; j < n; ++j) {
      EXPECT_GE(lp.value(j), -1e-9);
      EXPECT_GE(lp.reduced_cost(j), -1e-6);
      for (int i : cols[j]) act[i] += lp.value(j);
    }
    for (int i = 0; i < m; ++i) EXPECT_NEAR(act[i], 1.0, 1e-7);
  }
}

TEST(Simplex, AddingColumnNeverRaisesObjective) {
  std::mt19937 rng(7);
  LinearProgram lp;
  for (int i = 0; i < 5; ++i) lp.add_row(RowSense::Equal, 1.0);
  for (int i = 0; i < 5; ++i) {
    const SparseEntry e{i, 1.0};
    lp.add_column(100.0, std::span<const SparseEntry>(&e, 1));
  }
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  double prev = lp.objective();
  for (int k = 0; k < 40; ++k) {
    std::vector<SparseEntry> col;
    for (int i = 0; i < 5; ++i) {
      if (rng() % 2) col.push_back({i, 1.0});
    }
    if (col.empty()) continue;
    lp.add_column(static_cast<double>(10 + rng() % 150), col);
    ASSERT_EQ(lp.solve(), LpStatus::Optimal);
    EXPECT_LE(lp.objective(), prev + 1e-9);
    prev = lp.objective();
  }
}
