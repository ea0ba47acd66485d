#include "pairspec/cost.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "pairspec/errors.hpp"

namespace pairspec {
namespace {

CostModel model(double n_grid, double z, double n_phi) {
  CostModel m;
  m.n_grid = n_grid;
  m.z = z;
  m.n_phi = n_phi;
  return m;
}

TEST(CostModel, SummationTerms) {
  const CostModel g = model(128 * 256, 35, 7);
  const CostModel m = model(16 * 25, 35, 7);
  EXPECT_DOUBLE_EQ(summation_terms(g, false), 32768.0 * 35);
  EXPECT_DOUBLE_EQ(summation_terms_per_minutia(g, false), 32768.0);
  EXPECT_DOUBLE_EQ(summation_terms(m, true), 400.0 * 595);
  EXPECT_DOUBLE_EQ(summation_terms_per_minutia(m, true), 6800.0);
  EXPECT_LT(summation_terms_per_minutia(m, true), summation_terms_per_minutia(g, false));
}

TEST(CostModel, VerificationCostTerms) {
  CostModel m = model(400, 35, 7);
  const double full = 400 * 595 * 1.0 + 6 * 400 * 0.5 + 7 * 0.1 * 400;
  EXPECT_DOUBLE_EQ(verification_cost(m, true), full);
  m.n_phi = 1;
  EXPECT_DOUBLE_EQ(verification_cost(m, true), 400 * 595 * 1.0 + 0.1 * 400);
  CostModel g = model(32768, 35, 1);
  EXPECT_DOUBLE_EQ(verification_cost(g, false), 32768 * 35 + 0.1 * 32768);
}

TEST(CostModel, LinearInSummationCost) {
  CostModel a = model(400, 35, 7);
  CostModel b = a;
  b.t_sum = 2.0;
  b.t_rot = 0.5;
  EXPECT_DOUBLE_EQ(verification_cost(b, true) - verification_cost(a, true), summation_terms(a, true));
  EXPECT_DOUBLE_EQ(verification_cost(b, false) - verification_cost(a, false), summation_terms(a, false));
}

TEST(CostModel, Validation) {
  EXPECT_NO_THROW(model(400, 35, 7).validate());
  CostModel m = model(400, 35, 7);
  m.t_rot = 1.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = model(0, 35, 7);
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = model(400, 35, 0);
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = model(400, 35, 1);
  m.c_score = -1;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  EXPECT_THROW(verification_cost(model(400, 1, 1), true), std::invalid_argument);
}

TEST(Bench, ReportsAnalyticCounts) {
  BenchConfig c;
  c.repeats = 1;
  c.warmup = 0;
  const BenchReport a = run_bench(c);
  const BenchReport b = run_bench(c);
  EXPECT_EQ(a.z, 35u);
  EXPECT_EQ(a.grid_m, 400u);
  EXPECT_EQ(a.grid_g, 32768u);
  EXPECT_EQ(a.ops_m, b.ops_m);
  EXPECT_EQ(a.ops_g, b.ops_g);
  EXPECT_EQ(a.ops_g, 32768u * 35u);
  EXPECT_GT(a.ops_m, 0u);
  const std::string text = format_bench(a);
  EXPECT_NE(text.find("6800"), std::string::npos);
  EXPECT_NE(text.find("1146880"), std::string::npos);
  EXPECT_GT(a.median_compute_g_s, 0.0);
}

TEST(Bench, EmptyDatabaseIsUsageError) {
  const auto dir = std::filesystem::temp_directory_path() / "pairspec_cost_empty_db";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  BenchConfig c;
  c.database = dir;
  EXPECT_THROW(run_bench(c), UsageError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace pairspec
