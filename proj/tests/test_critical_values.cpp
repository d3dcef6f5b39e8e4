#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "lmsv/asymp.hpp"

using namespace lmsv;

TEST(EmpiricalQuantile, TypeSeven) {
  const std::vector<double> s{1.0, 2.0, 3.0, 4.0, 5.0};
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.9), 4.6);
  EXPECT_THROW(empirical_quantile(std::vector<double>{}, 0.5), std::invalid_argument);
}

TEST(Levels, StandardSetAlwaysPresent) {
  EXPECT_EQ(standard_levels(), (std::vector<double>{0.90, 0.95, 0.99}));
  const std::vector<double> extra{0.975, 0.95};
  EXPECT_EQ(standard_levels(extra), (std::vector<double>{0.90, 0.95, 0.975, 0.99}));
  const std::vector<double> bad{1.5};
  EXPECT_THROW(standard_levels(bad), std::invalid_argument);
}

TEST(Tables, KeysSeparateFamiliesAndTrims) {
  const TrimSpec a{0.15, 0.85}, b{0.1, 0.9};
  EXPECT_NE(table_key(LimitFamily::SnRatio, 1, 0.7, a), table_key(LimitFamily::SnRatio, 1, 0.7, b));
  EXPECT_NE(table_key(LimitFamily::SnRatio, 1, 0.7, a), table_key(LimitFamily::CusumBridgeSup, 1, 0.7, a));
  EXPECT_NE(table_key(LimitFamily::SnRatio, 1, 0.7, a), table_key(LimitFamily::SnRatio, 2, 0.7, a));
  EXPECT_EQ(table_key(LimitFamily::CusumBridgeSup, 1, 0.7, a), table_key(LimitFamily::CusumBridgeSup, 1, 0.7, b));
  EXPECT_EQ(parse_limit_family(to_string(LimitFamily::SnRatio)), LimitFamily::SnRatio);
}

TEST(Tables, SimulationIsDeterministicAndOrdered) {
  const CriticalValueBudget budget{500, 256, 7};
  const CriticalValueTable a = critical_values(LimitFamily::SnRatio, 1, 0.8, {}, {}, budget);
  const CriticalValueTable b = critical_values(LimitFamily::SnRatio, 1, 0.8, {}, {}, budget);
  EXPECT_EQ(a.quantiles, b.quantiles);
  EXPECT_EQ(a.path_count, 500u);
  EXPECT_EQ(a.quantiles.size(), 6u);  // three levels and their complements
  double prev = -1.0;
  for (const auto& [level, v] : a.quantiles) {
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(a.quantile(0.5), std::out_of_range);
}

TEST(Tables, BridgeSupNearKolmogorovForBrownianMotion) {
  const CriticalValueTable t =
      critical_values(LimitFamily::CusumBridgeSup, 1, 0.5, {}, {}, {4000, 4096, 11});
  const CriticalValueTable k = kolmogorov_table({});
  EXPECT_EQ(k.source, "kolmogorov-series");
  // Grid sup is biased slightly low; loose check at this budget.
  EXPECT_NEAR(t.quantile(0.95), k.quantile(0.95), 0.04);
  EXPECT_NEAR(t.quantile(0.90), k.quantile(0.90), 0.04);
}

TEST(Tables, LongMemoryBridgeQuantilesShrinkWithH) {
  // Larger H: smoother paths, tighter normalized bridge.
  const CriticalValueBudget budget{2000, 512, 3};
  const double q6 = critical_values(LimitFamily::CusumBridgeSup, 1, 0.6, {}, {}, budget).quantile(0.95);
  const double q9 = critical_values(LimitFamily::CusumBridgeSup, 1, 0.9, {}, {}, budget).quantile(0.95);
  EXPECT_LT(q9, q6);
}

TEST(TablesJson, RoundTrip) {
  const CriticalValueTable t = critical_values(LimitFamily::SnRatio, 1, 0.7, {0.1, 0.9}, {}, {200, 128, 5});
  const CriticalValueTable u = table_from_json(to_json(t));
  EXPECT_EQ(u.key(), t.key());
  EXPECT_EQ(u.quantiles, t.quantiles);
  EXPECT_EQ(u.seed, 5u);
  EXPECT_EQ(u.path_length, 128u);
  EXPECT_EQ(u.trim, t.trim);

  const auto dir = std::filesystem::temp_directory_path() / "lmsv_cv_test";
  std::filesystem::create_directories(dir);
  const std::string file = (dir / "t.json").string();
  save_table(t, file);
  EXPECT_EQ(load_table(file).quantiles, t.quantiles);
}

TEST(TablesJson, VersionMismatchRejected) {
  const CriticalValueTable t = kolmogorov_table({});
  nlohmann::json j = nlohmann::json::parse(to_json(t));
  j["format_version"] = CriticalValueTable::kFormatVersion + 1;
  EXPECT_THROW(table_from_json(j.dump()), std::runtime_error);
  EXPECT_THROW(load_table("/nonexistent/table.json"), std::runtime_error);
}
