#include <gtest/gtest.h>

#include <cstdlib>

#include "hbk/fuzz.hpp"
#include "hbk/toeplitz.hpp"

using hbk::Property;

namespace {

hbk::CampaignConfig small_config(std::size_t samples = 600) {
  hbk::CampaignConfig cfg;
  cfg.samples = samples;
  return cfg;
}

}  // namespace

TEST(Campaign, DeterministicAcrossThreadCounts) {
  auto cfg = small_config();
  cfg.threads = 1;
  const auto one = hbk::report_json(hbk::run_campaign(cfg)).dump();
  cfg.threads = 7;
  const auto seven = hbk::report_json(hbk::run_campaign(cfg)).dump();
  EXPECT_EQ(one, seven);
  cfg.seed += 1;
  EXPECT_NE(one, hbk::report_json(hbk::run_campaign(cfg)).dump());
}

TEST(Campaign, CountsEveryCheck) {
  const auto report = hbk::run_campaign(small_config(60));
  EXPECT_EQ(report.errors, 0u);
  // one T2n_h check per m in 2..5
  EXPECT_EQ(report[Property::toeplitz_T2n_h].checks, 60u * 4u);
  EXPECT_EQ(report[Property::toeplitz_T31_h].checks, 60u);
  std::size_t by_n = 0;
  for (const auto& [n, s] : report[Property::toeplitz_T31_h].by_n) by_n += s.checks;
  EXPECT_EQ(by_n, 60u);
  EXPECT_EQ(report[Property::toeplitz_T31_h].by_n.size(), 3u);
}

TEST(Campaign, AnalyticPropertiesHold) {
  const auto report = hbk::run_campaign(small_config(1200));
  for (auto p : {Property::caratheodory_bound, Property::efraimidis, Property::coefficient_bound_a,
                 Property::coefficient_bound_b, Property::toeplitz_T2n_h, Property::toeplitz_T2n_g,
                 Property::toeplitz_T31_h, Property::toeplitz_T32_h, Property::subordination_majorant,
                 Property::growth_sandwich, Property::bohr_inequality, Property::area_sandwich}) {
    EXPECT_TRUE(report[p].pass()) << hbk::property_name(p);
    EXPECT_GT(report[p].checks, 0u) << hbk::property_name(p);
    EXPECT_GE(report[p].worst_margin, 0.0) << hbk::property_name(p);
  }
}

TEST(Campaign, CoanalyticT3ViolationsOnlyAtNOne) {
  const auto report = hbk::run_campaign(small_config(1200));
  for (auto p : {Property::toeplitz_T31_g, Property::toeplitz_T32_g}) {
    const auto& s = report[p];
    EXPECT_GT(s.violations, 0u) << hbk::property_name(p);
    EXPECT_GT(s.by_n.at(1).violations, 0u);
    EXPECT_EQ(s.by_n.at(2).violations, 0u);
    EXPECT_EQ(s.by_n.at(3).violations, 0u);
    ASSERT_TRUE(s.first_violation.has_value());
    EXPECT_EQ(s.first_violation->sample.n, 1);
  }
  EXPECT_FALSE(report.pass());
}

TEST(Campaign, ViolationReproducesFromSeed) {
  const auto cfg = small_config(600);
  const auto report = hbk::run_campaign(cfg);
  const auto& v = report[Property::toeplitz_T31_g].first_violation;
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->sample.seed, hbk::derive_seed(cfg.seed, v->sample.index));
  const auto f = hbk::sample_mzn(v->sample.seed, v->sample.alpha, v->sample.n, cfg.zeta_mode, cfg.order, cfg.max_atoms);
  EXPECT_EQ(f.params().zeta, v->sample.zeta);
  EXPECT_DOUBLE_EQ(std::abs(hbk::toeplitz_det(f.g(), 1, 3)), v->value);
  EXPECT_GT(v->value, v->bound);
}

TEST(Campaign, ValidationRejectsBadConfigs) {
  auto cfg = small_config();
  cfg.samples = 0;
  EXPECT_THROW(hbk::run_campaign(cfg), hbk::precondition_error);
  cfg = small_config();
  cfg.alpha_grid = {1.0};
  EXPECT_THROW(hbk::run_campaign(cfg), hbk::precondition_error);
  cfg = small_config();
  cfg.n_list = {};
  EXPECT_THROW(hbk::run_campaign(cfg), hbk::precondition_error);
  cfg = small_config();
  cfg.order = 16;
  EXPECT_THROW(hbk::run_campaign(cfg), hbk::precondition_error);
}

TEST(Campaign, BoundaryZetaMode) {
  auto cfg = small_config(120);
  cfg.zeta_mode = hbk::ZetaMode::boundary;
  cfg.n_list = {2, 3};
  const auto report = hbk::run_campaign(cfg);
  EXPECT_EQ(report.errors, 0u);
  EXPECT_TRUE(report.pass());
}

TEST(WorkerCount, EnvironmentCap) {
  ::setenv("HBK_THREADS", "2", 1);
  EXPECT_EQ(hbk::worker_count(8), 2u);
  EXPECT_EQ(hbk::worker_count(1), 1u);
  ::setenv("HBK_THREADS", "junk", 1);
  EXPECT_EQ(hbk::worker_count(5), 5u);
  ::unsetenv("HBK_THREADS");
  EXPECT_EQ(hbk::worker_count(3), 3u);
}

TEST(ReportJson, Layout) {
  const auto j = hbk::report_json(hbk::run_campaign(small_config(30)));
  ASSERT_TRUE(j.contains("properties"));
  EXPECT_EQ(j["properties"].size(), hbk::kPropertyCount);
  EXPECT_EQ(j["samples"], 30);
  EXPECT_EQ(j["pass"], false);
  EXPECT_EQ(j["properties"][7]["name"], "toeplitz_T31_g");
}
