#include <gtest/gtest.h>

#include <algorithm>

#include "tps/verify.hpp"

namespace {

TEST(Verify, EveryCheckPasses) {
  tps::VerifyOptions opt;
  opt.trials = 5;
  opt.max_n = 33;
  const auto results = tps::run_verification(opt);
  ASSERT_GE(results.size(), 10u);
  for (const auto& r : results) EXPECT_TRUE(r.pass) << r.name << " residual " << r.max_residual;
}

TEST(Verify, InjectedFaultFailsTheEnergyIdentity) {
  tps::VerifyOptions opt;
  opt.trials = 3;
  opt.max_n = 16;
  opt.inject_symmetry_fault = true;
  const auto results = tps::run_verification(opt);
  const auto it = std::find_if(results.begin(), results.end(),
                               [](const tps::CheckResult& r) { return r.name == "energy identity"; });
  ASSERT_NE(it, results.end());
  EXPECT_FALSE(it->pass);
  EXPECT_GT(it->max_residual, 1e-3);
}

TEST(Verify, SlopeHelper) {
  const std::vector<double> x{0.1, 0.2, 0.4};
  const std::vector<double> y{0.01, 0.04, 0.16};
  EXPECT_NEAR(tps::loglog_slope(x, y), 2.0, 1e-12);
}

}  // namespace
