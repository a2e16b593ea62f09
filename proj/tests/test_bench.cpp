#include <gtest/gtest.h>

#include "beamtrim/bench.hpp"
#include "test_util.hpp"

using namespace beamtrim;

TEST(Quartiles, LinearInterpolation) {
  const Quartiles q = quartiles({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.median, 2.5);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
  const Quartiles one = quartiles({7});
  EXPECT_EQ(one.q1, 7);
  EXPECT_EQ(one.q3, 7);
  const Quartiles none = quartiles({});
  EXPECT_EQ(none.median, 0.0);
}

TEST(BenchRejectors, DefaultLevels) {
  const auto levels = default_noise_levels();
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[2].translation, 1.0);
  EXPECT_NEAR(levels[2].rotation, 10 * beamtrim::testing::kDeg, 1e-15);
}

TEST(BenchRejectors, ExactInitOnExactData) {
  BenchSpec spec;
  spec.levels = {{0.0, 0.0}};
  spec.trials = 3;
  spec.intrinsics.range_noise_std = 0.0;
  spec.cfg.filter.curvature_max = 1e-9;  // single-plane neighborhoods only: exact normals
  const BenchReport r = bench_rejectors(spec);
  ASSERT_EQ(r.trials.size(), 3u);
  ASSERT_EQ(r.levels.size(), 1u);
  EXPECT_LT(r.levels[0].dst.median, 1e-3);
  EXPECT_LT(r.levels[0].geom.median, 1e-3);
}

TEST(BenchRejectors, DeterministicUnderSeed) {
  BenchSpec spec;
  spec.levels = {default_noise_levels()[1]};
  spec.trials = 3;
  spec.seed = 11;
  const BenchReport a = bench_rejectors(spec);
  const BenchReport b = bench_rejectors(spec);
  EXPECT_EQ(format_bench_trials(a), format_bench_trials(b));
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].dst_translation, b.trials[i].dst_translation);
    EXPECT_EQ(a.trials[i].geom_translation, b.trials[i].geom_translation);
  }
  spec.seed = 12;
  EXPECT_NE(format_bench_trials(a), format_bench_trials(bench_rejectors(spec)));
}

TEST(BenchRejectors, TablesHaveOneRowPerEntry) {
  BenchSpec spec;
  spec.levels = {default_noise_levels()[0], default_noise_levels()[1]};
  spec.trials = 2;
  const BenchReport r = bench_rejectors(spec);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  EXPECT_EQ(lines(format_bench_table(r)), 1 + 2);
  EXPECT_EQ(lines(format_bench_trials(r)), 1 + 4);
}
