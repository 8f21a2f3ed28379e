#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mecwave/encoding.hpp"
#include "mecwave/errors.hpp"

using namespace mecwave;

namespace {

struct Fixture : ::testing::Test {
  ScenarioParams params = [] {
    ScenarioParams p;
    p.num_md = 6;
    p.num_sbs = 4;
    p.num_clusters = 2;
    return p;
  }();
  Scenario sc = build_scenario(params, 21);
  Bounds b = make_bounds(sc);
};

}  // namespace

TEST(VirtualIndex, ColumnMajorOneBased) {
  // U = 3 MDs, K = 2 tasks
  EXPECT_EQ(virtual_index(1, 3, 2), std::make_pair(1, 1));
  EXPECT_EQ(virtual_index(2, 3, 2), std::make_pair(2, 1));
  EXPECT_EQ(virtual_index(3, 3, 2), std::make_pair(3, 1));
  EXPECT_EQ(virtual_index(4, 3, 2), std::make_pair(1, 2));
  EXPECT_EQ(virtual_index(6, 3, 2), std::make_pair(3, 2));
  EXPECT_THROW(virtual_index(0, 3, 2), ContractViolation);
  EXPECT_THROW(virtual_index(7, 3, 2), ContractViolation);
  for (int i = 1; i <= 6; ++i) {
    const auto [u, k] = virtual_index(i, 3, 2);
    EXPECT_EQ(virtual_slot(u - 1, k - 1, 3), i - 1);
  }
}

TEST_F(Fixture, GroupSizesAndStaticBounds) {
  EXPECT_EQ(b.group_size(Gene::mu), 1u);
  EXPECT_EQ(b.group_size(Gene::n_sub), 1u);
  EXPECT_EQ(b.group_size(Gene::bs), 6u);
  EXPECT_EQ(b.group_size(Gene::power), 6u);
  EXPECT_EQ(b.group_size(Gene::channel), 6u);
  for (Gene g : {Gene::crypto, Gene::z_first, Gene::z_second, Gene::d_first, Gene::d_second})
    EXPECT_EQ(b.group_size(g), 18u);
  EXPECT_EQ(b.upper(Gene::bs, 0), 5.0);
  EXPECT_EQ(b.upper(Gene::crypto, 0), 6.0);
  EXPECT_EQ(b.upper(Gene::channel, 0), 5.0);
  EXPECT_EQ(b.lower(Gene::mu, 0), 1e-6);
  EXPECT_EQ(b.upper(Gene::mu, 0), 1.0 - 1e-6);
  // slot 7 is MD 1, task 1
  EXPECT_EQ(b.upper(Gene::d_first, 7), sc.task(1, 1).size_bits);
  EXPECT_NEAR(b.diagonal[static_cast<int>(Gene::mu)], 1.0 - 2e-6, 1e-15);
  EXPECT_NEAR(b.diagonal[static_cast<int>(Gene::bs)], std::sqrt(6.0 * 16.0), 1e-12);
}

TEST_F(Fixture, InitialWavesAreRepairedAndDecodable) {
  Rng rng{5};
  for (int n = 0; n < 50; ++n) {
    const Wave w = init_wave(b, rng, 5);
    EXPECT_EQ(w.height, 5);
    EXPECT_TRUE(is_repaired(w, b));
    const Solution s = decode(w, b);
    EXPECT_NO_THROW(check_structure(sc, s));
    for (std::size_t i = 0; i < 6; ++i) EXPECT_LE(w[Gene::channel][i], w[Gene::n_sub][0]);
    for (std::size_t i = 0; i < 18; ++i) EXPECT_LE(w[Gene::d_second][i], w[Gene::d_first][i]);
  }
}

TEST_F(Fixture, RepairIsIdempotentAndClamps) {
  Rng rng{8};
  Wave w = init_wave(b, rng, 1);
  w[Gene::mu][0] = 3.0;
  w[Gene::n_sub][0] = 2.4;
  w[Gene::bs][0] = -7.0;
  w[Gene::bs][1] = 2.6;
  w[Gene::power][0] = std::numeric_limits<double>::quiet_NaN();
  w[Gene::power][1] = std::numeric_limits<double>::infinity();
  w[Gene::channel][0] = 4.0;
  w[Gene::d_first][0] = 100.0;
  w[Gene::d_second][0] = 500.0;
  w[Gene::z_second][0] = 0.0;
  const Wave once = repair_wave(w, b);
  EXPECT_EQ(repair_wave(once, b).genes, once.genes);
  EXPECT_EQ(once[Gene::mu][0], b.one_minus);
  EXPECT_EQ(once[Gene::n_sub][0], 2.0);
  EXPECT_EQ(once[Gene::bs][0], 1.0);
  EXPECT_EQ(once[Gene::bs][1], 3.0);
  EXPECT_EQ(once[Gene::power][0], b.lower(Gene::power, 0));
  EXPECT_TRUE(std::isfinite(once[Gene::power][1]));
  EXPECT_EQ(once[Gene::channel][0], 2.0);  // capped by the repaired n_sub
  EXPECT_EQ(once[Gene::d_second][0], 100.0);
  EXPECT_EQ(once[Gene::z_second][0], params.z_second.min);
  EXPECT_THROW(
      [&] {
        Wave bad = w;
        bad[Gene::bs].pop_back();
        repair_in_place(bad, b);
      }(),
      ContractViolation);
}

TEST_F(Fixture, EncodeDecodeRoundTrip) {
  Rng rng{13};
  for (int n = 0; n < 10; ++n) {
    const Wave w = init_wave(b, rng, 3);
    const Solution s = decode(w, b);
    const Wave back = encode(s, b, 3);
    EXPECT_EQ(back, w);
    EXPECT_EQ(decode(back, b), s);
  }
}

TEST_F(Fixture, DecodedIndicesAreZeroBased) {
  Rng rng{1};
  Wave w = init_wave(b, rng, 1);
  w[Gene::bs][2] = 1.0;
  w[Gene::crypto][virtual_slot(2, 1, 6)] = 6.0;
  const Solution s = decode(w, b);
  EXPECT_EQ(s.assoc[2], 0);
  EXPECT_EQ(s.task(2, 1, 3).crypto, 5);
}

TEST_F(Fixture, JsonKeepsGroupOrder) {
  Rng rng{2};
  const std::string j = wave_to_json(init_wave(b, rng, 4));
  std::size_t last = 0;
  for (Gene g : kGroups) {
    const auto at = j.find(std::string("\"") + gene_name(g) + "\"");
    ASSERT_NE(at, std::string::npos) << gene_name(g);
    EXPECT_GE(at, last);
    last = at;
  }
  EXPECT_NE(j.find("\"height\":4"), std::string::npos);
}
