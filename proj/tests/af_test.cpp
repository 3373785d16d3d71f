#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "diamond/af.hpp"
#include "oracles.hpp"

namespace diamond {
namespace {

TEST(AfRate, Examples) {
  const Network one(1.0, {{1.0, 1.0}});
  EXPECT_EQ(af_rate(one, AfCoefficients({0.0})), 0.0);
  EXPECT_NEAR(af_rate(one, AfCoefficients({1.0})), 0.415037499278843819, 1e-14);
  const Network two(1.0, {{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_NEAR(af_rate(two, AfCoefficients({1.0, 1.0})), 1.0, 1e-14);
}

TEST(AfRate, Errors) {
  const Network two(1.0, {{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_THROW(af_rate(two, AfCoefficients({1.0})), ValidationError);
  EXPECT_THROW(AfCoefficients({1.5}), ValidationError);
  EXPECT_THROW(AfCoefficients({-0.1}), ValidationError);
}

TEST(AfRate, MatchesBetaFormAndPhaseAlignmentIsOptimal) {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const auto net = testing::random_network(rng, rng.integer(1, 6));
    std::vector<double> a(net.size());
    for (auto& x : a) x = rng.uniform();
    const double aligned = af_rate(net, AfCoefficients(a));
    EXPECT_NEAR(aligned, testing::reference_af_rate(net, a), 1e-12 * (1.0 + aligned));
    for (int p = 0; p < 10; ++p) {
      std::vector<double> phases(net.size());
      for (auto& ph : phases) ph = rng.angle();
      EXPECT_LE(testing::reference_af_rate(net, a, phases), aligned + 1e-12);
    }
  }
}

TEST(AfUpperBound, Examples) {
  const auto [b1, c1] = af_upper_bound(RateTable({2.0}, {3.0}));
  EXPECT_EQ(c1, 2.0);
  EXPECT_EQ(b1, 2.0);
  const auto [b2, c2] = af_upper_bound(RateTable({1, 2, 3}, {3, 2, 1}));
  EXPECT_EQ(c2, 2.0);
  EXPECT_NEAR(b2, 5.16992500144231236, 1e-14);
  const auto [b3, c3] = af_upper_bound(RateTable({1, 2}, {2, 1}));
  EXPECT_EQ(c3, 1.0);
  EXPECT_EQ(b3, 3.0);
}

TEST(AfUpperBound, HoldsForRandomAndGridCoefficients) {
  Rng rng(32);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = rng.integer(1, 8);
    const auto net = testing::random_network(rng, n);
    const auto [bound, c1] = af_upper_bound(rate_table(net));
    for (int s = 0; s < 50; ++s) {
      std::vector<double> a(n);
      for (auto& x : a) x = s % 5 == 0 ? std::round(rng.uniform()) : rng.uniform();
      EXPECT_LE(af_rate(net, AfCoefficients(a)), bound + 1e-9);
    }
  }
}

TEST(GoldenSection, FindsInteriorAndBoundaryMaxima) {
  EXPECT_NEAR(golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0), 0.3, 1e-8);
  EXPECT_NEAR(golden_section_maximize([](double x) { return x; }, 0.0, 1.0), 1.0, 1e-8);
  EXPECT_NEAR(golden_section_maximize([](double x) { return -x; }, 0.0, 1.0), 0.0, 1e-8);
}

TEST(AfOptimize, SingleRelayUsesFullPower) {
  const Network one(3.0, {{0.7, 1.9}});
  const auto rep = af_optimize(one);
  EXPECT_EQ(rep.alpha[0], 1.0);
  EXPECT_EQ(rep.rate, af_rate(one, AfCoefficients({1.0})));
  EXPECT_LE(rep.rate, rep.upper_bound + 1e-9);
}

TEST(AfOptimize, IdenticalRelays) {
  const Network two(1.0, {{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_GE(af_optimize(two).rate, 1.0 - 1e-15);
}

TEST(AfOptimize, PinsZeroGainRelays) {
  const Network net(2.0, {{1.0, 1.0}, {0.0, 3.0}, {2.0, 0.0}});
  const auto rep = af_optimize(net);
  EXPECT_EQ(rep.alpha[1], 0.0);
  EXPECT_EQ(rep.alpha[2], 0.0);
  EXPECT_GE(rep.rate, af_rate(net, AfCoefficients::ones(3)));
}

TEST(AfOptimize, CoordinateOptimumMatchesClosedForm) {
  // For fixed others, rate in alpha_i increases up to c_i B / (d_i A), where A
  // is the other relays' coherent gain and B = 1 + their noise.
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.integer(2, 5);
    const auto net = testing::random_network(rng, n);
    const auto rep = af_optimize(net, 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      double amp = 0.0, noise = 1.0;
      double c = 0.0, d = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& r = net.relay(j);
        const double scale = net.snr() / (1.0 + r.gain_s * r.gain_s * net.snr());
        const double cj = r.gain_d * r.gain_s * std::sqrt(scale);
        const double dj = r.gain_d * r.gain_d * scale;
        if (j == i) {
          c = cj;
          d = dj;
        } else {
          amp += cj * rep.alpha[j];
          noise += dj * rep.alpha[j] * rep.alpha[j];
        }
      }
      const double x_star = amp == 0.0 || d == 0.0 ? 1.0 : std::min(1.0, c * noise / (d * amp));
      EXPECT_NEAR(rep.alpha[i], x_star, 1e-4) << "relay " << i;
    }
  }
}

TEST(AfOptimize, NeverBelowGridSearch) {
  Rng rng(34);
  for (int t = 0; t < 60; ++t) {
    const auto net = testing::random_network(rng, rng.integer(1, 4));
    const auto rep = af_optimize(net);
    EXPECT_GE(rep.rate, testing::grid_af_max(net) - 1e-12);
    EXPECT_LE(rep.rate, rep.upper_bound + 1e-9);
  }
}

TEST(AfOptimize, MatchesFineGridSearch) {
  Rng rng(37);
  for (int t = 0; t < 60; ++t) {
    const auto net = testing::random_network(rng, rng.integer(1, 2));
    const double fine = testing::grid_af_max(net, 201);
    EXPECT_NEAR(af_optimize(net).rate, fine, 1e-3);
  }
}

TEST(AfOptimize, PermutationSymmetry) {
  Rng rng(35);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng.integer(2, 6);
    const auto net = testing::random_network(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::reverse(perm.begin(), perm.end());
    std::vector<RelayChannels> relays;
    for (auto p : perm) relays.push_back(net.relay(p));
    const Network permuted(net.snr(), relays);
    const auto a = af_optimize(net, 1e-12);
    const auto b = af_optimize(permuted, 1e-12);
    EXPECT_NEAR(a.rate, b.rate, 1e-8);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(b.alpha[i], a.alpha[perm[i]], 1e-3);
  }
}

TEST(CoefficientInequality, Examples) {
  const std::vector<double> one{1.0};
  const auto s = coefficient_inequality_sides(one, one, one);
  EXPECT_DOUBLE_EQ(s.lhs, 1.0);
  EXPECT_DOUBLE_EQ(s.rhs, 0.5);
  const auto zero_b = coefficient_inequality_sides(std::vector<double>{2.0, 3.0}, std::vector<double>{4.0, 0.5}, std::vector<double>{0.0, 0.0});
  EXPECT_EQ(zero_b.rhs, 0.0);
  EXPECT_GE(zero_b.lhs, 0.0);
}

TEST(CoefficientInequality, Errors) {
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 1.0};
  EXPECT_THROW(coefficient_inequality_sides(one, two, one), ValidationError);
  EXPECT_THROW(coefficient_inequality_sides(std::vector<double>{0.0}, one, one), ValidationError);
  EXPECT_THROW(coefficient_inequality_sides(one, one, std::vector<double>{1.5}), ValidationError);
}

TEST(CoefficientInequality, HoldsOnRandomAndAdversarialInputs) {
  Rng rng(36);
  for (int t = 0; t < 20000; ++t) {
    const std::size_t n = rng.integer(1, 8);
    std::vector<double> ud(n), us(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      ud[i] = rng.loguniform(1e-6, 1e6);
      us[i] = rng.loguniform(1e-6, 1e6);
      const double u = rng.uniform();
      b[i] = u < 0.25 ? 0.0 : u < 0.5 ? 1.0 : rng.uniform();
    }
    const auto s = coefficient_inequality_sides(ud, us, b);
    EXPECT_GE(s.lhs, s.rhs - 1e-12);
  }
  // u_s grows with u_d fixed: rhs approaches u_d from below.
  for (double us = 1.0; us < 1e15; us *= 10.0) {
    const auto s = coefficient_inequality_sides(std::vector<double>{3.0}, std::vector<double>{us}, std::vector<double>{1.0});
    EXPECT_GE(s.lhs, s.rhs - 1e-12) << us;
  }
}

}  // namespace
}  // namespace diamond
