#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "diamond/io.hpp"
#include "diamond/random.hpp"

namespace diamond {
namespace {

TEST(ParseNetwork, GainsForm) {
  const auto f = parse_network_text(R"({"label": "fig", "snr": 1, "relays": [{"gain_s": 4, "gain_d": 16}, {"gain_s": 4, "gain_d": 16}]})");
  ASSERT_TRUE(f.network.has_value());
  EXPECT_TRUE(f.gains_form);
  EXPECT_EQ(f.label, "fig");
  EXPECT_EQ(f.rates.size(), 2u);
  EXPECT_NEAR(f.rates.r_s(0), 4.08746284125033941, 1e-14);
}

TEST(ParseNetwork, RatesForm) {
  const auto f = parse_network_text(R"({"rates": [{"r_s": 1, "r_d": 3}, {"r_s": 2, "r_d": 2}]})");
  EXPECT_FALSE(f.network.has_value());
  EXPECT_FALSE(f.gains_form);
  EXPECT_EQ(f.rates, RateTable({1, 2}, {3, 2}));
  const auto with_snr = parse_network_text(R"({"snr": 3, "rates": [{"r_s": 2, "r_d": 2}]})");
  ASSERT_TRUE(with_snr.network.has_value());
  EXPECT_DOUBLE_EQ(with_snr.network->relay(0).gain_s, 1.0);
}

TEST(ParseNetwork, Errors) {
  const char* bad[] = {
      "[1, 2]",
      "{",
      R"({"snr": 1})",
      R"({"snr": 1, "relays": [], "rates": []})",
      R"({"relays": [{"gain_s": 1, "gain_d": 1}]})",
      R"({"snr": 1, "relays": [{"gain_s": 1}]})",
      R"({"snr": 1, "relays": [{"gain_s": "x", "gain_d": 1}]})",
      R"({"snr": 1, "relays": [{"gain_s": -1, "gain_d": 1}]})",
      R"({"snr": 0, "relays": [{"gain_s": 1, "gain_d": 1}]})",
      R"({"snr": 1, "relays": []})",
      R"({"rates": []})",
      R"({"rates": {"r_s": 1, "r_d": 1}})",
      R"({"rates": [{"r_s": -1, "r_d": 1}]})",
      R"({"rates": [5]})",
      R"({"label": 3, "rates": [{"r_s": 1, "r_d": 1}]})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_network_text(text), ParseError) << text;
  EXPECT_THROW(read_network_file("/nonexistent/network.json"), ParseError);
}

TEST(ParseNetwork, RoundTripsThroughJson) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto net = generate_network(rng.integer(1, 10), GainDistribution::make_rayleigh(1.0), rng.loguniform(0.1, 100.0),
                                      static_cast<std::uint64_t>(t));
    const auto back = parse_network_text(to_json(net, "x").dump());
    ASSERT_TRUE(back.network.has_value());
    EXPECT_EQ(back.network->snr(), net.snr());
    for (std::size_t i = 0; i < net.size(); ++i) {
      EXPECT_EQ(back.network->relay(i).gain_s, net.relay(i).gain_s);
      EXPECT_EQ(back.network->relay(i).gain_d, net.relay(i).gain_d);
    }
    const auto rt = rate_table(net);
    EXPECT_EQ(parse_network_text(to_json(rt).dump()).rates, rt);
  }
}

TEST(ParseNetwork, ReadsFromFile) {
  const std::string path = ::testing::TempDir() + "diamond_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"rates": [{"r_s": 1, "r_d": 2}]})";
  }
  EXPECT_EQ(read_network_file(path).rates, RateTable({1}, {2}));
  std::remove(path.c_str());
}

TEST(Random, SeedSplitting) {
  EXPECT_EQ(trial_seed(42, 0), splitmix64(42 ^ splitmix64(0)));
  EXPECT_NE(trial_seed(42, 0), trial_seed(42, 1));
  EXPECT_NE(trial_seed(42, 0), trial_seed(43, 0));
}

TEST(Random, UniformRange) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const auto k = rng.integer(3, 7);
    EXPECT_GE(k, 3u);
    EXPECT_LE(k, 7u);
  }
}

TEST(Random, GenerateIsDeterministic) {
  const auto d = GainDistribution::make_rayleigh(1.0);
  const auto a = generate_network(8, d, 10.0, 7);
  const auto b = generate_network(8, d, 10.0, 7);
  const auto c = generate_network(8, d, 10.0, 8);
  bool differs = false;
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(a.relay(i).gain_s, b.relay(i).gain_s);
    EXPECT_EQ(a.relay(i).gain_d, b.relay(i).gain_d);
    differs = differs || a.relay(i).gain_s != c.relay(i).gain_s;
  }
  EXPECT_TRUE(differs);
}

TEST(Random, LoguniformStaysInRange) {
  const auto d = GainDistribution::make_loguniform(0.5, 2.0);
  const auto net = generate_network(1000, d, 1.0, 3);
  for (const auto& r : net.relays()) {
    EXPECT_GE(r.gain_s, 0.5);
    EXPECT_LE(r.gain_s, 2.0);
    EXPECT_GE(r.gain_d, 0.5);
    EXPECT_LE(r.gain_d, 2.0);
  }
  EXPECT_THROW(GainDistribution::make_loguniform(2.0, 1.0), ValidationError);
  EXPECT_THROW(GainDistribution::make_rayleigh(0.0), ValidationError);
  EXPECT_THROW(generate_network(0, d, 1.0, 0), ValidationError);
}

}  // namespace
}  // namespace diamond
