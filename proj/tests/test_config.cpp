#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qgossip/config.hpp"
#include "qgossip/error.hpp"

using namespace qgossip;

TEST(Config, ParseWithComments) {
  const Config cfg = Config::parse(
      "# graph\n"
      "topology = ring\n"
      "  n=12  \n"
      "\n"
      "rule = partially\r\n"
      "quantizer = biased:0.3\n");
  EXPECT_EQ(cfg.get_string("topology", ""), "ring");
  EXPECT_EQ(cfg.get_size("n", 0), 12u);
  EXPECT_EQ(cfg.get_string("rule", ""), "partially");
  EXPECT_FALSE(cfg.has("seed"));
  EXPECT_EQ(cfg.get_u64("seed", 17), 17u);
}

TEST(Config, RejectsUnknownAndMalformed) {
  EXPECT_THROW(Config::parse("colour = red\n"), ConfigError);
  EXPECT_THROW(Config::parse("n 12\n"), ConfigError);
  EXPECT_THROW(Config::parse("n =\n"), ConfigError);
  Config cfg;
  EXPECT_THROW(cfg.apply_override("nodes=3"), ConfigError);
  EXPECT_THROW(cfg.apply_override("n"), ConfigError);
  EXPECT_THROW(Config::load("/nonexistent/qgossip.cfg"), ConfigError);
}

TEST(Config, TypedGetters) {
  Config cfg = Config::parse("n = 12x\nradius = 0.25\nrecord_trace = yes\nsizes = 10, 20,40\n");
  EXPECT_THROW(cfg.get_size("n", 0), ConfigError);
  EXPECT_EQ(cfg.get_double("radius", 0), 0.25);
  EXPECT_TRUE(cfg.get_bool("record_trace", false));
  EXPECT_EQ(cfg.get_size_list("sizes", {}), (std::vector<std::size_t>{10, 20, 40}));
  cfg.set("intervals", "0:20,-5:5");
  const auto iv = cfg.get_intervals("intervals", {});
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_EQ(iv[1].first, -5);
  EXPECT_EQ(iv[1].second, 5);
  cfg.set("intervals", "5:1");
  EXPECT_THROW(cfg.get_intervals("intervals", {}), ConfigError);
  cfg.set("record_trace", "maybe");
  EXPECT_THROW(cfg.get_bool("record_trace", false), ConfigError);
  cfg.set("radius", "wide");
  EXPECT_THROW(cfg.get_double("radius", 0), ConfigError);
}

TEST(Config, OverridesAndMergeOrder) {
  Config base = Config::parse("n = 5\nseed = 3\n");
  const Config file = Config::parse("n = 7\nrule = totally\n");
  base.merge(file);
  base.apply_override("seed=9");
  EXPECT_EQ(base.get_size("n", 0), 7u);
  EXPECT_EQ(base.get_u64("seed", 0), 9u);
  EXPECT_EQ(base.to_text(), "n = 7\nrule = totally\nseed = 9\n");
  // Round trip through text.
  EXPECT_EQ(Config::parse(base.to_text()).entries(), base.entries());
}

TEST(Config, LoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "qg_test.cfg";
  std::ofstream(path) << "topology = grid\nrows = 3\ncols = 4\n";
  const Config cfg = Config::load(path);
  const GraphSpec g = graph_spec_from(cfg);
  EXPECT_EQ(g.topology, Topology::Grid);
  EXPECT_EQ(g.rows, 3u);
  EXPECT_EQ(g.cols, 4u);
}

TEST(Config, TrialConfig) {
  const Config cfg = Config::parse(
      "topology = geometric\nn = 15\nradius = 0.4\nrule = totally\nquantizer = prob\n"
      "quantizer_step = 0.5\ninit = uniform:0:20\nseed = 99\nmax_steps = 1234\n"
      "record_trace = true\ntrace_stride = 5\nedge_probs = uniform\n");
  const TrialConfig tc = trial_config_from(cfg);
  EXPECT_EQ(tc.graph.topology, Topology::Geometric);
  EXPECT_EQ(tc.graph.n, 15u);
  EXPECT_EQ(tc.graph.radius, 0.4);
  EXPECT_TRUE(tc.graph.edge_probs.empty());
  EXPECT_EQ(tc.rule, Rule::TotallyQuantized);
  EXPECT_EQ(tc.quantizer.kind, QuantizerKind::Probabilistic);
  EXPECT_EQ(tc.quantizer.step, 0.5);
  EXPECT_EQ(tc.init.hi, 20);
  EXPECT_EQ(tc.seed, 99u);
  EXPECT_EQ(tc.max_steps, 1234u);
  EXPECT_TRUE(tc.record_trace);
  EXPECT_EQ(tc.trace_stride, 5u);
}

TEST(Config, TrialConfigErrors) {
  EXPECT_THROW(trial_config_from(Config::parse("rule = fast\n")), ConfigError);
  EXPECT_THROW(trial_config_from(Config::parse("quantizer = round\n")), ConfigError);
  EXPECT_THROW(trial_config_from(Config::parse("quantizer_step = -1\n")), ConfigError);
  EXPECT_THROW(trial_config_from(Config::parse("topology = star\n")), ConfigError);
  EXPECT_THROW(trial_config_from(Config::parse("trace_stride = 0\n")), ConfigError);
  EXPECT_THROW(trial_config_from(Config::parse("edge_probs = weighted\n")), ConfigError);
  EXPECT_THROW(trial_config_from(Config::parse("init = file:/nonexistent/x0.csv\n")), ConfigError);
  EXPECT_EQ(trial_config_from(Config::parse("edge_probs = file:/tmp/w.csv\n")).graph.edge_probs,
            "/tmp/w.csv");
}
