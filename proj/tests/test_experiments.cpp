#include <gtest/gtest.h>

#include <sstream>

#include "qgossip/csv.hpp"
#include "qgossip/experiments.hpp"

using namespace qgossip;

TEST(Fig1, SmallestCase) {
  Fig1Options opt;
  opt.sizes = {2};
  opt.trials = 1;
  const auto rows = run_fig1(opt);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].quantizer.kind, QuantizerKind::Deterministic);
  EXPECT_EQ(rows[2].quantizer.kind, QuantizerKind::Probabilistic);
  EXPECT_EQ(rows[1].interval.second, 100.0);
  for (const auto& r : rows) {
    EXPECT_EQ(r.n, 2u);
    EXPECT_EQ(r.z.std, 0.0);
    EXPECT_EQ(r.z.count, 1u);
  }
  std::ostringstream out;
  write_fig1_csv(out, rows);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "N,quantizer,init_interval,z_mean,z_std");
  EXPECT_NE(text.find("\n2,det,0:20,"), std::string::npos);
  EXPECT_NE(text.find("\n2,prob,0:100,"), std::string::npos);
}

TEST(Fig1, Deterministic) {
  Fig1Options opt;
  opt.sizes = {5, 8};
  opt.trials = 20;
  opt.seed = 3;
  std::ostringstream a, b;
  write_fig1_csv(a, run_fig1(opt));
  opt.threads = 3;
  write_fig1_csv(b, run_fig1(opt));
  EXPECT_EQ(a.str(), b.str());
  opt.sizes = {1};
  EXPECT_THROW(run_fig1(opt), std::invalid_argument);
}

TEST(Fig2, StandardCurveNonincreasing) {
  Fig2Options opt;
  opt.trials = 3;
  opt.steps = 1500;
  const auto rows = run_fig2(opt);
  ASSERT_EQ(rows.size(), 1501u);
  EXPECT_EQ(rows[0].standard, rows[0].totally);
  EXPECT_EQ(rows[0].standard, rows[0].compensating);
  for (std::size_t t = 1; t < rows.size(); ++t) {
    EXPECT_LE(rows[t].standard, rows[t - 1].standard * (1 + 1e-12) + 1e-300) << t;
  }
  EXPECT_LT(rows.back().standard, rows.front().standard * 1e-2);
}

TEST(Fig2, ConsensusStartIsFlat) {
  Fig2Options opt;
  opt.trials = 2;
  opt.steps = 200;
  opt.graph = {Topology::Ring, 6, 0, 0, 0.5, {}};
  opt.init = InitSpec::fixed({4, 4, 4, 4, 4, 4});
  for (const auto& r : run_fig2(opt)) {
    EXPECT_EQ(r.standard, 0.0);
    EXPECT_EQ(r.totally, 0.0);
    EXPECT_EQ(r.partially, 0.0);
    EXPECT_EQ(r.compensating, 0.0);
  }
}

TEST(Covariance, ConvergesOnCompleteFive) {
  const auto rows = run_covariance({Topology::Complete, 5, 0, 0, 0.5, {}}, 500, 1);
  ASSERT_EQ(rows.size(), 501u);
  EXPECT_LE(rows.back().frobenius_residual, 1e-10);
  std::ostringstream out;
  write_covariance_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, 31), "step,frobenius_residual,trace\n0");
}

TEST(Csv, Formatting) {
  EXPECT_EQ(csv_number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv_number(2.0), "2");
  EXPECT_EQ(std::stod(csv_number(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Csv, BatchRows) {
  TrialResult done;
  done.seed = 7;
  done.converged = true;
  done.t_con = 12;
  done.t_all = 5;
  done.alpha = 3;
  done.z = 0.25;
  done.max_dev = 0.5;
  TrialResult open;
  open.seed = 8;
  open.max_dev = 1.5;
  std::ostringstream out;
  const std::vector<TrialResult> rows{done, open};
  write_batch_csv(out, rows);
  EXPECT_EQ(out.str(),
            "trial,seed,converged,t_con,t_all,alpha,z,max_dev\n"
            "0,7,1,12,5,3,0.25,0.5\n"
            "1,8,0,,,,,1.5\n");
}

TEST(Csv, TraceRows) {
  std::ostringstream out;
  const std::vector<TraceRow> rows{{4, -1.5, 2, 3.5, 0.125, 0.25}};
  write_trace_csv(out, rows);
  EXPECT_EQ(out.str(), "step,min,max,spread,mse_from_x0avg,avg\n4,-1.5,2,3.5,0.125,0.25\n");
}
