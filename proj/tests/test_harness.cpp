// SPDX-License-Identifier: Apache-2.0
//
// irspca: simulation of IRS-aided pilot contamination attacks and countermeasures
// Copyright (C) 2026 The irspca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "irspca.hpp"

using namespace irspca;

namespace {

std::string to_csv(const ResultTable &t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

std::string body_of(const std::string &csv) {
  std::istringstream in(csv);
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      body += line + "\n";
    }
  }
  return body;
}

std::filesystem::path temp_path(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("irspca_test_" + name);
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(IRSPCA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ResultTable one_row_table() {
  ResultTable t;
  t.metadata = {{"tool", "x"}};
  ResultRow r;
  r.detector = "gcusum";
  r.M = 16;
  r.gamma = 200;
  r.r_p = 0.05;
  r.nu = 1;
  r.trials = 10;
  r.metric = "wawtg";
  r.value = 1.0 / 3.0;
  r.stderr_ = 0.0123456789123;
  r.in_nats = true;
  t.rows.push_back(r);
  return t;
}

} // namespace

TEST(KeyValues, CommentsAndBlankLines) {
  const auto kv = parse_key_values("# header\n\nM = 32   # antennas\n  r_p=0.5\nnu = inf\n");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0].key, "M");
  EXPECT_EQ(kv[0].value, "32");
  EXPECT_EQ(kv[0].line, 3);
  EXPECT_EQ(kv[1].key, "r_p");
  EXPECT_EQ(kv[2].value, "inf");
}

TEST(KeyValues, MalformedLinesReportTheLine) {
  try {
    parse_key_values("M = 4\njust words\n");
    FAIL();
  } catch (const config_error &e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_key_values("M =\n"), config_error);
}

TEST(Settings, EveryKeyApplies) {
  RunConfig cfg;
  apply_settings(cfg, parse_key_values("d1=100\nd2=10\nd3=25\nRc=5\nn1n2=9\nM=32\nJ=8\ntau_p=16\ntau_d=4\n"
                                       "P_b_dbm=15\nP_j_dbm=10\nnoise_dbm=-90\nsnr_b_target_db=3\nr_p=0.5\n"
                                       "r_d=0.25\nnu=inf\nseed=99\npath_loss_exponent=3.5\nirs_link_exponent=2\n"
                                       "phi_p_random=true\ngamma=300\nepsilon=0.1\nwindow_cap=50\n"
                                       "max_blocks=77\ntrials=12\nworkers=3\ndetectors=ed,ccusum\nr_p_step=0.05\n"));
  const ScenarioConfig &s = cfg.scenario;
  EXPECT_EQ(s.d1, 100);
  EXPECT_EQ(s.n1, 9);
  EXPECT_EQ(s.n2, 9);
  EXPECT_EQ(s.M, 32);
  EXPECT_EQ(s.tau_d, 4);
  EXPECT_EQ(s.nu, never);
  EXPECT_EQ(s.seed, 99u);
  EXPECT_TRUE(s.phi_p_random);
  EXPECT_EQ(s.irs_link_exponent, 2.0);
  EXPECT_EQ(cfg.gamma, 300);
  EXPECT_EQ(cfg.window_cap, 50);
  EXPECT_EQ(cfg.max_blocks, 77);
  EXPECT_EQ(cfg.trials, 12);
  EXPECT_EQ(cfg.workers, 3u);
  ASSERT_EQ(cfg.detectors.size(), 2u);
  EXPECT_EQ(cfg.detectors[1], DetectorKind::ccusum);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Settings, Rejections) {
  RunConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "bogus", "1"), config_error);
  EXPECT_THROW(apply_setting(cfg, "M", "4.5"), config_error);
  EXPECT_THROW(apply_setting(cfg, "r_p", "abc"), config_error);
  EXPECT_THROW(apply_setting(cfg, "nu", "0"), config_error);
  EXPECT_THROW(apply_setting(cfg, "seed", "-1"), config_error);
  EXPECT_THROW(apply_setting(cfg, "phi_p_random", "maybe"), config_error);
  EXPECT_THROW(apply_setting(cfg, "workers", "0"), config_error);
  RunConfig bad;
  bad.gamma = 2.0;
  EXPECT_THROW(validate(bad), config_error);
  bad = RunConfig{};
  bad.trials = 0;
  EXPECT_THROW(validate(bad), config_error);
}

TEST(Settings, LaterSettingsWin) {
  RunConfig cfg;
  apply_settings(cfg, parse_key_values("M = 16\nM = 32\n"));
  apply_setting(cfg, "M", "8");
  EXPECT_EQ(cfg.scenario.M, 8);
}

TEST(ConfigHash, SensitiveToSettingsButNotWorkers) {
  RunConfig a, b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.workers = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.scenario.r_p = 0.999;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Sweep, Parsing) {
  const Sweep s = parse_sweep("M=16, 32,64");
  EXPECT_EQ(s.name, "M");
  ASSERT_EQ(s.values.size(), 3u);
  EXPECT_EQ(s.values[1], "32");
  EXPECT_THROW(parse_sweep("M=16,,32"), config_error);
  EXPECT_THROW(parse_sweep("M"), config_error);
}

TEST(Csv, OneRowLayout) {
  const std::string text = to_csv(one_row_table());
  std::istringstream in(text);
  std::string line;
  int comments = 0, others = 0;
  while (std::getline(in, line)) {
    (line[0] == '#' ? comments : others) += 1;
  }
  EXPECT_GE(comments, 1);
  EXPECT_EQ(others, 2);
  EXPECT_NE(text.find(std::string(csv_header)), std::string::npos);
}

TEST(Csv, RoundTripToNineDigits) {
  const ResultTable t = one_row_table();
  const CsvDocument doc = parse_csv(to_csv(t));
  ASSERT_EQ(doc.rows.size(), 1u);
  const auto &row = doc.rows[0];
  EXPECT_EQ(row[doc.column("detector")], "gcusum");
  EXPECT_EQ(row[doc.column("nu")], "1");
  const double v = std::stod(row[doc.column("value")]);
  EXPECT_NEAR(v, 1.0 / 3.0, 1e-9 / 3.0);
  EXPECT_EQ(row[doc.column("value")], "0.333333333");
  EXPECT_EQ(row[doc.column("stderr")], "0.0123456789");
  EXPECT_NEAR(std::stod(row[doc.column("value_bits")]), 1.0 / 3.0 / std::log(2.0), 1e-9);
  EXPECT_EQ(doc.metadata.at(0).first, "tool");
}

TEST(Csv, EmptyTableCreatesNoFile) {
  const auto path = temp_path("empty.csv");
  std::filesystem::remove(path);
  EXPECT_THROW(emit_csv(ResultTable{}, path), contract_error);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Csv, UnwritablePathIsAnIoError) {
  EXPECT_THROW(emit_csv(one_row_table(), "/nonexistent-dir/out.csv"), io_error);
}

TEST(Csv, FileRoundTrip) {
  const auto path = temp_path("one.csv");
  emit_csv(one_row_table(), path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), to_csv(one_row_table()));
  std::filesystem::remove(path);
}

TEST(RunExperiment, CalibratePassesThrough) {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::calibrate;
  spec.base.scenario.M = 16;
  spec.base.gamma = 200;
  const ResultTable t = run_experiment(spec);
  const Scenario s = build_scenario(spec.base.scenario);
  const DetectorConfig d = calibrate(200, 16, s.sigma0_sq);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(t.find("xi_bar", "", nan).value, d.xi_bar);
  EXPECT_EQ(t.find("eta_g", "", nan).value, d.eta_g);
  EXPECT_EQ(t.find("eta_e", "", nan).value, d.eta_e);
}

TEST(RunExperiment, DeterministicAcrossRunsAndWorkers) {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::add;
  spec.base.scenario.M = 16;
  spec.base.scenario.r_p = 0.3;
  spec.base.gamma = 100;
  spec.base.trials = 30;
  spec.sweep = parse_sweep("J=2,4");
  const std::string first = to_csv(run_experiment(spec));
  const std::string second = to_csv(run_experiment(spec));
  EXPECT_EQ(first, second);
  spec.base.workers = 3;
  EXPECT_EQ(body_of(first), body_of(to_csv(run_experiment(spec))));

  ExperimentSpec snr;
  snr.kind = ExperimentKind::snr;
  snr.base.scenario.M = 16;
  snr.base.trials = 50;
  const std::string a = body_of(to_csv(run_experiment(snr)));
  snr.base.workers = 4;
  EXPECT_EQ(a, body_of(to_csv(run_experiment(snr))));
}

TEST(RunExperiment, MetadataHeader) {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::calibrate;
  const ResultTable t = run_experiment(spec);
  ASSERT_GE(t.metadata.size(), 4u);
  EXPECT_EQ(t.metadata[0].first, "tool");
  EXPECT_EQ(t.metadata[1].second, "calibrate");
  EXPECT_EQ(t.metadata[2].second, "1");
  EXPECT_EQ(t.metadata[3].first, "config_hash");
}

TEST(RunExperiment, InvalidSweeps) {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::calibrate;
  spec.sweep = parse_sweep("r_p=0.5,1.5");
  EXPECT_THROW(run_experiment(spec), config_error);
  spec.sweep = parse_sweep("colour=1");
  EXPECT_THROW(run_experiment(spec), config_error);
  spec.sweep = parse_sweep("seed=1,2");
  EXPECT_THROW(run_experiment(spec), config_error);
}

TEST(RunExperiment, FigurePresets) {
  for (int f = 4; f <= 10; ++f) {
    const ExperimentSpec spec = figure_spec(f);
    EXPECT_TRUE(spec.sweep.has_value());
    EXPECT_EQ(spec.label(), "figure-" + std::to_string(f));
  }
  EXPECT_EQ(figure_spec(4).sweep->values.size(), 3u);
  EXPECT_EQ(figure_spec(8).base.scenario.M, 128);
  EXPECT_THROW(figure_spec(3), config_error);
  EXPECT_THROW(figure_spec(11), config_error);
}

TEST(RunExperiment, RpSearchPicksTheBestGridPoint) {
  ExperimentSpec spec = figure_spec(10);
  spec.base.scenario.M = 16;
  spec.base.trials = 20;
  spec.base.r_p_step = 0.25;
  spec.sweep = parse_sweep("n1n2=3");
  const ResultTable t = run_experiment(spec);
  const double best = t.find("r_p_opt", "-", 3).value;
  EXPECT_GE(best, 0.0);
  EXPECT_LE(best, 1.0);
  EXPECT_EQ(t.find("snr_e", "zf_irs_pca", 3).r_p, best);
  EXPECT_EQ(t.find("snr_e", "mrt_irs_pca", 3).r_p, 1.0);
}

TEST(Cli, ExitCodes) {
  const auto out = temp_path("cli.csv");
  std::filesystem::remove(out);
  EXPECT_EQ(run_cli("calibrate --set M=16 --out " + out.string()), 0);
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_EQ(run_cli("calibrate --set bogus=1"), 2);
  EXPECT_EQ(run_cli("calibrate --set gamma=2"), 2);
  EXPECT_EQ(run_cli("figure 11"), 2);
  EXPECT_EQ(run_cli("nonsense"), 2);
  EXPECT_EQ(run_cli("calibrate --out /nonexistent-dir/x.csv"), 4);
  std::filesystem::remove(out);
}

TEST(Cli, ConfigFileAndFlagsCombine) {
  const auto cfg = temp_path("cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# test\nM = 32\ngamma = 500\n";
  }
  const auto out = temp_path("cfg_out.csv");
  ASSERT_EQ(run_cli("calibrate --config " + cfg.string() + " --set gamma=300 --seed 5 --out " + out.string()), 0);
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  const CsvDocument doc = parse_csv(buf.str());
  EXPECT_EQ(doc.rows.at(0)[doc.column("M")], "32");
  EXPECT_EQ(doc.rows.at(0)[doc.column("gamma")], "300");
  EXPECT_EQ(doc.metadata.at(2).second, "5");
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
}
