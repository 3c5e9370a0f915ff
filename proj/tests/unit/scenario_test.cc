// Copyright 2026 The cvq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "cvq/closed_forms.h"
#include "cvq/errors.h"
#include "cvq/report.h"
#include "cvq/scenario.h"

namespace cvq {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

json coherent_squeezed(double alpha, double r, double phi) {
  return json{
      {"inputs", {{{"state", "coherent"}, {"alpha", alpha}}, {{"state", "vacuum"}}}},
      {"modifications", {{{"op", "squeeze"}, {"stage", "input"}, {"mode", 2}, {"r", r}}}},
      {"interferometer", {{"phi", phi}}},
      {"detection",
       {{{"scheme", "parity"}, {"mode", 1}},
        {{"scheme", "homodyne"}, {"mode", 1}, {"angle", 0.0}},
        {{"scheme", "intensity_difference"}, {"modes", {1, 2}}},
        {{"scheme", "intensity"}, {"mode", 1}}}},
  };
}

std::string config_error_path(const json &j) {
  try {
    parse_config(j);
  } catch (const ConfigError &e) {
    return e.path();
  }
  return "<accepted>";
}

const SchemeEstimate &scheme(const PointResult &p, const std::string &name) {
  for (const auto &s : p.report.schemes) {
    if (s.scheme == name) return s;
  }
  throw std::runtime_error("no scheme " + name);
}

TEST(Config, StrictParsingNamesTheField) {
  json j = coherent_squeezed(2.0, 0.5, 1.0);
  j["inputs"][0]["alpah"] = 1.0;
  EXPECT_EQ(config_error_path(j), "inputs[0].alpah");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["detection"][1]["scheme"] = "heterodyne";
  EXPECT_EQ(config_error_path(j), "detection[1].scheme");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["modifications"][0]["r"] = "big";
  EXPECT_EQ(config_error_path(j), "modifications[0].r");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["metrics"] = {"phase_variance", "fidelity"};
  EXPECT_EQ(config_error_path(j), "metrics[1]");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["schema_version"] = 2;
  EXPECT_EQ(config_error_path(j), "schema_version");
  EXPECT_EQ(config_error_path(coherent_squeezed(2.0, 0.5, 1.0)), "<accepted>");
}

TEST(Config, MissingSectionsNameTheirKey) {
  EXPECT_EQ(config_error_path(json{{"schema_version", 1}}), "inputs");
}

TEST(Config, InvalidCombinations) {
  json j = coherent_squeezed(2.0, 0.5, 1.0);
  j["inputs"].push_back({{"state", "vacuum"}});
  EXPECT_EQ(config_error_path(j), "interferometer");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["modifications"] = {{{"op", "displace"}, {"stage", "input"}, {"mode", 2}, {"alpha", 1.0}}};
  EXPECT_EQ(config_error_path(j), "modifications[0]");
  // a displaced squeezed vacuum is fine
  j["modifications"] = {{{"op", "squeeze"}, {"stage", "input"}, {"mode", 2}, {"r", 0.5}},
                        {{"op", "displace"}, {"stage", "input"}, {"mode", 2}, {"alpha", 1.0}}};
  EXPECT_EQ(config_error_path(j), "<accepted>");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["engine"] = "gaussian";
  j["modifications"].push_back({{"op", "subtract"}, {"stage", "output"}, {"mode", 1}, {"T", 0.9}, {"m", 1}});
  EXPECT_EQ(config_error_path(j), "engine");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["interferometer"] = nullptr;
  j["modifications"][0]["stage"] = "output";
  EXPECT_EQ(config_error_path(j), "modifications[0].stage");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["noise"] = {{"loss", {{"internal", 1.5}}}};
  EXPECT_EQ(config_error_path(j), "noise.loss");
  j = coherent_squeezed(2.0, 0.5, 1.0);
  j["inputs"] = json::array({{{"state", "vacuum"}}, {{"state", "vacuum"}}, {{"state", "vacuum"}},
                             {{"state", "vacuum"}}, {{"state", "vacuum"}}});
  j["interferometer"] = nullptr;
  j["detection"] = json::array();
  j["modifications"] = json::array();
  j["metrics"] = {"distributions"};
  EXPECT_EQ(config_error_path(j), "inputs");
}

TEST(Config, KeyTreeMatchesJson) {
  const json tree = parse_key_tree(
      "# comment\n"
      "name = \"kt\"\n"
      "[inputs]\n"
      "0.state = \"coherent\"\n"
      "0.alpha = 2.0\n"
      "1.state = \"vacuum\"\n"
      "[interferometer]\n"
      "phi = 1.0\n"
      "[detection]\n"
      "0.scheme = \"parity\"\n"
      "0.mode = 1\n");
  const json expect = {
      {"name", "kt"},
      {"inputs", {{{"state", "coherent"}, {"alpha", 2.0}}, {{"state", "vacuum"}}}},
      {"interferometer", {{"phi", 1.0}}},
      {"detection", {{{"scheme", "parity"}, {"mode", 1}}}},
  };
  EXPECT_EQ(tree, expect);
  EXPECT_THROW(parse_key_tree("a = not_a_literal"), ConfigError);
}

TEST(Config, ShippedConfigsLoad) {
  for (const char *name : {"ligo.json", "spacs_counts.json", "thermal_subtraction.json", "drift.conf"}) {
    EXPECT_NO_THROW(load_config(std::string(CVQ_CONFIG_DIR) + "/" + name)) << name;
  }
  const ScenarioConfig d = load_config(std::string(CVQ_CONFIG_DIR) + "/drift.conf");
  EXPECT_EQ(d.engine, Engine::kGaussian);
  EXPECT_DOUBLE_EQ(d.drift.sigma_for("parity"), 0.001);
  EXPECT_DOUBLE_EQ(d.drift.sigma_for("homodyne"), 0.15);
  EXPECT_THROW(load_config("/nonexistent/cvq.json"), ConfigError);
}

TEST(Config, RoundTripsThroughJson) {
  const ScenarioConfig a = load_config(std::string(CVQ_CONFIG_DIR) + "/ligo.json");
  const ScenarioConfig b = parse_config(to_json(a));
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(Grid, ParsingAndValues) {
  const GridSpec g = GridSpec::parse("phi=0:1:0.25");
  EXPECT_EQ(g.parameter, "phi");
  const std::vector<double> v = g.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_DOUBLE_EQ(v.back(), 1.0);
  EXPECT_EQ(GridSpec::parse("T=0.5:0.95:0.05").values().size(), 10u);
  EXPECT_THROW(GridSpec::parse("phi=1:0:0.1").values(), ConfigError);
  EXPECT_THROW(GridSpec::parse("phi=0:1:0").values(), ConfigError);
  EXPECT_THROW(GridSpec::parse("phi=0:1"), ConfigError);
  EXPECT_THROW(GridSpec::parse("phi0:1:2"), ConfigError);
}

TEST(Grid, ParameterMapping) {
  const ScenarioConfig c = parse_config(coherent_squeezed(2.0, 0.5, 1.0));
  EXPECT_DOUBLE_EQ(with_parameter(c, "alpha2", 9.0).inputs[0].alpha, 3.0);
  EXPECT_DOUBLE_EQ(with_parameter(c, "r", 0.8).modifications[0].r, 0.8);
  EXPECT_DOUBLE_EQ(with_parameter(c, "phi", 0.3).phi, 0.3);
  EXPECT_DOUBLE_EQ(with_parameter(c, "L", 0.1).loss.internal_loss, 0.1);
  try {
    with_parameter(c, "T", 0.5);
    ADD_FAILURE() << "T has no target here";
  } catch (const ConfigError &e) {
    EXPECT_EQ(e.path(), "sweep.T");
  }
  EXPECT_THROW(with_parameter(c, "bogus", 1.0), ConfigError);
  EXPECT_THROW(with_parameter(c, "L", 2.0), ConfigError);
  EXPECT_THROW(sweep(c, GridSpec::parse("phi=2:1:0.1"), RunOptions{}), ConfigError);
}

TEST(Scenario, EnginesAgree) {
  json j = coherent_squeezed(1.5, 0.6, 1.3);
  j["noise"] = {{"loss", {{"internal", 0.1}, {"detector", 0.9}}}, {"thermal", {{{"mode", 2}, {"n_env", 0.4}, {"T", 0.9}}}}};
  j["metrics"] = {"phase_variance", "qfi"};
  j["engine"] = "gaussian";
  const PointResult g = evaluate_point(parse_config(j));
  j["engine"] = "wigner";
  const PointResult w = evaluate_point(parse_config(j));
  ASSERT_EQ(g.report.schemes.size(), w.report.schemes.size());
  for (std::size_t i = 0; i < g.report.schemes.size(); ++i) {
    const auto &a = g.report.schemes[i];
    const auto &b = w.report.schemes[i];
    ASSERT_TRUE(a.variance && b.variance) << a.scheme;
    EXPECT_NEAR(*a.mean, *b.mean, 1e-8 * std::max(1.0, std::abs(*a.mean))) << a.scheme;
    EXPECT_NEAR(*a.variance / *b.variance, 1.0, 1e-8) << a.scheme;
  }
  ASSERT_TRUE(g.report.qfi.has_value());
  EXPECT_NEAR(g.report.mean_photons, w.report.mean_photons, 1e-10);
}

TEST(Scenario, LosslessRunsConservePhotons) {
  for (double phi : {0.2, 1.0, 2.9}) {
    const Pipeline p(parse_config(coherent_squeezed(2.0, 0.7, phi)));
    const double out = p.measure_at(phi, DetectionScheme::intensity(1)).mean +
                       p.measure_at(phi, DetectionScheme::intensity(2)).mean;
    EXPECT_NEAR(out, p.input_mean_photons(), 1e-9);
  }
}

TEST(Scenario, SteeredOutputsAreIdentical) {
  json j = {
      {"inputs", {{{"state", "coherent"}, {"alpha", 1.5}}, {{"state", "vacuum"}}}},
      {"interferometer", {{"phi", kPi / 2}}},
      {"detection", {{{"scheme", "intensity"}, {"mode", 1}}, {{"scheme", "intensity"}, {"mode", 2}}}},
      {"metrics", {"distributions"}},
  };
  const PointResult p = evaluate_point(parse_config(j));
  ASSERT_EQ(p.distributions.size(), 2u);
  const auto &a = p.distributions[0].second.probs;
  const auto &b = p.distributions[1].second.probs;
  for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(a[n], b[n], 1e-13);
}

TEST(Scenario, ReportsImprobableHeralds) {
  json j = {
      {"inputs", {{{"state", "vacuum"}}, {{"state", "vacuum"}}}},
      {"modifications", {{{"op", "subtract"}, {"stage", "output"}, {"mode", 1}, {"T", 0.9}, {"m", 2}}}},
      {"interferometer", {{"phi", 1.0}}},
      {"detection", {{{"scheme", "parity"}, {"mode", 1}}}},
  };
  const PointResult p = evaluate_point(parse_config(j));
  EXPECT_FALSE(p.ok);
  EXPECT_FALSE(p.report.warnings.empty());
}

TEST(Scenario, SweepIsDeterministicAndThreadIndependent) {
  json j = coherent_squeezed(2.0, 0.5, 1.0);
  j["metrics"] = {"phase_variance", "qfi"};
  const ScenarioConfig c = parse_config(j);
  const GridSpec g = GridSpec::parse("phi=0.2:3.0:0.4");
  const std::string a = points_csv(sweep(c, g, RunOptions{std::nullopt, 1}));
  const std::string b = points_csv(sweep(c, g, RunOptions{std::nullopt, 3}));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("index,phi,"), std::string::npos);
}

TEST(Scenario, OptimisedPhaseMatchesClosedForm) {
  json j = coherent_squeezed(2.0, 0.8, 1.0);
  j["optimize"] = true;
  const PointResult p = evaluate_point(parse_config(j));
  const SchemeEstimate &in = scheme(p, "intensity_1");
  ASSERT_TRUE(in.optimal_phi.has_value());
  const double expect = optimal_phase_intensity(4.0, 0.8);
  EXPECT_NEAR(std::min(*in.optimal_phi, 2 * kPi - *in.optimal_phi), expect, 1e-6);
  EXPECT_NEAR(*in.optimal_variance / min_variance_intensity(4.0, 0.8), 1.0, 1e-6);
}

TEST(Scenario, ThermalNoiseHurtsParityMore) {
  // The 20% arm loss of the LIGO scenario with a thermal ancilla of 1/3 photon instead of vacuum.
  json j = coherent_squeezed(std::sqrt(500.0), 1.0, kPi);
  const json arm = {{"n_env", 1.0 / 3.0}, {"T", 0.8}};
  j["noise"] = {{"thermal", {arm, arm}}};
  j["noise"]["thermal"][0]["mode"] = 1;
  j["noise"]["thermal"][1]["mode"] = 2;
  j["optimize"] = true;
  const PointResult p = evaluate_point(parse_config(j));
  const double shot = *p.report.snl;
  EXPECT_GT(*scheme(p, "parity_1").optimal_variance, shot);
  EXPECT_LT(*scheme(p, "homodyne_1").optimal_variance, shot);
}

TEST(Drift, VanishingSpreadSitsAtTheOptimum) {
  json j = coherent_squeezed(10.0, 1.0, kPi);
  j["engine"] = "gaussian";
  j["noise"] = {{"drift", {{"default_sigma", 1e-9}, {"trials", 50}}}};
  const RunReport r = phase_drift_study(parse_config(j), RunOptions{5, 1});
  ASSERT_EQ(r.drift.size(), 4u);
  for (const auto &t : r.drift) {
    ASSERT_EQ(t.running_mean.size(), 50u);
    for (double m : t.running_mean) EXPECT_NEAR(m / t.variance_at_opt, 1.0, 1e-5) << t.scheme;
  }
}

TEST(Drift, RunningMeanConverges) {
  json j = {
      {"engine", "gaussian"},
      {"inputs", {{{"state", "coherent"}, {"alpha", 10.0}}, {{"state", "vacuum"}}}},
      {"modifications", {{{"op", "squeeze"}, {"stage", "input"}, {"mode", 2}, {"r", 1.0}}}},
      {"interferometer", {{"phi", kPi}}},
      {"detection", {{{"scheme", "homodyne"}, {"mode", 1}}}},
      {"noise", {{"drift", {{"default_sigma", 0.15}, {"trials", 50000}}}}},
  };
  const RunReport r = phase_drift_study(parse_config(j), RunOptions{20260418, 0});
  const std::vector<double> &m = r.drift.at(0).running_mean;
  const double last = m.back();
  double worst = 0.0;
  for (std::size_t k = m.size() - m.size() / 10; k < m.size(); ++k) worst = std::max(worst, std::abs(m[k] - last) / last);
  EXPECT_LT(worst, 1e-3);
  const RunReport again = phase_drift_study(parse_config(j), RunOptions{20260418, 0});
  EXPECT_EQ(again.drift.at(0).running_mean, m);
}

json counts_config(const json &mods, double nbar, int trials) {
  return {
      {"inputs", {{{"state", "thermal"}, {"n_bar", nbar}}}},
      {"modifications", mods},
      {"interferometer", nullptr},
      {"detection", {{{"scheme", "intensity"}, {"mode", 1}}}},
      {"metrics", {"snr"}},
      {"counts", {{"trials", trials}}},
  };
}

TEST(Counts, UnheraldedKeepsEveryTrial) {
  const RunReport r = simulate_counts(parse_config(counts_config(json::array(), 1.0, 777)), std::nullopt, RunOptions{3, 1});
  ASSERT_EQ(r.counts.size(), 1u);
  EXPECT_EQ(r.counts[0].kept, 777);
  EXPECT_DOUBLE_EQ(r.counts[0].p_success, 1.0);
}

TEST(Counts, ThreePhotonSubtractionCostsSixtyfoldTrials) {
  const json sub = {{{"op", "subtract"}, {"stage", "input"}, {"mode", 1}, {"T", 0.8}, {"m", 3}}};
  const RunReport r = simulate_counts(parse_config(counts_config(sub, 2.0, 200000)), std::nullopt, RunOptions{11, 1});
  const double factor = 200000.0 / static_cast<double>(r.counts.at(0).kept);
  EXPECT_GE(factor, 30.0);
  EXPECT_LE(factor, 120.0);
  EXPECT_NEAR(r.counts[0].expected_kept, 200000 * spsts_prob(2.0, 3, 0.8), 1e-6);
}

TEST(Counts, RareHeraldsAreFlagged) {
  const json sub = {{{"op", "subtract"}, {"stage", "input"}, {"mode", 1}, {"T", 0.99}, {"m", 3}}};
  const RunReport r = simulate_counts(parse_config(counts_config(sub, 0.1, 1)), std::nullopt, RunOptions{1, 1});
  EXPECT_EQ(r.counts.at(0).kept, 0);
  EXPECT_TRUE(r.counts[0].flagged);
  EXPECT_FALSE(r.counts[0].sample_mean.has_value());
}

TEST(Report, NumbersRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  for (double v : {kPi, 1e-300, -3.5e17, 6.02214076e23}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(parse_output_format("both"), OutputFormat::kBoth);
  EXPECT_THROW(parse_output_format("xml"), ConfigError);
}

TEST(Report, EmitsFiles) {
  const ScenarioConfig c = parse_config(coherent_squeezed(2.0, 0.5, 1.0));
  const RunReport r = run(c, RunOptions{1, 1});
  const auto dir = std::filesystem::temp_directory_path() / "cvq_report_test";
  std::filesystem::remove_all(dir);
  const auto files = emit(r, dir, OutputFormat::kBoth);
  ASSERT_EQ(files.size(), 2u);
  for (const auto &f : files) EXPECT_TRUE(std::filesystem::exists(f));
  const json doc = report_to_json(r);
  EXPECT_EQ(doc.at("schema"), "cvq.report");
  EXPECT_EQ(doc.at("schema_version"), kReportSchemaVersion);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cvq
