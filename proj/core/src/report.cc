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

#include "cvq/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cvq/errors.h"

namespace cvq {

namespace {

using Row = std::vector<std::string>;

std::string cell(const std::optional<double> &v) { return v && std::isfinite(*v) ? format_number(*v) : ""; }

std::string escape(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append(std::ostringstream &os, const Row &row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << escape(row[i]);
  }
  os << '\n';
}

std::vector<std::string> scheme_keys(const RunReport &report) {
  std::vector<std::string> keys;
  for (const auto &pt : report.points) {
    for (const auto &s : pt.report.schemes) {
      if (std::find(keys.begin(), keys.end(), s.scheme) == keys.end()) keys.push_back(s.scheme);
    }
  }
  return keys;
}

nlohmann::json opt(const std::optional<double> &v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

const char *kind_name(RunKind k) {
  switch (k) {
    case RunKind::kRun:
      return "run";
    case RunKind::kSweep:
      return "sweep";
    case RunKind::kDrift:
      return "drift";
    case RunKind::kCounts:
      return "counts";
  }
  return "run";
}

std::string status(const PointResult &pt) {
  if (!pt.ok) return "improbable";
  return pt.report.warnings.empty() ? "ok" : "warning";
}

void write_file(const std::filesystem::path &path, const std::string &text,
                std::vector<std::filesystem::path> &written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
  written.push_back(path);
}

}  // namespace

OutputFormat parse_output_format(const std::string &text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  if (text == "both") return OutputFormat::kBoth;
  throw ConfigError("format", "expected csv, json or both, got '" + text + "'");
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string points_csv(const RunReport &report) {
  const auto keys = scheme_keys(report);
  // A phi sweep is already visible in the phi column.
  const bool value_column = report.parameter && *report.parameter != "phi";
  std::ostringstream os;
  Row header{"index"};
  if (value_column) header.push_back(*report.parameter);
  for (const char *c : {"phi", "mean_photons", "herald_probability", "snl", "hl", "qfi", "qcrb", "cfi"}) {
    header.emplace_back(c);
  }
  for (const auto &k : keys) {
    for (const char *c : {"_mean", "_observable_variance", "_phase_variance", "_optimal_phi",
                          "_optimal_phase_variance", "_snr"}) {
      header.push_back(k + c);
    }
  }
  header.emplace_back("status");
  append(os, header);
  for (const auto &pt : report.points) {
    const auto &r = pt.report;
    Row row{std::to_string(pt.index)};
    if (value_column) row.push_back(cell(pt.value));
    row.push_back(format_number(r.phi));
    row.push_back(format_number(r.mean_photons));
    row.push_back(format_number(pt.herald_probability));
    for (const auto *v : {&r.snl, &r.hl, &r.qfi, &r.qcrb, &r.cfi}) row.push_back(cell(*v));
    for (const auto &k : keys) {
      const auto it = std::find_if(r.schemes.begin(), r.schemes.end(), [&](const auto &s) { return s.scheme == k; });
      if (it == r.schemes.end()) {
        row.insert(row.end(), 6, "");
        continue;
      }
      for (const auto *v : {&it->mean, &it->observable_variance, &it->variance, &it->optimal_phi,
                            &it->optimal_variance, &it->snr}) {
        row.push_back(cell(*v));
      }
    }
    row.push_back(status(pt));
    append(os, row);
  }
  return os.str();
}

std::string drift_csv(const RunReport &report) {
  std::ostringstream os;
  Row header{"trial"};
  std::size_t trials = 0;
  for (const auto &t : report.drift) {
    header.push_back(t.scheme);
    trials = std::max(trials, t.running_mean.size());
  }
  append(os, header);
  for (std::size_t k = 0; k < trials; ++k) {
    Row row{std::to_string(k + 1)};
    for (const auto &t : report.drift) {
      row.push_back(k < t.running_mean.size() ? cell(t.running_mean[k]) : "");
    }
    append(os, row);
  }
  return os.str();
}

std::string drift_summary_csv(const RunReport &report) {
  std::ostringstream os;
  append(os, {"scheme", "phi_opt", "phase_variance_at_opt", "sigma", "trials", "skipped", "final_running_mean"});
  for (const auto &t : report.drift) {
    append(os, {t.scheme, format_number(t.phi_opt), format_number(t.variance_at_opt), format_number(t.sigma),
                std::to_string(t.running_mean.size()), std::to_string(t.skipped),
                t.running_mean.empty() ? "" : cell(t.running_mean.back())});
  }
  return os.str();
}

std::string counts_csv(const RunReport &report) {
  std::ostringstream os;
  Row header{"index"};
  if (report.parameter) header.push_back(*report.parameter);
  for (const char *c : {"p_success", "expected_kept", "kept", "sample_mean", "sample_snr", "theory_mean",
                        "theory_snr", "flagged", "note"}) {
    header.emplace_back(c);
  }
  append(os, header);
  for (const auto &c : report.counts) {
    Row row{std::to_string(c.index)};
    if (report.parameter) row.push_back(cell(c.value));
    row.push_back(format_number(c.p_success));
    row.push_back(format_number(c.expected_kept));
    row.push_back(std::to_string(c.kept));
    for (const auto *v : {&c.sample_mean, &c.sample_snr, &c.theory_mean, &c.theory_snr}) row.push_back(cell(*v));
    row.push_back(c.flagged ? "1" : "0");
    row.push_back(c.note);
    append(os, row);
  }
  return os.str();
}

std::string distributions_csv(const RunReport &report) {
  std::ostringstream os;
  append(os, {"index", "mode", "n", "p"});
  for (const auto &pt : report.points) {
    for (const auto &[mode, dist] : pt.distributions) {
      for (std::size_t n = 0; n < dist.probs.size(); ++n) {
        append(os, {std::to_string(pt.index), std::to_string(mode), std::to_string(n), format_number(dist.probs[n])});
      }
    }
  }
  return os.str();
}

nlohmann::json report_to_json(const RunReport &report) {
  nlohmann::json j;
  j["schema"] = "cvq.report";
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = report.version;
  j["kind"] = kind_name(report.kind);
  j["seed"] = report.seed;
  j["config"] = report.config;
  j["parameter"] = report.parameter ? nlohmann::json(*report.parameter) : nlohmann::json(nullptr);
  j["warnings"] = report.warnings;
  auto &points = j["points"] = nlohmann::json::array();
  for (const auto &pt : report.points) {
    const auto &r = pt.report;
    nlohmann::json p{{"index", pt.index},
                     {"value", opt(pt.value)},
                     {"phi", r.phi},
                     {"mean_photons", r.mean_photons},
                     {"herald_probability", pt.herald_probability},
                     {"snl", opt(r.snl)},
                     {"hl", opt(r.hl)},
                     {"qfi", opt(r.qfi)},
                     {"qcrb", opt(r.qcrb)},
                     {"cfi", opt(r.cfi)},
                     {"status", status(pt)},
                     {"warnings", r.warnings}};
    auto &schemes = p["schemes"] = nlohmann::json::array();
    for (const auto &s : r.schemes) {
      schemes.push_back({{"scheme", s.scheme},
                         {"mean", opt(s.mean)},
                         {"observable_variance", opt(s.observable_variance)},
                         {"phase_variance", opt(s.variance)},
                         {"optimal_phi", opt(s.optimal_phi)},
                         {"optimal_phase_variance", opt(s.optimal_variance)},
                         {"snr", opt(s.snr)},
                         {"note", s.note}});
    }
    if (!pt.distributions.empty()) {
      auto &d = p["distributions"] = nlohmann::json::array();
      for (const auto &[mode, dist] : pt.distributions) {
        d.push_back({{"mode", mode}, {"p", dist.probs}, {"tail", dist.tail}});
      }
    }
    points.push_back(std::move(p));
  }
  auto &drift = j["drift"] = nlohmann::json::array();
  for (const auto &t : report.drift) {
    nlohmann::json running = nlohmann::json::array();
    for (double v : t.running_mean) running.push_back(opt(v));
    drift.push_back({{"scheme", t.scheme},
                     {"phi_opt", t.phi_opt},
                     {"phase_variance_at_opt", t.variance_at_opt},
                     {"sigma", t.sigma},
                     {"skipped", t.skipped},
                     {"running_mean", std::move(running)}});
  }
  auto &counts = j["counts"] = nlohmann::json::array();
  for (const auto &c : report.counts) {
    counts.push_back({{"index", c.index},
                      {"value", opt(c.value)},
                      {"p_success", c.p_success},
                      {"expected_kept", c.expected_kept},
                      {"kept", c.kept},
                      {"sample_mean", opt(c.sample_mean)},
                      {"sample_snr", opt(c.sample_snr)},
                      {"theory_mean", opt(c.theory_mean)},
                      {"theory_snr", opt(c.theory_snr)},
                      {"flagged", c.flagged},
                      {"note", c.note}});
  }
  return j;
}

std::vector<std::filesystem::path> emit(const RunReport &report, const std::filesystem::path &dir,
                                        OutputFormat format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  if (format != OutputFormat::kJson) {
    switch (report.kind) {
      case RunKind::kRun:
      case RunKind::kSweep: {
        write_file(dir / "results.csv", points_csv(report), written);
        const bool any = std::any_of(report.points.begin(), report.points.end(),
                                     [](const auto &p) { return !p.distributions.empty(); });
        if (any) write_file(dir / "distributions.csv", distributions_csv(report), written);
        break;
      }
      case RunKind::kDrift:
        write_file(dir / "drift.csv", drift_csv(report), written);
        write_file(dir / "drift_summary.csv", drift_summary_csv(report), written);
        break;
      case RunKind::kCounts:
        write_file(dir / "counts.csv", counts_csv(report), written);
        break;
    }
  }
  if (format != OutputFormat::kCsv) write_file(dir / "report.json", report_to_json(report).dump(2) + "\n", written);
  return written;
}

}  // namespace cvq
