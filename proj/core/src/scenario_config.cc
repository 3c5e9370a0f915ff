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

#include "cvq/scenario_config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cvq/errors.h"

namespace cvq {

namespace {

using nlohmann::json;

// Reads fields from one JSON object and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string at(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string &key) const { return j_.contains(key); }

  const json &raw(const std::string &key) {
    if (!has(key)) throw ConfigError(at(key), "required key is missing");
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string &key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "required number is missing");
    }
    const json &v = raw(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(at(key), "must be finite");
    return d;
  }

  int integer(const std::string &key, std::optional<int> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "required integer is missing");
    }
    const json &v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v.get<int>();
  }

  std::string text(const std::string &key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "required string is missing");
    }
    const json &v = raw(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  bool flag(const std::string &key, bool fallback) {
    if (!has(key)) return fallback;
    const json &v = raw(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (const auto &[k, v] : j_.items()) {
      if (!used_.count(k)) throw ConfigError(at(k), "unknown key");
    }
  }

 private:
  const json &j_;
  std::string path_;
  std::set<std::string> used_;
};

std::string indexed(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require(bool ok, const std::string &path, const std::string &message) {
  if (!ok) throw ConfigError(path, message);
}

InputSpec parse_input(const json &j, const std::string &path) {
  Fields f(j, path);
  InputSpec s;
  const std::string kind = f.text("state");
  if (kind == "vacuum") {
    s.kind = InputKind::kVacuum;
  } else if (kind == "coherent") {
    s.kind = InputKind::kCoherent;
    s.alpha = f.number("alpha");
    s.theta = f.number("theta", 0.0);
    require(s.alpha >= 0.0, f.at("alpha"), "must be >= 0");
  } else if (kind == "thermal") {
    s.kind = InputKind::kThermal;
    s.n_bar = f.number("n_bar");
    require(s.n_bar >= 0.0, f.at("n_bar"), "must be >= 0");
  } else if (kind == "fock") {
    s.kind = InputKind::kFock;
    s.photons = f.integer("n", 1);
    require(s.photons >= 0 && s.photons <= 8, f.at("n"), "must lie in [0, 8]");
  } else {
    throw ConfigError(f.at("state"), "unknown state '" + kind + "' (vacuum, coherent, thermal, fock)");
  }
  f.finish();
  return s;
}

ModificationSpec parse_modification(const json &j, const std::string &path) {
  Fields f(j, path);
  ModificationSpec s;
  const std::string op = f.text("op");
  const std::string stage = f.text("stage", "input");
  if (stage == "input") {
    s.stage = Stage::kInput;
  } else if (stage == "output") {
    s.stage = Stage::kOutput;
  } else {
    throw ConfigError(f.at("stage"), "expected 'input' or 'output'");
  }
  s.mode = f.integer("mode", 1);
  s.herald.mode = ModeIndex(std::max(1, s.mode));
  if (op == "squeeze") {
    s.kind = ModKind::kSqueeze;
    s.r = f.number("r");
    s.theta = f.number("theta", 0.0);
    require(s.r >= 0.0, f.at("r"), "must be >= 0");
  } else if (op == "displace") {
    s.kind = ModKind::kDisplace;
    s.alpha = f.number("alpha");
    s.theta = f.number("theta", 0.0);
    require(s.alpha >= 0.0, f.at("alpha"), "must be >= 0");
  } else if (op == "add" || op == "subtract") {
    s.kind = op == "add" ? ModKind::kAdd : ModKind::kSubtract;
    s.herald.operation = op == "add" ? Operation::kAdd : Operation::kSubtract;
    const std::string mech = f.text("mechanism", "beam_splitter");
    if (mech == "beam_splitter") {
      s.herald.mechanism = Mechanism::kBeamSplitter;
      s.herald.transmissivity = f.number("T");
      require(s.herald.transmissivity >= 0.0 && s.herald.transmissivity <= 1.0, f.at("T"), "must lie in [0, 1]");
    } else if (mech == "spdc") {
      require(op == "add", f.at("mechanism"), "spdc models addition only");
      s.herald.mechanism = Mechanism::kSpdc;
      s.herald.r = f.number("r");
      s.herald.theta = f.number("theta", 0.0);
      require(s.herald.r >= 0.0, f.at("r"), "must be >= 0");
    } else {
      throw ConfigError(f.at("mechanism"), "expected 'beam_splitter' or 'spdc'");
    }
    const std::string herald = f.text("herald", "fock");
    if (herald == "click") {
      require(op == "subtract" && s.herald.mechanism == Mechanism::kBeamSplitter, f.at("herald"),
              "click heralding is defined for beam-splitter subtraction");
      s.herald.herald = HeraldKind::kClick;
      s.herald.m = 1;
    } else if (herald == "fock") {
      s.herald.herald = HeraldKind::kFockCount;
      s.herald.m = f.integer("m", 1);
      require(s.herald.m >= 1 && s.herald.m <= kMaxHeraldPhotons, f.at("m"), "must lie in [1, 8]");
      if (s.herald.mechanism == Mechanism::kSpdc) require(s.herald.m == 1, f.at("m"), "spdc addition is m = 1");
    } else {
      throw ConfigError(f.at("herald"), "expected 'fock' or 'click'");
    }
  } else {
    throw ConfigError(f.at("op"), "unknown modification '" + op + "' (squeeze, displace, add, subtract)");
  }
  f.finish();
  return s;
}

DetectionScheme parse_detection(const json &j, const std::string &path) {
  Fields f(j, path);
  const std::string kind = f.text("scheme");
  DetectionScheme s;
  if (kind == "intensity_difference") {
    const json &modes = f.raw("modes");
    require(modes.is_array() && modes.size() == 2 && modes[0].is_number_integer() && modes[1].is_number_integer(),
            f.at("modes"), "expected two mode indices");
    const int a = modes[0].get<int>();
    const int b = modes[1].get<int>();
    require(a >= 1 && b >= 1 && a != b, f.at("modes"), "expected two distinct modes >= 1");
    s = DetectionScheme::intensity_difference(a, b);
  } else {
    const int mode = f.integer("mode", 1);
    require(mode >= 1, f.at("mode"), "must be >= 1");
    if (kind == "intensity") {
      s = DetectionScheme::intensity(mode);
    } else if (kind == "homodyne") {
      s = DetectionScheme::homodyne(mode, f.number("angle", 0.0));
    } else if (kind == "parity") {
      s = DetectionScheme::parity(mode);
    } else if (kind == "click") {
      s = DetectionScheme::click(mode);
    } else {
      throw ConfigError(f.at("scheme"), "unknown scheme '" + kind + "'");
    }
  }
  f.finish();
  return s;
}

const std::set<std::string> &known_metrics() {
  static const std::set<std::string> kMetrics = {"phase_variance", "cfi", "qfi", "snr", "distributions"};
  return kMetrics;
}

GridSpec parse_grid_object(const json &j, const std::string &path) {
  Fields f(j, path);
  GridSpec g;
  g.parameter = f.text("parameter");
  g.start = f.number("start");
  g.stop = f.number("stop");
  g.step = f.number("step");
  f.finish();
  return g;
}

void parse_noise(const json &j, ScenarioConfig &c) {
  Fields f(j, "noise");
  if (f.has("loss")) {
    Fields l(f.raw("loss"), "noise.loss");
    c.loss.internal_loss = l.number("internal", 0.0);
    c.loss.detector_efficiency = l.number("detector", 1.0);
    l.finish();
  }
  if (f.has("thermal")) {
    const json &arr = f.raw("thermal");
    require(arr.is_array(), "noise.thermal", "expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Fields t(arr[i], indexed("noise.thermal", i));
      ThermalInjection inj;
      inj.mode = t.integer("mode", 1);
      inj.n_env = t.number("n_env");
      inj.transmissivity = t.number("T");
      require(inj.n_env >= 0.0, t.at("n_env"), "must be >= 0");
      require(inj.transmissivity >= 0.0 && inj.transmissivity <= 1.0, t.at("T"), "must lie in [0, 1]");
      t.finish();
      c.thermal.push_back(inj);
    }
  }
  if (f.has("drift")) {
    Fields d(f.raw("drift"), "noise.drift");
    if (d.has("sigma")) {
      const json &s = d.raw("sigma");
      require(s.is_object(), d.at("sigma"), "expected an object of scheme -> sigma");
      for (const auto &[k, v] : s.items()) {
        require(v.is_number() && v.get<double>() > 0.0, d.at("sigma") + "." + k, "must be a positive number");
        c.drift.sigma[k] = v.get<double>();
      }
    }
    c.drift.default_sigma = d.number("default_sigma", c.drift.default_sigma);
    c.drift.uniform_fraction = d.number("uniform_fraction", c.drift.uniform_fraction);
    c.drift.trials = d.integer("trials", c.drift.trials);
    const std::string mode = d.text("mode", "gaussian");
    if (mode == "gaussian") {
      c.drift.mode = DriftMode::kGaussian;
    } else if (mode == "uniform") {
      c.drift.mode = DriftMode::kUniform;
    } else {
      throw ConfigError(d.at("mode"), "expected 'gaussian' or 'uniform'");
    }
    require(c.drift.default_sigma > 0.0, d.at("default_sigma"), "must be > 0");
    require(c.drift.uniform_fraction > 0.0, d.at("uniform_fraction"), "must be > 0");
    require(c.drift.trials >= 1, d.at("trials"), "must be >= 1");
    d.finish();
  }
  f.finish();
}

}  // namespace

double DriftSpec::sigma_for(const std::string &scheme) const {
  const auto it = sigma.find(scheme);
  return it == sigma.end() ? default_sigma : it->second;
}

std::vector<double> GridSpec::values() const {
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigError("grid", "empty grid: need start <= stop and step > 0");
  }
  const double span = (stop - start) / step;
  if (span > 1e6) throw ConfigError("grid", "grid has more than 1e6 points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + static_cast<double>(i) * step;
  return v;
}

GridSpec GridSpec::parse(const std::string &text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("grid", "expected param=start:stop:step");
  GridSpec g;
  g.parameter = text.substr(0, eq);
  std::stringstream ss(text.substr(eq + 1));
  std::string part;
  std::vector<double> nums;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception &) {
      throw ConfigError("grid", "not a number: '" + part + "'");
    }
  }
  if (nums.size() != 3) throw ConfigError("grid", "expected param=start:stop:step");
  g.start = nums[0];
  g.stop = nums[1];
  g.step = nums[2];
  return g;
}

bool ScenarioConfig::wants(const std::string &metric) const {
  return std::find(metrics.begin(), metrics.end(), metric) != metrics.end();
}

bool ScenarioConfig::gaussian_only() const {
  for (const auto &in : inputs) {
    if (in.kind == InputKind::kFock && in.photons > 0) return false;
  }
  for (const auto &m : modifications) {
    if (m.kind == ModKind::kAdd || m.kind == ModKind::kSubtract) return false;
  }
  return true;
}

int ScenarioConfig::photons_added() const {
  int total = 0;
  for (const auto &m : modifications) {
    if (m.kind == ModKind::kAdd) total += m.herald.m;
  }
  return total;
}

ScenarioConfig parse_config(const json &j) {
  Fields f(j, "");
  ScenarioConfig c;
  const int version = f.integer("schema_version", kConfigSchemaVersion);
  require(version == kConfigSchemaVersion, "schema_version", "unsupported schema version");
  c.name = f.text("name", c.name);
  if (f.has("seed")) {
    const json &s = f.raw("seed");
    require(s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0), "seed",
            "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  const std::string engine = f.text("engine", "auto");
  if (engine == "auto") {
    c.engine = Engine::kAuto;
  } else if (engine == "gaussian") {
    c.engine = Engine::kGaussian;
  } else if (engine == "wigner") {
    c.engine = Engine::kWigner;
  } else {
    throw ConfigError("engine", "expected 'auto', 'gaussian' or 'wigner'");
  }
  c.photon_cutoff = f.integer("photon_cutoff", c.photon_cutoff);

  const json &inputs = f.raw("inputs");
  require(inputs.is_array() && !inputs.empty(), "inputs", "expected a non-empty list");
  for (std::size_t i = 0; i < inputs.size(); ++i) c.inputs.push_back(parse_input(inputs[i], indexed("inputs", i)));

  if (f.has("modifications")) {
    const json &mods = f.raw("modifications");
    require(mods.is_array(), "modifications", "expected a list");
    for (std::size_t i = 0; i < mods.size(); ++i) {
      c.modifications.push_back(parse_modification(mods[i], indexed("modifications", i)));
    }
  }

  if (f.has("interferometer")) {
    const json &mzi = f.raw("interferometer");
    if (mzi.is_null() || (mzi.is_boolean() && !mzi.get<bool>())) {
      c.interferometer = false;
    } else {
      Fields m(mzi, "interferometer");
      c.interferometer = true;
      c.phi = m.number("phi", 0.0);
      m.finish();
    }
  }

  if (f.has("noise")) parse_noise(f.raw("noise"), c);

  if (f.has("detection")) {
    const json &det = f.raw("detection");
    require(det.is_array(), "detection", "expected a list");
    for (std::size_t i = 0; i < det.size(); ++i) c.detection.push_back(parse_detection(det[i], indexed("detection", i)));
  }

  if (f.has("metrics")) {
    const json &met = f.raw("metrics");
    require(met.is_array(), "metrics", "expected a list");
    for (std::size_t i = 0; i < met.size(); ++i) {
      require(met[i].is_string() && known_metrics().count(met[i].get<std::string>()), indexed("metrics", i),
              "unknown metric (phase_variance, cfi, qfi, snr, distributions)");
      c.metrics.push_back(met[i].get<std::string>());
    }
  } else {
    c.metrics = {"phase_variance"};
  }
  c.optimize = f.flag("optimize", false);
  if (f.has("sweep")) c.grid = parse_grid_object(f.raw("sweep"), "sweep");
  if (f.has("counts")) {
    Fields k(f.raw("counts"), "counts");
    c.counts.trials = k.integer("trials", c.counts.trials);
    c.counts.mode = k.integer("mode", c.counts.mode);
    k.finish();
  }
  f.finish();
  validate(c);
  return c;
}

void validate(const ScenarioConfig &c) {
  const int n = c.modes();
  require(n >= 1 && n <= 4, "inputs", "between 1 and 4 modes are supported");
  require(c.photon_cutoff >= 1 && c.photon_cutoff <= 200, "photon_cutoff", "must lie in [1, 200]");
  if (c.interferometer) require(n == 2, "interferometer", "the interferometer needs exactly two input modes");
  require(c.counts.trials >= 1, "counts.trials", "must be >= 1");
  require(c.counts.mode >= 1 && c.counts.mode <= n, "counts.mode", "mode index out of range");
  try {
    c.loss.validate();
  } catch (const DomainError &e) {
    throw ConfigError("noise.loss", e.what());
  }
  for (std::size_t i = 0; i < c.thermal.size(); ++i) {
    require(c.thermal[i].mode >= 1 && c.thermal[i].mode <= n, indexed("noise.thermal", i) + ".mode",
            "mode index out of range");
  }
  std::vector<bool> touched(n, false);
  for (std::size_t i = 0; i < c.modifications.size(); ++i) {
    const auto &m = c.modifications[i];
    const std::string p = indexed("modifications", i);
    require(m.mode >= 1 && m.mode <= n, p + ".mode", "mode index out of range");
    require(m.stage == Stage::kInput || c.interferometer, p + ".stage", "output stage needs the interferometer");
    const int k = m.mode - 1;
    if (m.kind == ModKind::kDisplace && m.stage == Stage::kInput && !touched[k] &&
        c.inputs[k].kind == InputKind::kVacuum) {
      throw ConfigError(p, "displacement is not available on a vacuum input; choose a coherent input instead");
    }
    if (m.stage == Stage::kInput) touched[k] = true;
  }
  for (std::size_t i = 0; i < c.detection.size(); ++i) {
    try {
      c.detection[i].validate(n);
    } catch (const DomainError &e) {
      throw ConfigError(indexed("detection", i), e.what());
    }
  }
  if (c.wants("phase_variance") || c.wants("cfi") || c.wants("qfi")) {
    require(c.interferometer, "metrics", "phase metrics need the interferometer");
  }
  if (c.engine == Engine::kGaussian) {
    require(c.gaussian_only(), "engine", "the Gaussian engine cannot represent Fock inputs or heralded operations");
  }
  if (c.grid) {
    const auto &params = sweep_parameters();
    require(std::find(params.begin(), params.end(), c.grid->parameter) != params.end(), "sweep.parameter",
            "unknown sweep parameter '" + c.grid->parameter + "'");
    (void)c.grid->values();
  }
}

ScenarioConfig with_parameter(const ScenarioConfig &config, const std::string &parameter, double value) {
  ScenarioConfig c = config;
  bool hit = false;
  auto path = "sweep." + parameter;
  if (parameter == "phi") {
    require(c.interferometer, path, "no interferometer to sweep");
    c.phi = value;
    hit = true;
  } else if (parameter == "alpha2") {
    require(value >= 0.0, path, "must be >= 0");
    for (auto &in : c.inputs) {
      if (in.kind == InputKind::kCoherent) {
        in.alpha = std::sqrt(value);
        hit = true;
      }
    }
  } else if (parameter == "r") {
    require(value >= 0.0, path, "must be >= 0");
    for (auto &m : c.modifications) {
      if (m.kind == ModKind::kSqueeze) {
        m.r = value;
        hit = true;
      } else if (m.kind == ModKind::kAdd && m.herald.mechanism == Mechanism::kSpdc) {
        m.herald.r = value;
        hit = true;
      }
    }
  } else if (parameter == "T") {
    require(value >= 0.0 && value <= 1.0, path, "must lie in [0, 1]");
    for (auto &m : c.modifications) {
      if ((m.kind == ModKind::kAdd || m.kind == ModKind::kSubtract) &&
          m.herald.mechanism == Mechanism::kBeamSplitter) {
        m.herald.transmissivity = value;
        hit = true;
      }
    }
  } else if (parameter == "L") {
    c.loss.internal_loss = value;
    hit = true;
  } else if (parameter == "D") {
    c.loss.detector_efficiency = value;
    hit = true;
  } else if (parameter == "n_bar") {
    require(value >= 0.0, path, "must be >= 0");
    for (auto &in : c.inputs) {
      if (in.kind == InputKind::kThermal) {
        in.n_bar = value;
        hit = true;
      }
    }
  } else if (parameter == "n_env") {
    require(value >= 0.0, path, "must be >= 0");
    for (auto &t : c.thermal) {
      t.n_env = value;
      hit = true;
    }
  } else if (parameter == "m") {
    require(value == std::floor(value) && value >= 1 && value <= kMaxHeraldPhotons, path,
            "must be an integer in [1, 8]");
    for (auto &m : c.modifications) {
      if ((m.kind == ModKind::kAdd || m.kind == ModKind::kSubtract) && m.herald.herald == HeraldKind::kFockCount &&
          m.herald.mechanism == Mechanism::kBeamSplitter) {
        m.herald.m = static_cast<int>(value);
        hit = true;
      }
    }
  } else {
    throw ConfigError(path, "unknown sweep parameter");
  }
  require(hit, path, "parameter has no target in this scenario");
  validate(c);
  return c;
}

json parse_key_tree(const std::string &text) {
  json root = json::object();
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      require(t.back() == ']', where, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    require(eq != std::string::npos, where, "expected key = value");
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    require(!key.empty(), where, "empty key");
    if (!section.empty()) key = section + "." + key;
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error &) {
      throw ConfigError(where, "value is not a JSON literal: " + value);
    }
    json *node = &root;
    std::stringstream ks(key);
    std::string seg;
    std::vector<std::string> segs;
    while (std::getline(ks, seg, '.')) segs.push_back(trim(seg));
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const std::string &s = segs[i];
      require(!s.empty(), where, "empty key segment");
      const bool is_index = std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
      const bool last = i + 1 == segs.size();
      if (is_index) {
        if (node->is_null()) *node = json::array();
        require(node->is_array(), where, "index into a non-list");
        const std::size_t idx = std::stoul(s);
        require(idx <= node->size(), where, "list indices must be contiguous");
        if (idx == node->size()) node->push_back(json());
        node = &(*node)[idx];
      } else {
        if (node->is_null()) *node = json::object();
        require(node->is_object(), where, "key into a non-table");
        node = &(*node)[s];
      }
      if (last) {
        require(node->is_null(), where, "duplicate key '" + key + "'");
        *node = parsed;
      }
    }
  }
  return root;
}

ScenarioConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  json j;
  if (first != std::string::npos && text[first] == '{') {
    try {
      j = json::parse(text);
    } catch (const json::parse_error &e) {
      throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
  } else {
    j = parse_key_tree(text);
  }
  return parse_config(j);
}

json to_json(const ScenarioConfig &c) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["engine"] = c.engine == Engine::kAuto ? "auto" : c.engine == Engine::kGaussian ? "gaussian" : "wigner";
  j["photon_cutoff"] = c.photon_cutoff;
  json inputs = json::array();
  for (const auto &in : c.inputs) {
    json e;
    switch (in.kind) {
      case InputKind::kVacuum:
        e["state"] = "vacuum";
        break;
      case InputKind::kCoherent:
        e["state"] = "coherent";
        e["alpha"] = in.alpha;
        e["theta"] = in.theta;
        break;
      case InputKind::kThermal:
        e["state"] = "thermal";
        e["n_bar"] = in.n_bar;
        break;
      case InputKind::kFock:
        e["state"] = "fock";
        e["n"] = in.photons;
        break;
    }
    inputs.push_back(e);
  }
  j["inputs"] = inputs;
  json mods = json::array();
  for (const auto &m : c.modifications) {
    json e;
    e["stage"] = m.stage == Stage::kInput ? "input" : "output";
    e["mode"] = m.mode;
    switch (m.kind) {
      case ModKind::kSqueeze:
        e["op"] = "squeeze";
        e["r"] = m.r;
        e["theta"] = m.theta;
        break;
      case ModKind::kDisplace:
        e["op"] = "displace";
        e["alpha"] = m.alpha;
        e["theta"] = m.theta;
        break;
      case ModKind::kAdd:
      case ModKind::kSubtract:
        e["op"] = m.kind == ModKind::kAdd ? "add" : "subtract";
        if (m.herald.mechanism == Mechanism::kSpdc) {
          e["mechanism"] = "spdc";
          e["r"] = m.herald.r;
          e["theta"] = m.herald.theta;
        } else {
          e["mechanism"] = "beam_splitter";
          e["T"] = m.herald.transmissivity;
        }
        if (m.herald.herald == HeraldKind::kClick) {
          e["herald"] = "click";
        } else {
          e["herald"] = "fock";
          e["m"] = m.herald.m;
        }
        break;
    }
    mods.push_back(e);
  }
  j["modifications"] = mods;
  if (c.interferometer) {
    j["interferometer"] = {{"phi", c.phi}};
  } else {
    j["interferometer"] = nullptr;
  }
  json noise;
  noise["loss"] = {{"internal", c.loss.internal_loss}, {"detector", c.loss.detector_efficiency}};
  json thermal = json::array();
  for (const auto &t : c.thermal) thermal.push_back({{"mode", t.mode}, {"n_env", t.n_env}, {"T", t.transmissivity}});
  noise["thermal"] = thermal;
  json sigma = json::object();
  for (const auto &[k, v] : c.drift.sigma) sigma[k] = v;
  noise["drift"] = {{"sigma", sigma},
                    {"default_sigma", c.drift.default_sigma},
                    {"uniform_fraction", c.drift.uniform_fraction},
                    {"trials", c.drift.trials},
                    {"mode", c.drift.mode == DriftMode::kGaussian ? "gaussian" : "uniform"}};
  j["noise"] = noise;
  json det = json::array();
  for (const auto &d : c.detection) {
    json e;
    e["scheme"] = d.name();
    if (d.kind == DetectionKind::kIntensityDifference) {
      e["modes"] = {d.mode.value(), d.second_mode->value()};
    } else {
      e["mode"] = d.mode.value();
    }
    if (d.kind == DetectionKind::kHomodyne) e["angle"] = d.angle;
    det.push_back(e);
  }
  j["detection"] = det;
  j["metrics"] = c.metrics;
  j["optimize"] = c.optimize;
  if (c.grid) {
    j["sweep"] = {{"parameter", c.grid->parameter}, {"start", c.grid->start}, {"stop", c.grid->stop},
                  {"step", c.grid->step}};
  }
  j["counts"] = {{"trials", c.counts.trials}, {"mode", c.counts.mode}};
  return j;
}

}  // namespace cvq
