#include "qgossip/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qgossip/error.hpp"

namespace qgossip {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(const std::string& key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad integer for '" + key + "': '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(const std::string& key, std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigError("bad number for '" + key + "': '" + s + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      // graph
      "topology", "n", "rows", "cols", "radius", "edge_probs",
      // quantizer
      "quantizer", "quantizer_step",
      // dynamics
      "rule", "init", "seed",
      // simulation
      "max_steps", "record_trace", "trace_stride", "trials", "threads",
      // experiments
      "sizes", "intervals", "steps", "horizon",
  };
  return keys;
}

Config Config::parse(std::string_view text, std::string_view origin) {
  Config cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    cfg.set(key, std::string(trim(line.substr(eq + 1))));
    if (end == text.size()) break;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void Config::set(const std::string& key, std::string value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError("unknown config key '" + key + "'");
  }
  if (value.empty()) throw ConfigError("empty value for '" + key + "'");
  values_[key] = std::move(value);
}

void Config::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
  const auto v = get(key);
  return v ? parse_integer<std::size_t>(key, *v) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  return v ? parse_integer<std::uint64_t>(key, *v) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? parse_real(key, *v) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError("bad boolean for '" + key + "': '" + *v + "'");
}

std::vector<std::size_t> Config::get_size_list(const std::string& key,
                                               std::vector<std::size_t> fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::vector<std::size_t> out;
  for (auto part : split(*v, ',')) out.push_back(parse_integer<std::size_t>(key, part));
  return out;
}

std::vector<std::pair<double, double>> Config::get_intervals(
    const std::string& key, std::vector<std::pair<double, double>> fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::vector<std::pair<double, double>> out;
  for (auto part : split(*v, ',')) {
    const auto bounds = split(part, ':');
    if (bounds.size() != 2) throw ConfigError("bad interval '" + std::string(part) + "'");
    const double lo = parse_real(key, bounds[0]);
    const double hi = parse_real(key, bounds[1]);
    if (!(lo <= hi)) throw ConfigError("empty interval '" + std::string(part) + "'");
    out.emplace_back(lo, hi);
  }
  return out;
}

std::string Config::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

GraphSpec graph_spec_from(const Config& cfg) {
  GraphSpec spec;
  try {
    spec.topology = parse_topology(cfg.get_string("topology", "complete"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  spec.n = cfg.get_size("n", spec.n);
  spec.rows = cfg.get_size("rows", spec.rows);
  spec.cols = cfg.get_size("cols", spec.cols);
  spec.radius = cfg.get_double("radius", spec.radius);
  const std::string probs = cfg.get_string("edge_probs", "uniform");
  if (probs == "uniform") {
    spec.edge_probs.clear();
  } else if (probs.rfind("file:", 0) == 0 && probs.size() > 5) {
    spec.edge_probs = probs.substr(5);
  } else {
    throw ConfigError("edge_probs must be 'uniform' or 'file:<path>'");
  }
  return spec;
}

TrialConfig trial_config_from(const Config& cfg) {
  TrialConfig tc;
  tc.graph = graph_spec_from(cfg);
  try {
    tc.rule = parse_rule(cfg.get_string("rule", "compensating"));
    tc.quantizer = parse_quantizer(cfg.get_string("quantizer", "det"),
                                   cfg.get_double("quantizer_step", 1.0));
    tc.init = parse_init(cfg.get_string("init", "uniform:-100:100"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  tc.seed = cfg.get_u64("seed", tc.seed);
  tc.max_steps = cfg.get_size("max_steps", 0);
  tc.record_trace = cfg.get_bool("record_trace", false);
  tc.trace_stride = cfg.get_size("trace_stride", 1);
  try {
    tc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return tc;
}

}  // namespace qgossip
