#include "pathgroup/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pathgroup/harness/jacobian.hpp"
#include "pathgroup/rng.hpp"
#include "pathgroup/sampling.hpp"

namespace pathgroup::harness {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& s) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: '" + s + "'");
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  for (const auto& item : split_list(s)) out.push_back(parse_number<T>(item));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment", [](ExperimentConfig& c, const std::string& v) { c.experiment = v; }},
      {"dim", [](ExperimentConfig& c, const std::string& v) { c.dim = parse_number<int>(v); }},
      {"n_list", [](ExperimentConfig& c, const std::string& v) { c.n_list = parse_list<int>(v); }},
      {"alpha", [](ExperimentConfig& c, const std::string& v) { c.alpha = parse_number<double>(v); }},
      {"scale", [](ExperimentConfig& c, const std::string& v) { c.scale = parse_number<double>(v); }},
      {"g_intervals",
       [](ExperimentConfig& c, const std::string& v) { c.g_intervals = parse_number<int>(v); }},
      {"g_coords",
       [](ExperimentConfig& c, const std::string& v) { c.g_coords = parse_list<double>(v); }},
      {"g_seed",
       [](ExperimentConfig& c, const std::string& v) { c.g_seed = parse_number<std::uint64_t>(v); }},
      {"g_norm",
       [](ExperimentConfig& c, const std::string& v) {
         c.g_norm = parse_number<double>(v);
         c.g_norm_set = true;
       }},
      {"samples", [](ExperimentConfig& c, const std::string& v) { c.samples = parse_number<int>(v); }},
      {"escape_samples",
       [](ExperimentConfig& c, const std::string& v) { c.escape_samples = parse_number<int>(v); }},
      {"seed",
       [](ExperimentConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>(v); }},
      {"refinement",
       [](ExperimentConfig& c, const std::string& v) { c.refinement = parse_number<int>(v); }},
      {"quad_points",
       [](ExperimentConfig& c, const std::string& v) { c.quad_points = parse_number<int>(v); }},
      {"witnesses",
       [](ExperimentConfig& c, const std::string& v) { c.witnesses = parse_number<int>(v); }},
      {"angle_eps",
       [](ExperimentConfig& c, const std::string& v) { c.angle_eps = parse_list<double>(v); }},
      {"jacobian_points",
       [](ExperimentConfig& c, const std::string& v) { c.jacobian_points = parse_number<int>(v); }},
      {"jacobian_intervals",
       [](ExperimentConfig& c, const std::string& v) { c.jacobian_intervals = parse_number<int>(v); }},
      {"jacobian_radius",
       [](ExperimentConfig& c, const std::string& v) { c.jacobian_radius = parse_number<double>(v); }},
      {"jacobian_step",
       [](ExperimentConfig& c, const std::string& v) { c.jacobian_step = parse_number<double>(v); }},
      {"threads", [](ExperimentConfig& c, const std::string& v) { c.threads = parse_number<int>(v); }},
      {"format", [](ExperimentConfig& c, const std::string& v) { c.format = parse_format(v); }},
      {"output", [](ExperimentConfig& c, const std::string& v) { c.output = v; }},
      {"fault_exp_scale",
       [](ExperimentConfig& c, const std::string& v) { c.fault_exp_scale = parse_number<double>(v); }},
  };
  return table;
}

}  // namespace

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json" || text == "jsonl") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void ExperimentConfig::validate() const {
  static const std::set<std::string> known = {"verify", "invariance", "concentration", "jacobian"};
  if (!known.contains(experiment)) throw ConfigError("unknown experiment '" + experiment + "'");
  if (dim < 2) throw ConfigError("dim must be at least 2");
  if (n_list.empty()) throw ConfigError("n_list is empty");
  for (int n : n_list) {
    if (n < 1) throw ConfigError("n_list entries must be positive");
  }
  if (!(alpha > 0.5 && alpha < 1.0)) throw ConfigError("alpha must lie in (1/2, 1)");
  if (!(scale > 0.0)) throw ConfigError("scale must be positive");
  if (g_intervals < 1) throw ConfigError("g_intervals must be positive");
  if (!g_coords.empty() &&
      static_cast<int>(g_coords.size()) != algebra_dimension(dim) * g_intervals) {
    throw ConfigError("g_coords must hold d_k * g_intervals = " +
                      std::to_string(algebra_dimension(dim) * g_intervals) + " values");
  }
  if (g_norm < 0.0) throw ConfigError("g_norm must be nonnegative");
  if (experiment == "invariance" || experiment == "concentration") {
    for (int n : n_list) {
      if (n % g_intervals != 0) {
        throw ConfigError("N = " + std::to_string(n) + " is not a multiple of g_intervals = " +
                          std::to_string(g_intervals));
      }
    }
  }
  if (samples < 1 || escape_samples < 1) throw ConfigError("sample counts must be positive");
  if (refinement < 1) throw ConfigError("refinement must be positive");
  if (quad_points < 1) throw ConfigError("quad_points must be positive");
  if (witnesses < 0) throw ConfigError("witnesses must be nonnegative");
  if (angle_eps.empty()) throw ConfigError("angle_eps is empty");
  if (jacobian_points < 1 || jacobian_intervals < 1) {
    throw ConfigError("jacobian_points and jacobian_intervals must be positive");
  }
  if (!(jacobian_radius > 0.0) || !(jacobian_step > 0.0)) {
    throw ConfigError("jacobian_radius and jacobian_step must be positive");
  }
  if ((experiment == "jacobian" || experiment == "verify") &&
      algebra_dimension(dim) * jacobian_intervals > kJacobianCoordinateCap) {
    throw ConfigError("jacobian_intervals too large: d_k * N must be at most " +
                      std::to_string(kJacobianCoordinateCap));
  }
  if (threads < 1) throw ConfigError("threads must be positive");
}

StepPath ExperimentConfig::coarse_g() const {
  const int dk = algebra_dimension(dim);
  if (!g_coords.empty()) {
    StepPath g = StepPath::from_coordinates(dim, g_intervals, g_coords);
    if (g_norm_set) {
      const double n = l2_norm(g);
      if (n > 0.0) g *= g_norm / n;
    }
    return g;
  }
  // Every interval value has HS norm g_norm, so ||g||_2 = ||g||_inf = g_norm.
  std::vector<AlgebraVector> values;
  values.reserve(static_cast<std::size_t>(g_intervals));
  for (int i = 0; i < g_intervals; ++i) {
    auto rng = make_stream(g_seed, static_cast<std::uint64_t>(i));
    auto dir = sample_sphere_coordinates(rng, dk);
    for (double& x : dir) x *= g_norm;
    values.push_back(AlgebraVector::from_coordinates(dim, dir));
  }
  return StepPath(std::move(values));
}

StepPath ExperimentConfig::g_on(int intervals) const {
  if (intervals % g_intervals != 0) {
    throw ConfigError("g is not representable on N = " + std::to_string(intervals) +
                      " (g_intervals = " + std::to_string(g_intervals) + ")");
  }
  return refine(coarse_g(), intervals / g_intervals);
}

std::string ExperimentConfig::canonical_text() const {
  std::map<std::string, std::string> kv = {
      {"experiment", experiment},
      {"dim", std::to_string(dim)},
      {"n_list", join(n_list)},
      {"alpha", fmt(alpha)},
      {"scale", fmt(scale)},
      {"g_intervals", std::to_string(g_intervals)},
      {"g_coords", join(g_coords)},
      {"g_seed", std::to_string(g_seed)},
      {"g_norm", fmt(g_norm) + (g_norm_set ? "" : "(default)")},
      {"samples", std::to_string(samples)},
      {"escape_samples", std::to_string(escape_samples)},
      {"seed", std::to_string(seed)},
      {"refinement", std::to_string(refinement)},
      {"quad_points", std::to_string(quad_points)},
      {"witnesses", std::to_string(witnesses)},
      {"angle_eps", join(angle_eps)},
      {"jacobian_points", std::to_string(jacobian_points)},
      {"jacobian_intervals", std::to_string(jacobian_intervals)},
      {"jacobian_radius", fmt(jacobian_radius)},
      {"jacobian_step", fmt(jacobian_step)},
      {"fault_exp_scale", fmt(fault_exp_scale)},
  };
  // threads, format and output do not affect results and are left out.
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical_text()); }

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "concentration") {
    c.n_list = {16, 64, 256};
    c.samples = 2000;
  }
  return c;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      it->second(base, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + key + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace pathgroup::harness
