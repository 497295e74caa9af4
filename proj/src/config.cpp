#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/harness.hpp"

namespace dnls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
}

long long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += num(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"dimension", [&](auto& k, auto& v) { cfg.dimension = static_cast<int>(to_integer(k, v)); }},
      {"alpha", [&](auto& k, auto& v) { cfg.alpha = to_double(k, v); }},
      {"p", [&](auto& k, auto& v) { cfg.p = to_double(k, v); }},
      {"lambda", [&](auto& k, auto& v) { cfg.lambda = to_double(k, v); }},
      {"box_length", [&](auto& k, auto& v) { cfg.box_length = to_double(k, v); }},
      {"grid_sizes",
       [&](auto& k, auto& v) {
         cfg.grid_sizes.clear();
         for (const auto& item : split_list(v)) {
           const long long n = to_integer(k, item);
           if (n <= 0) throw ConfigError(k + ": sizes must be positive");
           cfg.grid_sizes.push_back(static_cast<std::size_t>(n));
         }
       }},
      {"reference_multiplier",
       [&](auto& k, auto& v) { cfg.reference_multiplier = static_cast<int>(to_integer(k, v)); }},
      {"dt",
       [&](auto& k, auto& v) {
         if (v == "auto") {
           cfg.dt.reset();
         } else {
           cfg.dt = to_double(k, v);
         }
       }},
      {"horizon", [&](auto& k, auto& v) { cfg.horizon = to_double(k, v); }},
      {"snapshot_times", [&](auto& k, auto& v) { cfg.snapshot_times = to_doubles(k, v); }},
      {"initial_datum", [&](auto&, auto& v) { cfg.initial_datum = ProfileSpec::parse(v); }},
      {"delta", [&](auto& k, auto& v) { cfg.delta = to_double(k, v); }},
      {"output_dir", [&](auto&, auto& v) { cfg.output_dir = v; }},
      {"seed",
       [&](auto& k, auto& v) {
         const long long s = to_integer(k, v);
         if (s < 0) throw ConfigError("seed must be nonnegative");
         cfg.seed = static_cast<std::uint64_t>(s);
       }},
      {"workers", [&](auto& k, auto& v) { cfg.workers = static_cast<int>(to_integer(k, v)); }},
      {"unsafe_params", [&](auto& k, auto& v) { cfg.unsafe_params = to_bool(k, v); }},
      {"dt_check", [&](auto& k, auto& v) { cfg.dt_check = to_bool(k, v); }},
      {"kernel_alphas", [&](auto& k, auto& v) { cfg.kernel_alphas = to_doubles(k, v); }},
      {"kernel_bands", [&](auto& k, auto& v) { cfg.kernel_bands = to_doubles(k, v); }},
      {"kernel_spacing", [&](auto& k, auto& v) { cfg.kernel_spacing = to_double(k, v); }},
      {"kernel_t_min", [&](auto& k, auto& v) { cfg.kernel_t_min = to_double(k, v); }},
      {"kernel_t_max", [&](auto& k, auto& v) { cfg.kernel_t_max = to_double(k, v); }},
      {"kernel_samples",
       [&](auto& k, auto& v) { cfg.kernel_samples = static_cast<int>(to_integer(k, v)); }},
      {"corpus_size",
       [&](auto& k, auto& v) { cfg.corpus_size = static_cast<int>(to_integer(k, v)); }},
      {"strichartz_window", [&](auto& k, auto& v) { cfg.strichartz_window = to_double(k, v); }},
  };

  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(number) + ": key '" + key + "' repeated");
    }
    it->second(key, value);
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void ExperimentConfig::validate() const {
  if (dimension < 1 || dimension > 3) throw ConfigError("dimension must be 1, 2 or 3");
  if (!(box_length > 0.0)) throw ConfigError("box_length must be positive");
  if (grid_sizes.empty()) throw ConfigError("grid_sizes must not be empty");
  for (std::size_t i = 0; i < grid_sizes.size(); ++i) {
    if (!is_power_of_two(grid_sizes[i]) || grid_sizes[i] < 8) {
      throw ConfigError("grid_sizes must be powers of two >= 8");
    }
    if (i > 0 && grid_sizes[i] <= grid_sizes[i - 1]) {
      throw ConfigError("grid_sizes must be strictly increasing");
    }
  }
  if (reference_multiplier != 2 && reference_multiplier != 4 && reference_multiplier != 8) {
    throw ConfigError("reference_multiplier must be 2, 4 or 8");
  }
  const double ref_points =
      std::pow(static_cast<double>(grid_sizes.back() * reference_multiplier), dimension);
  if (ref_points > 16777216.0) {
    throw ConfigError("reference grid exceeds 2^24 sites; reduce grid_sizes or dimension");
  }
  if (dt && !(*dt > 0.0)) throw ConfigError("dt must be positive or auto");
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (snapshot_times.empty() || snapshot_times.front() != 0.0) {
    throw ConfigError("snapshot_times must start at 0");
  }
  for (std::size_t i = 1; i < snapshot_times.size(); ++i) {
    if (!(snapshot_times[i] > snapshot_times[i - 1])) {
      throw ConfigError("snapshot_times must be strictly increasing");
    }
  }
  if (snapshot_times.back() > horizon * (1.0 + 1e-12)) {
    throw ConfigError("snapshot_times must not exceed the horizon");
  }
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(kernel_spacing > 0.0)) throw ConfigError("kernel_spacing must be positive");
  if (!(kernel_t_min > 0.0) || !(kernel_t_max > kernel_t_min)) {
    throw ConfigError("kernel time window must satisfy 0 < kernel_t_min < kernel_t_max");
  }
  if (kernel_samples < 2) throw ConfigError("kernel_samples must be >= 2");
  if (corpus_size < 1) throw ConfigError("corpus_size must be >= 1");
  if (!(strichartz_window > 0.0)) throw ConfigError("strichartz_window must be positive");

  EvolutionParams params;
  params.alpha = alpha;
  params.p = p;
  params.lambda = lambda;
  params.dt = effective_dt();
  params.horizon = horizon;
  params.unsafe = unsafe_params;
  try {
    params.validate(dimension);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

double ExperimentConfig::effective_dt() const {
  if (dt) return *dt;
  const double h_min = box_length / static_cast<double>(grid_sizes.empty() ? 8 : grid_sizes.back());
  return std::min(1e-3, h_min * h_min);
}

std::string ExperimentConfig::canonical() const {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  line("dimension", std::to_string(dimension));
  line("alpha", num(alpha));
  line("p", num(p));
  line("lambda", num(lambda));
  line("box_length", num(box_length));
  line("grid_sizes", join(grid_sizes));
  line("reference_multiplier", std::to_string(reference_multiplier));
  line("dt", dt ? num(*dt) : "auto");
  line("horizon", num(horizon));
  line("snapshot_times", join(snapshot_times));
  line("initial_datum", initial_datum.to_string());
  line("delta", num(delta));
  line("seed", std::to_string(seed));
  line("unsafe_params", unsafe_params ? "true" : "false");
  line("dt_check", dt_check ? "true" : "false");
  line("kernel_alphas", join(kernel_alphas));
  line("kernel_bands", join(kernel_bands));
  line("kernel_spacing", num(kernel_spacing));
  line("kernel_t_min", num(kernel_t_min));
  line("kernel_t_max", num(kernel_t_max));
  line("kernel_samples", std::to_string(kernel_samples));
  line("corpus_size", std::to_string(corpus_size));
  line("strichartz_window", num(strichartz_window));
  return out;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

std::string ExperimentConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

}  // namespace dnls
