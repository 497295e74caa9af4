#include "dnls/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("initial_datum: bad value '" + text + "' for " + key);
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double squared_distance(const Vec3& x, double c, int dim) {
  double r2 = 0.0;
  for (int j = 0; j < dim; ++j) r2 += (x[j] - c) * (x[j] - c);
  return r2;
}

}  // namespace

ProfileSpec ProfileSpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  ProfileSpec spec;
  const auto open = text.find('(');
  const std::string name = trim(open == std::string::npos ? text : text.substr(0, open));
  std::string args;
  if (open != std::string::npos) {
    const auto close = text.rfind(')');
    if (close == std::string::npos || close < open || trim(text.substr(close + 1)) != "") {
      throw ConfigError("initial_datum: unbalanced parentheses in '" + raw + "'");
    }
    args = text.substr(open + 1, close - open - 1);
  }
  if (name == "gaussian") {
    spec.kind = Kind::kGaussian;
  } else if (name == "multi_bump") {
    spec.kind = Kind::kMultiBump;
  } else if (name == "random") {
    spec.kind = Kind::kRandom;
    spec.width = 2.0;
  } else if (name == "zero") {
    spec.kind = Kind::kZero;
  } else {
    throw ConfigError("initial_datum: unknown profile '" + name + "'");
  }

  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("initial_datum: expected key=value, got '" + item + "'");
    }
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    const double v = parse_number(key, value);
    if (key == "width" && spec.kind != Kind::kZero) {
      if (!(v > 0.0)) throw ConfigError("initial_datum: width must be positive");
      spec.width = v;
    } else if (key == "center" && spec.kind != Kind::kZero && spec.kind != Kind::kMultiBump) {
      spec.center = v;
    } else if (key == "amplitude" && spec.kind != Kind::kZero) {
      spec.amplitude = v;
    } else if (key == "count" && spec.kind == Kind::kMultiBump) {
      if (v < 1 || v != std::floor(v)) throw ConfigError("initial_datum: count must be >= 1");
      spec.count = static_cast<int>(v);
    } else if (key == "kmax" && spec.kind == Kind::kRandom) {
      if (v < 0 || v != std::floor(v)) throw ConfigError("initial_datum: kmax must be >= 0");
      spec.kmax = static_cast<int>(v);
    } else if (key == "seed" && spec.kind == Kind::kRandom) {
      if (v < 0 || v != std::floor(v)) throw ConfigError("initial_datum: seed must be >= 0");
      spec.seed = static_cast<std::uint64_t>(v);
      spec.seed_given = true;
    } else {
      throw ConfigError("initial_datum: key '" + key + "' not valid for " + name);
    }
  }
  return spec;
}

std::string ProfileSpec::to_string() const {
  switch (kind) {
    case Kind::kGaussian:
      return "gaussian(width=" + format_number(width) + ", center=" + format_number(center) +
             ", amplitude=" + format_number(amplitude) + ")";
    case Kind::kMultiBump:
      return "multi_bump(count=" + std::to_string(count) + ", width=" + format_number(width) +
             ", amplitude=" + format_number(amplitude) + ")";
    case Kind::kRandom:
      return "random(seed=" + std::to_string(seed) + ", kmax=" + std::to_string(kmax) +
             ", width=" + format_number(width) + ", center=" + format_number(center) +
             ", amplitude=" + format_number(amplitude) + ")";
    case Kind::kZero:
      return "zero";
  }
  return "zero";
}

LatticeField sample_profile(const ProfileSpec& spec, const LatticeGrid& grid) {
  const int d = grid.dim();
  const double L = grid.box_length();
  const double c = spec.center < 0.0 ? 0.5 * L : spec.center;
  const double w2 = 2.0 * spec.width * spec.width;
  LatticeField f(grid);
  switch (spec.kind) {
    case ProfileSpec::Kind::kZero:
      break;
    case ProfileSpec::Kind::kGaussian:
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = spec.amplitude * std::exp(-squared_distance(grid.position(i), c, d) / w2);
      }
      break;
    case ProfileSpec::Kind::kMultiBump:
      for (int b = 0; b < spec.count; ++b) {
        const double frac = spec.count == 1 ? 0.5 : 0.25 + 0.5 * b / (spec.count - 1.0);
        const double cb = frac * L;
        const double sign = b % 2 == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
          f[i] += sign * spec.amplitude * std::exp(-squared_distance(grid.position(i), cb, d) / w2);
        }
      }
      break;
    case ProfileSpec::Kind::kRandom: {
      // Separable product of per-axis random trigonometric sums under a Gaussian window.
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      const int modes = 2 * spec.kmax + 1;
      const double norm = 1.0 / std::sqrt(2.0 * modes);
      std::vector<std::vector<Complex>> coeffs(d, std::vector<Complex>(modes));
      for (int j = 0; j < d; ++j) {
        for (auto& a : coeffs[j]) {
          const double re = normal(rng);
          const double im = normal(rng);
          a = norm * Complex(re, im);
        }
      }
      const double dk = 2.0 * std::numbers::pi / L;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3 x = grid.position(i);
        Complex value = spec.amplitude * std::exp(-squared_distance(x, c, d) / w2);
        for (int j = 0; j < d; ++j) {
          Complex s = 0.0;
          for (int k = -spec.kmax; k <= spec.kmax; ++k) {
            const double phase = dk * k * (x[j] - c);
            s += coeffs[j][k + spec.kmax] * Complex(std::cos(phase), std::sin(phase));
          }
          value *= s;
        }
        f[i] = value;
      }
      break;
    }
  }
  return f;
}

std::vector<LatticeField> smooth_corpus(const LatticeGrid& grid, std::size_t count,
                                        std::uint64_t seed, int kmax, double width) {
  std::vector<LatticeField> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ProfileSpec spec;
    spec.kind = ProfileSpec::Kind::kRandom;
    spec.seed = seed + i;
    spec.kmax = kmax;
    spec.width = width;
    corpus.push_back(sample_profile(spec, grid));
  }
  return corpus;
}

std::vector<LatticeField> lattice_corpus(const LatticeGrid& grid, std::size_t count,
                                         std::uint64_t seed, std::size_t sites) {
  const std::size_t M = grid.points_per_axis();
  const int d = grid.dim();
  // Block side per axis so that the block holds about `sites` points.
  std::size_t side = sites;
  if (d > 1) {
    const double root = std::round(std::pow(static_cast<double>(sites), 1.0 / d));
    side = std::max<std::size_t>(2, static_cast<std::size_t>(root));
  }
  side = std::min(side, M / 2);
  std::size_t block = 1;
  for (int j = 0; j < d; ++j) block *= side;

  std::vector<LatticeField> corpus;
  corpus.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::mt19937_64 rng(seed + 7919 * n);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    LatticeField f(grid);
    for (std::size_t b = 0; b < block; ++b) {
      Index3 m{0, 0, 0};
      std::size_t rest = b;
      for (int j = 0; j < d; ++j) {
        m[j] = M / 2 + rest % side;
        rest /= side;
      }
      const double re = uniform(rng);
      const double im = uniform(rng);
      f[grid.ravel(m)] = Complex(re, im);
    }
    corpus.push_back(std::move(f));
  }
  return corpus;
}

}  // namespace dnls
