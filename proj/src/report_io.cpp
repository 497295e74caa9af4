#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "dnls/errors.hpp"
#include "dnls/field_io.hpp"
#include "dnls/harness.hpp"

namespace dnls {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "dnls-report/1";

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// NaN and infinities are not valid JSON numbers.
ordered_json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <class T>
ordered_json jopt(const std::optional<T>& v) {
  if (!v) return nullptr;
  return jnum(*v);
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / name).string());
  return out;
}

void write_json(const ordered_json& j, const std::filesystem::path& dir, const std::string& name) {
  auto out = open_out(dir, name);
  out << j.dump(2) << '\n';
}

ordered_json checks_json(const std::vector<CheckResult>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"value", jnum(c.value)},
                   {"threshold", jnum(c.threshold)},
                   {"detail", c.detail}});
  }
  return arr;
}

void write_conservation(const std::vector<DiagnosticsRow>& rows, const std::filesystem::path& dir) {
  auto out = open_out(dir, "conservation.csv");
  out << "t,mass,energy,linf_norm,h_alpha_norm\n";
  for (const auto& r : rows) {
    out << num(r.t) << ',' << num(r.mass) << ',' << num(r.energy) << ',' << num(r.linf_norm) << ','
        << num(r.h_alpha_norm) << '\n';
  }
}

}  // namespace

bool CheckSummary::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void write_convergence(const ConvergenceReport& report, const std::filesystem::path& dir) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json errors = ordered_json::array();
    for (double e : r.errors) errors.push_back(jnum(e));
    rows.push_back({{"points", r.points},
                    {"h", r.h},
                    {"errors", errors},
                    {"mass_drift", jnum(r.mass_drift)},
                    {"ok", r.ok},
                    {"failure", r.failure}});
  }
  ordered_json fits = ordered_json::array();
  for (const auto& f : report.fits) {
    fits.push_back({{"t", f.t},
                    {"rate", jopt(f.rate)},
                    {"prefactor", jopt(f.prefactor)},
                    {"residual", jnum(f.residual)},
                    {"levels_used", f.levels_used},
                    {"coarsest_excluded", f.coarsest_excluded}});
  }
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "convergence";
  j["config_hash"] = report.config_hash;
  j["config"] = report.canonical_config;
  j["times"] = report.times;
  j["initial_l2"] = jnum(report.initial_l2);
  j["theory_rate"] = jnum(report.theory_rate);
  j["rows"] = rows;
  j["fits"] = fits;
  j["joint_fit"] = {{"A", jopt(report.fit_A)},
                    {"B", jopt(report.fit_B)},
                    {"rate", jopt(report.fit_rate)},
                    {"residual", jnum(report.fit_residual)}};
  j["degenerate_input"] = report.degenerate_input;
  ordered_json ratios = ordered_json::array();
  for (double r : report.reference_boundary_ratios) ratios.push_back(jnum(r));
  j["reference"] = {{"boundary_ratios", ratios}, {"mass_drift", jnum(report.reference_mass_drift)}};
  j["flags"] = report.flags;
  j["checks"] = checks_json(report.checks);
  write_json(j, dir, "report.json");

  auto out = open_out(dir, "errors.csv");
  out << "h,t,l2_error\n";
  for (const auto& r : report.rows) {
    for (std::size_t k = 0; k < report.times.size(); ++k) {
      out << num(r.h) << ',' << num(report.times[k]) << ',' << num(r.errors[k]) << '\n';
    }
  }
  for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
    if (it->ok) {
      write_conservation(it->diagnostics, dir);
      break;
    }
  }
}

void write_evolve(const EvolveReport& report, const std::filesystem::path& dir) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "evolve";
  j["config_hash"] = report.config_hash;
  j["config"] = report.canonical_config;
  j["points"] = report.points;
  j["mass_drift"] = jnum(report.mass_drift);
  j["energy_drift"] = jnum(report.energy_drift);
  j["checks"] = checks_json(report.checks);
  write_json(j, dir, "report.json");
  write_conservation(report.diagnostics, dir);
  if (report.final_state) {
    write_field_csv(*report.final_state, dir / ("trajectory-" + report.config_hash + "-M" +
                                                std::to_string(report.points) + ".csv"));
  }
}

void write_kernel(const KernelReport& report, const std::filesystem::path& dir) {
  ordered_json series = ordered_json::array();
  for (const auto& s : report.series) {
    series.push_back({{"alpha", s.alpha},
                      {"N", s.N},
                      {"h", s.h},
                      {"exponent", jnum(s.exponent)},
                      {"prefactor", jnum(s.prefactor)},
                      {"residual", jnum(s.residual)},
                      {"expected_exponent", s.expected_exponent},
                      {"resonant", s.resonant}});
  }
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "kernel";
  j["config_hash"] = report.config_hash;
  j["series"] = series;
  j["checks"] = checks_json(report.checks);
  write_json(j, dir, "report.json");

  auto out = open_out(dir, "kernel.csv");
  out << "N,h,alpha,t,x,re,im\n";
  for (const auto& s : report.series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      out << num(s.N) << ',' << num(s.h) << ',' << num(s.alpha) << ',' << num(s.t[i]) << ','
          << num(s.x_at_sup[i]) << ',' << num(s.value_at_sup[i].real()) << ','
          << num(s.value_at_sup[i].imag()) << '\n';
    }
  }
  auto fits = open_out(dir, "kernel_fits.csv");
  fits << "N,h,alpha,exponent,prefactor,residual\n";
  for (const auto& s : report.series) {
    fits << num(s.N) << ',' << num(s.h) << ',' << num(s.alpha) << ',' << num(s.exponent) << ','
         << num(s.prefactor) << ',' << num(s.residual) << '\n';
  }
}

void write_norms(const NormsReport& report, const std::filesystem::path& dir) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "norms";
  j["config_hash"] = report.config_hash;
  j["checks"] = checks_json(report.checks);
  write_json(j, dir, "report.json");

  auto out = open_out(dir, "strichartz.csv");
  out << "alpha,q,r,resonance,h,quotient\n";
  for (const auto& r : report.strichartz) {
    out << num(r.alpha) << ',' << num(r.q) << ',' << (std::isinf(r.r) ? "inf" : num(r.r)) << ','
        << (r.resonance ? 1 : 0) << ',' << num(r.h) << ',' << num(r.quotient) << '\n';
  }
}

void write_checks(const CheckSummary& summary, const std::filesystem::path& dir) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "check";
  j["all_passed"] = summary.all_passed();
  j["checks"] = checks_json(summary.checks);
  write_json(j, dir, "report.json");
}

}  // namespace dnls
