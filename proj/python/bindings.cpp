#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dnls/analysis.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/harness.hpp"
#include "dnls/lattice.hpp"
#include "dnls/transfer.hpp"

namespace py = pybind11;
using namespace dnls;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const LatticeGrid& g) {
  return std::vector<py::ssize_t>(static_cast<std::size_t>(g.dim()),
                                  static_cast<py::ssize_t>(g.points_per_axis()));
}

LatticeField to_field(const LatticeGrid& g, const CArray& a) {
  if (static_cast<std::size_t>(a.size()) != g.size()) {
    throw ParameterError("array has " + std::to_string(a.size()) + " values, grid has " +
                         std::to_string(g.size()));
  }
  return LatticeField(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

CArray to_array(const LatticeGrid& g, const std::vector<Complex>& v) {
  CArray out(shape_of(g));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

SymbolKind kind_of(const std::string& name) {
  if (name == "discrete") return SymbolKind::kDiscrete;
  if (name == "continuum") return SymbolKind::kContinuum;
  throw ParameterError("symbol kind must be 'discrete' or 'continuum'");
}

EvolutionParams make_params(double alpha, double p, double lambda, double dt, bool unsafe) {
  EvolutionParams params;
  params.alpha = alpha;
  params.p = p;
  params.lambda = lambda;
  params.dt = dt;
  params.unsafe = unsafe;
  return params;
}

py::dict check_dict(const CheckResult& c) {
  py::dict d;
  d["name"] = c.name;
  d["passed"] = c.passed;
  d["value"] = c.value;
  d["threshold"] = c.threshold;
  d["detail"] = c.detail;
  return d;
}

py::list checks_list(const std::vector<CheckResult>& checks) {
  py::list out;
  for (const auto& c : checks) out.append(check_dict(c));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice approximation of (fractional) NLS: grids, transforms, flows and experiments.";

  py::register_exception<Error>(m, "DnlsError");
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<LatticeGrid>(m, "LatticeGrid")
      .def(py::init<int, std::size_t, double>(), py::arg("dim"), py::arg("points"), py::arg("box_length"))
      .def_property_readonly("dim", &LatticeGrid::dim)
      .def_property_readonly("points", &LatticeGrid::points_per_axis)
      .def_property_readonly("spacing", &LatticeGrid::spacing)
      .def_property_readonly("box_length", &LatticeGrid::box_length)
      .def_property_readonly("size", &LatticeGrid::size)
      .def("__repr__", [](const LatticeGrid& g) {
        return "LatticeGrid(dim=" + std::to_string(g.dim()) + ", points=" +
               std::to_string(g.points_per_axis()) + ", box_length=" + std::to_string(g.box_length()) + ")";
      });

  m.def("dft", [](const LatticeGrid& g, const CArray& f) { return to_array(g, dft(to_field(g, f)).coeffs()); },
        py::arg("grid"), py::arg("values"), "h^d sum f(x) exp(-i x.xi) in FFT order.");
  m.def("idft",
        [](const LatticeGrid& g, const CArray& c) {
          SpectralField F(g, std::vector<Complex>(c.data(), c.data() + c.size()));
          return to_array(g, idft(F).values());
        },
        py::arg("grid"), py::arg("coeffs"));
  m.def("lp_norm", [](const LatticeGrid& g, const CArray& f, double p) { return lp_norm(to_field(g, f), p); },
        py::arg("grid"), py::arg("values"), py::arg("p"));
  m.def("apply_symbol",
        [](const LatticeGrid& g, const CArray& f, double alpha, double power, const std::string& kind) {
          return to_array(g, apply_symbol(to_field(g, f), DispersionSymbol(alpha, kind_of(kind)), power).values());
        },
        py::arg("grid"), py::arg("values"), py::arg("alpha"), py::arg("power") = 1.0,
        py::arg("kind") = "discrete");
  m.def("sobolev_norm",
        [](const LatticeGrid& g, const CArray& f, double s, bool homogeneous) {
          return sobolev_norm(to_field(g, f), s, homogeneous);
        },
        py::arg("grid"), py::arg("values"), py::arg("s"), py::arg("homogeneous") = false);

  m.def("evolve",
        [](const LatticeGrid& g, const CArray& u0, const std::vector<double>& times, double alpha, double p,
           double lambda, double dt, bool unsafe) {
          const EvolutionParams params = make_params(alpha, p, lambda, dt, unsafe);
          const Trajectory traj =
              evolve(to_field(g, u0), params, DispersionSymbol(alpha, SymbolKind::kDiscrete), times);
          py::list snaps;
          for (const auto& s : traj.snapshots) snaps.append(to_array(g, s.values()));
          return snaps;
        },
        py::arg("grid"), py::arg("u0"), py::arg("times"), py::arg("alpha") = 1.0, py::arg("p") = 3.0,
        py::arg("lam") = 0.0, py::arg("dt") = 1e-3, py::arg("unsafe") = false,
        "Strang splitting; returns one array per snapshot time.");
  m.def("conserved",
        [](const LatticeGrid& g, const CArray& f, double alpha, double p, double lambda) {
          const auto q = conserved(to_field(g, f), make_params(alpha, p, lambda, 1e-3, true));
          return py::make_tuple(q.mass, q.energy);
        },
        py::arg("grid"), py::arg("values"), py::arg("alpha") = 1.0, py::arg("p") = 3.0, py::arg("lam") = 0.0,
        "(mass, energy)");

  m.def("interpolation_symbol",
        [](const LatticeGrid& g, const std::vector<double>& xi) {
          Vec3 v{0, 0, 0};
          for (std::size_t j = 0; j < xi.size() && j < 3; ++j) v[j] = xi[j];
          return interpolation_symbol(g, v);
        },
        py::arg("grid"), py::arg("xi"));
  m.def("kernel_eval",
        [](double N, double t, double h, double alpha, double x, double tol) {
          return kernel_eval(N, t, LatticeGrid::with_spacing(1, 8, h), alpha, x, tol);
        },
        py::arg("N"), py::arg("t"), py::arg("h"), py::arg("alpha"), py::arg("x"), py::arg("tol") = 1e-8);
  m.def("kernel_sup",
        [](double N, double t, double h, double alpha) {
          const KernelSup s = kernel_sup(N, t, h, alpha);
          return py::make_tuple(s.x_at_sup, s.sup);
        },
        py::arg("N"), py::arg("t"), py::arg("h"), py::arg("alpha"), "(x at the sup, sup |K|)");
  m.def("decay_fit",
        [](const std::vector<double>& t, const std::vector<double>& v) {
          const DecayFit f = decay_fit(t, v);
          return py::make_tuple(f.exponent, f.prefactor, f.residual);
        },
        py::arg("t"), py::arg("values"));
  m.def("qstar", &qstar, py::arg("dim"), py::arg("alpha"), py::arg("delta"));
  m.def("max_phase_gap_ratio", &max_phase_gap_ratio, py::arg("grid"), py::arg("alpha"), py::arg("t"));

  m.def("config_hash",
        [](const std::string& text) { return ExperimentConfig::parse(text).hash_hex(); }, py::arg("text"));
  m.def("run_convergence",
        [](const std::string& text, const std::string& out) {
          const auto cfg = ExperimentConfig::parse(text);
          ConvergenceReport report;
          {
            py::gil_scoped_release release;
            report = run_convergence(cfg);
          }
          if (!out.empty()) write_convergence(report, out);
          py::dict d;
          d["config_hash"] = report.config_hash;
          d["times"] = report.times;
          py::list rows;
          for (const auto& r : report.rows) {
            py::dict row;
            row["points"] = r.points;
            row["h"] = r.h;
            row["errors"] = r.errors;
            row["ok"] = r.ok;
            rows.append(row);
          }
          d["rows"] = rows;
          py::list rates;
          for (const auto& f : report.fits) rates.append(f.rate ? py::cast(*f.rate) : py::none());
          d["rates"] = rates;
          d["flags"] = report.flags;
          d["checks"] = checks_list(report.checks);
          return d;
        },
        py::arg("config_text"), py::arg("out_dir") = "",
        "Convergence sweep from config text; writes the report files when out_dir is given.");
  m.def("run_checks",
        [](std::uint64_t seed) {
          CheckOptions options;
          options.seed = seed;
          CheckSummary summary;
          {
            py::gil_scoped_release release;
            summary = run_checks(options);
          }
          return checks_list(summary.checks);
        },
        py::arg("seed") = 0);
}
