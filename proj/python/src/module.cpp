#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <sstream>

#include "pseudoplap/barrier.hpp"
#include "pseudoplap/harness.hpp"
#include "pseudoplap/operator.hpp"
#include "pseudoplap/presets.hpp"
#include "pseudoplap/regularity.hpp"
#include "pseudoplap/solver.hpp"
#include "pseudoplap/sweeps.hpp"

namespace py = pybind11;
using namespace pseudoplap;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Python-side handle: grids are shared and immutable.
struct PyGrid {
  GridPtr grid;
};

DomainShape shape_of(const std::string& s) {
  if (s == "ball") return DomainShape::ball;
  if (s == "cube") return DomainShape::cube;
  throw py::value_error("shape must be 'ball' or 'cube', got '" + s + "'");
}

OperatorForm form_of(const std::string& s) {
  if (s == "divergence") return OperatorForm::divergence;
  if (s == "nondivergence") return OperatorForm::nondivergence;
  throw py::value_error("form must be 'divergence' or 'nondivergence', got '" + s + "'");
}

ScalarField to_field(const PyGrid& g, const Array& a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != g.grid->size()) {
    throw py::value_error("expected a 1-D array with " + std::to_string(g.grid->size()) + " entries");
  }
  return ScalarField(g.grid, std::vector<double>(a.data(), a.data() + a.shape(0)));
}

Array to_array(const ScalarField& f) {
  Array out(static_cast<py::ssize_t>(f.size()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

// Dirichlet data given as a full-size array: boundary entries are looked up by position.
BoundaryFunction boundary_from(const PyGrid& g, const Array& values) {
  const ScalarField field = to_field(g, values);
  auto table = std::make_shared<std::map<Point, double>>();
  for (std::size_t i = 0; i < g.grid->size(); ++i) {
    if (g.grid->node_class(i) != NodeClass::boundary) continue;
    if (!field.is_set(i)) throw py::value_error("boundary value missing at " + g.grid->describe(i));
    (*table)[g.grid->position(i)] = field[i];
  }
  return [table](const Point& x) {
    const auto it = table->find(x);
    if (it == table->end()) throw std::out_of_range("boundary lookup outside the grid");
    return it->second;
  };
}

py::dict summary_dict(const SweepSummary& s) {
  py::dict d;
  d["samples"] = s.samples;
  d["violations"] = s.violations;
  d["worst_relative_slack"] = s.worst_relative_slack;
  d["passed"] = s.passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-p-Laplacian numerical lab";
  m.attr("__version__") = PSEUDOPLAP_VERSION;

  py::class_<PyGrid>(m, "Grid")
      .def(py::init([](int dimension, int n, const std::string& shape) {
             return PyGrid{make_grid({dimension, n, shape_of(shape)})};
           }),
           py::arg("dimension"), py::arg("n"), py::arg("shape") = "ball")
      .def_property_readonly("dimension", [](const PyGrid& g) { return g.grid->spec().dimension; })
      .def_property_readonly("n", [](const PyGrid& g) { return g.grid->spec().nodes_per_axis; })
      .def_property_readonly("h", [](const PyGrid& g) { return g.grid->h(); })
      .def_property_readonly("size", [](const PyGrid& g) { return g.grid->size(); })
      .def("positions",
           [](const PyGrid& g) {
             const int N = g.grid->spec().dimension;
             py::array_t<double> out({static_cast<py::ssize_t>(g.grid->size()), static_cast<py::ssize_t>(N)});
             auto v = out.mutable_unchecked<2>();
             for (std::size_t i = 0; i < g.grid->size(); ++i) {
               const Point x = g.grid->position(i);
               for (int k = 0; k < N; ++k) v(i, k) = x[k];
             }
             return out;
           })
      .def("node_classes",
           [](const PyGrid& g) {
             py::array_t<std::uint8_t> out(static_cast<py::ssize_t>(g.grid->size()));
             for (std::size_t i = 0; i < g.grid->size(); ++i) {
               out.mutable_data()[i] = static_cast<std::uint8_t>(g.grid->node_class(i));
             }
             return out;
           },
           "0 = interior, 1 = boundary, 2 = exterior")
      .def("__repr__", [](const PyGrid& g) {
        const auto& s = g.grid->spec();
        return "Grid(dimension=" + std::to_string(s.dimension) + ", n=" + std::to_string(s.nodes_per_axis) +
               ", shape='" + to_string(s.shape) + "')";
      });

  m.def(
      "rhs_preset",
      [](const PyGrid& g, const std::string& kind, double c, double sigma, int cells, std::uint64_t seed,
         std::uint64_t stream) {
        const auto k = parse_rhs_kind(kind);
        if (!k) throw py::value_error("unknown rhs kind '" + kind + "'");
        return to_array(make_rhs(g.grid, {*k, c, sigma, cells, seed, stream}));
      },
      py::arg("grid"), py::arg("kind"), py::arg("c") = 1.0, py::arg("sigma") = 0.25, py::arg("cells") = 4,
      py::arg("seed") = 0, py::arg("stream") = 0);

  m.def(
      "boundary_preset",
      [](const PyGrid& g, const std::string& kind, double p, double c, double slope, std::uint64_t seed) {
        const auto k = parse_boundary_kind(kind);
        if (!k) throw py::value_error("unknown boundary kind '" + kind + "'");
        const BoundaryFunction fn = make_boundary({*k, c, slope, seed, 1}, g.grid->spec().dimension, p);
        ScalarField out(g.grid);
        for (std::size_t i = 0; i < g.grid->size(); ++i) {
          if (g.grid->node_class(i) == NodeClass::boundary) out[i] = fn(g.grid->position(i));
        }
        return to_array(out);
      },
      py::arg("grid"), py::arg("kind"), py::arg("p") = 3.0, py::arg("c") = 0.0, py::arg("slope") = 1.0,
      py::arg("seed") = 0, "Full-size array with values on boundary nodes, NaN elsewhere.");

  m.def(
      "solve",
      [](const PyGrid& g, double p, const Array& f, const Array& boundary, double grad_tol, long max_iters,
         const std::string& direction) {
        SolveConfig cfg;
        cfg.grad_tol = grad_tol;
        cfg.max_iters = max_iters;
        if (direction == "steepest") {
          cfg.direction = DescentDirection::steepest;
        } else if (direction != "polak_ribiere") {
          throw py::value_error("direction must be 'polak_ribiere' or 'steepest'");
        }
        const EnergyProblem prob(g.grid, p, to_field(g, f), boundary_from(g, boundary));
        std::optional<SolveResult> solved;
        {
          py::gil_scoped_release release;
          solved.emplace(solve_dirichlet(prob, cfg));
        }
        const SolveResult& res = *solved;
        py::dict d;
        d["u"] = to_array(res.u);
        d["converged"] = res.report.converged;
        d["iterations"] = res.report.iterations;
        d["final_energy"] = res.report.final_energy;
        d["final_grad_sup"] = res.report.final_grad_sup;
        d["divergence_residual"] = res.report.divergence_residual;
        return d;
      },
      py::arg("grid"), py::arg("p"), py::arg("f"), py::arg("boundary"), py::arg("grad_tol") = 1e-8,
      py::arg("max_iters") = 200000, py::arg("direction") = "polak_ribiere",
      "Minimise the discrete energy; `boundary` is a full-size array read on boundary nodes.");

  m.def(
      "apply",
      [](const PyGrid& g, const Array& u, double p, const std::string& form) {
        return to_array(apply(to_field(g, u), p, form_of(form)));
      },
      py::arg("grid"), py::arg("u"), py::arg("p"), py::arg("form") = "divergence");

  m.def(
      "lipschitz_seminorm", [](const PyGrid& g, const Array& u, double r) { return lipschitz_seminorm(to_field(g, u), r); },
      py::arg("grid"), py::arg("u"), py::arg("r"));
  m.def(
      "holder_seminorm",
      [](const PyGrid& g, const Array& u, double r, double gamma) { return holder_seminorm(to_field(g, u), r, gamma); },
      py::arg("grid"), py::arg("u"), py::arg("r"), py::arg("gamma"));
  m.def(
      "regularity_ratio",
      [](const PyGrid& g, const Array& u, const Array& f, double p, double r) {
        return make_record(to_field(g, u), to_field(g, f), p, r, "python", {}).ratio;
      },
      py::arg("grid"), py::arg("u"), py::arg("f"), py::arg("p"), py::arg("r"),
      "Lipschitz seminorm on B_r over |u|_inf + |f|_inf^(1/(p-1)).");

  m.def("min_barrier_M", &min_barrier_M, py::arg("p"), py::arg("dimension"), py::arg("f_sup"));

  m.def(
      "prop4_sweep", [](std::uint64_t seed, long n) { return summary_dict(summarize(prop4_sweep(seed, n))); },
      py::arg("seed"), py::arg("per_branch"));
  m.def(
      "prop5_sweep", [](std::uint64_t seed, long n) { return summary_dict(summarize(prop5_sweep(seed, n))); },
      py::arg("seed"), py::arg("samples"));
  m.def(
      "zt_sweep", [](std::uint64_t seed, long n) { return summary_dict(summarize(zt_sweep(seed, n))); },
      py::arg("seed"), py::arg("samples"));
  m.def(
      "claims_sweep",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& s : summarize_claims(claims_sweep(seed))) {
          py::dict d;
          d["regime"] = to_string(s.regime);
          d["ratio1_negative"] = s.ratio1_negative;
          d["ratio1_shrink"] = s.ratio1_shrink;
          d["ratio2_growth"] = s.ratio2_growth;
          d["ratio3_growth"] = s.ratio3_growth;
          d["passed"] = s.passed();
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"pseudoplap"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line harness; returns (exit_code, stdout, stderr).");
}
