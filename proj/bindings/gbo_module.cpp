// Python surface: numpy arrays in, numpy arrays (or plain dicts) out. Real
// float arrays map to real-tagged fields so the realness bookkeeping of the
// core library is preserved across the boundary.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gbo/evolution.hpp"
#include "gbo/fft.hpp"
#include "gbo/field.hpp"
#include "gbo/gauge.hpp"
#include "gbo/grid.hpp"
#include "gbo/io.hpp"
#include "gbo/lab.hpp"
#include "gbo/littlewood_paley.hpp"
#include "gbo/multipliers.hpp"
#include "gbo/norms.hpp"
#include "gbo/trajectory.hpp"

namespace py = pybind11;
using namespace gbo;

namespace {

Field to_field(const SpectralGrid& grid, const py::object& obj) {
  py::array arr = py::array::ensure(obj);
  if (!arr) throw StructuralError("expected a numpy array of samples");
  if (arr.dtype().kind() == 'c') {
    auto a = py::array_t<complexd, py::array::c_style | py::array::forcecast>::
        ensure(obj);
    if (!a) throw StructuralError("expected a complex sample array");
    std::vector<complexd> v(a.data(), a.data() + a.size());
    return Field(grid, std::move(v), Parity::Complex);
  }
  auto a =
      py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(
          obj);
  if (!a) throw StructuralError("expected a numeric sample array");
  std::vector<complexd> v(a.size());
  for (py::ssize_t i = 0; i < a.size(); ++i) v[static_cast<size_t>(i)] =
      a.data()[i];
  return Field(grid, std::move(v), Parity::Real);
}

py::array from_field(const Field& f) {
  if (f.is_real()) {
    py::array_t<double> out(py::array::ShapeContainer{static_cast<py::ssize_t>(f.size())});
    for (std::size_t i = 0; i < f.size(); ++i)
      out.mutable_data()[i] = f[i].real();
    return out;
  }
  py::array_t<complexd> out(py::array::ShapeContainer{static_cast<py::ssize_t>(f.size())});
  for (std::size_t i = 0; i < f.size(); ++i) out.mutable_data()[i] = f[i];
  return out;
}

py::array_t<complexd> from_coeffs(const SpectralField& c) {
  py::array_t<complexd> out(py::array::ShapeContainer{static_cast<py::ssize_t>(c.size())});
  for (std::size_t i = 0; i < c.size(); ++i) out.mutable_data()[i] = c[i];
  return out;
}

SpectralField to_coeffs(const SpectralGrid& grid, const py::object& obj) {
  auto a = py::array_t<complexd, py::array::c_style | py::array::forcecast>::
      ensure(obj);
  if (!a) throw StructuralError("expected a numpy array of coefficients");
  std::vector<complexd> v(a.data(), a.data() + a.size());
  return SpectralField(grid, std::move(v));
}

Trajectory to_trajectory(const SpectralGrid& grid, const py::object& frames,
                         double t0, double dt) {
  py::array arr = py::array::ensure(frames);
  if (!arr || arr.ndim() != 2)
    throw StructuralError("expected a 2-d numpy array of frames");
  const auto rows = static_cast<std::size_t>(arr.shape(0));
  std::vector<Field> out;
  out.reserve(rows);
  for (std::size_t m = 0; m < rows; ++m)
    out.push_back(to_field(grid, arr[py::int_(m)]));
  return Trajectory(t0, dt, std::move(out));
}

py::array from_trajectory(const Trajectory& u) {
  bool real = true;
  for (const auto& f : u.frames()) real = real && f.is_real();
  const auto rows = static_cast<py::ssize_t>(u.node_count());
  const auto cols = static_cast<py::ssize_t>(u.grid().size());
  if (real) {
    py::array_t<double> out({rows, cols});
    for (py::ssize_t m = 0; m < rows; ++m)
      for (py::ssize_t i = 0; i < cols; ++i)
        out.mutable_at(m, i) =
            u.frame(static_cast<std::size_t>(m))[static_cast<std::size_t>(i)]
                .real();
    return out;
  }
  py::array_t<complexd> out({rows, cols});
  for (py::ssize_t m = 0; m < rows; ++m)
    for (py::ssize_t i = 0; i < cols; ++i)
      out.mutable_at(m, i) =
          u.frame(static_cast<std::size_t>(m))[static_cast<std::size_t>(i)];
  return out;
}

Dispersion dispersion_from(const std::string& kind) {
  if (kind == "benjamin_ono" || kind == "bo") return Dispersion::BenjaminOno;
  if (kind == "schrodinger") return Dispersion::Schrodinger;
  throw StructuralError("unknown dispersion kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_gbo, m) {
  m.doc() = "Pseudospectral laboratory for generalized Benjamin-Ono "
            "equations on the torus";

  py::register_exception<StructuralError>(m, "StructuralError",
                                          PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);
  py::register_exception<NonContractionError>(m, "NonContractionError",
                                              PyExc_RuntimeError);

  py::class_<SpectralGrid>(m, "Grid")
      .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("period"))
      .def_property_readonly("n", &SpectralGrid::size)
      .def_property_readonly("period", &SpectralGrid::period)
      .def_property_readonly("dx", &SpectralGrid::dx)
      .def("nodes",
           [](const SpectralGrid& g) {
             py::array_t<double> out(py::array::ShapeContainer{static_cast<py::ssize_t>(g.size())});
             for (std::size_t i = 0; i < g.size(); ++i)
               out.mutable_data()[i] = g.node(i);
             return out;
           })
      .def("wavenumbers",
           [](const SpectralGrid& g) {
             py::array_t<double> out(py::array::ShapeContainer{static_cast<py::ssize_t>(g.size())});
             for (std::size_t i = 0; i < g.size(); ++i)
               out.mutable_data()[i] = g.wavenumber(i);
             return out;
           })
      .def("__repr__", [](const SpectralGrid& g) {
        return "Grid(n=" + std::to_string(g.size()) +
               ", period=" + std::to_string(g.period()) + ")";
      });

  m.def("forward", [](const SpectralGrid& g, const py::object& f) {
    return from_coeffs(forward_transform(to_field(g, f)));
  });
  m.def(
      "inverse",
      [](const SpectralGrid& g, const py::object& c, bool real) {
        const SpectralField sc = to_coeffs(g, c);
        return from_field(real ? inverse_transform_real(sc)
                                : inverse_transform(sc));
      },
      py::arg("grid"), py::arg("coeffs"), py::arg("real") = false);

  const auto unary = [&m](const char* name, Field (*op)(const Field&)) {
    m.def(name, [op](const SpectralGrid& g, const py::object& f) {
      return from_field(op(to_field(g, f)));
    });
  };
  unary("hilbert", &hilbert);
  unary("derivative", &derivative);
  unary("project_pos", &project_pos);
  unary("project_neg", &project_neg);
  unary("lowpass", &lowpass);

  m.def("frac_derivative",
        [](const SpectralGrid& g, const py::object& f, double alpha) {
          return from_field(frac_derivative(to_field(g, f), alpha));
        });
  m.def(
      "free_propagate",
      [](const SpectralGrid& g, const py::object& f, double t,
         const std::string& kind) {
        return from_field(free_propagate(t, to_field(g, f),
                                         dispersion_from(kind)));
      },
      py::arg("grid"), py::arg("f"), py::arg("t"),
      py::arg("kind") = "benjamin_ono");
  m.def(
      "dealiased_power",
      [](const SpectralGrid& g, const py::object& f, int d) {
        return from_field(dealiased_power(to_field(g, f), d));
      },
      py::arg("grid"), py::arg("f"), py::arg("d"));

  m.def("block", [](const SpectralGrid& g, const py::object& f, int j) {
    return from_field(block(j, to_field(g, f)));
  });
  m.def("block_upto", [](const SpectralGrid& g, const py::object& f, int j) {
    return from_field(block_upto(j, to_field(g, f)));
  });
  m.def(
      "paraproduct",
      [](const SpectralGrid& g, const py::object& f, const py::object& h,
         int k, int J, int Jsim) {
        const BlockRange range = BlockRange::for_grid(g, J, Jsim);
        return from_field(
            paraproduct(to_field(g, f), to_field(g, h), k, range));
      },
      py::arg("grid"), py::arg("f"), py::arg("g"), py::arg("k"),
      py::arg("J") = 3, py::arg("Jsim") = 2);
  m.def(
      "nonlinear_remainder",
      [](const SpectralGrid& g, const py::object& u, int k, int J,
         int Jsim) {
        const BlockRange range = BlockRange::for_grid(g, J, Jsim);
        return from_field(nonlinear_remainder(to_field(g, u), k, range));
      },
      py::arg("grid"), py::arg("u"), py::arg("k"), py::arg("J") = 3,
      py::arg("Jsim") = 2);

  m.def(
      "sobolev_norm",
      [](const SpectralGrid& g, const py::object& f, double s,
         bool homogeneous) {
        return sobolev_norm(to_field(g, f), s, homogeneous);
      },
      py::arg("grid"), py::arg("f"), py::arg("s"),
      py::arg("homogeneous") = true);
  m.def(
      "mixed_norm",
      [](const SpectralGrid& g, const py::object& frames, double t0,
         double dt, double p, double q) {
        return mixed_norm_xt(to_trajectory(g, frames, t0, dt), p, q);
      },
      py::arg("grid"), py::arg("frames"), py::arg("t0"), py::arg("dt"),
      py::arg("p"), py::arg("q"));
  m.def(
      "y_norm",
      [](const SpectralGrid& g, const py::object& frames, double t0,
         double dt, int k, double eps) {
        return y_norm(to_trajectory(g, frames, t0, dt), k, eps);
      },
      py::arg("grid"), py::arg("frames"), py::arg("t0"), py::arg("dt"),
      py::arg("k"), py::arg("eps") = 0.125);

  m.def("critical_index", &critical_index, py::arg("k"));
  m.def(
      "is_admissible",
      [](double alpha, double p, double q) {
        return is_admissible(AdmissibleTriple{alpha, p, q});
      },
      py::arg("alpha"), py::arg("p"), py::arg("q"));

  m.def("standard_bump",
        [](const SpectralGrid& g, double amplitude) {
          return from_field(standard_bump(g, amplitude));
        },
        py::arg("grid"), py::arg("amplitude") = 1.0);
  m.def(
      "random_packets",
      [](const SpectralGrid& g, std::uint64_t seed, std::uint64_t trial,
         double amplitude) {
        SamplerConfig cfg;
        cfg.amplitude = amplitude;
        return from_field(random_packets(g, cfg, seed, trial));
      },
      py::arg("grid"), py::arg("seed"), py::arg("trial") = 0,
      py::arg("amplitude") = 1.0);

  m.def(
      "solve",
      [](const SpectralGrid& g, const py::object& u0, int k, double T,
         double dt, long stride, double sign) {
        SolverConfig cfg;
        cfg.k = k;
        cfg.sign = sign;
        cfg.dt = dt;
        cfg.steps = std::lround(T / dt);
        cfg.stride = stride;
        if (cfg.steps <= 0 || cfg.steps % cfg.stride != 0)
          throw StructuralError(
              "T/dt must be a positive multiple of stride");
        const SolveResult res = solve_gbo(to_field(g, u0), cfg);
        py::dict out;
        out["t0"] = res.trajectory.t0();
        out["dt"] = res.trajectory.dt();
        out["frames"] = from_trajectory(res.trajectory);
        out["mass_drift"] = res.conservation.mass_drift;
        out["l2_drift"] = res.conservation.l2_drift;
        out["warnings"] = res.warnings;
        return out;
      },
      py::arg("grid"), py::arg("u0"), py::arg("k") = 4, py::arg("T") = 1.0,
      py::arg("dt") = 1e-3, py::arg("stride") = 10, py::arg("sign") = 1.0);

  m.def(
      "picard",
      [](const SpectralGrid& g, const py::object& u0, int k, double T,
         int nodes, double tol, int max_iter, bool split) {
        PicardConfig cfg;
        cfg.k = k;
        cfg.T = T;
        cfg.time_nodes = nodes;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.split_mode = split;
        const PicardReport rep = picard_solve(to_field(g, u0), cfg);
        py::dict out;
        out["converged"] = rep.converged;
        out["final_residual"] = rep.final_residual;
        out["contraction_factor"] = rep.contraction_factor;
        out["gbo_sup_l2_diff"] = rep.gbo_sup_l2_diff;
        std::vector<double> residuals;
        for (const auto& it : rep.iterates)
          residuals.push_back(it.residual_y);
        out["residuals"] = residuals;
        if (rep.solution) {
          out["t0"] = rep.solution->t0();
          out["dt"] = rep.solution->dt();
          out["frames"] = from_trajectory(*rep.solution);
        }
        return out;
      },
      py::arg("grid"), py::arg("u0"), py::arg("k") = 4, py::arg("T") = 0.1,
      py::arg("nodes") = 128, py::arg("tol") = 1e-10,
      py::arg("max_iter") = 12, py::arg("split") = false);

  m.def("write_field",
        [](const std::string& path, const SpectralGrid& g,
           const py::object& f) { write_field(path, to_field(g, f)); });
  m.def("read_field", [](const std::string& path) {
    const Field f = read_field(path);
    return py::make_tuple(f.grid(), from_field(f));
  });
  m.def("write_trajectory",
        [](const std::string& path, const SpectralGrid& g,
           const py::object& frames, double t0, double dt) {
          write_trajectory(path, to_trajectory(g, frames, t0, dt));
        });
  m.def("read_trajectory", [](const std::string& path) {
    const Trajectory u = read_trajectory(path);
    py::dict out;
    out["grid"] = u.grid();
    out["t0"] = u.t0();
    out["dt"] = u.dt();
    out["frames"] = from_trajectory(u);
    return out;
  });
}
