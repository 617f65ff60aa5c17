#include "affdress/dressing.hpp"
#include "affdress/io.hpp"
#include "affdress/loopgroup.hpp"
#include "affdress/selftest.hpp"
#include "affdress/surfaces.hpp"
#include "affdress/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace affdress;

namespace {

loopgroup::TwistSpec twist(double H) { return loopgroup::spec_from_H(H); }

// (x, y, h, admissible) as 2-D arrays indexed [j, i] (y-major, like the CSV).
py::dict metric_arrays(const dressing::MetricGrid& m) {
  const auto& g = m.h.spec;
  py::array_t<double> x({g.ny, g.nx}), y({g.ny, g.nx}), h({g.ny, g.nx});
  py::array_t<bool> ok({g.ny, g.nx});
  auto xv = x.mutable_unchecked<2>(), yv = y.mutable_unchecked<2>(), hv = h.mutable_unchecked<2>();
  auto okv = ok.mutable_unchecked<2>();
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      xv(j, i) = g.x(i);
      yv(j, i) = g.y(j);
      hv(j, i) = m.h.values[k].real();
      okv(j, i) = m.admissible[k];
    }
  }
  py::dict d;
  d["x"] = x;
  d["y"] = y;
  d["h"] = h;
  d["admissible"] = ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_affdress, m) {
  m.doc() = "Dressing of definite affine spheres by rational loop-group elements.";

  static py::exception<Error> error(m, "AffdressError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("vacuum_frame", &surfaces::vacuum_frame, py::arg("z"), py::arg("lam"),
        "Vacuum extended frame E(z, lambda) as a 3x3 complex array.");
  m.def("vacuum_immersion", &surfaces::vacuum_immersion, py::arg("z"), py::arg("lam"));
  m.def("hildebrand_normalized", &surfaces::hildebrand_normalized, py::arg("x"), py::arg("y"),
        py::arg("offset") = 0.0);
  m.def("hildebrand_metric", &surfaces::hildebrand_metric, py::arg("x"), py::arg("offset") = 0.0);

  m.def(
      "simple_element",
      [](C alpha, C b, int rank, double H, C lam) {
        return loopgroup::eval_simple(loopgroup::make_real_simple(alpha, b, rank, twist(H)), lam);
      },
      py::arg("alpha"), py::arg("b"), py::arg("rank"), py::arg("H") = -2.0, py::arg("lam"),
      "Real three-pole element g(lambda) with c = conj(b) and d = sqrt(2|b|^2 - 1).");
  m.def(
      "sixpole_element",
      [](C alpha, C b2, C c2, double H, C lam) {
        return loopgroup::eval_sixpole(
            loopgroup::make_sixpole(alpha, loopgroup::ProjLine::make(b2, c2), H), lam);
      },
      py::arg("alpha"), py::arg("b2"), py::arg("c2"), py::arg("H") = -2.0, py::arg("lam"));
  m.def("sixpole_psi", &loopgroup::sixpole_psi, py::arg("alpha"), py::arg("b2"), py::arg("c2"),
        py::arg("H") = -2.0);

  m.def(
      "dress3_metric",
      [](C alpha, C b, const std::string& grid, int rank, double H, unsigned threads) {
        dressing::Dress3Params p{alpha, b, rank, twist(H)};
        p.element();
        return metric_arrays(dressing::dress3_metric(p, io::parse_grid(grid), threads));
      },
      py::arg("alpha"), py::arg("b"), py::arg("grid") = "-2:2:41x-2:2:41", py::arg("rank") = 1,
      py::arg("H") = -2.0, py::arg("threads") = 1);
  m.def(
      "dress3_point",
      [](C alpha, C b, C lam, C z, int rank) {
        dressing::Dress3Params p{alpha, b, rank, loopgroup::TwistSpec::Hyperbolic};
        return dressing::dress3_immersion(p, lam, z);
      },
      py::arg("alpha"), py::arg("b"), py::arg("lam"), py::arg("z"), py::arg("rank") = 1,
      "Real point of the dressed surface at z for spectral value lambda.");
  m.def(
      "dress6_metric",
      [](C alpha, C b2, C c2, const std::string& grid, double H, unsigned threads) {
        const auto e = loopgroup::make_sixpole(alpha, loopgroup::ProjLine::make(b2, c2), H);
        return metric_arrays(dressing::dress6_metric(e, io::parse_grid(grid), threads));
      },
      py::arg("alpha") = C(0.0, -0.5), py::arg("b2") = C(0.5, std::sqrt(3.0) / 2),
      py::arg("c2") = C(0.0, 0.0), py::arg("grid") = "-3:3:121x-3:3:121", py::arg("H") = -2.0,
      py::arg("threads") = 1);

  m.def(
      "tzitzeica_residual",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> h, double x_min,
         double x_max, double y_min, double y_max, bool richardson, double max_abs_h) {
        if (h.ndim() != 2) throw Error(ErrorCode::InvalidParameter, "h must be 2-D [ny, nx]");
        core::GridSpec g{x_min, x_max, std::size_t(h.shape(1)), y_min, y_max,
                         std::size_t(h.shape(0))};
        g.validate();
        ScalarGrid s(g);
        auto hv = h.unchecked<2>();
        for (std::size_t j = 0; j < g.ny; ++j)
          for (std::size_t i = 0; i < g.nx; ++i) s.values[g.index(i, j)] = hv(j, i);
        verify::ResidualOptions opt;
        opt.h_cap = max_abs_h;
        const auto r = verify::residual_of_samples(s, richardson, opt);
        py::dict d;
        d["max_residual"] = r.max_residual;
        d["argmax"] = py::make_tuple(r.argmax_i, r.argmax_j);
        d["evaluated"] = r.evaluated;
        d["masked"] = r.masked;
        d["negative_nodes"] = r.negative_nodes;
        return d;
      },
      py::arg("h"), py::arg("x_min"), py::arg("x_max"), py::arg("y_min"), py::arg("y_max"),
      py::arg("richardson") = true,
      py::arg("max_abs_h") = std::numeric_limits<double>::infinity(),
      "Tzitzeica residual of a sampled metric using the grid spacing as the stencil.");

  m.def(
      "one_soliton_h",
      [](C k, C s, C z) { return verify::tau_one_soliton_h(z, {k, s}); }, py::arg("k"),
      py::arg("s"), py::arg("z"));
  m.def(
      "two_soliton_h",
      [](C k1, C k2, C s1, C s2, C z) { return verify::tau_two_soliton_h(z, {k1, k2, s1, s2}); },
      py::arg("k1"), py::arg("k2"), py::arg("s1"), py::arg("s2"), py::arg("z"));

  m.def(
      "selftest",
      [](const std::string& suite, std::uint64_t seed) {
        py::list out;
        for (const auto& r : selftest::run(suite, seed)) {
          py::list checks;
          for (const auto& c : r.checks)
            checks.append(py::dict(py::arg("name") = c.name, py::arg("value") = c.value,
                                   py::arg("tolerance") = c.tolerance,
                                   py::arg("passed") = c.pass()));
          out.append(py::dict(py::arg("suite") = r.suite, py::arg("passed") = r.pass(),
                              py::arg("checks") = checks));
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 1);
}
