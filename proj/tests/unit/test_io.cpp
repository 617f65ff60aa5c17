#include "affdress/io.hpp"

#include <doctest.h>

#include <cmath>

using namespace affdress;

TEST_CASE("doubles round-trip exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.4999999999999996}) {
    CHECK(io::parse_double(io::format_double(v)) == v);
  }
  CHECK(io::format_double(std::nan("")) == "nan");
  CHECK(io::format_double(-INFINITY) == "-inf");
  CHECK_THROWS_AS(io::parse_double("1.0abc"), Error);
}

TEST_CASE("complex and grid arguments") {
  CHECK(io::parse_complex("-0.5,1") == C(-0.5, 1.0));
  CHECK(io::parse_complex(io::format_complex(C(0.1, -0.7))) == C(0.1, -0.7));
  const auto g = io::parse_grid("-2:2:41x-1:3:5");
  CHECK(g.nx == 41);
  CHECK(g.y_max == 3.0);
  CHECK(io::parse_grid(io::format_grid(g)) == g);
  CHECK_THROWS_AS(io::parse_grid("1:2:3"), Error);
}

TEST_CASE("metric CSV round-trip") {
  core::GridSpec g{0, 1, 2, 0, 1, 2};
  ScalarGrid h(g);
  std::vector<bool> adm{true, false, true, true};
  h.values = {C(1.5), C(-0.25), C(0.1), C(3.0)};
  const auto t = io::parse_metric_csv(io::metric_csv(h, adm));
  CHECK(t.h.spec == g);
  CHECK(t.admissible == adm);
  CHECK(t.h.values[1].real() == -0.25);
}

TEST_CASE("OBJ output skips invalid nodes") {
  core::GridSpec g{0, 1, 3, 0, 1, 2};
  SurfaceGrid s(g);
  s.valid[0] = false;
  const std::string obj = io::surface_obj(s);
  std::size_t v = 0, f = 0;
  for (std::size_t p = 0; (p = obj.find('\n', p)) != std::string::npos; ++p) {
    if (p + 1 < obj.size() && obj[p + 1] == 'v') ++v;
    if (p + 1 < obj.size() && obj[p + 1] == 'f') ++f;
  }
  if (obj.rfind("v ", 0) == 0) ++v;
  CHECK(v == 5);
  CHECK(f == 1);
}
