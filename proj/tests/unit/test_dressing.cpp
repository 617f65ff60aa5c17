#include "affdress/dressing.hpp"
#include "affdress/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace affdress;
namespace dr = affdress::dressing;
namespace lg = affdress::loopgroup;

namespace {

const dr::Dress3Params kRank1{C(0.0, 1.0), C(-0.5, 1.0), 1, lg::TwistSpec::Hyperbolic};
const dr::Dress3Params kRank2{C(0.0, 1.0), C(1.0, 1.0), 2, lg::TwistSpec::Hyperbolic};

const std::vector<C> kLambdas{C(0.5, 0.2), C(-1.3, 0.4), C(0.1, -0.9), C(1.7, 1.1), C(-0.6, -0.5)};

}  // namespace

TEST_CASE("rank-1 example: metric and transported line") {
  for (double x : {-1.5, -0.4, 0.0, 0.8, 1.9})
    for (double y : {-1.0, 0.0, 1.3}) {
      const auto r = dr::dress3(kRank1, C(x, y));
      CHECK(r.admissible);
      CHECK(r.h == doctest::Approx(oracle::metric_example_one(x)).epsilon(1e-11));
      CHECK(std::abs(r.line_tilde.b - oracle::btilde_example_one(x, y)) < 1e-11);
      CHECK(r.reality_defect < 1e-12);
    }
  CHECK(dr::dress3(kRank1, 0.0).h == doctest::Approx(1.5).epsilon(1e-14));
  // The printed ordering of the denominator does not give the metric.
  const C bp = oracle::btilde_example_one_printed(0.7, 0.0);
  CHECK(std::abs(2 * std::norm(bp) - 1 - oracle::metric_example_one(0.7)) > 1e-2);
}

TEST_CASE("rank-2 example: metric, line and tau-function") {
  const double s3 = std::sqrt(3.0);
  const auto printed = oracle::tau_example_two_printed();
  // The wave numbers as printed, (+-s3 - 3i)/2, generate tau(x, -y); their
  // conjugates generate the printed tau itself.
  const auto from_printed_k = oracle::two_soliton(C(s3 / 2, -1.5), C(-s3 / 2, -1.5), std::log(C(s3 / 3)),
                                                  std::log(C(-s3 / 3)));
  for (double x : {-1.5, -0.4, 0.3, 0.8})
    for (double y : {-0.7, 0.2, 1.1}) {
      const auto r = dr::dress3(kRank2, C(x, y));
      CHECK(r.h == doctest::Approx(oracle::metric_example_two(x, y)).epsilon(1e-10));
      CHECK(std::abs(r.line_tilde.b - oracle::btilde_example_two(x, y)) < 1e-10);
      CHECK(r.h == doctest::Approx(oracle::tau_metric(printed, x, y).real()).epsilon(1e-9));
      const double reflected = dr::dress3(kRank2, C(x, -y)).h;
      CHECK(reflected == doctest::Approx(oracle::tau_metric(from_printed_k, x, y).real()).epsilon(1e-9));
    }
  CHECK(dr::dress3(kRank2, 0.0).h == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(oracle::metric_example_two_printed(0.0, 0.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("rank-2 example: phi") {
  // phi = l r(z, -alpha) up to the factor 2 of r = E e3 / 2.
  for (C z : {C(0.3, -0.2), C(-1.0, 0.5)}) {
    const Vec3C r = surfaces::vacuum_frame(z, -kRank2.alpha).col(2);
    const C phi = (kRank2.b * r(0) + std::conj(kRank2.b) * r(1) + r(2)) / 2.0;
    CHECK(std::abs(phi - oracle::phi_example_two(z.real(), z.imag())) < 1e-12);
  }
}

TEST_CASE("dressed three-pole frames are regular, twisted and lambda-linear") {
  for (const auto& p : {kRank1, kRank2}) {
    for (C z : {C(0.2, -0.4), C(-0.7, 0.3)}) {
      CHECK(dr::residue_at_alpha(p, z) < 1e-10);
      CHECK(dr::residue_at_minus_alpha(p, z) < 1e-10);
      auto loop = [&](C l) { return dr::dressed_frame3(p, z, l); };
      CHECK(lg::check_twisted_max(loop, p.spec, kLambdas) < 1e-9);
      auto frame = [&](C zz, C l) { return dr::dressed_frame3(p, zz, l); };
      CHECK(verify::lambda_linearity_residual(frame, z, kLambdas) < 1e-6);
      for (C l : kLambdas) {
        const Vec3C a = dr::dress3_column(p, l, z), b = dr::dress3_column_matrix(p, l, z);
        CHECK(core::max_abs(a - b) < 1e-10 * (1.0 + core::max_abs(a)));
      }
    }
  }
}

TEST_CASE("dressed immersion is continuous through the pole") {
  const C z(0.3, 0.1);
  const Vec3 at = dr::dress3_immersion(kRank1, kRank1.alpha, z);
  const Vec3 near = dr::dress3_immersion(kRank1, kRank1.alpha * std::polar(1.0, 1e-4), z);
  CHECK(at.allFinite());
  CHECK((at - near).norm() < 1e-3);
}

TEST_CASE("three-pole metric grid matches pointwise evaluation") {
  core::GridSpec g{-1, 1, 5, -1, 1, 4};
  const auto m = dr::dress3_metric(kRank1, g, 3);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      CHECK(m.h.at(i, j).real() == dr::dress3(kRank1, g.z(i, j)).h);
      CHECK(m.admissible[g.index(i, j)]);
    }
}

TEST_CASE("elliptic three-pole dressing is refused") {
  dr::Dress3Params p = kRank1;
  p.spec = lg::TwistSpec::Elliptic;
  try {
    dr::dress3(p, 0.0);
    FAIL("expected NoRealElement");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRealElement);
  }
}

TEST_CASE("six-pole example matches its printed tau-function") {
  const auto e = lg::make_sixpole(C(0.0, -0.5), lg::ProjLine::make(C(0.5, std::sqrt(3.0) / 2), 0.0), -2.0);
  const auto tau = oracle::tau_example_six_printed();
  for (double x : {-1.2, -0.3, 0.6})
    for (double y : {-0.8, 0.1, 0.9}) {
      if (std::abs(oracle::tau_value(tau, x, y)) < 1e-2) continue;
      const auto r = dr::dress6(e, C(x, y));
      const C ht = oracle::tau_metric(tau, x, y);
      CHECK(r.h == doctest::Approx(ht.real()).epsilon(1e-8));
      CHECK(std::abs(r.h_imag) < 1e-9 * (1 + std::abs(r.h)));
    }
}

TEST_CASE("dressed six-pole frames are twisted, lambda-linear, and columns agree") {
  const auto e = lg::make_sixpole(C(0.0, -0.5), lg::ProjLine::make(C(0.5, std::sqrt(3.0) / 2), 0.0), -2.0);
  const C z(0.2, 0.3);
  auto loop = [&](C l) { return dr::dressed_frame6(e, z, l); };
  CHECK(lg::check_twisted_max(loop, lg::TwistSpec::Hyperbolic, kLambdas) < 1e-8);
  auto frame = [&](C zz, C l) { return dr::dressed_frame6(e, zz, l); };
  CHECK(verify::lambda_linearity_residual(frame, z, kLambdas) < 1e-5);
  for (C l : kLambdas) {
    const Vec3C a = dr::dress6_column(e, l, z), b = dr::dress6_column_matrix(e, l, z);
    CHECK(core::max_abs(a - b) < 1e-9 * (1.0 + core::max_abs(a)));
  }
}

TEST_CASE("trivial six-pole dressing keeps the lines") {
  const auto e = lg::make_sixpole(C(0.5, 0.0), lg::ProjLine::make(1.0, 1.0), -2.0);
  CHECK(std::abs(e.line1.b - 1.0) < 1e-12);
  CHECK(std::abs(e.line1.c - 1.0) < 1e-12);
  const auto r = dr::dress6(e, C(0.4, -0.9));
  CHECK(std::abs(r.line2_tilde.b - 1.0) < 1e-10);
  CHECK(std::abs(r.line1_tilde.c - 1.0) < 1e-10);
  CHECK(r.h == doctest::Approx(1.0).epsilon(1e-10));
}
