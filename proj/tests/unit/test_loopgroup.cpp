#include "affdress/loopgroup.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace affdress;
namespace lg = affdress::loopgroup;

namespace {

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  double u(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  C c(double r) { return {u(-r, r), u(-r, r)}; }
};

}  // namespace

TEST_CASE("twist constants") {
  const auto& k = lg::constants();
  CHECK(std::abs(k.epsilon - oracle::eps) < 1e-15);
  CHECK(core::max_abs(k.P132 - oracle::P132()) == 0.0);
  CHECK(core::max_abs(k.P - oracle::Qmat() * oracle::P12()) < 1e-15);
  CHECK(lg::mean_curvature(lg::TwistSpec::Hyperbolic) == -2.0);
  CHECK(lg::mean_curvature(lg::TwistSpec::Elliptic) == 2.0);
  CHECK_THROWS_AS(lg::spec_from_H(1.0), Error);
  // The twists are involutions.
  Draw d(3);
  Mat3C g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = d.c(1.0);
  g += 2.0 * Mat3C::Identity();
  CHECK(core::max_abs(lg::tau_twist(lg::tau_twist(g, lg::TwistSpec::Hyperbolic), lg::TwistSpec::Hyperbolic) - g) < 1e-13);
  const Mat3C h = g.transpose() + Mat3C::Identity();
  CHECK(core::max_abs(lg::sigma_twist(g * h) - lg::sigma_twist(g) * lg::sigma_twist(h)) < 1e-12);
}

TEST_CASE("simple elements match the printed brackets and partial fractions") {
  Draw d(21);
  for (int n = 0; n < 100; ++n) {
    const C a = std::polar(d.u(0.3, 2.0), d.u(0.0, 6.28)), b = d.c(1.5), c = d.c(1.5);
    if (std::abs(2.0 * b * c - 1.0) < 0.1) continue;
    const C g = std::polar(d.u(0.5, 2.0), d.u(0.0, 6.28));
    const C l = std::polar(d.u(0.3, 2.0), d.u(0.0, 6.28));
    if (std::abs(l * l * l - a * a * a) < 0.1 * std::norm(a) * std::abs(a)) continue;
    const int sign = n % 2 ? 1 : -1;
    const Mat3C A = oracle::diag(g, 1.0 / g, double(sign));
    for (int rank : {1, 2}) {
      lg::SimpleElement e{a, lg::ProjLine::make(b, c), g, rank, sign};
      const Mat3C lib = lg::eval_simple(e, l);
      const Mat3C bracket = rank == 1 ? oracle::rank1_printed(a, b, c, l) : oracle::rank2_printed(a, b, c, l);
      const Mat3C R = rank == 1 ? oracle::residue_rank1(a, b, c) : oracle::residue_rank2(a, b, c);
      const double scale = 1.0 + core::max_abs(lib);
      CHECK(core::max_abs(lib - A * bracket) < 1e-12 * scale);
      CHECK(core::max_abs(lib - oracle::partial_fraction(A, R, a, l)) < 1e-11 * scale);
      CHECK(core::max_abs(lg::simple_residue(e) - R) < 1e-12 * (1.0 + core::max_abs(R)));
      // det A = sign; the closed form covers the bracket.
      const C det = double(sign) * lg::simple_det(e, l);
      CHECK(std::abs(det - oracle::det_by_eigenvalues(lib)) < 1e-11 * (1.0 + std::abs(det)));
      CHECK(core::max_abs(lg::eval_simple_inverse(e, l) - oracle::inverse_lu(lib)) <
            1e-10 * (1.0 + core::max_abs(oracle::inverse_lu(lib))));
    }
  }
}

TEST_CASE("simple element construction rejects bad data") {
  CHECK_THROWS_AS(lg::ProjLine::make(1.0, 0.5), Error);  // 2bc - 1 = 0
  lg::SimpleElement e{C(0.0, 0.0), lg::ProjLine::make(1.0, 1.0), 1.0, 1, 1};
  CHECK_THROWS_AS(e.validate(), Error);
  e = {C(1.0, 0.0), lg::ProjLine::make(1.0, 1.0), 1.0, 3, 1};
  CHECK_THROWS_AS(e.validate(), Error);
}

TEST_CASE("real simple elements: rank 2 strictly, rank 1 up to a phase") {
  const C alpha(0.0, 1.0), b(-0.5, 1.0);
  std::vector<C> samples;
  for (int k = 0; k < 7; ++k) samples.push_back(std::polar(0.6 + 0.2 * k, 0.3 + 0.7 * k));
  const auto e2 = lg::make_real_simple(alpha, b, 2, lg::TwistSpec::Hyperbolic);
  CHECK(e2.d.real() == doctest::Approx(std::sqrt(2 * std::norm(b) - 1)).epsilon(1e-14));
  auto loop2 = [&](C l) { return lg::eval_simple(e2, l); };
  CHECK(lg::check_twisted_max(loop2, lg::TwistSpec::Hyperbolic, samples) < 1e-12);

  const auto e1 = lg::make_real_simple(alpha, b, 1, lg::TwistSpec::Hyperbolic);
  const C kappa = lg::reality_phase(1);
  auto loop1 = [&](C l) { return kappa * lg::eval_simple(e1, l); };
  const auto dev = lg::check_twisted(loop1, lg::TwistSpec::Hyperbolic, samples);
  CHECK(dev.tau < 1e-12);
  CHECK(lg::check_twisted_projective(loop1, lg::TwistSpec::Hyperbolic, samples).max() < 1e-12);

  try {
    lg::make_real_simple(alpha, b, 1, lg::TwistSpec::Elliptic);
    FAIL("expected NoRealElement");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NoRealElement);
  }
}

// A rank-1 unit-circle element can satisfy the elliptic tau condition only
// projectively; strict reality is impossible because det has the wrong
// parity under lambda -> 1/conj(lambda).
TEST_CASE("elliptic rank-1 element is strictly real" * doctest::may_fail()) {
  const C alpha(0.0, 1.0), b(-0.5, 1.0);
  lg::SimpleElement e{alpha, lg::ProjLine::make(b, std::conj(b)), std::sqrt(2 * std::norm(b) - 1), 1, 1};
  std::vector<C> samples{C(0.5, 0.2), C(-1.3, 0.4), C(0.1, -0.9)};
  auto loop = [&](C l) { return lg::eval_simple(e, l); };
  CHECK(lg::check_twisted_max(loop, lg::TwistSpec::Elliptic, samples) < 1e-9);
}

TEST_CASE("six-pole entries match the computer-algebra transcription") {
  Draw d(5);
  int tested = 0;
  for (int n = 0; n < 200 && tested < 100; ++n) {
    const C a = std::polar(d.u(0.3, 0.8), d.u(0.0, 6.28));
    const C b1 = d.c(1.0), c1 = d.c(1.0), b2 = d.c(1.0), c2 = d.c(1.0), g = std::polar(d.u(0.5, 2.0), d.u(0.0, 6.28));
    const C l = std::polar(d.u(0.2, 3.0), d.u(0.0, 6.28));
    if (std::abs(2.0 * b1 * c1 - 1.0) < 0.1 || std::abs(2.0 * b2 * c2 - 1.0) < 0.1) continue;
    const C a3 = a * a * a, l3 = l * l * l;
    if (std::abs(l3 - a3) < 0.05 || std::abs(l3 * std::conj(a3) - 1.0) < 0.05) continue;
    const int sign = n % 2 ? 1 : -1;
    lg::SimpleElement f1{a, lg::ProjLine::make(b1, c1), g, 1, sign};
    lg::SimpleElement f2{1.0 / std::conj(a), lg::ProjLine::make(b2, c2), 1.0, 1, 1};
    const Mat3C lib = lg::eval_simple(f1, l) * lg::eval_simple(f2, l);
    const Mat3C ref = oracle::sixpole_entries(a, b1, c1, b2, c2, g, l, sign);
    CHECK(core::max_abs(lib - ref) < 1e-10 * (1.0 + core::max_abs(ref)));
    ++tested;
  }
  CHECK(tested >= 100);
}

TEST_CASE("the h22 entry as printed differs from the product") {
  const C a(0.4, 0.3), b1(0.2, 0.9), c1(-0.5, 0.3), b2(1.2, -0.4), c2(0.3, 0.6), l(0.8, 0.5);
  lg::SimpleElement f1{a, lg::ProjLine::make(b1, c1), 1.7, 1, 1};
  lg::SimpleElement f2{1.0 / std::conj(a), lg::ProjLine::make(b2, c2), 1.0, 1, 1};
  const Mat3C lib = lg::eval_simple(f1, l) * lg::eval_simple(f2, l);
  CHECK(std::abs(lib(1, 1) - oracle::sixpole_h22_printed(a, b1, c1, b2, c2, 1.7, l)) > 1e-3);
  CHECK(std::abs(lib(1, 1) - oracle::sixpole_entries(a, b1, c1, b2, c2, 1.7, l)(1, 1)) < 1e-13);
}

TEST_CASE("six-pole elements are twisted for admissible data") {
  const C alpha(0.0, -0.5);
  const auto line2 = lg::ProjLine::make(C(0.5, std::sqrt(3.0) / 2), 0.0);
  const auto e = lg::make_sixpole(alpha, line2, -2.0);
  CHECK(e.d > 0.0);
  std::vector<C> samples{C(0.5, 0.2), C(-1.3, 0.4), C(0.1, -0.9), C(1.7, 1.1)};
  auto loop = [&](C l) { return lg::eval_sixpole(e, l); };
  CHECK(lg::check_twisted_max(loop, lg::TwistSpec::Hyperbolic, samples) < 1e-11);
  for (C l : samples)
    CHECK(core::max_abs(lg::eval_sixpole_inverse(e, l) * lg::eval_sixpole(e, l) - Mat3C::Identity()) < 1e-11);
  CHECK_THROWS_AS(lg::make_sixpole(C(0.0, 1.0), line2, -2.0), Error);
}

TEST_CASE("negative Psi is rejected") {
  // Search for line data giving Psi <= 0 and check the rejection.
  Draw d(9);
  bool found = false;
  for (int n = 0; n < 2000 && !found; ++n) {
    const C a = std::polar(d.u(0.2, 0.9), d.u(0.0, 6.28)), b2 = d.c(2.0), c2 = d.c(2.0);
    if (std::abs(2.0 * b2 * c2 - 1.0) < 0.1) continue;
    if (lg::sixpole_psi(a, b2, c2, -2.0) <= 0.0) {
      found = true;
      try {
        lg::make_sixpole(a, lg::ProjLine::make(b2, c2), -2.0);
        FAIL("expected NonPositivePsi");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositivePsi);
      }
    }
  }
  CHECK(found);
}
