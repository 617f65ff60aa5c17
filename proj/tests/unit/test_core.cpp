#include "affdress/core.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace affdress;

namespace {

Mat3C random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3C m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = C(u(rng), u(rng));
  return m;
}

}  // namespace

TEST_CASE("det3 agrees with the product of eigenvalues") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 50; ++n) {
    const Mat3C m = random_matrix(rng);
    CHECK(std::abs(core::det3(m) - oracle::det_by_eigenvalues(m)) < 1e-12);
  }
}

TEST_CASE("inv3 agrees with a pivoted LU inverse") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 50; ++n) {
    const Mat3C m = random_matrix(rng) + 2.0 * Mat3C::Identity();
    CHECK(core::max_abs(core::inv3(m) - oracle::inverse_lu(m)) < 1e-12);
  }
}

TEST_CASE("inv3 rejects singular matrices") {
  Mat3C m;
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  try {
    core::inv3(m);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("line normalisation divides by the third entry") {
  const auto bc = core::solve_line_normalize(Vec3C(C(2, 2), C(4, 0), C(2, 0)));
  CHECK(std::abs(bc[0] - C(1, 1)) < 1e-15);
  CHECK(std::abs(bc[1] - C(2, 0)) < 1e-15);
  try {
    core::solve_line_normalize(Vec3C(1.0, 1.0, 1e-14));
    FAIL("expected LineAtInfinity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LineAtInfinity);
  }
}

TEST_CASE("grid nodes are y-major") {
  core::GridSpec g{-1, 1, 3, 0, 2, 2};
  g.validate();
  CHECK(g.index(2, 0) == 2);
  CHECK(g.index(0, 1) == 3);
  CHECK(g.z(1, 1) == C(0.0, 2.0));
  core::GridSpec bad{0, 1, 1, 0, 1, 2};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("finite-difference settings are range checked") {
  CHECK_NOTHROW(core::FDSettings{}.validate());
  CHECK_THROWS_AS((core::FDSettings{1e-8, true}.validate()), Error);
  CHECK_THROWS_AS((core::FDSettings{0.1, false}.validate()), Error);
}
