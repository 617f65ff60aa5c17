// Complex scalar / 3x3 matrix arithmetic and the grid containers shared by
// every other module.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace affdress {

using C = std::complex<double>;
using Mat3C = Eigen::Matrix3cd;
using Vec3C = Eigen::Vector3cd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline const C kI{0.0, 1.0};

// Every failure raised by the library carries one of these codes so callers
// (the CLI in particular) can map them to diagnostics without string matching.
enum class ErrorCode {
  SingularMatrix,
  LineAtInfinity,
  LineInCone,
  PoleProximity,
  DegenerateDenominator,
  NonPositivePsi,
  NotSixPole,
  NoRealElement,
  ZeroLambda,
  CoordinateSingularity,
  DegenerateJacobian,
  DenominatorPole,
  PhiZero,
  NonPositiveGauge,
  TauZero,
  DegenerateParameters,
  SpecMismatch,
  InvalidParameter,
  NonFinite,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace core {

// Max-entry norms used for all tolerance comparisons.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const Mat3C& m, const char* what);
void require_finite(const Vec3C& v, const char* what);
void require_finite(C z, const char* what);

// Cofactor-expansion determinant.
C det3(const Mat3C& m);

// Adjugate / determinant inverse.  Rejects |det| < 1e-12 * (max |m_ij|)^3.
Mat3C inv3(const Mat3C& m);

// Normalizes v to (v1/v3, v2/v3).  Rejects |v3| < 1e-12 * |v|_inf.
std::array<C, 2> solve_line_normalize(const Vec3C& v);

// Rectangular sampling lattice; node (i, j) sits at z = x_i + i y_j.
struct GridSpec {
  double x_min = -1.0, x_max = 1.0;
  std::size_t nx = 2;
  double y_min = -1.0, y_max = 1.0;
  std::size_t ny = 2;

  void validate() const;
  double x(std::size_t i) const;
  double y(std::size_t j) const;
  double dx() const { return (x_max - x_min) / double(nx - 1); }
  double dy() const { return (y_max - y_min) / double(ny - 1); }
  std::size_t size() const { return nx * ny; }
  // Row-major over y then x: all x for y_0, then all x for y_1, ...
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  C z(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }

  bool operator==(const GridSpec&) const = default;
};

struct ScalarGrid {
  GridSpec spec;
  std::vector<C> values;

  explicit ScalarGrid(const GridSpec& s) : spec(s), values(s.size()) {}
  C& at(std::size_t i, std::size_t j) { return values[spec.index(i, j)]; }
  const C& at(std::size_t i, std::size_t j) const {
    return values[spec.index(i, j)];
  }
};

struct SurfaceGrid {
  GridSpec spec;
  std::vector<Vec3> points;
  std::vector<bool> valid;  // false where the immersion is singular

  explicit SurfaceGrid(const GridSpec& s)
      : spec(s), points(s.size(), Vec3::Zero()), valid(s.size(), true) {}
};

// Central-difference settings shared by the finite-difference operators.
// With richardson the h and h/2 results are combined as (4 D_{h/2} - D_h)/3.
struct FDSettings {
  double step = 1e-3;
  bool richardson = true;
  void validate() const;  // step must lie in [1e-6, 1e-2]
};

// Runs body(j) for every row j in [0, rows) on up to `threads` workers.
// Rows are independent, so no synchronization beyond the final join.
template <class Body>
void parallel_rows(std::size_t rows, unsigned threads, Body&& body);

}  // namespace core

using core::ScalarGrid;
using core::SurfaceGrid;

}  // namespace affdress

#include "affdress/detail/parallel.hpp"
