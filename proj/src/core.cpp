#include "affdress/core.hpp"

#include <cmath>
#include <sstream>

namespace affdress {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::LineAtInfinity: return "LineAtInfinity";
    case ErrorCode::LineInCone: return "LineInCone";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NonPositivePsi: return "NonPositivePsi";
    case ErrorCode::NotSixPole: return "NotSixPole";
    case ErrorCode::NoRealElement: return "NoRealElement";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::CoordinateSingularity: return "CoordinateSingularity";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::DenominatorPole: return "DenominatorPole";
    case ErrorCode::PhiZero: return "PhiZero";
    case ErrorCode::NonPositiveGauge: return "NonPositiveGauge";
    case ErrorCode::TauZero: return "TauZero";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

namespace core {


void require_finite(C z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::NonFinite, std::string(what) + " is not finite");
}

void require_finite(const Mat3C& m, const char* what) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) require_finite(m(i, j), what);
}

void require_finite(const Vec3C& v, const char* what) {
  for (int i = 0; i < 3; ++i) require_finite(v(i), what);
}

C det3(const Mat3C& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3C inv3(const Mat3C& m) {
  require_finite(m, "inv3 input");
  const C det = det3(m);
  const double scale = max_abs(m);
  if (std::abs(det) < 1e-12 * scale * scale * scale || scale == 0.0)
    throw Error(ErrorCode::SingularMatrix, "inv3: matrix is singular");
  Mat3C adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return adj / det;
}

std::array<C, 2> solve_line_normalize(const Vec3C& v) {
  require_finite(v, "line vector");
  if (std::abs(v(2)) < 1e-12 * max_abs(v) || max_abs(v) == 0.0)
    throw Error(ErrorCode::LineAtInfinity,
                "line has vanishing third coordinate (lies in the cone)");
  return {v(0) / v(2), v(1) / v(2)};
}

void GridSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max) || nx < 2 || ny < 2 ||
      !std::isfinite(x_min) || !std::isfinite(x_max) ||
      !std::isfinite(y_min) || !std::isfinite(y_max)) {
    std::ostringstream os;
    os << "invalid grid: need x_min < x_max, y_min < y_max, nx >= 2, ny >= 2";
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
}

double GridSpec::x(std::size_t i) const {
  return i + 1 == nx ? x_max : x_min + dx() * double(i);
}

double GridSpec::y(std::size_t j) const {
  return j + 1 == ny ? y_max : y_min + dy() * double(j);
}

void FDSettings::validate() const {
  if (!(step >= 1e-6 && step <= 1e-2))
    throw Error(ErrorCode::InvalidParameter,
                "finite-difference step must lie in [1e-6, 1e-2]");
}

}  // namespace core
}  // namespace affdress
