// Extended-precision kernels for line transport.  The transported lines of
// the dressing formulas are ratios of exponential sums in which one
// coefficient vanishes identically; evaluating in long double keeps its
// rounding residue far below double resolution even where the matching
// exponential is large.
#pragma once

#include "affdress/core.hpp"

#include <complex>

namespace affdress::detail {

using CL = std::complex<long double>;
using Mat3L = Eigen::Matrix<CL, 3, 3>;
using Vec3L = Eigen::Matrix<CL, 3, 1>;

inline CL widen(C z) { return {z.real(), z.imag()}; }
inline C narrow(CL z) { return {double(z.real()), double(z.imag())}; }

inline Vec3L widen(const Vec3C& v) { return {widen(v(0)), widen(v(1)), widen(v(2))}; }
inline Vec3C narrow(const Vec3L& v) { return {narrow(v(0)), narrow(v(1)), narrow(v(2))}; }

// (l^t E(z, lambda))^t with E = F(0)^H F(z), F rows R(omega^k lambda) m_k / sqrt3.
inline Vec3L vacuum_transport_ld(const Vec3L& line, C z, C lambda) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const CL w = std::polar(1.0L, 2.0L * pi / 3.0L);
  const CL m[3][3] = {{1.0L, 1.0L, 1.0L}, {w, w * w, 1.0L}, {w * w, w, 1.0L}};
  const CL zl = widen(z), ll = widen(lambda);
  Vec3L out = Vec3L::Zero();
  CL mu = ll;
  for (int k = 0; k < 3; ++k) {
    CL ck = 0.0L;  // coefficient of the k-th exponential in l^t F(0)^H
    for (int i = 0; i < 3; ++i) ck += line(i) * std::conj(m[k][i]);
    const CL rk = std::exp(mu * zl + std::conj(zl) / mu);
    for (int j = 0; j < 3; ++j) out(j) += ck * m[k][j] * rk / 3.0L;
    mu *= w;
  }
  return out;
}

// (lambda^3 - alpha^3) times the rank-1 bracket, line (b, c, 1).
inline Mat3L rank1_numerator_ld(CL a, CL b, CL c, CL l) {
  const CL k = 2.0L * b * c - 1.0L;
  const CL a2 = a * a, a3 = a2 * a, l2 = l * l;
  Mat3L M;
  M << a3 * b * c / k, a * l2 * c * c / k, a2 * l * c / k,  //
      a2 * l * b * b, a3 * b * c, a * l2 * b,              //
      a * l2 * b, a2 * l * c, a3;
  return (l * l2 - a3) * Mat3L::Identity() + 2.0L * M;
}

}  // namespace affdress::detail
