#include "affdress/surfaces.hpp"

#include "affdress/detail/extended.hpp"
#include "affdress/loopgroup.hpp"

#include <cmath>

namespace affdress::surfaces {

using loopgroup::constants;

namespace {

const C kOmega = std::polar(1.0, 2.0 * kPi / 3.0);

void check_lambda(C lambda) {
  core::require_finite(lambda, "lambda");
  if (lambda == C(0.0))
    throw Error(ErrorCode::ZeroLambda, "spectral parameter must be nonzero");
}

Mat3C fourier_F(C z, C lambda) {
  const C w = kOmega, w2 = kOmega * kOmega;
  const C r0 = R(z, lambda), r1 = R(z, w * lambda), r2 = R(z, w2 * lambda);
  Mat3C F;
  F << r0, r0, r0,
      w * r1, w2 * r1, r1,
      w2 * r2, w * r2, r2;
  return (std::sqrt(3.0) / 3.0) * F;
}

// exp(t P132) = f0 I + f1 P132 + f2 P132^2, f_k = (1/3) sum_j w^{-jk} e^{w^j t}.
Mat3C exp_cyclic(C t) {
  const Mat3C& P = constants().P132;
  C f[3];
  for (int k = 0; k < 3; ++k) {
    f[k] = 0.0;
    for (int j = 0; j < 3; ++j)
      f[k] += std::pow(kOmega, -j * k) * std::exp(std::pow(kOmega, j) * t);
    f[k] /= 3.0;
  }
  return f[0] * Mat3C::Identity() + f[1] * P + f[2] * P * P;
}

}  // namespace

C R(C z, C mu) { return std::exp(mu * z + std::conj(z) / mu); }

Mat3C vacuum_frame_fourier(C z, C lambda) {
  check_lambda(lambda);
  // F(0, lambda) is unitary, so its inverse is the adjoint.
  return fourier_F(C(0.0), lambda).adjoint() * fourier_F(z, lambda);
}

Mat3C vacuum_frame_exponential(C z, C lambda) {
  check_lambda(lambda);
  return exp_cyclic(lambda * z) * exp_cyclic(std::conj(z) / lambda).transpose();
}

// The Fourier route carries only the three exponentials R(omega^j lambda);
// the product route creates six more that cancel exactly, which costs
// relative accuracy once |z| is a few units.
Mat3C vacuum_frame(C z, C lambda) { return vacuum_frame_fourier(z, lambda); }

Vec3C vacuum_transport(const Vec3C& line, C z, C lambda) {
  check_lambda(lambda);
  return detail::narrow(detail::vacuum_transport_ld(detail::widen(line), z, lambda));
}

Vec3C vacuum_immersion(C z, C lambda) {
  check_lambda(lambda);
  const C w = kOmega;
  return (std::sqrt(3.0) / 6.0) *
         Vec3C{R(z, lambda), R(z, w * lambda), R(z, w * w * lambda)};
}

BaseColumn vacuum_column(C z, C lambda) {
  const Mat3C& P = constants().P132;
  BaseColumn col;
  col.r = vacuum_frame(z, lambda).col(2) / 2.0;
  col.r_z = lambda * (P * col.r);
  col.r_zb = (P.transpose() * col.r) / lambda;
  col.exp_psi = 1.0;
  col.H = -2.0;
  return col;
}

Vec3 real_immersion(const Vec3C& col, double H) {
  if (H == 0.0)
    throw Error(ErrorCode::InvalidParameter, "real_immersion requires H != 0");
  const C n33 = std::sqrt(C(-H / 2.0));
  const double s = 1.0 / std::sqrt(2.0);
  Vec3C v;
  v(0) = s * (col(0) + col(1)) / n33;
  v(1) = s * kI * (col(0) - col(1)) / n33;
  v(2) = col(2);
  return (-1.0 / H) * v.real();
}

Vec3 affine_point(const Vec3C& col, double H) {
  return std::cbrt(2.0) * real_immersion(col, H);
}

Vec3 hildebrand_surface(double x, double y, double offset) {
  const double s3 = std::sqrt(3.0);
  const double u = s3 * (x - offset);
  const double sh = std::sinh(u);
  if (std::abs(sh) < 1e-12)
    throw Error(ErrorCode::CoordinateSingularity,
                "Hildebrand chart is singular at sinh(sqrt3 x) = 0");
  const double csch = 1.0 / sh;
  return Vec3{csch * (sh * sh + 3.0 * y) * std::exp(y) / s3,
              -csch * std::sqrt(1.0 + sh * sh) * std::exp(-2.0 * y) / s3,
              -csch * std::exp(y) / s3};
}

Vec3 hildebrand_normalized(double x, double y, double offset) {
  return std::cbrt(0.25) * hildebrand_surface(x, y, offset);
}

double hildebrand_metric(double x, double offset) {
  const double sh = std::sinh(std::sqrt(3.0) * (x - offset));
  if (std::abs(sh) < 1e-12)
    throw Error(ErrorCode::CoordinateSingularity,
                "Hildebrand metric is singular at sinh(sqrt3 x) = 0");
  return 1.5 * (1.0 / (sh * sh) + 2.0 / 3.0);
}

double AffineInvariants::exp_2psi() const { return std::exp(2.0 * psi); }

namespace {

struct Partials {
  Vec3 fx, fy, fxx, fxy, fyy, fxxx, fxxy, fxyy, fyyy;

  Partials operator*(double s) const {
    return {fx * s, fy * s, fxx * s, fxy * s, fyy * s,
            fxxx * s, fxxy * s, fxyy * s, fyyy * s};
  }
  Partials operator-(const Partials& o) const {
    return {fx - o.fx, fy - o.fy, fxx - o.fxx, fxy - o.fxy, fyy - o.fyy,
            fxxx - o.fxxx, fxxy - o.fxxy, fxyy - o.fxyy, fyyy - o.fyyy};
  }
};

Partials central(const RealImmersion& f, double x, double y, double h) {
  auto F = [&](int i, int j) { return f(x + i * h, y + j * h); };
  const Vec3 c = F(0, 0);
  const Vec3 xp = F(1, 0), xm = F(-1, 0), yp = F(0, 1), ym = F(0, -1);
  const Vec3 pp = F(1, 1), pm = F(1, -1), mp = F(-1, 1), mm = F(-1, -1);
  const double h2 = h * h, h3 = h2 * h;
  Partials d;
  d.fx = (xp - xm) / (2 * h);
  d.fy = (yp - ym) / (2 * h);
  d.fxx = (xp - 2 * c + xm) / h2;
  d.fyy = (yp - 2 * c + ym) / h2;
  d.fxy = (pp - pm - mp + mm) / (4 * h2);
  d.fxxx = (F(2, 0) - 2 * xp + 2 * xm - F(-2, 0)) / (2 * h3);
  d.fyyy = (F(0, 2) - 2 * yp + 2 * ym - F(0, -2)) / (2 * h3);
  d.fxxy = (pp - 2 * yp + mp - pm + 2 * ym - mm) / (2 * h3);
  d.fxyy = (pp - 2 * xp + pm - mp + 2 * xm - mm) / (2 * h3);
  return d;
}

C det3c(const Vec3C& a, const Vec3C& b, const Vec3C& c) {
  Mat3C m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  return core::det3(m);
}

}  // namespace

AffineInvariants affine_invariants_fd(const RealImmersion& f, C z,
                                      const FDSettings& fd) {
  fd.validate();
  const double x = z.real(), y = z.imag();
  Partials d = central(f, x, y, fd.step);
  if (fd.richardson) {
    const Partials half = central(f, x, y, fd.step / 2);
    d = (half * 4.0 - d) * (1.0 / 3.0);
  }
  auto cx = [](const Vec3& v) -> Vec3C { return v.cast<C>(); };
  const Vec3C rz = (cx(d.fx) - kI * cx(d.fy)) / 2.0;
  const Vec3C rzb = rz.conjugate();
  const Vec3C rzzb = cx(d.fxx + d.fyy) / 4.0;
  const Vec3C rzz = (cx(d.fxx - d.fyy) - 2.0 * kI * cx(d.fxy)) / 4.0;
  const Vec3C rzzz =
      (cx(d.fxxx - 3.0 * d.fxyy) + kI * cx(d.fyyy - 3.0 * d.fxxy)) / 8.0;

  const double e2psi = std::abs(4.0 * det3c(rz, rzb, rzzb));
  if (!(e2psi > 1e-14) || !std::isfinite(e2psi))
    throw Error(ErrorCode::DegenerateJacobian,
                "immersion is degenerate: det(r_z, r_zb, r_zzb) vanishes");
  AffineInvariants inv;
  inv.psi = 0.5 * std::log(e2psi);
  inv.U = std::sqrt(-4.0 * kI * det3c(rz, rzz, rzzz));
  inv.conformal_residual = std::abs(det3c(rz, rzb, rzz));
  return inv;
}

}  // namespace affdress::surfaces
