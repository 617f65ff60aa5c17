// Base surfaces (vacuum frame and immersion, Hildebrand oracle surface),
// conversion of complex frame columns to real points, and finite-difference
// extraction of the affine metric / cubic form from sampled immersions.
#pragma once

#include "affdress/core.hpp"

#include <functional>

namespace affdress::surfaces {

// R(mu) = exp(mu z + conj(z)/mu).
C R(C z, C mu);

// Vacuum extended frame E(z, lambda) = exp(lambda z P132 + (conj z/lambda)
// P132^t), E(0, lambda) = I.  Two independent evaluation routes:
//   fourier: F(0, lambda)^{-1} F(z, lambda) with F built from R;
//   cyclic closed form of exp(t P132).
// vacuum_frame uses the fourier route (fewer cancelling exponentials).
//   cyclic closed form of exp(t P132).
Mat3C vacuum_frame(C z, C lambda);
Mat3C vacuum_frame_fourier(C z, C lambda);
Mat3C vacuum_frame_exponential(C z, C lambda);

// (l^t E(z, lambda))^t by the fourier route in extended precision.  For the
// lines used in dressing one of the three exponential coefficients vanishes
// exactly; in double precision its rounding residue, multiplied by a large
// exponential, is what limits finite-difference checks of the new metric.
Vec3C vacuum_transport(const Vec3C& line, C z, C lambda);

// X = (sqrt3/6) (R(lambda), R(omega lambda), R(omega^2 lambda)).
Vec3C vacuum_immersion(C z, C lambda);

// Closed-form immersion column of a base frame together with its Wirtinger
// derivatives and the metric data the dressing formulas need.
struct BaseColumn {
  Vec3C r, r_z, r_zb;
  double exp_psi = 1.0;
  double H = -2.0;
};
using BaseSurface = std::function<BaseColumn(C z, C lambda)>;

// r = E(z, lambda) e3 / 2 for the vacuum, with r_z = lambda P132 r and
// r_zb = P132^t r / lambda.
BaseColumn vacuum_column(C z, C lambda);

// -(1/H) Re(N col / N33): the third column of N F N^{-1}, where
// N = [[1,1,0],[i,-i,0],[0,0,sqrt2 N33]]/sqrt2 and N33 = sqrt(-H/2).
Vec3 real_immersion(const Vec3C& frame_third_column, double H);

// real_immersion scaled by 2^{1/3}: an SL(3) frame column yields an
// immersion whose determinant invariants carry a volume factor 2; this
// scaling makes the vacuum produce e^psi = 1 and |U| = 1 exactly.
Vec3 affine_point(const Vec3C& frame_third_column, double H);

// The conformal parametrization of the Hildebrand sphere exactly as
// printed (csch = 1/sinh):
//   ( csch(s3 x)(sinh^2(s3 x) + 3y) e^y, -csch(s3 x) cosh(s3 x) e^{-2y},
//     -csch(s3 x) e^y ) / s3
// evaluated at x - offset.  Throws CoordinateSingularity at sinh = 0.
Vec3 hildebrand_surface(double x, double y, double offset = 0.0);
// The same surface scaled by 4^{-1/3} so that its determinant invariants
// follow the same normalization as affine_point (H = -2, |U| = 1).
Vec3 hildebrand_normalized(double x, double y, double offset = 0.0);
// (3/2)(csch^2(s3 x) + 2/3).
double hildebrand_metric(double x, double offset = 0.0);

struct AffineInvariants {
  double psi = 0.0;
  C U{0.0, 0.0};
  double conformal_residual = 0.0;
  double exp_2psi() const;
};

using RealImmersion = std::function<Vec3(double x, double y)>;

using core::FDSettings;

// Wirtinger derivatives (d/dz = (d/dx - i d/dy)/2) by central differences:
//   e^{2 psi} = |4 det(r_z, r_zb, r_zzb)|,  U^2 = -4i det(r_z, r_zz, r_zzz),
//   conformal residual = |det(r_z, r_zb, r_zz)|.
AffineInvariants affine_invariants_fd(const RealImmersion& f, C z,
                                      const FDSettings& fd = {});

}  // namespace affdress::surfaces
