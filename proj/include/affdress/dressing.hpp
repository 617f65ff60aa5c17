// Dressing of the vacuum frame by simple (3-pole) and six-pole elements:
// line transport, gauge determination, new metric, new frame and new
// immersion.
//
// Three-pole recipe (pole alpha on the unit circle, c = conj(b)):
//   rank 1: l~ = l E(z, alpha),  rank 2: l~ = l E(z, -alpha)
//   d~ = sqrt(2|b~|^2 - 1),  h = d~^2 e^psi
//   E~(lambda) = A g_l(lambda) E(lambda) g_{l~}(lambda)^{-1} A~^{-1}
// Six-pole recipe (|alpha| != 1):
//   l2~ = l2 E(1/conj alpha)
//   l1~ = l1 g_{1/conj alpha, l2}(alpha) E(alpha) g_{1/conj alpha, l2~}(alpha)^{-1}
//   d~^2 = (2 b1~ c1~ - 1)(2 b2~ c2~ - 1)
#pragma once

#include "affdress/core.hpp"
#include "affdress/loopgroup.hpp"
#include "affdress/surfaces.hpp"

#include <vector>

namespace affdress::dressing {

using loopgroup::ProjLine;
using loopgroup::SimpleElement;
using loopgroup::SixPoleElement;
using loopgroup::TwistSpec;

// Normalized l^t E: the line carried by the frame value E.
ProjLine transport_line3(const ProjLine& line, const Mat3C& frame_at);

struct Dress3Params {
  C alpha{0.0, 1.0};
  C b{-0.5, 1.0};
  int rank = 1;
  TwistSpec spec = TwistSpec::Hyperbolic;

  SimpleElement element() const;  // validates; throws on inadmissible data
  C transport_point() const;      // alpha (rank 1) or -alpha (rank 2)
};

struct Dress3Result {
  ProjLine line_tilde;    // c~ = conj(b~) enforced
  double d_tilde = 0.0;   // positive root; 0 when not admissible
  double h = 0.0;         // signed 2|b~|^2 - 1 (vacuum e^psi = 1)
  bool admissible = false;
  double reality_defect = 0.0;  // |c~ - conj(b~)| before enforcement
};

Dress3Result dress3(const Dress3Params& p, C z);

struct MetricGrid {
  ScalarGrid h;
  std::vector<bool> admissible;
  explicit MetricGrid(const core::GridSpec& s)
      : h(s), admissible(s.size(), false) {}
};

// h over a grid; nodes with h <= 0 keep the signed value and are flagged,
// nodes where transport fails are flagged with h = NaN.
MetricGrid dress3_metric(const Dress3Params& p, const core::GridSpec& grid,
                         unsigned threads = 1);

// The dressed-element data A~ g_{alpha, l~} at z (requires admissibility).
SimpleElement dressed_element3(const Dress3Params& p, C z);

// E~(z, lambda) of the three-pole dressing.
Mat3C dressed_frame3(const Dress3Params& p, C z, C lambda);

// Residues of E~ at alpha and -alpha as printed in the well-definedness
// argument:  2 alpha R E(alpha) P12 g~(-alpha)^t A~^t  and
//           -2 alpha A g(-alpha) E(-alpha) P12 R~^t P12.
double residue_at_alpha(const Dress3Params& p, C z);
double residue_at_minus_alpha(const Dress3Params& p, C z);

// Column r^ of the new immersion from the base data (vacuum by default):
//   rank 2: [-H(l3+a3) r e^psi - 4 a3 (ln phi)_zb r_z - 4 l3 (ln phi)_z r_zb]
//           / ((l3 + a3) e^psi),     phi = (b, conj b, 1) r(z, -alpha)
//   rank 1: phi at +alpha, a3 -> -a3, times (l3 - a3)/(l3 + a3).
Vec3C dress3_column(const Dress3Params& p, C lambda, C z,
                    const surfaces::BaseSurface& base = surfaces::vacuum_column);
// Second route: (A g(lambda))^{-1} E~(lambda) e3.
Vec3C dress3_column_matrix(const Dress3Params& p, C lambda, C z);
// Real point of the dressed surface: affine_point(A g(lambda) r^).
Vec3 dress3_immersion(const Dress3Params& p, C lambda, C z,
                      const surfaces::BaseSurface& base = surfaces::vacuum_column);

struct Dress6Result {
  ProjLine line1_tilde, line2_tilde;
  double d_tilde = 0.0;
  double h = 0.0;  // signed (2 b1~ c1~ - 1)(2 b2~ c2~ - 1)
  double h_imag = 0.0;
  bool admissible = false;
};

Dress6Result dress6(const SixPoleElement& e, C z);
MetricGrid dress6_metric(const SixPoleElement& e, const core::GridSpec& grid,
                         unsigned threads = 1);
SixPoleElement dressed_element6(const SixPoleElement& e, C z);
Mat3C dressed_frame6(const SixPoleElement& e, C z, C lambda);

// Closed-form column E v with
//   v = P12 g2~(-lambda)^t g1~(-lambda)^t e3
// expressed through r, r_z, r_zb of the base.
Vec3C dress6_column(const SixPoleElement& e, C lambda, C z,
                    const surfaces::BaseSurface& base = surfaces::vacuum_column);
// Second route: E(lambda) P12 g2~(-lambda)^t g1~(-lambda)^t A~^t e3.
Vec3C dress6_column_matrix(const SixPoleElement& e, C lambda, C z);
Vec3 dress6_immersion(const SixPoleElement& e, C lambda, C z,
                      const surfaces::BaseSurface& base = surfaces::vacuum_column);

}  // namespace affdress::dressing
