#include "affdress/dressing.hpp"

#include "affdress/detail/extended.hpp"

#include <cmath>
#include <limits>

namespace affdress::dressing {

using core::max_abs;
using loopgroup::constants;
using loopgroup::eval_simple;
using loopgroup::eval_simple_inverse;
using surfaces::vacuum_frame;

namespace {

Mat3C gauge(double d) {
  Mat3C A = Mat3C::Zero();
  A.diagonal() << d, 1.0 / d, 1.0;
  return A;
}

void check_denominator(C value, C scale_term, const char* what) {
  if (std::abs(value) < 1e-9 * (1.0 + std::abs(scale_term)))
    throw Error(ErrorCode::DenominatorPole, what);
}

// l . r without complex conjugation.
C bilinear(const Vec3C& l, const Vec3C& r) { return (l.array() * r.array()).sum(); }

}  // namespace

ProjLine transport_line3(const ProjLine& line, const Mat3C& frame_at) {
  const Vec3C v = (line.vec().transpose() * frame_at).transpose();
  return ProjLine::from_vector(v);
}

SimpleElement Dress3Params::element() const {
  return loopgroup::make_real_simple(alpha, b, rank, spec);
}

C Dress3Params::transport_point() const { return rank == 1 ? alpha : -alpha; }

Dress3Result dress3(const Dress3Params& p, C z) {
  const SimpleElement e = p.element();
  const ProjLine moved = ProjLine::from_vector(
      surfaces::vacuum_transport(e.line.vec(), z, p.transport_point()));
  Dress3Result out;
  out.reality_defect = std::abs(moved.c - std::conj(moved.b));
  out.line_tilde = ProjLine{moved.b, std::conj(moved.b)};
  out.h = 2.0 * std::norm(moved.b) - 1.0;
  out.admissible = out.h > 0.0;
  out.d_tilde = out.admissible ? std::sqrt(out.h) : 0.0;
  return out;
}

MetricGrid dress3_metric(const Dress3Params& p, const core::GridSpec& grid,
                         unsigned threads) {
  grid.validate();
  p.element();  // reject inadmissible parameters before touching the grid
  MetricGrid out(grid);
  // vector<bool> packs bits, so workers write byte flags instead.
  std::vector<unsigned char> flags(grid.size(), 0);
  core::parallel_rows(grid.ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      try {
        const Dress3Result r = dress3(p, grid.z(i, j));
        out.h.values[k] = r.h;
        flags[k] = r.admissible;
      } catch (const Error&) {
        out.h.values[k] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
  for (std::size_t k = 0; k < flags.size(); ++k) out.admissible[k] = flags[k] != 0;
  return out;
}

SimpleElement dressed_element3(const Dress3Params& p, C z) {
  const Dress3Result r = dress3(p, z);
  if (!r.admissible)
    throw Error(ErrorCode::NonPositiveGauge,
                "dressed gauge 2|b~|^2-1 <= 0 at this point");
  SimpleElement e = p.element();
  e.line = ProjLine::make(r.line_tilde.b, r.line_tilde.c);
  e.d = r.d_tilde;
  return e;
}

Mat3C dressed_frame3(const Dress3Params& p, C z, C lambda) {
  const SimpleElement e = p.element();
  const SimpleElement et = dressed_element3(p, z);
  return eval_simple(e, lambda) * vacuum_frame(z, lambda) *
         eval_simple_inverse(et, lambda);
}

double residue_at_alpha(const Dress3Params& p, C z) {
  const SimpleElement e = p.element();
  SimpleElement et = dressed_element3(p, z);
  const Mat3C At = gauge(et.d.real());
  et.d = 1.0;
  const Mat3C& P12 = constants().P12;
  const Mat3C res = 2.0 * p.alpha * loopgroup::simple_residue(e) *
                    vacuum_frame(z, p.alpha) * P12 *
                    eval_simple(et, -p.alpha).transpose() * At.transpose();
  return max_abs(res);
}

double residue_at_minus_alpha(const Dress3Params& p, C z) {
  const SimpleElement e = p.element();
  const SimpleElement et = dressed_element3(p, z);
  const Mat3C& P12 = constants().P12;
  const Mat3C res = -2.0 * p.alpha * eval_simple(e, -p.alpha) *
                    vacuum_frame(z, -p.alpha) * P12 *
                    loopgroup::simple_residue(et).transpose() * P12;
  return max_abs(res);
}

namespace {

// r^ of the new immersion without the rank-1 factor (l3 - a3)/(l3 + a3).
Vec3C dress3_column_unscaled(const Dress3Params& p, C lambda, C z,
                             const surfaces::BaseSurface& base) {
  const SimpleElement e = p.element();
  const C a3 = std::pow(p.alpha, 3);
  const C l3 = lambda * lambda * lambda;
  check_denominator(l3 + a3, a3, "lambda^3 + alpha^3 = 0");

  const surfaces::BaseColumn at = base(z, p.transport_point());
  const Vec3C l = e.line.vec();
  const C phi = bilinear(l, at.r);
  if (std::abs(phi) < 1e-14 * max_abs(l) * max_abs(at.r))
    throw Error(ErrorCode::PhiZero, "phi vanishes: singular curve of the "
                                    "dressed surface");
  const C lnphi_z = bilinear(l, at.r_z) / phi;
  const C lnphi_zb = bilinear(l, at.r_zb) / phi;

  const surfaces::BaseColumn b = base(z, lambda);
  const C A3 = p.rank == 2 ? a3 : -a3;
  return (-b.H * (l3 + A3) * b.exp_psi * b.r - 4.0 * A3 * lnphi_zb * b.r_z -
          4.0 * l3 * lnphi_z * b.r_zb) /
         ((l3 + A3) * b.exp_psi);
}

}  // namespace

Vec3C dress3_column(const Dress3Params& p, C lambda, C z,
                    const surfaces::BaseSurface& base) {
  const C a3 = std::pow(p.alpha, 3);
  const C l3 = lambda * lambda * lambda;
  check_denominator(l3 - a3, a3, "lambda^3 - alpha^3 = 0");
  Vec3C rhat = dress3_column_unscaled(p, lambda, z, base);
  if (p.rank == 1) rhat *= (l3 - a3) / (l3 + a3);
  return rhat;
}

Vec3C dress3_column_matrix(const Dress3Params& p, C lambda, C z) {
  const SimpleElement e = p.element();
  return eval_simple_inverse(e, lambda) * dressed_frame3(p, z, lambda).col(2);
}

Vec3 dress3_immersion(const Dress3Params& p, C lambda, C z,
                      const surfaces::BaseSurface& base) {
  const SimpleElement e = p.element();
  const auto column = [&](C l) -> Vec3C {
    return eval_simple(e, l) * dress3_column(p, l, z, base);
  };
  const C a3 = std::pow(p.alpha, 3), l3 = lambda * lambda * lambda;
  Vec3C col;
  if (std::abs(l3 - a3) < 1e-6 * (1.0 + std::abs(a3))) {
    // The column E~(lambda) e3 has a removable singularity at the poles of
    // g (e.g. lambda = alpha).  For a function analytic in a disc, the mean
    // over n equally spaced points of a circle equals the centre value up to
    // the n-th Taylor term.  The other singularities (0 and the remaining
    // sixth roots of alpha^6) are at distance >= |alpha| ~ |lambda|, so a
    // radius of |lambda|/4 with 32 points leaves a 4^-32 truncation while
    // keeping the samples well away from the pole.
    constexpr int n = 32;
    const double radius = 0.25 * std::abs(lambda);
    col = Vec3C::Zero();
    for (int k = 0; k < n; ++k)
      col += column(lambda + std::polar(radius, 2 * kPi * (k + 0.5) / n));
    col /= double(n);
  } else {
    col = column(lambda);
  }
  return surfaces::affine_point(col, loopgroup::mean_curvature(p.spec));
}

Dress6Result dress6(const SixPoleElement& e, C z) {
  const C a = e.alpha;
  const C ai = 1.0 / std::conj(a);
  // Both transports in extended precision.  The inverse of the transported
  // factor uses g(lambda)^{-1} = P12 g(-lambda)^t P12; scalar factors drop
  // out projectively, so bracket numerators suffice.
  using namespace detail;
  const Vec3L w2 = vacuum_transport_ld(widen(e.line2.vec()), z, ai);
  if (std::abs(w2(2)) < 1e-12L * w2.cwiseAbs().maxCoeff())
    throw Error(ErrorCode::LineAtInfinity, "transported line2 has vanishing third entry");
  const Vec3L l2v = w2 / w2(2);
  const ProjLine l2t = ProjLine::from_vector(narrow(l2v));
  const CL aL = widen(a), aiL = widen(ai);
  const Mat3L N2 = rank1_numerator_ld(aiL, widen(e.line2.b), widen(e.line2.c), aL);
  const Mat3L N2t = rank1_numerator_ld(aiL, l2v(0), l2v(1), -aL);
  Mat3L P12 = Mat3L::Zero();
  P12(0, 1) = P12(1, 0) = P12(2, 2) = 1.0L;
  const Vec3L u = vacuum_transport_ld(N2.transpose() * widen(e.line1.vec()), z, a);
  const Vec3L v = P12 * N2t * P12 * u;
  if (std::abs(v(2)) < 1e-12L * v.cwiseAbs().maxCoeff())
    throw Error(ErrorCode::LineAtInfinity, "transported line1 has vanishing third entry");
  const ProjLine l1t = ProjLine::from_vector(narrow(Vec3L(v / v(2))));
  Dress6Result out;
  out.line1_tilde = l1t;
  out.line2_tilde = l2t;
  const C prod = l1t.cone_value() * l2t.cone_value();
  out.h = prod.real();
  out.h_imag = prod.imag();
  out.admissible = out.h > 0.0;
  out.d_tilde = out.admissible ? std::sqrt(out.h) : 0.0;
  return out;
}

MetricGrid dress6_metric(const SixPoleElement& e, const core::GridSpec& grid,
                         unsigned threads) {
  grid.validate();
  MetricGrid out(grid);
  // vector<bool> packs bits, so workers write byte flags instead.
  std::vector<unsigned char> flags(grid.size(), 0);
  core::parallel_rows(grid.ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      try {
        const Dress6Result r = dress6(e, grid.z(i, j));
        out.h.values[k] = r.h;
        flags[k] = r.admissible;
      } catch (const Error&) {
        out.h.values[k] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
  for (std::size_t k = 0; k < flags.size(); ++k) out.admissible[k] = flags[k] != 0;
  return out;
}

SixPoleElement dressed_element6(const SixPoleElement& e, C z) {
  const Dress6Result r = dress6(e, z);
  if (!r.admissible)
    throw Error(ErrorCode::NonPositiveGauge,
                "dressed gauge (2b1~c1~-1)(2b2~c2~-1) <= 0 at this point");
  SixPoleElement t = e;
  t.line1 = r.line1_tilde;
  t.line2 = r.line2_tilde;
  t.d = r.d_tilde;
  return t;
}

Mat3C dressed_frame6(const SixPoleElement& e, C z, C lambda) {
  const SixPoleElement t = dressed_element6(e, z);
  return loopgroup::eval_sixpole(e, lambda) * vacuum_frame(z, lambda) *
         loopgroup::eval_sixpole_inverse(t, lambda);
}

Vec3C dress6_column(const SixPoleElement& e, C lambda, C z,
                    const surfaces::BaseSurface& base) {
  const SixPoleElement t = dressed_element6(e, z);
  const C a = e.alpha, ab = std::conj(a);
  const C b1 = t.line1.b, c1 = t.line1.c, b2 = t.line2.b, c2 = t.line2.c;
  const C K2 = 2.0 * b2 * c2 - 1.0;
  const C L = lambda, L3 = L * L * L, a2 = a * a, a3 = a2 * a;
  const C ab2 = ab * ab, ab3 = ab2 * ab;
  const double A2 = std::norm(a), A4 = A2 * A2;
  check_denominator(L3 + a3, a3, "lambda^3 + alpha^3 = 0");
  check_denominator(ab3 * L3 + 1.0, ab3 * L3,
                    "conj(alpha)^3 lambda^3 + 1 = 0");
  const C den = (L3 + a3) * (ab3 * L3 + 1.0) * K2;
  const C v1 = 2.0 * L *
               (K2 * (ab3 * a2 * L3 * c1 + ab * c2 * (L3 - a3) - a2 * c1 * K2) +
                2.0 * ab2 * a * L3 * b1 * c2 * c2) /
               den;
  const C v2 = -2.0 * L * L *
               (K2 * (ab3 * a * L3 * b1 + ab2 * b2 * (L3 - a3) -
                      2.0 * ab * a2 * b2 * b2 * c1) -
                a * b1) /
               den;
  const C v3 = (K2 * ((L3 - a3) * (ab3 * L3 - 1.0) - 4.0 * A4 * L3 * b2 * c1) -
                4.0 * A2 * L3 * b1 * c2) /
               den;
  const surfaces::BaseColumn col = base(z, lambda);
  const double s = std::sqrt(-2.0 * col.H) / std::sqrt(col.exp_psi);
  return (s / L) * v1 * col.r_z + L * s * v2 * col.r_zb - col.H * v3 * col.r;
}

Vec3C dress6_column_matrix(const SixPoleElement& e, C lambda, C z) {
  const SixPoleElement t = dressed_element6(e, z);
  Mat3C At = Mat3C::Zero();
  At.diagonal() << t.d, 1.0 / t.d, 1.0;
  const Mat3C M = vacuum_frame(z, lambda) * constants().P12 *
                  eval_simple(t.second(), -lambda).transpose() *
                  eval_simple(t.first(), -lambda).transpose() *
                  At.transpose();
  return M.col(2);
}

Vec3 dress6_immersion(const SixPoleElement& e, C lambda, C z,
                      const surfaces::BaseSurface& base) {
  const Vec3C col =
      loopgroup::eval_sixpole(e, lambda) * dress6_column(e, lambda, z, base);
  return surfaces::affine_point(col, e.H);
}

}  // namespace affdress::dressing
