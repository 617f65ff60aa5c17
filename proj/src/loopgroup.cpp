#include "affdress/loopgroup.hpp"

#include <cmath>
#include <sstream>

namespace affdress::loopgroup {

using core::inv3;
using core::max_abs;

double mean_curvature(TwistSpec spec) {
  return spec == TwistSpec::Hyperbolic ? -2.0 : 2.0;
}

TwistSpec spec_from_H(double H) {
  if (H == -2.0) return TwistSpec::Hyperbolic;
  if (H == 2.0) return TwistSpec::Elliptic;
  throw Error(ErrorCode::InvalidParameter,
              "mean curvature H must be -2 (hyperbolic) or +2 (elliptic)");
}

namespace {

TwistConstants build_constants() {
  TwistConstants k;
  k.epsilon = std::polar(1.0, kPi / 3.0);
  const C e = k.epsilon;
  k.P12 << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  k.Q = Mat3C::Zero();
  k.Q.diagonal() << std::pow(e, 4), std::pow(e, 2), 1.0;
  k.P = k.Q * k.P12;
  k.P132 << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  k.T_plus << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  k.T_minus << 0, 1, 0, 1, 0, 0, 0, 0, -1;
  const double s = 1.0 / std::sqrt(2.0);
  k.N_hyperbolic << s, s, 0, C(0, s), C(0, -s), 0, 0, 0, 1.0;
  k.N_elliptic = k.N_hyperbolic;
  k.N_elliptic(2, 2) = kI;  // sqrt(-H/2) with H = +2
  return k;
}

// (lambda^3 - alpha^3) times the bracket: polynomial in lambda.
Mat3C bracket_numerator(const SimpleElement& e, C lambda) {
  const C a = e.alpha, b = e.line.b, c = e.line.c, l = lambda;
  const C k = 2.0 * b * c - 1.0;
  const C a2 = a * a, a3 = a2 * a, l2 = l * l;
  Mat3C M;
  if (e.rank == 1) {
    M << a3 * b * c / k, a * l2 * c * c / k, a2 * l * c / k,
        a2 * l * b * b, a3 * b * c, a * l2 * b,
        a * l2 * b, a2 * l * c, a3;
  } else {
    M << a3 * (b * c - 1.0) / k, -a * l2 * c * c / k, a2 * l * c / k,
        a2 * l * b * b, a3 * (1.0 - b * c), -a * l2 * b,
        -a * l2 * b, a2 * l * c, 0.0;
  }
  return (l * l2 - a3) * Mat3C::Identity() + 2.0 * M;
}

Mat3C bracket(const SimpleElement& e, C lambda) {
  const C a3 = e.alpha * e.alpha * e.alpha;
  return bracket_numerator(e, lambda) / (lambda * lambda * lambda - a3);
}

Mat3C gauge(C d, int sign) {
  Mat3C A = Mat3C::Zero();
  A.diagonal() << d, 1.0 / d, double(sign);
  return A;
}

void check_pole(C alpha, C lambda) {
  const C a3 = alpha * alpha * alpha;
  if (std::abs(lambda * lambda * lambda - a3) < 1e-9 * (1.0 + std::abs(a3)))
    throw Error(ErrorCode::PoleProximity,
                "evaluation point too close to a pole of the simple element");
}

}  // namespace

const TwistConstants& constants() {
  static const TwistConstants k = build_constants();
  return k;
}

const Mat3C& T_matrix(TwistSpec spec) {
  return spec == TwistSpec::Hyperbolic ? constants().T_plus
                                       : constants().T_minus;
}

ProjLine ProjLine::make(C b, C c) {
  core::require_finite(b, "line b");
  core::require_finite(c, "line c");
  ProjLine l{b, c};
  if (std::abs(l.cone_value()) <= 1e-9 * (1.0 + std::abs(b) * std::abs(c)))
    throw Error(ErrorCode::LineInCone, "line lies in the cone (2bc - 1 = 0)");
  return l;
}

ProjLine ProjLine::from_vector(const Vec3C& v) {
  const auto bc = core::solve_line_normalize(v);
  return make(bc[0], bc[1]);
}

void SimpleElement::validate() const {
  core::require_finite(alpha, "alpha");
  core::require_finite(d, "d");
  if (std::abs(alpha) == 0.0)
    throw Error(ErrorCode::InvalidParameter, "pole alpha must be nonzero");
  if (std::abs(d) == 0.0)
    throw Error(ErrorCode::InvalidParameter, "gauge d must be nonzero");
  if (rank != 1 && rank != 2)
    throw Error(ErrorCode::InvalidParameter, "rank must be 1 or 2");
  if (sign != 1 && sign != -1)
    throw Error(ErrorCode::InvalidParameter, "sign must be +1 or -1");
  ProjLine::make(line.b, line.c);
}

SimpleElement make_real_simple(C alpha, C b, int rank, TwistSpec spec) {
  core::require_finite(alpha, "alpha");
  core::require_finite(b, "b");
  if (std::abs(std::abs(alpha) - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidParameter,
                "simple element requires |alpha| = 1");
  const double radicand = 2.0 * std::norm(b) - 1.0;
  if (!(radicand > 0.0))
    throw Error(ErrorCode::NonPositiveGauge, "2|b|^2-1 <= 0");
  if (spec == TwistSpec::Elliptic)
    throw Error(ErrorCode::NoRealElement,
                "no three-pole element satisfies the elliptic reality "
                "condition (odd-parity determinant obstruction)");
  SimpleElement e;
  e.alpha = alpha;
  e.line = ProjLine::make(b, std::conj(b));
  e.d = std::sqrt(radicand);
  e.rank = rank;
  e.sign = 1;
  e.validate();
  return e;
}

C reality_phase(int rank) { return rank == 1 ? kI : C(1.0); }

Mat3C sigma_twist(const Mat3C& g) {
  const auto& k = constants();
  return k.P * inv3(g.transpose()) * inv3(k.P);
}

Mat3C tau_twist(const Mat3C& g, TwistSpec spec) {
  const Mat3C& T = T_matrix(spec);
  return T * g.conjugate() * inv3(T);
}

Mat3C eval_simple(const SimpleElement& e, C lambda) {
  core::require_finite(lambda, "lambda");
  check_pole(e.alpha, lambda);
  return gauge(e.d, e.sign) * bracket(e, lambda);
}

Mat3C eval_simple_inverse(const SimpleElement& e, C lambda) {
  const Mat3C& P12 = constants().P12;
  return P12 * eval_simple(e, -lambda).transpose() * P12;
}

Mat3C simple_residue(const SimpleElement& e) {
  const C a = e.alpha, b = e.line.b, c = e.line.c;
  const C k = 2.0 * b * c - 1.0;
  Mat3C R;
  if (e.rank == 1) {
    const Vec3C left{c / k, b, 1.0};
    const Vec3C right{b, c, 1.0};
    R = left * right.transpose();
  } else {
    R << (b * c - 1.0) / k, -c * c / k, c / k,
        b * b, 1.0 - b * c, -b,
        -b, c, 0.0;
  }
  return (2.0 * a / 3.0) * R;
}

C simple_det(const SimpleElement& e, C lambda) {
  const C l3 = lambda * lambda * lambda;
  const C a3 = e.alpha * e.alpha * e.alpha;
  const C base = (l3 + a3) / (l3 - a3);
  return e.rank == 1 ? base : base * base;
}

SimpleElement SixPoleElement::first() const {
  SimpleElement e;
  e.alpha = alpha;
  e.line = line1;
  return e;
}

SimpleElement SixPoleElement::second() const {
  SimpleElement e;
  e.alpha = 1.0 / std::conj(alpha);
  e.line = line2;
  return e;
}

double sixpole_psi(C alpha, C b2, C c2, double H) {
  const double A = std::abs(alpha);
  const double B = std::norm(b2), Cc = std::norm(c2);
  const double k2 = std::norm(2.0 * b2 * c2 - 1.0);
  const double A2 = A * A, A4 = A2 * A2, A6 = A4 * A2, A8 = A6 * A2,
               A10 = A8 * A2, A12 = A10 * A2;
  return 0.25 * k2 * A12 - Cc * Cc * A10 - H * Cc * A8 +
         (-2.0 * (b2 * c2).real() - 0.5) * A6 - H * B * A4 - B * B * A2 +
         0.25 * k2;
}

SixPoleLine1 derive_sixpole_line1(C alpha, const ProjLine& line2, double H) {
  core::require_finite(alpha, "alpha");
  const double r = std::abs(alpha);
  if (r == 0.0 || std::abs(r - 1.0) < 1e-9)
    throw Error(ErrorCode::NotSixPole,
                "six-pole element requires |alpha| != 1");
  const C b2 = line2.b, c2 = line2.c;
  const C k2 = ProjLine::make(b2, c2).cone_value();
  const double A2 = r * r, B = std::norm(b2), Cc = std::norm(c2);
  const double den =
      -A2 * A2 * B + A2 * Cc + (H / 4.0) * (1.0 - A2 * A2 * A2);
  const double scale = A2 * A2 * B + A2 * Cc + 1.0 + A2 * A2 * A2;
  if (std::abs(den) < 1e-12 * scale)
    throw Error(ErrorCode::DegenerateDenominator,
                "six-pole denominator -|a|^4|b2|^2+|a|^2|c2|^2+(H/4)(1-|a|^6) "
                "vanishes");
  const double s = 1.0 + A2 * A2 * A2;
  const C b1 =
      (-b2 * (-A2 * B + Cc - (H / 2.0) * A2 * A2) + 0.5 * s * std::conj(c2)) /
      den;
  const C c1 = (-c2 * (B + A2 * A2 * Cc + (H / 2.0) * A2) +
                0.5 * k2 * s * std::conj(b2)) /
               (k2 * den);
  const double psi = sixpole_psi(alpha, b2, c2, H);
  if (!(psi > 0.0)) throw Error(ErrorCode::NonPositivePsi, "Psi <= 0");
  SixPoleLine1 out;
  out.line1 = ProjLine::make(b1, c1);
  out.psi = psi;
  out.denominator = den;
  out.d_squared = psi / (den * den);
  return out;
}

SixPoleElement make_sixpole(C alpha, const ProjLine& line2, double H) {
  spec_from_H(H);
  const SixPoleLine1 derived = derive_sixpole_line1(alpha, line2, H);
  SixPoleElement e;
  e.alpha = alpha;
  e.line1 = derived.line1;
  e.line2 = line2;
  e.d = std::sqrt(derived.d_squared);
  e.H = H;
  return e;
}

Mat3C eval_sixpole(const SixPoleElement& e, C lambda) {
  return gauge(e.d, 1) * eval_simple(e.first(), lambda) *
         eval_simple(e.second(), lambda);
}

Mat3C eval_sixpole_inverse(const SixPoleElement& e, C lambda) {
  return eval_simple_inverse(e.second(), lambda) *
         eval_simple_inverse(e.first(), lambda) * gauge(1.0 / e.d, 1);
}

namespace {

Mat3C sample(const Loop& loop, C lambda) {
  Mat3C g = loop(lambda);
  core::require_finite(g, "loop value");
  return g;
}

// Least-squares scalar mu minimising sum |X_k - mu Y_k|^2.
C fit_scalar(const std::vector<Mat3C>& X, const std::vector<Mat3C>& Y) {
  C num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    num += (Y[k].adjoint() * X[k]).trace();
    den += Y[k].squaredNorm();
  }
  return den > 0.0 ? num / den : C(1.0);
}

}  // namespace

TwistDeviation check_twisted(const Loop& loop, TwistSpec spec,
                             const std::vector<C>& samples) {
  const C eps = constants().epsilon;
  TwistDeviation dev;
  for (C l : samples) {
    const Mat3C g = sample(loop, l);
    dev.sigma = std::max(dev.sigma,
                         max_abs(sigma_twist(g) - sample(loop, eps * l)));
    const Mat3C gi = sample(loop, 1.0 / std::conj(l));
    dev.tau = std::max(dev.tau, max_abs(tau_twist(gi, spec) - g));
  }
  return dev;
}

double check_twisted_max(const Loop& loop, TwistSpec spec,
                         const std::vector<C>& samples) {
  return check_twisted(loop, spec, samples).max();
}

TwistDeviation check_twisted_projective(const Loop& loop, TwistSpec spec,
                                        const std::vector<C>& samples) {
  const C eps = constants().epsilon;
  std::vector<Mat3C> sx, sy, tx, ty;
  for (C l : samples) {
    const Mat3C g = sample(loop, l);
    sx.push_back(sigma_twist(g));
    sy.push_back(sample(loop, eps * l));
    tx.push_back(tau_twist(sample(loop, 1.0 / std::conj(l)), spec));
    ty.push_back(g);
  }
  const C ms = fit_scalar(sx, sy), mt = fit_scalar(tx, ty);
  TwistDeviation dev;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    dev.sigma =
        std::max(dev.sigma, max_abs(sx[k] - ms * sy[k]) / max_abs(sy[k]));
    dev.tau = std::max(dev.tau, max_abs(tx[k] - mt * ty[k]) / max_abs(ty[k]));
  }
  return dev;
}

}  // namespace affdress::loopgroup
