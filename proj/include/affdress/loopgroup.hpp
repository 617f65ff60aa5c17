// Twisting automorphisms, the constant structure matrices, simple (3-pole)
// and six-pole rational loop elements, and reality-condition checkers.
//
// Conventions:
//   eps = e^{i pi/3},  omega = eps^2
//   tau(g)   = T conj(g) T^{-1},       T = [[0,1,0],[1,0,0],[0,0,-H/2]]
//   sigma(g) = P (g^t)^{-1} P^{-1},    P = Q P12, Q = diag(eps^4, eps^2, 1)
// A loop g(lambda) is twisted when sigma(g(lambda)) = g(eps lambda) and
// tau(g(1/conj(lambda))) = g(lambda).
#pragma once

#include "affdress/core.hpp"

#include <functional>
#include <vector>

namespace affdress::loopgroup {

// Hyperbolic: H = -2, T_plus.  Elliptic: H = +2, T_minus.
enum class TwistSpec { Hyperbolic, Elliptic };

double mean_curvature(TwistSpec spec);  // -2 or +2
TwistSpec spec_from_H(double H);        // rejects anything but +-2

struct TwistConstants {
  C epsilon;
  Mat3C T_plus, T_minus, P, Q, P12, P132, N_hyperbolic, N_elliptic;
};
const TwistConstants& constants();
const Mat3C& T_matrix(TwistSpec spec);

// Projective line C*(b, c, 1).  Construction enforces |2bc - 1| above the
// cone-proximity threshold 1e-9 (1 + |b||c|).
struct ProjLine {
  C b{0.0, 0.0};
  C c{0.0, 0.0};

  static ProjLine make(C b, C c);
  static ProjLine from_vector(const Vec3C& v);  // normalizes, then checks cone
  Vec3C vec() const { return {b, c, C(1.0)}; }
  C cone_value() const { return 2.0 * b * c - 1.0; }
};

struct SimpleElement {
  C alpha{1.0, 0.0};
  ProjLine line;
  C d{1.0, 0.0};
  int rank = 1;  // 1: rank-1 residue (g), 2: rank-2 residue (m)
  int sign = 1;  // third diagonal entry of A = diag(d, 1/d, sign)

  void validate() const;
};

// Data satisfying the twisted-reality constraints for a pole on the unit
// circle: |alpha| = 1, c = conj(b), |b|^2 > 1/2, d = sqrt(2|b|^2 - 1) > 0.
// Only the hyperbolic twist admits such elements (see reality_phase); an
// elliptic request raises NoRealElement.
SimpleElement make_real_simple(C alpha, C b, int rank, TwistSpec spec);

// Unimodular scalar kappa such that tau(kappa g(1/conj(lambda))) =
// kappa g(lambda) for the data of make_real_simple: 1 for rank 2, i for
// rank 1.  The scalar cancels in every dressing formula.
C reality_phase(int rank);

Mat3C sigma_twist(const Mat3C& g);
Mat3C tau_twist(const Mat3C& g, TwistSpec spec);

// A = diag(d, 1/d, sign) times the rank-1 or rank-2 rational bracket.
Mat3C eval_simple(const SimpleElement& e, C lambda);
// g(lambda)^{-1} = P12 g(-lambda)^t P12 (sigma_1 reality of simple elements).
Mat3C eval_simple_inverse(const SimpleElement& e, C lambda);
// Residue matrix at lambda = alpha of the bracket (without A).
Mat3C simple_residue(const SimpleElement& e);
// Closed form det = ((lambda^3 + alpha^3)/(lambda^3 - alpha^3))^rank.
C simple_det(const SimpleElement& e, C lambda);

struct SixPoleElement {
  C alpha{0.5, 0.0};  // |alpha| not in {0, 1}
  ProjLine line1;     // derived
  ProjLine line2;     // free datum
  double d = 1.0;     // positive root of Psi / den^2
  double H = -2.0;

  // The two rank-1 factors (with unit gauge) and A = diag(d, 1/d, 1).
  SimpleElement first() const;   // pole alpha, line1
  SimpleElement second() const;  // pole 1/conj(alpha), line2
};

struct SixPoleLine1 {
  ProjLine line1;
  double d_squared;
  double psi;
  double denominator;
};

// Psi_{alpha, b2, c2} of the positivity restriction.
double sixpole_psi(C alpha, C b2, C c2, double H);

// Solves the tau-reality constraints for line1 given (alpha, line2, H).
SixPoleLine1 derive_sixpole_line1(C alpha, const ProjLine& line2, double H);
SixPoleElement make_sixpole(C alpha, const ProjLine& line2, double H);

Mat3C eval_sixpole(const SixPoleElement& e, C lambda);
Mat3C eval_sixpole_inverse(const SixPoleElement& e, C lambda);

using Loop = std::function<Mat3C(C)>;

struct TwistDeviation {
  double sigma = 0.0;
  double tau = 0.0;
  double max() const { return sigma > tau ? sigma : tau; }
};

// Max-entry deviations of sigma(g(l)) - g(eps l) and
// tau(g(1/conj l)) - g(l) over the samples.
TwistDeviation check_twisted(const Loop& loop, TwistSpec spec,
                             const std::vector<C>& samples);
double check_twisted_max(const Loop& loop, TwistSpec spec,
                         const std::vector<C>& samples);

// Same conditions up to one constant scalar per condition (fitted by least
// squares over the samples), relative to |g|.  Separates projective reality
// from strict reality for elements whose determinant has the wrong parity.
TwistDeviation check_twisted_projective(const Loop& loop, TwistSpec spec,
                                        const std::vector<C>& samples);

}  // namespace affdress::loopgroup
