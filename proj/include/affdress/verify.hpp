// Finite-difference Wirtinger calculus, the Tzitzeica residual, soliton
// tau-function oracles and grid comparison reports.
//
// The soliton tau-function (an exponential polynomial) is unrelated to the
// tau reality twist of the loopgroup module; the names are kept apart by
// namespace (loopgroup::tau_twist vs verify::TauSeries).
#pragma once

#include "affdress/core.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace affdress::verify {

using core::FDSettings;

using ComplexField = std::function<C(C z)>;
using RealField = std::function<double(C z)>;

struct Wirtinger {
  C f_z, f_zb, f_zzb;
};

// d/dz = (d/dx - i d/dy)/2, d/dzb = (d/dx + i d/dy)/2, d2/dzdzb = Lap/4.
Wirtinger wirtinger(const ComplexField& f, C z, const FDSettings& fd = {});

// |h_zzb h - h_z h_zb - h^3 + 1| at z for a real metric h.
double tzitzeica_residual(const RealField& h, C z, const FDSettings& fd = {});

// c * exp(px x + py y); a soliton factor exp(k z + 3 zb/k + s) has
// px = k + 3/k and py = i (k - 3/k).
struct ExpTerm {
  C coeff;
  C px, py;
};

ExpTerm soliton_term(C k, C s);

// tau = sum of ExpTerm; h = 1 - 2 (ln tau)_zzb = 1 - Lap(ln tau)/2 with all
// derivatives taken analytically.
struct TauSeries {
  std::vector<ExpTerm> terms;

  C value(C z) const;
  double largest_term(C z) const;  // max |term| at z
  // True where |tau| < 1e-6 (1 + largest term): the singular set of h.
  bool near_zero(C z) const;
  // Distance estimate |tau| / |grad tau| to the zero set.
  double zero_distance(C z) const;
  // Throws TauZero near the zero set.  `imag` receives Im of the complex h.
  double h(C z, double* imag = nullptr) const;
};

struct SolitonParams {
  C k{1.0, 0.0};
  C s{0.0, 0.0};
};

struct TwoSolitonParams {
  C k1{1.0, 0.0}, k2{2.0, 0.0};
  C s1{0.0, 0.0}, s2{0.0, 0.0};
};

// tau = 1 - exp(k z + 3 zb/k + s).
TauSeries one_soliton_tau(const SolitonParams& p);
// tau = 1 + e1 + e2 + A12 e1 e2 with the two-soliton interaction coefficient.
TauSeries two_soliton_tau(const TwoSolitonParams& p);
C interaction_coefficient(C k1, C k2);

double tau_one_soliton_h(C z, const SolitonParams& p);
double tau_two_soliton_h(C z, const TwoSolitonParams& p);

struct CompareReport {
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::size_t argmax_i = 0, argmax_j = 0;  // node of max_abs
  std::size_t compared = 0;
  std::size_t masked = 0;
};

using NodeMask = std::function<bool(std::size_t i, std::size_t j)>;

// Elementwise comparison of a against reference b over unmasked nodes;
// relative error is |a - b| / |b|.  Non-finite nodes count as masked.
CompareReport compare_grids(const ScalarGrid& a, const ScalarGrid& b,
                            const NodeMask& mask = {});

struct ResidualReport {
  double max_residual = 0.0;
  std::size_t argmax_i = 0, argmax_j = 0;
  std::size_t evaluated = 0;
  std::size_t masked = 0;
  std::size_t negative_nodes = 0;  // evaluated nodes with h < 0
};

struct ResidualOptions {
  // Nodes with |h| above the cap are excluded (see README: the absolute
  // residual of a finite-difference stencil grows with |h| near the
  // double-pole curves of soliton metrics).
  double h_cap = std::numeric_limits<double>::infinity();
  NodeMask mask;  // additional exclusion predicate
};

// Residual of a field known as a function, at the interior nodes of a grid.
ResidualReport residual_on_grid(const RealField& h, const core::GridSpec& grid,
                                const FDSettings& fd,
                                const ResidualOptions& opt = {});

// Residual of sampled data using the grid spacing as the stencil step
// (Richardson against the doubled stencil when enabled).  Non-finite nodes
// and their stencil neighbours are masked.
ResidualReport residual_of_samples(const ScalarGrid& h, bool richardson,
                                   const ResidualOptions& opt = {});

// Least-squares fit of M(lambda) = F^{-1} dF/dz (central differences,
// Richardson-combined by default) against c0 + c1 lambda over the given spectral samples;
// returns the max-entry residual of the fit.
using FrameField = std::function<Mat3C(C z, C lambda)>;
double lambda_linearity_residual(const FrameField& frame, C z,
                                 const std::vector<C>& lambdas,
                                 const FDSettings& fd = {});

}  // namespace affdress::verify
