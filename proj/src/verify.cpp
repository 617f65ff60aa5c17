#include "affdress/verify.hpp"

#include <algorithm>
#include <cmath>

namespace affdress::verify {

namespace {

struct Partials2 {
  double fx, fy, lap;
};

Partials2 combine(const Partials2& fine, const Partials2& coarse) {
  return {(4.0 * fine.fx - coarse.fx) / 3.0, (4.0 * fine.fy - coarse.fy) / 3.0,
          (4.0 * fine.lap - coarse.lap) / 3.0};
}

double residual_from(double h, const Partials2& d) {
  // h_zzb = Lap/4 and, for real h, h_z h_zb = |grad h|^2 / 4.
  return std::abs(d.lap / 4.0 * h - (d.fx * d.fx + d.fy * d.fy) / 4.0 -
                  h * h * h + 1.0);
}

Partials2 partials(const RealField& f, C z, double s) {
  const double c = f(z);
  const double xp = f(z + s), xm = f(z - s);
  const double yp = f(z + kI * s), ym = f(z - kI * s);
  return {(xp - xm) / (2 * s), (yp - ym) / (2 * s),
          (xp + xm + yp + ym - 4.0 * c) / (s * s)};
}

}  // namespace

Wirtinger wirtinger(const ComplexField& f, C z, const FDSettings& fd) {
  fd.validate();
  auto at = [&](double s) {
    const C c = f(z);
    const C xp = f(z + s), xm = f(z - s);
    const C yp = f(z + kI * s), ym = f(z - kI * s);
    const C fx = (xp - xm) / (2 * s), fy = (yp - ym) / (2 * s);
    const C lap = (xp + xm + yp + ym - 4.0 * c) / (s * s);
    return Wirtinger{(fx - kI * fy) / 2.0, (fx + kI * fy) / 2.0, lap / 4.0};
  };
  Wirtinger w = at(fd.step);
  if (fd.richardson) {
    const Wirtinger half = at(fd.step / 2);
    w.f_z = (4.0 * half.f_z - w.f_z) / 3.0;
    w.f_zb = (4.0 * half.f_zb - w.f_zb) / 3.0;
    w.f_zzb = (4.0 * half.f_zzb - w.f_zzb) / 3.0;
  }
  return w;
}

double tzitzeica_residual(const RealField& h, C z, const FDSettings& fd) {
  fd.validate();
  Partials2 d = partials(h, z, fd.step);
  if (fd.richardson) d = combine(partials(h, z, fd.step / 2), d);
  return residual_from(h(z), d);
}

ExpTerm soliton_term(C k, C s) {
  if (k == C(0.0))
    throw Error(ErrorCode::DegenerateParameters, "soliton parameter k = 0");
  return {std::exp(s), k + 3.0 / k, kI * (k - 3.0 / k)};
}

C TauSeries::value(C z) const {
  C t = 0.0;
  for (const auto& e : terms) t += e.coeff * std::exp(e.px * z.real() + e.py * z.imag());
  return t;
}

double TauSeries::largest_term(C z) const {
  double m = 0.0;
  for (const auto& e : terms)
    m = std::max(m, std::abs(e.coeff * std::exp(e.px * z.real() + e.py * z.imag())));
  return m;
}

bool TauSeries::near_zero(C z) const {
  return std::abs(value(z)) < 1e-6 * (1.0 + largest_term(z));
}

double TauSeries::zero_distance(C z) const {
  C t = 0.0, tx = 0.0, ty = 0.0;
  for (const auto& e : terms) {
    const C v = e.coeff * std::exp(e.px * z.real() + e.py * z.imag());
    t += v;
    tx += e.px * v;
    ty += e.py * v;
  }
  const double g = std::sqrt(std::norm(tx) + std::norm(ty));
  return g > 0.0 ? std::abs(t) / g : std::numeric_limits<double>::infinity();
}

double TauSeries::h(C z, double* imag) const {
  C t = 0.0, tx = 0.0, ty = 0.0, lap = 0.0;
  for (const auto& e : terms) {
    const C v = e.coeff * std::exp(e.px * z.real() + e.py * z.imag());
    t += v;
    tx += e.px * v;
    ty += e.py * v;
    lap += (e.px * e.px + e.py * e.py) * v;
  }
  if (near_zero(z))
    throw Error(ErrorCode::TauZero, "tau-function vanishes (soliton singular "
                                    "line)");
  const C lap_ln = lap / t - (tx * tx + ty * ty) / (t * t);
  const C hc = 1.0 - 0.5 * lap_ln;
  if (imag) *imag = hc.imag();
  return hc.real();
}

TauSeries one_soliton_tau(const SolitonParams& p) {
  ExpTerm e = soliton_term(p.k, p.s);
  e.coeff = -e.coeff;
  return TauSeries{{ExpTerm{1.0, 0.0, 0.0}, e}};
}

C interaction_coefficient(C k1, C k2) {
  const C s = k1 + k2, q = k1 * k1 + k1 * k2 + k2 * k2;
  if (std::abs(s) < 1e-14 * (std::abs(k1) + std::abs(k2)) ||
      std::abs(q) < 1e-14 * (std::norm(k1) + std::norm(k2)))
    throw Error(ErrorCode::DegenerateParameters,
                "two-soliton parameters need k1 + k2 != 0 and "
                "k1^2 + k1 k2 + k2^2 != 0");
  const C d = k1 - k2;
  return d * d * (k1 * k1 - k1 * k2 + k2 * k2) / (s * s * q);
}

TauSeries two_soliton_tau(const TwoSolitonParams& p) {
  const ExpTerm e1 = soliton_term(p.k1, p.s1);
  const ExpTerm e2 = soliton_term(p.k2, p.s2);
  const C a12 = interaction_coefficient(p.k1, p.k2);
  return TauSeries{{ExpTerm{1.0, 0.0, 0.0}, e1, e2,
                    ExpTerm{a12 * e1.coeff * e2.coeff, e1.px + e2.px,
                            e1.py + e2.py}}};
}

double tau_one_soliton_h(C z, const SolitonParams& p) {
  return one_soliton_tau(p).h(z);
}

double tau_two_soliton_h(C z, const TwoSolitonParams& p) {
  return two_soliton_tau(p).h(z);
}

CompareReport compare_grids(const ScalarGrid& a, const ScalarGrid& b,
                            const NodeMask& mask) {
  if (!(a.spec == b.spec) || a.values.size() != b.values.size())
    throw Error(ErrorCode::SpecMismatch, "grids have different specs");
  CompareReport rep;
  for (std::size_t j = 0; j < a.spec.ny; ++j) {
    for (std::size_t i = 0; i < a.spec.nx; ++i) {
      const C va = a.at(i, j), vb = b.at(i, j);
      const bool finite = std::isfinite(std::abs(va)) && std::isfinite(std::abs(vb));
      if ((mask && mask(i, j)) || !finite) {
        ++rep.masked;
        continue;
      }
      ++rep.compared;
      const double err = std::abs(va - vb);
      const double rel = std::abs(vb) > 0.0 ? err / std::abs(vb) : err;
      if (rep.compared == 1 || err > rep.max_abs) {
        rep.max_abs = err;
        rep.argmax_i = i;
        rep.argmax_j = j;
      }
      rep.max_rel = std::max(rep.max_rel, rel);
    }
  }
  return rep;
}

namespace {

void record(ResidualReport& rep, double r, double h, std::size_t i,
            std::size_t j) {
  ++rep.evaluated;
  if (h < 0.0) ++rep.negative_nodes;
  if (r > rep.max_residual || rep.evaluated == 1) {
    rep.max_residual = r;
    rep.argmax_i = i;
    rep.argmax_j = j;
  }
}

}  // namespace

ResidualReport residual_on_grid(const RealField& h, const core::GridSpec& grid,
                                const FDSettings& fd,
                                const ResidualOptions& opt) {
  grid.validate();
  fd.validate();
  ResidualReport rep;
  for (std::size_t j = 1; j + 1 < grid.ny; ++j) {
    for (std::size_t i = 1; i + 1 < grid.nx; ++i) {
      const C z = grid.z(i, j);
      if (opt.mask && opt.mask(i, j)) {
        ++rep.masked;
        continue;
      }
      double hv;
      try {
        hv = h(z);
      } catch (const Error&) {
        ++rep.masked;
        continue;
      }
      if (!std::isfinite(hv) || std::abs(hv) > opt.h_cap) {
        ++rep.masked;
        continue;
      }
      double r;
      try {
        r = tzitzeica_residual(h, z, fd);
      } catch (const Error&) {
        ++rep.masked;
        continue;
      }
      record(rep, std::isfinite(r) ? r : std::numeric_limits<double>::infinity(),
             hv, i, j);
    }
  }
  return rep;
}

ResidualReport residual_of_samples(const ScalarGrid& g, bool richardson,
                                   const ResidualOptions& opt) {
  const core::GridSpec& s = g.spec;
  s.validate();
  const std::size_t reach = richardson ? 2 : 1;
  const double dx = s.dx(), dy = s.dy();
  auto val = [&](std::size_t i, std::size_t j) { return g.at(i, j).real(); };
  auto stencil = [&](std::size_t i, std::size_t j, std::size_t m) {
    const double hx = dx * double(m), hy = dy * double(m);
    const double c = val(i, j);
    const double xp = val(i + m, j), xm = val(i - m, j);
    const double yp = val(i, j + m), ym = val(i, j - m);
    return Partials2{(xp - xm) / (2 * hx), (yp - ym) / (2 * hy),
                     (xp - 2 * c + xm) / (hx * hx) + (yp - 2 * c + ym) / (hy * hy)};
  };
  ResidualReport rep;
  for (std::size_t j = 0; j < s.ny; ++j) {
    for (std::size_t i = 0; i < s.nx; ++i) {
      const bool interior =
          i >= reach && j >= reach && i + reach < s.nx && j + reach < s.ny;
      if (!interior) continue;
      bool ok = !(opt.mask && opt.mask(i, j));
      for (std::size_t m = 0; ok && m <= reach; ++m) {
        ok = std::isfinite(val(i + m, j)) && std::isfinite(val(i - m, j)) &&
             std::isfinite(val(i, j + m)) && std::isfinite(val(i, j - m));
      }
      const double hv = val(i, j);
      if (!ok || std::abs(hv) > opt.h_cap) {
        ++rep.masked;
        continue;
      }
      Partials2 d = stencil(i, j, 1);
      if (richardson) d = combine(d, stencil(i, j, 2));
      record(rep, residual_from(hv, d), hv, i, j);
    }
  }
  return rep;
}

double lambda_linearity_residual(const FrameField& frame, C z,
                                 const std::vector<C>& lambdas,
                                 const FDSettings& fd) {
  fd.validate();
  if (lambdas.size() < 3)
    throw Error(ErrorCode::InvalidParameter,
                "lambda-linearity fit needs at least 3 samples");
  std::vector<Mat3C> M;
  for (C l : lambdas) {
    const auto dz = [&](double h) -> Mat3C {
      const Mat3C fx = (frame(z + h, l) - frame(z - h, l)) / (2 * h);
      const Mat3C fy = (frame(z + kI * h, l) - frame(z - kI * h, l)) / (2 * h);
      return (fx - kI * fy) / 2.0;
    };
    const Mat3C d = fd.richardson ? Mat3C((4.0 * dz(fd.step / 2) - dz(fd.step)) / 3.0)
                                  : dz(fd.step);
    M.push_back(core::inv3(frame(z, l)) * d);
  }
  // Normal equations of the 2-parameter complex least-squares problem.
  const std::size_t n = lambdas.size();
  Eigen::MatrixXcd V(n, 2);
  for (std::size_t k = 0; k < n; ++k) {
    V(k, 0) = 1.0;
    V(k, 1) = lambdas[k];
  }
  const auto qr = V.colPivHouseholderQr();
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Eigen::VectorXcd y(n);
      for (std::size_t k = 0; k < n; ++k) y(k) = M[k](a, b);
      const Eigen::VectorXcd c = qr.solve(y);
      worst = std::max(worst, (V * c - y).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace affdress::verify
