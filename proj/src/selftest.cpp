#include "affdress/selftest.hpp"

#include "affdress/dressing.hpp"
#include "affdress/loopgroup.hpp"
#include "affdress/surfaces.hpp"
#include "affdress/verify.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace affdress::selftest {

namespace {

using loopgroup::TwistSpec;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng_);
  }
  C complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  C unit() { return std::polar(1.0, uniform(0.0, 2 * kPi)); }
  Mat3C matrix() {
    Mat3C m;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) = complex(1.0);
    return m;
  }
  // A spectral sample kept away from the cube roots of +-alpha^3.
  C lambda_away_from(C alpha) {
    for (;;) {
      const C l = std::polar(uniform(0.5, 1.6), uniform(0.0, 2 * kPi));
      const C a3 = alpha * alpha * alpha, l3 = l * l * l;
      if (std::abs(l3 - a3) > 0.2 * (1 + std::abs(a3)) &&
          std::abs(l3 + a3) > 0.2 * (1 + std::abs(a3)))
        return l;
    }
  }
  // Unit-circle pole with an admissible real line, c = conj(b).
  dressing::Dress3Params dress3_params(int rank) {
    dressing::Dress3Params p;
    p.alpha = unit();
    p.rank = rank;
    do {
      p.b = complex(1.5);
    } while (2 * std::norm(p.b) - 1 < 0.2);
    return p;
  }
  // Off-circle six-pole data with Psi > 0.  Round-off in the derived line
  // grows like d^2, so the sample is restricted to a well-conditioned range.
  loopgroup::SixPoleElement sixpole() {
    for (;;) {
      const double mod = uniform(0.0, 1.0) < 0.5 ? uniform(0.3, 0.8) : uniform(1.25, 2.5);
      const C alpha = std::polar(mod, uniform(0.0, 2 * kPi));
      try {
        const auto line2 = loopgroup::ProjLine::make(complex(1.2), complex(1.2));
        const auto derived = loopgroup::derive_sixpole_line1(alpha, line2, -2.0);
        if (derived.d_squared < 1e-2 || derived.d_squared > 1e2) continue;
        return loopgroup::make_sixpole(alpha, line2, -2.0);
      } catch (const Error&) {
      }
    }
  }

 private:
  std::mt19937_64 rng_;
};

struct Tracker {
  SuiteResult& suite;
  std::map<std::string, std::size_t> where;

  void add(const std::string& name, double value, double tol) {
    auto it = where.find(name);
    if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
    if (it == where.end()) {
      where[name] = suite.checks.size();
      suite.checks.push_back({name, value, tol});
    } else {
      Check& c = suite.checks[it->second];
      c.value = std::max(c.value, value);
    }
  }
};

double rel(const Mat3C& a, const Mat3C& b) {
  return core::max_abs(Mat3C(a - b)) / (1.0 + core::max_abs(b));
}

// Dressed frames vary on the scale of the distance to the singular curve of
// the new metric; a smaller step keeps the step^4 truncation of the
// Richardson stencil negligible there.
const core::FDSettings kFrameFD{1e-4, true};

std::vector<C> unit_samples(Sampler& s, int n) {
  std::vector<C> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(s.uniform(0.6, 1.5), s.uniform(0.0, 2 * kPi)));
  return out;
}

// Spectral samples whose twist images (eps l, 1/conj l) all stay away from
// the cube-root poles +-p of the given elements: near a pole the entries grow
// like 1/|l^3 - p^3| and the identities lose that many digits.
std::vector<C> samples_away(Sampler& s, int n, const std::vector<C>& poles) {
  const auto clear = [&](C l) {
    for (C p : poles) {
      const C p3 = p * p * p, l3 = l * l * l;
      const double gap = 0.3 * (1 + std::abs(p3));
      if (std::abs(l3 - p3) < gap || std::abs(l3 + p3) < gap) return false;
    }
    return true;
  };
  std::vector<C> out;
  while (int(out.size()) < n) {
    const C l = std::polar(s.uniform(0.6, 1.5), s.uniform(0.0, 2 * kPi));
    if (clear(l) && clear(1.0 / std::conj(l))) out.push_back(l);
  }
  return out;
}

SuiteResult suite_core(Sampler& s) {
  SuiteResult r{"core", {}};
  Tracker t{r, {}};
  for (int k = 0; k < 50; ++k) {
    const Mat3C a = s.matrix(), b = s.matrix();
    const C lhs = core::det3(a * b), rhs = core::det3(a) * core::det3(b);
    t.add("det multiplicative", std::abs(lhs - rhs) / (1 + std::abs(rhs)), 1e-12);
    try {
      const Mat3C ai = core::inv3(a);
      t.add("inverse identity", core::max_abs(Mat3C(a * ai - Mat3C::Identity())), 1e-10);
    } catch (const Error&) {
    }
    const Vec3C v(s.complex(1.0), s.complex(1.0), s.complex(1.0) + 2.0);
    const auto l1 = core::solve_line_normalize(v);
    const auto l2 = core::solve_line_normalize(v * s.complex(3.0));
    t.add("line normalisation scale invariance",
          std::abs(l1[0] - l2[0]) + std::abs(l1[1] - l2[1]), 1e-12);
  }
  return r;
}

SuiteResult suite_loopgroup(Sampler& s) {
  SuiteResult r{"loopgroup", {}};
  Tracker t{r, {}};
  const Mat3C& P12 = loopgroup::constants().P12;
  for (int k = 0; k < 40; ++k) {
    loopgroup::SimpleElement e;
    e.alpha = std::polar(s.uniform(0.5, 2.0), s.uniform(0.0, 2 * kPi));
    do {
      try {
        e.line = loopgroup::ProjLine::make(s.complex(1.5), s.complex(1.5));
        break;
      } catch (const Error&) {
      }
    } while (true);
    e.d = s.complex(1.0) + 1.5;
    e.rank = 1 + k % 2;
    const C l = s.lambda_away_from(e.alpha);
    const Mat3C g = loopgroup::eval_simple(e, l);
    const C det = core::det3(g);
    const C expect = loopgroup::simple_det(e, l) * C(double(e.sign));
    t.add("determinant closed form", std::abs(det - expect) / (1 + std::abs(expect)), 1e-11);
    t.add("inverse via P12 g(-l)^t P12",
          core::max_abs(Mat3C(g * loopgroup::eval_simple_inverse(e, l) - Mat3C::Identity())),
          1e-10);
    // The bracket satisfies g(-l)^t P12 g(l) ~ P12 only through A; check the
    // structural symmetry of the bracket itself (unit gauge).
    loopgroup::SimpleElement u = e;
    u.d = 1.0;
    const Mat3C gu = loopgroup::eval_simple(u, l);
    const Mat3C gm = loopgroup::eval_simple(u, -l);
    t.add("bracket orthogonality", rel(Mat3C(gm.transpose() * P12 * gu), P12), 1e-10);
    // The residue has the rank of the element.
    const auto sv = Eigen::JacobiSVD<Mat3C>(loopgroup::simple_residue(u)).singularValues();
    t.add("residue rank", sv(e.rank) / sv(0), 1e-12);
  }
  for (int k = 0; k < 10; ++k) {
    auto p2 = s.dress3_params(2);
    const auto e2 = p2.element();
    auto p1 = s.dress3_params(1);
    const auto e1 = p1.element();
    const auto six = s.sixpole();
    const auto samples =
        samples_away(s, 6, {e2.alpha, e1.alpha, six.alpha, 1.0 / std::conj(six.alpha)});
    double gscale = 1.0;
    for (C l : samples) gscale = std::max(gscale, core::max_abs(loopgroup::eval_simple(e2, l)));
    t.add("rank-2 real element twisted (relative)",
          loopgroup::check_twisted_max([&](C l) { return loopgroup::eval_simple(e2, l); },
                                       TwistSpec::Hyperbolic, samples) / gscale,
          1e-11);
    t.add("rank-1 real element projectively twisted",
          loopgroup::check_twisted_projective(
              [&](C l) { return loopgroup::eval_simple(e1, l); }, TwistSpec::Hyperbolic, samples)
              .max(),
          1e-10);
    double scale = 1.0;
    for (C l : samples) scale = std::max(scale, core::max_abs(loopgroup::eval_sixpole(six, l)));
    t.add("six-pole element twisted (relative)",
          loopgroup::check_twisted_max([&](C l) { return loopgroup::eval_sixpole(six, l); },
                                       TwistSpec::Hyperbolic, samples) /
              scale,
          1e-10);  // sigma twist inverts g: cond(g) ~ max(d, 1/d)^2
  }
  return r;
}

SuiteResult suite_surfaces(Sampler& s) {
  SuiteResult r{"surfaces", {}};
  Tracker t{r, {}};
  for (int k = 0; k < 10; ++k) {
    const C z = s.complex(1.0);
    const auto samples = unit_samples(s, 5);
    for (C l : samples)
      t.add("frame routes agree",
            rel(surfaces::vacuum_frame_fourier(z, l), surfaces::vacuum_frame_exponential(z, l)),
            1e-11);
    t.add("vacuum frame twisted",
          loopgroup::check_twisted_max([&](C l) { return surfaces::vacuum_frame(z, l); },
                                       TwistSpec::Hyperbolic, samples),
          1e-10);
    t.add("vacuum lambda-linearity",
          verify::lambda_linearity_residual(surfaces::vacuum_frame, z, samples), 1e-7);
    const C l = samples[0];
    const auto col = surfaces::vacuum_column(z, l);
    const Vec3C e3 = surfaces::vacuum_frame(z, l).col(2) / 2.0;
    t.add("vacuum column matches frame", core::max_abs(Vec3C(col.r - e3)) / (1 + core::max_abs(e3)),
          1e-12);
  }
  const double x = s.uniform(0.4, 2.0), y = s.uniform(-1.0, 1.0);
  const auto inv = surfaces::affine_invariants_fd(
      [](double a, double b) { return surfaces::hildebrand_normalized(a, b); }, C(x, y));
  t.add("Hildebrand metric", std::abs(inv.exp_2psi() - std::pow(surfaces::hildebrand_metric(x), 2)),
        1e-4);
  return r;
}

SuiteResult suite_dressing(Sampler& s) {
  SuiteResult r{"dressing", {}};
  Tracker t{r, {}};
  for (int k = 0; k < 12; ++k) {
    auto p = s.dress3_params(1 + k % 2);
    const C z = s.complex(0.6);
    dressing::Dress3Result d;
    try {
      d = dressing::dress3(p, z);
    } catch (const Error&) {
      continue;
    }
    if (!d.admissible || d.h < 0.05 || d.h > 20) continue;
    t.add("3-pole line reality", d.reality_defect, 1e-9);
    t.add("3-pole residue at alpha", dressing::residue_at_alpha(p, z), 1e-8);
    t.add("3-pole residue at -alpha", dressing::residue_at_minus_alpha(p, z), 1e-8);
    const auto samples = samples_away(s, 5, {p.alpha});
    const auto frame = [&](C zz, C l) { return dressing::dressed_frame3(p, zz, l); };
    t.add("3-pole frame twisted",
          loopgroup::check_twisted_max([&](C l) { return frame(z, l); }, TwistSpec::Hyperbolic,
                                       samples),
          1e-8);
    t.add("3-pole lambda-linearity", verify::lambda_linearity_residual(frame, z, samples, kFrameFD), 1e-5);
    const C l = s.lambda_away_from(p.alpha);
    const Vec3C a = dressing::dress3_column(p, l, z), b = dressing::dress3_column_matrix(p, l, z);
    t.add("3-pole column routes", core::max_abs(Vec3C(a - b)) / (1 + core::max_abs(b)), 1e-9);
  }
  for (int k = 0; k < 6; ++k) {
    const auto e = s.sixpole();
    const C z = s.complex(0.5);
    dressing::Dress6Result d;
    try {
      d = dressing::dress6(e, z);
    } catch (const Error&) {
      continue;
    }
    if (!d.admissible || d.h < 0.05 || d.h > 20) continue;
    t.add("6-pole metric real", std::abs(d.h_imag), 1e-9);
    const auto samples = samples_away(s, 5, {e.alpha, 1.0 / std::conj(e.alpha)});
    const auto frame = [&](C zz, C l) { return dressing::dressed_frame6(e, zz, l); };
    t.add("6-pole frame twisted",
          loopgroup::check_twisted_max([&](C l) { return frame(z, l); }, TwistSpec::Hyperbolic,
                                       samples),
          1e-7);
    // Relative to the size of the frame derivative, which grows with d^2.
    double dscale = 1.0;
    for (C l : samples) dscale = std::max(dscale, core::max_abs(Mat3C(frame(z, l))));
    t.add("6-pole lambda-linearity (relative)",
          verify::lambda_linearity_residual(frame, z, samples, kFrameFD) / dscale, 1e-6);
    const C l = s.lambda_away_from(e.alpha);
    if (std::abs(std::pow(l, 3) - std::pow(1.0 / std::conj(e.alpha), 3)) < 0.2) continue;
    const Vec3C a = dressing::dress6_column(e, l, z), b = dressing::dress6_column_matrix(e, l, z);
    t.add("6-pole column routes", core::max_abs(Vec3C(a - b)) / (1 + core::max_abs(b)), 1e-8);
  }
  return r;
}

SuiteResult suite_verify(Sampler& s) {
  SuiteResult r{"verify", {}};
  Tracker t{r, {}};
  for (int k = 0; k < 10; ++k) {
    const C z = s.complex(1.0);
    const auto w = verify::wirtinger([](C u) { return std::exp(2.0 * u + std::conj(u)); },
                                     z, core::FDSettings{1e-3, true});
    const C f = std::exp(2.0 * z + std::conj(z));
    t.add("Wirtinger derivatives", std::abs(w.f_z - 2.0 * f) + std::abs(w.f_zb - f) +
                                       std::abs(w.f_zzb - 2.0 * f),
          1e-7 * (1 + std::abs(f)));
    // |k|^2 = 3 with real s gives a real soliton, which solves the equation where tau != 0.
    verify::SolitonParams p{std::polar(std::sqrt(3.0), s.uniform(0.0, 2 * kPi)),
                            s.uniform(-1.0, 1.0)};
    const auto tau = verify::one_soliton_tau(p);
    try {
      double im = 0.0;
      const double h = tau.h(z, &im);
      if (std::abs(h) < 10 && std::abs(im) < 1e-9 && tau.zero_distance(z) > 0.2) {
        t.add("one-soliton residual", verify::tzitzeica_residual([&](C u) { return tau.h(u); }, z,
                                                  core::FDSettings{1e-3, true}),
              1e-5);
      }
    } catch (const Error&) {
    }
  }
  // Analytic residual: h = 1 is an exact solution.
  t.add("constant solution residual", verify::tzitzeica_residual([](C) { return 1.0; }, C(0.3, 0.2)),
        1e-12);
  return r;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"core", "loopgroup", "surfaces", "dressing",
                                              "verify"};
  return names;
}

std::vector<SuiteResult> run(const std::string& suite, std::uint64_t seed) {
  using Fn = SuiteResult (*)(Sampler&);
  static const std::map<std::string, Fn> table{{"core", suite_core},
                                               {"loopgroup", suite_loopgroup},
                                               {"surfaces", suite_surfaces},
                                               {"dressing", suite_dressing},
                                               {"verify", suite_verify}};
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) {
    if (suite != "all" && suite != name) continue;
    Sampler s(seed);
    out.push_back(table.at(name)(s));
  }
  if (out.empty())
    throw Error(ErrorCode::InvalidParameter, "unknown selftest suite '" + suite + "'");
  return out;
}

}  // namespace affdress::selftest
