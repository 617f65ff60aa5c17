// affdress: generate dressed metrics and surfaces, verify Tzitzeica
// residuals, export the Hildebrand oracle surface and run the invariant
// suites.  Exit codes: 0 success, 1 verification failure, 2 usage or
// parameter error.
#include "affdress/dressing.hpp"
#include "affdress/io.hpp"
#include "affdress/loopgroup.hpp"
#include "affdress/selftest.hpp"
#include "affdress/surfaces.hpp"
#include "affdress/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace {

using affdress::C;
using affdress::Error;
using affdress::ErrorCode;
using affdress::Vec3;
using nlohmann::ordered_json;
namespace core = affdress::core;
namespace io = affdress::io;

// Exit with a usage/parameter diagnostic.
struct UsageError {
  std::string message;
};

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Non-finite numbers are not representable in JSON; they are written as
// strings so the manifest round-trips.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return io::format_double(v);
}

ordered_json manifest(const std::string& command, const std::vector<std::string>& argv) {
  ordered_json m;
  m["schema"] = 1;
  m["command"] = command;
  m["argv"] = argv;
  return m;
}

void write_json(const std::string& path, const ordered_json& j) {
  io::atomic_write(path, j.dump(2) + "\n");
}

std::string default_manifest(const std::string& manifest_flag, const std::string& primary) {
  return manifest_flag.empty() ? primary + ".manifest.json" : manifest_flag;
}

ordered_json metric_summary(const affdress::dressing::MetricGrid& m) {
  std::size_t admissible = 0, singular = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t k = 0; k < m.h.values.size(); ++k) {
    const double v = m.h.values[k].real();
    if (m.admissible[k]) ++admissible;
    if (!std::isfinite(v)) {
      ++singular;
      continue;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ordered_json s;
  s["nodes"] = m.h.values.size();
  s["admissible_nodes"] = admissible;
  s["singular_nodes"] = singular;
  s["h_min"] = num(lo);
  s["h_max"] = num(hi);
  return s;
}

template <class Point>
affdress::SurfaceGrid sample_surface(const core::GridSpec& g,
                                     const affdress::dressing::MetricGrid& metric,
                                     unsigned threads, Point&& point) {
  affdress::SurfaceGrid s(g);
  std::vector<unsigned char> valid(g.size(), 0);  // vector<bool> is not thread-safe per element
  core::parallel_rows(g.ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!metric.admissible[k]) continue;
      try {
        const Vec3 p = point(g.z(i, j));
        if (p.allFinite()) {
          s.points[k] = p;
          valid[k] = 1;
        }
      } catch (const Error&) {
      }
    }
  });
  for (std::size_t k = 0; k < valid.size(); ++k) s.valid[k] = valid[k] != 0;
  return s;
}

// ---------------------------------------------------------------- dress3

struct Dress3Opts {
  std::string alpha, b, grid = "-2:2:41x-2:2:41", lambda, obj, out = "h.csv", manifest;
  double H = -2.0;
  int rank = 1;
  unsigned threads = 0;
};

int cmd_dress3(const Dress3Opts& o, const std::vector<std::string>& argv) {
  affdress::dressing::Dress3Params p;
  p.alpha = io::parse_complex(o.alpha);
  p.b = io::parse_complex(o.b);
  p.rank = o.rank;
  p.spec = affdress::loopgroup::spec_from_H(o.H);
  if (o.rank != 1 && o.rank != 2) throw UsageError{"--rank must be 1 or 2"};
  if (std::abs(std::abs(p.alpha) - 1.0) > 1e-9) throw UsageError{"|alpha| != 1"};
  p.element();  // admissibility gate: 2|b|^2-1 > 0 and the twist
  const core::GridSpec g = io::parse_grid(o.grid);
  if (!o.obj.empty() && o.lambda.empty()) throw UsageError{"--obj requires --lambda"};
  const unsigned threads = resolve_threads(o.threads);

  const auto metric = affdress::dressing::dress3_metric(p, g, threads);
  io::atomic_write(o.out, io::metric_csv(metric.h, metric.admissible));
  ordered_json m = manifest("dress3", argv);
  m["parameters"] = {{"alpha", io::format_complex(p.alpha)},
                     {"b", io::format_complex(p.b)},
                     {"H", o.H},
                     {"rank", o.rank}};
  m["grid"] = io::format_grid(g);
  ordered_json outputs = ordered_json::array({o.out});
  if (!o.lambda.empty()) {
    const C lambda = io::parse_complex(o.lambda);
    m["parameters"]["lambda"] = io::format_complex(lambda);
    if (!o.obj.empty()) {
      const auto surf = sample_surface(g, metric, threads, [&](C z) {
        return affdress::dressing::dress3_immersion(p, lambda, z);
      });
      io::atomic_write(o.obj, io::surface_obj(surf));
      outputs.push_back(o.obj);
    }
  }
  m["outputs"] = outputs;
  m["summary"] = metric_summary(metric);
  write_json(default_manifest(o.manifest, o.out), m);
  return kExitOk;
}

// ---------------------------------------------------------------- dress6

struct Dress6Opts {
  // Defaults: the six-pole example with alpha = -i/2, line2 = (1/2 + i sqrt3/2, 0).
  std::string alpha = "0,-0.5", b2 = "0.5,0.8660254037844386", c2 = "0,0";
  std::string grid = "-3:3:121x-3:3:121", lambda, obj, out = "h6.csv", manifest;
  double H = -2.0;
  unsigned threads = 0;
};

int cmd_dress6(const Dress6Opts& o, const std::vector<std::string>& argv) {
  const C alpha = io::parse_complex(o.alpha);
  const C b2 = io::parse_complex(o.b2), c2 = io::parse_complex(o.c2);
  affdress::loopgroup::spec_from_H(o.H);
  if (o.H > 0) throw UsageError{"six-pole dressing is implemented for H = -2 only"};
  if (std::abs(std::abs(alpha) - 1.0) < 1e-9 || alpha == C(0.0))
    throw UsageError{"six-pole element requires |alpha| != 1"};
  const auto line2 = affdress::loopgroup::ProjLine::make(b2, c2);
  const auto e = affdress::loopgroup::make_sixpole(alpha, line2, o.H);  // "Psi <= 0"
  const core::GridSpec g = io::parse_grid(o.grid);
  if (!o.obj.empty() && o.lambda.empty()) throw UsageError{"--obj requires --lambda"};
  const unsigned threads = resolve_threads(o.threads);

  const auto metric = affdress::dressing::dress6_metric(e, g, threads);
  io::atomic_write(o.out, io::metric_csv(metric.h, metric.admissible));
  ordered_json m = manifest("dress6", argv);
  m["parameters"] = {{"alpha", io::format_complex(alpha)},
                     {"b2", io::format_complex(b2)},
                     {"c2", io::format_complex(c2)},
                     {"H", o.H},
                     {"derived_b1", io::format_complex(e.line1.b)},
                     {"derived_c1", io::format_complex(e.line1.c)},
                     {"d", e.d}};
  m["grid"] = io::format_grid(g);
  ordered_json outputs = ordered_json::array({o.out});
  if (!o.lambda.empty()) {
    const C lambda = io::parse_complex(o.lambda);
    m["parameters"]["lambda"] = io::format_complex(lambda);
    if (!o.obj.empty()) {
      const auto surf = sample_surface(g, metric, threads, [&](C z) {
        return affdress::dressing::dress6_immersion(e, lambda, z);
      });
      io::atomic_write(o.obj, io::surface_obj(surf));
      outputs.push_back(o.obj);
    }
  }
  m["outputs"] = outputs;
  m["summary"] = metric_summary(metric);
  ordered_json notes = ordered_json::array();
  const auto one = [](C v) { return std::abs(v - 1.0) < 1e-12; };
  if (one(b2) && one(c2)) notes.push_back("trivial dressing");
  m["notes"] = notes;
  write_json(default_manifest(o.manifest, o.out), m);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  std::string in, report;
  double tol = 1e-5;
  bool no_richardson = false;
  double max_abs_h = std::numeric_limits<double>::infinity();
};

int cmd_verify(const VerifyOpts& o, const std::vector<std::string>& argv) {
  const auto table = io::read_metric_csv(o.in);
  affdress::verify::ResidualOptions opt;
  opt.h_cap = o.max_abs_h;
  const auto rep = affdress::verify::residual_of_samples(table.h, !o.no_richardson, opt);
  const bool pass = rep.evaluated > 0 && rep.max_residual < o.tol;
  const auto& g = table.h.spec;
  ordered_json m = manifest("verify", argv);
  m["parameters"] = {{"in", o.in},
                     {"richardson", !o.no_richardson},
                     {"max_abs_h", num(o.max_abs_h)}};
  m["grid"] = io::format_grid(g);
  m["tolerances"] = {{"residual", o.tol}};
  m["summary"] = {{"max_residual", num(rep.max_residual)},
                  {"argmax", {{"i", rep.argmax_i},
                              {"j", rep.argmax_j},
                              {"x", g.x(rep.argmax_i)},
                              {"y", g.y(rep.argmax_j)}}},
                  {"evaluated_nodes", rep.evaluated},
                  {"masked_nodes", rep.masked},
                  {"negative_nodes", rep.negative_nodes},
                  {"pass", pass}};
  m["outputs"] = o.report.empty() ? ordered_json::array() : ordered_json::array({o.report});
  if (o.report.empty())
    std::cout << m.dump(2) << "\n";
  else
    write_json(o.report, m);
  if (!pass) {
    std::cerr << "verify: FAIL max residual " << io::format_double(rep.max_residual)
              << " at node (" << rep.argmax_i << "," << rep.argmax_j << ") x="
              << io::format_double(g.x(rep.argmax_i)) << " y="
              << io::format_double(g.y(rep.argmax_j)) << " (tol "
              << io::format_double(o.tol) << ")\n";
    return kExitFail;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- hildebrand

struct HildebrandOpts {
  std::string grid = "0.1:3:59x-2:2:81", obj = "hildebrand.obj", report, manifest;
  bool offset = false, allow_singular = false;
  double tol = 1e-4;
};

int cmd_hildebrand(const HildebrandOpts& o, const std::vector<std::string>& argv) {
  namespace sf = affdress::surfaces;
  const core::GridSpec g = io::parse_grid(o.grid);
  const double s3 = std::sqrt(3.0);
  // The x-shift s/(2 sqrt3) with s the one-soliton phase ln((2s3-3)/(3+2s3)).
  const double shift = o.offset ? std::log((2 * s3 - 3) / (3 + 2 * s3)) / (2 * s3) : 0.0;
  if (g.x_min <= shift && shift <= g.x_max && !o.allow_singular)
    throw UsageError{"grid contains the singular line x = " + io::format_double(shift) +
                     " (pass --allow-singular to skip singular nodes)"};
  affdress::SurfaceGrid surf(g);
  std::size_t singular = 0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      try {
        surf.points[k] = sf::hildebrand_normalized(g.x(i), g.y(j), shift);
        surf.valid[k] = surf.points[k].allFinite();
      } catch (const Error&) {
      }
      if (!surf.valid[k]) ++singular;
    }
  }
  io::atomic_write(o.obj, io::surface_obj(surf));

  // Invariant check at 10 points with x - shift in [0.3, 2].
  ordered_json checks = ordered_json::array();
  double worst_metric = 0.0, worst_U = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double x = shift + 0.3 + 1.7 * k / 9.0;
    const double y = -1.0 + 2.0 * k / 9.0;
    const auto inv = sf::affine_invariants_fd(
        [&](double a, double b) { return sf::hildebrand_normalized(a, b, shift); }, C(x, y));
    const double e_psi = std::sqrt(inv.exp_2psi());
    const double expect = sf::hildebrand_metric(x, shift);
    const double err_metric = std::abs(e_psi - expect), err_U = std::abs(std::abs(inv.U) - 1.0);
    worst_metric = std::max(worst_metric, err_metric);
    worst_U = std::max(worst_U, err_U);
    checks.push_back({{"x", x}, {"y", y}, {"exp_psi", e_psi}, {"expected", expect},
                      {"abs_U", std::abs(inv.U)}, {"conformal_residual", inv.conformal_residual}});
  }
  const bool pass = worst_metric < o.tol && worst_U < o.tol;
  ordered_json m = manifest("hildebrand", argv);
  m["parameters"] = {{"offset", o.offset}, {"x_shift", shift}, {"allow_singular", o.allow_singular}};
  m["grid"] = io::format_grid(g);
  m["tolerances"] = {{"invariants", o.tol}};
  ordered_json outputs = ordered_json::array({o.obj});
  const std::string report = o.report.empty() ? o.obj + ".invariants.json" : o.report;
  outputs.push_back(report);
  m["outputs"] = outputs;
  m["summary"] = {{"singular_nodes", singular},
                  {"max_exp_psi_error", worst_metric},
                  {"max_abs_U_error", worst_U},
                  {"pass", pass}};
  ordered_json inv = {{"schema", 1}, {"points", checks}, {"pass", pass}};
  write_json(report, inv);
  write_json(default_manifest(o.manifest, o.obj), m);
  return pass ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- selftest

struct SelftestOpts {
  std::uint64_t seed = 1;
  std::string suite = "all", manifest;
};

int cmd_selftest(const SelftestOpts& o, const std::vector<std::string>& argv) {
  const auto results = affdress::selftest::run(o.suite, o.seed);
  ordered_json m = manifest("selftest", argv);
  m["parameters"] = {{"seed", o.seed}, {"suite", o.suite}};
  ordered_json suites = ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"value", num(c.value)},
                        {"tolerance", c.tolerance}, {"pass", c.pass()}});
    suites.push_back({{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}});
    all = all && r.pass();
  }
  m["summary"] = {{"suites", suites}, {"pass", all}};
  if (!o.manifest.empty()) {
    m["outputs"] = ordered_json::array({o.manifest});
    write_json(o.manifest, m);
  }
  std::cout << m.dump(2) << "\n";
  return all ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dressing of definite affine spheres by rational loop-group elements"};
  app.require_subcommand(1);
  std::vector<std::string> args(argv, argv + argc);
  int rc = kExitOk;

  Dress3Opts d3;
  auto* c3 = app.add_subcommand("dress3", "Three-pole dressing of the vacuum");
  c3->add_option("--alpha", d3.alpha, "pole on the unit circle, re,im")->required();
  c3->add_option("--b", d3.b, "line parameter b (c = conj b), re,im")->required();
  c3->add_option("--grid", d3.grid, "xmin:xmax:nx x ymin:ymax:ny")->capture_default_str();
  c3->add_option("--H", d3.H, "mean curvature, -2 (hyperbolic) or +2")->capture_default_str();
  c3->add_option("--rank", d3.rank, "rank of the residue, 1 or 2")->capture_default_str();
  c3->add_option("--lambda", d3.lambda, "spectral value for the surface, re,im");
  c3->add_option("--obj", d3.obj, "surface mesh output (needs --lambda)");
  c3->add_option("--out", d3.out, "metric CSV output")->capture_default_str();
  c3->add_option("--manifest", d3.manifest, "manifest path (default <out>.manifest.json)");
  c3->add_option("--threads", d3.threads, "worker threads (0 = hardware)");
  c3->callback([&] { rc = cmd_dress3(d3, args); });

  Dress6Opts d6;
  auto* c6 = app.add_subcommand("dress6", "Six-pole dressing of the vacuum");
  c6->add_option("--alpha", d6.alpha, "pole with |alpha| != 1, re,im")->capture_default_str();
  c6->add_option("--b2", d6.b2, "free line parameter b2, re,im")->capture_default_str();
  c6->add_option("--c2", d6.c2, "free line parameter c2, re,im")->capture_default_str();
  c6->add_option("--H", d6.H, "mean curvature (-2)")->capture_default_str();
  c6->add_option("--grid", d6.grid, "xmin:xmax:nx x ymin:ymax:ny")->capture_default_str();
  c6->add_option("--lambda", d6.lambda, "spectral value for the surface, re,im");
  c6->add_option("--obj", d6.obj, "surface mesh output (needs --lambda)");
  c6->add_option("--out", d6.out, "metric CSV output")->capture_default_str();
  c6->add_option("--manifest", d6.manifest, "manifest path (default <out>.manifest.json)");
  c6->add_option("--threads", d6.threads, "worker threads (0 = hardware)");
  c6->callback([&] { rc = cmd_dress6(d6, args); });

  VerifyOpts vo;
  auto* cv = app.add_subcommand("verify", "Tzitzeica residual of a metric CSV");
  cv->add_option("--in", vo.in, "metric CSV (x,y,h,admissible)")->required();
  cv->add_option("--tol", vo.tol, "residual tolerance")->capture_default_str();
  cv->add_option("--report", vo.report, "JSON report path (default stdout)");
  cv->add_flag("--no-richardson", vo.no_richardson, "plain central differences");
  cv->add_option("--max-abs-h", vo.max_abs_h, "exclude nodes with |h| above this");
  cv->callback([&] { rc = cmd_verify(vo, args); });

  HildebrandOpts ho;
  auto* ch = app.add_subcommand("hildebrand", "Hildebrand surface mesh and invariant check");
  ch->add_option("--grid", ho.grid, "xmin:xmax:nx x ymin:ymax:ny")->capture_default_str();
  ch->add_option("--obj", ho.obj, "mesh output")->capture_default_str();
  ch->add_option("--report", ho.report, "invariants JSON (default <obj>.invariants.json)");
  ch->add_option("--manifest", ho.manifest, "manifest path (default <obj>.manifest.json)");
  ch->add_option("--tol", ho.tol, "invariant tolerance")->capture_default_str();
  ch->add_flag("--offset", ho.offset, "shift x by the one-soliton phase s/(2 sqrt3)");
  ch->add_flag("--allow-singular", ho.allow_singular, "skip nodes on the singular line");
  ch->callback([&] { rc = cmd_hildebrand(ho, args); });

  SelftestOpts so;
  auto* cs = app.add_subcommand("selftest", "Seeded invariant suites");
  cs->add_option("--seed", so.seed, "RNG seed")->capture_default_str();
  cs->add_option("--suite", so.suite, "all, core, loopgroup, surfaces, dressing, verify")
      ->capture_default_str();
  cs->add_option("--manifest", so.manifest, "also write the summary to this path");
  cs->callback([&] { rc = cmd_selftest(so, args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return rc;
}
