#include "affdress/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace affdress::io {

namespace {

Error bad(const std::string& what) {
  return Error(ErrorCode::InvalidParameter, what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& s) {
  const std::string t = trim(s);
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty())
    throw bad("expected a node count, got '" + s + "'");
  return n;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t == "nan") return std::nan("");
  if (t == "inf") return HUGE_VAL;
  if (t == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  auto [p, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty())
    throw bad("expected a number, got '" + s + "'");
  return v;
}

C parse_complex(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return {parse_double(parts[0]), 0.0};
  if (parts.size() != 2) throw bad("expected complex as 're,im', got '" + s + "'");
  const C z{parse_double(parts[0]), parse_double(parts[1])};
  core::require_finite(z, "complex parameter");
  return z;
}

std::string format_complex(C z) {
  return format_double(z.real()) + "," + format_double(z.imag());
}

core::GridSpec parse_grid(const std::string& s) {
  // The axis separator is the 'x' between two "a:b:n" triples.
  const auto first_colon = s.find(':');
  const auto second_colon =
      first_colon == std::string::npos ? first_colon : s.find(':', first_colon + 1);
  const auto sep = second_colon == std::string::npos ? second_colon
                                                     : s.find('x', second_colon);
  if (sep == std::string::npos)
    throw bad("expected grid 'xmin:xmax:nx x ymin:ymax:ny', got '" + s + "'");
  const auto ax = split(s.substr(0, sep), ':');
  const auto ay = split(s.substr(sep + 1), ':');
  if (ax.size() != 3 || ay.size() != 3)
    throw bad("expected grid 'xmin:xmax:nx x ymin:ymax:ny', got '" + s + "'");
  core::GridSpec g;
  g.x_min = parse_double(ax[0]);
  g.x_max = parse_double(ax[1]);
  g.nx = parse_count(ax[2]);
  g.y_min = parse_double(ay[0]);
  g.y_max = parse_double(ay[1]);
  g.ny = parse_count(ay[2]);
  g.validate();
  return g;
}

std::string format_grid(const core::GridSpec& g) {
  return format_double(g.x_min) + ":" + format_double(g.x_max) + ":" +
         std::to_string(g.nx) + "x" + format_double(g.y_min) + ":" +
         format_double(g.y_max) + ":" + std::to_string(g.ny);
}

void atomic_write(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw bad("cannot open '" + tmp + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw bad("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw bad("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string metric_csv(const ScalarGrid& h, const std::vector<bool>& admissible) {
  const auto& g = h.spec;
  std::string out = "x,y,h,admissible\n";
  out.reserve(out.size() + g.size() * 64);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      out += format_double(g.x(i));
      out += ',';
      out += format_double(g.y(j));
      out += ',';
      out += format_double(h.values[k].real());
      out += ',';
      out += admissible[k] ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

MetricTable parse_metric_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,y,h,admissible")
    throw bad("CSV must start with header 'x,y,h,admissible'");
  std::vector<double> xs, ys, hs;
  std::vector<bool> flags;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw bad("malformed CSV row '" + line + "'");
    xs.push_back(parse_double(f[0]));
    ys.push_back(parse_double(f[1]));
    hs.push_back(parse_double(f[2]));
    const std::string a = trim(f[3]);
    if (a != "0" && a != "1") throw bad("admissible flag must be 0 or 1");
    flags.push_back(a == "1");
  }
  if (xs.size() < 4) throw bad("CSV needs at least a 2x2 grid");
  std::size_t nx = 1;
  while (nx < ys.size() && ys[nx] == ys[0]) ++nx;
  if (xs.size() % nx != 0) throw bad("CSV rows do not form a rectangular grid");
  core::GridSpec g;
  g.nx = nx;
  g.ny = xs.size() / nx;
  g.x_min = xs.front();
  g.x_max = xs[nx - 1];
  g.y_min = ys.front();
  g.y_max = ys.back();
  g.validate();
  MetricTable t(g);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const double tol = 1e-9 * (1.0 + std::abs(g.x(i)) + std::abs(g.y(j)));
      if (std::abs(xs[k] - g.x(i)) > tol || std::abs(ys[k] - g.y(j)) > tol)
        throw bad("CSV nodes are not a uniform y-major grid");
      t.h.values[k] = hs[k];
      t.admissible[k] = flags[k];
    }
  }
  return t;
}

MetricTable read_metric_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bad("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_metric_csv(ss.str());
}

std::string surface_obj(const SurfaceGrid& s) {
  const auto& g = s.spec;
  std::vector<std::size_t> index(g.size(), 0);
  std::string out;
  std::size_t next = 1;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec3& p = s.points[k];
    const bool ok = s.valid[k] && p.allFinite();
    if (!ok) continue;
    index[k] = next++;
    out += "v " + format_double(p.x()) + " " + format_double(p.y()) + " " +
           format_double(p.z()) + "\n";
  }
  for (std::size_t j = 0; j + 1 < g.ny; ++j) {
    for (std::size_t i = 0; i + 1 < g.nx; ++i) {
      const std::size_t a = index[g.index(i, j)], b = index[g.index(i + 1, j)],
                        c = index[g.index(i + 1, j + 1)],
                        d = index[g.index(i, j + 1)];
      if (a && b && c && d)
        out += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
               std::to_string(c) + " " + std::to_string(d) + "\n";
    }
  }
  return out;
}

}  // namespace affdress::io
