// Locale-independent CSV / OBJ writers, the CSV reader used by `verify`, and
// atomic (write-temp-then-rename) file output.
#pragma once

#include "affdress/core.hpp"

#include <string>
#include <vector>

namespace affdress::io {

// Shortest representation that round-trips bit-exactly (at most 17
// significant digits); "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);
double parse_double(const std::string& s);  // throws InvalidParameter

// "re,im" <-> complex.
C parse_complex(const std::string& s);
std::string format_complex(C z);

// "xmin:xmax:nx x ymin:ymax:ny", e.g. "-8:8:161x-8:8:161".
core::GridSpec parse_grid(const std::string& s);
std::string format_grid(const core::GridSpec& g);

// Writes to path + ".tmp" and renames over path.
void atomic_write(const std::string& path, const std::string& contents);

struct MetricTable {
  ScalarGrid h;
  std::vector<bool> admissible;
  explicit MetricTable(const core::GridSpec& s)
      : h(s), admissible(s.size(), false) {}
};

// Header `x,y,h,admissible`; one row per node, y-major (all x for y_0 first).
std::string metric_csv(const ScalarGrid& h, const std::vector<bool>& admissible);
MetricTable parse_metric_csv(const std::string& text);
MetricTable read_metric_csv(const std::string& path);

// `v x y z` for valid nodes in node order, then quads `f a b c d` (1-based)
// for grid cells whose four corners are all valid.
std::string surface_obj(const SurfaceGrid& s);

}  // namespace affdress::io
