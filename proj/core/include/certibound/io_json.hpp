#ifndef CERTIBOUND_IO_JSON_HPP
#define CERTIBOUND_IO_JSON_HPP

#include <string>
#include <vector>

#include "certibound/interp.hpp"
#include "certibound/piecewise.hpp"
#include "certibound/quadrature.hpp"
#include "certibound/weights.hpp"

namespace certibound {

// JSON (de)serialization used by the CLI; strings are produced with enough
// digits to round-trip exactly, so manifests are byte-stable
std::string interval_to_json(const Interval& v);
std::string quad_result_to_json(const QuadResult& r, size_t cells);
std::string certified_bound_to_json(const CertifiedBound& b);

std::string weight_to_json(const PowerSumWeight& w);
std::string mixed_weight_to_json(const MixedWeight& w);
PowerSumWeight weight_from_json(const std::string& text);
MixedWeight mixed_weight_from_json(const std::string& text);

std::string mesh_to_json(const Mesh1D& mesh);
Mesh1D mesh_from_json(const std::string& text);

std::string deriv_grid_to_json(const DerivBoundGrid& g);

std::string surface_to_json(const BSplineSurface& s);
BSplineSurface surface_from_json(const std::string& text);

// CSV grid samples "x,y,f[,fx,fy]" with a header line
struct CsvGrid {
  std::vector<double> xs, ys;                 // sorted unique coordinates
  std::vector<std::vector<double>> f, fx, fy; // [ix][iy]; fx/fy empty if absent
  bool has_derivs = false;
};
CsvGrid parse_csv_grid(const std::string& text);

// FNV-1a of a canonical string; used to stamp job manifests
uint64_t stable_hash(const std::string& text);

}  // namespace certibound

#endif
