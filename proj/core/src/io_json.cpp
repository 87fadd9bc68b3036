#include "certibound/io_json.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace certibound {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json iv_json(const Interval& v) {
  if (v.is_empty()) return json::array();
  return json::array({v.lo(), v.hi()});
}

Interval iv_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("interval expects [lo, hi]");
  return Interval(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

std::string interval_to_json(const Interval& v) {
  if (v.is_empty()) return "[]";
  return "[" + num(v.lo()) + ", " + num(v.hi()) + "]";
}

std::string quad_result_to_json(const QuadResult& r, size_t cells) {
  std::ostringstream os;
  os << "{\"main\": " << interval_to_json(r.main) << ", \"err\": " << interval_to_json(r.err)
     << ", \"total\": " << interval_to_json(r.total) << ", \"cells\": " << cells << "}";
  return os.str();
}

std::string certified_bound_to_json(const CertifiedBound& b) {
  std::ostringstream os;
  os << "{\"scheme\": \"" << b.scheme << "\", \"main\": " << interval_to_json(b.main)
     << ", \"err\": " << interval_to_json(b.err)
     << ", \"total\": " << interval_to_json(b.total()) << "}";
  return os.str();
}

std::string weight_to_json(const PowerSumWeight& w) {
  json j;
  j["terms"] = json::array();
  for (const auto& t : w.terms()) j["terms"].push_back({{"p", t.p}, {"a", t.a}});
  return j.dump();
}

std::string mixed_weight_to_json(const MixedWeight& w) {
  json j;
  j["mixed"]["x1_exponent"] = w.x1_exponent();
  j["mixed"]["rho1"] = json::parse(weight_to_json(w.rho1()));
  j["mixed"]["rho2"] = json::parse(weight_to_json(w.rho2()));
  return j.dump();
}

namespace {
PowerSumWeight weight_from(const json& j) {
  std::vector<PowerSumWeight::Term> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({t.at("p").get<double>(), t.at("a").get<double>()});
  return PowerSumWeight(terms);
}
}  // namespace

PowerSumWeight weight_from_json(const std::string& text) {
  try {
    return weight_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("weight json: ") + e.what());
  }
}

MixedWeight mixed_weight_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    const auto& m = j.at("mixed");
    return MixedWeight(weight_from(m.at("rho1")), weight_from(m.at("rho2")),
                       m.value("x1_exponent", -0.5));
  } catch (const json::exception& e) {
    throw ParseError(std::string("mixed weight json: ") + e.what());
  }
}

std::string mesh_to_json(const Mesh1D& mesh) {
  json j;
  j["nodes"] = mesh.nodes();
  return j.dump();
}

Mesh1D mesh_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    return Mesh1D(j.at("nodes").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("mesh json: ") + e.what());
  }
}

std::string deriv_grid_to_json(const DerivBoundGrid& g) {
  json j;
  j["mesh_x"] = g.mesh_x().nodes();
  j["mesh_y"] = g.mesh_y().nodes();
  j["max_order"] = g.max_order();
  json cells = json::array();
  for (size_t cx = 0; cx < g.mesh_x().cells(); ++cx)
    for (size_t cy = 0; cy < g.mesh_y().cells(); ++cy) {
      json rec;
      rec["cell"] = {cx, cy};
      json bounds = json::array();
      for (int i = 0; i <= g.max_order(); ++i)
        for (int j2 = 0; j2 <= g.max_order(); ++j2)
          bounds.push_back({i, j2, g.bound(cx, cy, i, j2).hi()});
      rec["bounds"] = std::move(bounds);
      cells.push_back(std::move(rec));
    }
  j["cells"] = std::move(cells);
  return j.dump();
}

std::string surface_to_json(const BSplineSurface& s) {
  json j;
  j["knots_x"] = s.knots_x().nodes();
  j["knots_y"] = s.knots_y().nodes();
  j["odd_in_x"] = s.odd_in_x();
  j["coeffs"] = s.coeffs();
  return j.dump();
}

BSplineSurface surface_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    Mesh1D kx(j.at("knots_x").get<std::vector<double>>());
    Mesh1D ky(j.at("knots_y").get<std::vector<double>>());
    auto coeffs = j.at("coeffs").get<std::vector<std::vector<double>>>();
    return BSplineSurface(std::move(kx), std::move(ky), std::move(coeffs),
                          j.value("odd_in_x", true));
  } catch (const json::exception& e) {
    throw ParseError(std::string("surface json: ") + e.what());
  }
}

CsvGrid parse_csv_grid(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  // header decides whether derivative columns are present
  int cols = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
  if (cols != 3 && cols != 5) throw ParseError("CSV header must be x,y,f or x,y,f,fx,fy");
  bool derivs = (cols == 5);
  struct Rec {
    double x, y, f, fx, fy;
  };
  std::vector<Rec> recs;
  size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    Rec r{};
    int got = derivs ? std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &r.x, &r.y, &r.f,
                                   &r.fx, &r.fy)
                     : std::sscanf(line.c_str(), "%lf,%lf,%lf", &r.x, &r.y, &r.f);
    if (got != cols) throw ParseError("bad CSV record at line " + std::to_string(lineno));
    recs.push_back(r);
  }
  CsvGrid g;
  g.has_derivs = derivs;
  std::vector<double> xs, ys;
  for (const auto& r : recs) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  g.xs = xs;
  g.ys = ys;
  g.f.assign(xs.size(), std::vector<double>(ys.size(), 0.0));
  if (derivs) {
    g.fx = g.f;
    g.fy = g.f;
  }
  auto index_of = [](const std::vector<double>& v, double t) {
    return std::lower_bound(v.begin(), v.end(), t) - v.begin();
  };
  for (const auto& r : recs) {
    size_t ix = index_of(xs, r.x), iy = index_of(ys, r.y);
    g.f[ix][iy] = r.f;
    if (derivs) {
      g.fx[ix][iy] = r.fx;
      g.fy[ix][iy] = r.fy;
    }
  }
  return g;
}

uint64_t stable_hash(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace certibound
