#include <algorithm>
#include <cmath>
#include <set>

#include "shiftgreen/cli/cli.hpp"

namespace shiftgreen::cli {
namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key + ": must be finite");
  return x;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
  return v.get<int>();
}

std::optional<double> number_or_auto(const json& v, const std::string& key) {
  if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
  return number(v, key);
}

GridAxis grid_axis(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(key + ": expected [lo, hi, count]");
  GridAxis a{number(v[0], key), number(v[1], key), integer(v[2], key)};
  if (a.count < 1 || (a.count > 1 && !(a.hi > a.lo))) throw ConfigError(key + ": need count >= 1 and hi > lo");
  return a;
}

json grid_json(const GridAxis& a) { return json::array({a.lo, a.hi, a.count}); }

}  // namespace

const char* to_string(Study study) {
  switch (study) {
    case Study::solve: return "solve";
    case Study::sweep: return "sweep";
    case Study::convergence: return "convergence";
    case Study::svd: return "svd";
  }
  return "?";
}

RunConfig parse_config(const json& doc) {
  only_keys(doc,
            {"geometry", "L", "incidence", "frequency", "j", "h", "N_per", "c", "N_ev", "gamma", "tau_wa", "n_i",
             "convergence", "field"},
            "config");
  RunConfig c;
  if (!doc.contains("geometry")) throw ConfigError("config: missing 'geometry'");
  const json& g = doc["geometry"];
  only_keys(g, {"kind", "radius", "base", "center"}, "geometry");
  if (!g.contains("kind") || !g["kind"].is_string()) throw ConfigError("geometry.kind: expected a string");
  c.geometry.kind = g["kind"].get<std::string>();
  if (c.geometry.kind == "circle") {
    if (!g.contains("radius")) throw ConfigError("geometry.radius: required for a circle");
    c.geometry.radius = number(g["radius"], "geometry.radius");
    if (!(c.geometry.radius > 0)) throw ConfigError("geometry.radius: must be positive");
  } else if (c.geometry.kind == "star") {
    if (g.contains("base")) c.geometry.base = number(g["base"], "geometry.base");
    if (!(c.geometry.base > 0)) throw ConfigError("geometry.base: must be positive");
  } else {
    throw ConfigError("geometry.kind: expected 'circle' or 'star'");
  }
  if (g.contains("center")) {
    const json& ctr = g["center"];
    if (!ctr.is_array() || ctr.size() != 2) throw ConfigError("geometry.center: expected [x, y]");
    c.geometry.cx = number(ctr[0], "geometry.center");
    c.geometry.cy = number(ctr[1], "geometry.center");
  }

  if (doc.contains("L")) c.L = number(doc["L"], "L");
  if (!(c.L > 0)) throw ConfigError("L: must be positive");

  if (!doc.contains("incidence")) throw ConfigError("config: missing 'incidence'");
  const json& inc = doc["incidence"];
  only_keys(inc, {"theta", "littrow"}, "incidence");
  if (inc.contains("littrow")) {
    if (!inc["littrow"].is_boolean()) throw ConfigError("incidence.littrow: expected a boolean");
    c.littrow = inc["littrow"].get<bool>();
  }
  if (inc.contains("theta")) {
    if (c.littrow) throw ConfigError("incidence: give either theta or littrow, not both");
    c.theta = number(inc["theta"], "incidence.theta");
    if (!(std::abs(c.theta) < kPi / 2)) throw ConfigError("incidence.theta: must lie in (-pi/2, pi/2)");
  } else if (!c.littrow) {
    throw ConfigError("incidence: missing theta");
  }

  if (!doc.contains("frequency")) throw ConfigError("config: missing 'frequency'");
  const json& f = doc["frequency"];
  only_keys(f, {"k", "wood_order", "k0", "delta_points", "delta_max"}, "frequency");
  if (f.contains("k")) {
    if (f.contains("wood_order") || f.contains("k0")) throw ConfigError("frequency: give either k or a Wood grid");
    if (f["k"].is_array()) {
      for (const auto& v : f["k"]) c.frequency.k.push_back(number(v, "frequency.k"));
    } else {
      c.frequency.k.push_back(number(f["k"], "frequency.k"));
    }
    if (c.frequency.k.empty()) throw ConfigError("frequency.k: empty list");
    for (double k : c.frequency.k)
      if (!(k > 0)) throw ConfigError("frequency.k: must be positive");
  } else {
    if (!f.contains("wood_order")) throw ConfigError("frequency: need k or wood_order");
    c.frequency.wood_order = integer(f["wood_order"], "frequency.wood_order");
    if (f.contains("k0")) c.frequency.k0 = number(f["k0"], "frequency.k0");
    if (f.contains("delta_points")) c.frequency.delta_points = integer(f["delta_points"], "frequency.delta_points");
    if (f.contains("delta_max")) c.frequency.delta_max = number(f["delta_max"], "frequency.delta_max");
    if (c.frequency.delta_points < 1) throw ConfigError("frequency.delta_points: must be >= 1");
    if (!(c.frequency.delta_max >= 0)) throw ConfigError("frequency.delta_max: must be >= 0");
  }

  if (doc.contains("j")) c.j = integer(doc["j"], "j");
  if (doc.contains("h")) c.h = number_or_auto(doc["h"], "h");
  if (doc.contains("N_per")) c.n_per = number(doc["N_per"], "N_per");
  if (doc.contains("c")) c.c = number(doc["c"], "c");
  if (doc.contains("N_ev")) c.n_ev = integer(doc["N_ev"], "N_ev");
  if (doc.contains("gamma")) c.gamma = number_or_auto(doc["gamma"], "gamma");
  if (doc.contains("tau_wa")) c.tau_wa = number(doc["tau_wa"], "tau_wa");
  if (doc.contains("n_i")) c.n_i = integer(doc["n_i"], "n_i");
  if (c.j < 0) throw ConfigError("j: must be >= 0");
  if (c.h && !(*c.h > 0)) throw ConfigError("h: must be positive");
  if (!(c.n_per >= 1)) throw ConfigError("N_per: must be >= 1");
  if (!(c.c > 0 && c.c < 1)) throw ConfigError("c: must lie in (0, 1)");
  if (c.n_ev < 0) throw ConfigError("N_ev: must be >= 0");
  if (c.gamma && !(*c.gamma > 0)) throw ConfigError("gamma: must be positive");
  if (!(c.tau_wa >= 0)) throw ConfigError("tau_wa: must be >= 0");

  if (doc.contains("convergence")) {
    const json& cv = doc["convergence"];
    only_keys(cv, {"axis", "values"}, "convergence");
    if (!cv.contains("axis") || !cv["axis"].is_string()) throw ConfigError("convergence.axis: expected a string");
    c.axis = cv["axis"].get<std::string>();
    static const std::set<std::string> axes{"N_per", "n_i", "N_ev", "j"};
    if (!axes.count(c.axis)) throw ConfigError("convergence.axis: expected one of N_per, n_i, N_ev, j");
    if (!cv.contains("values") || !cv["values"].is_array() || cv["values"].empty())
      throw ConfigError("convergence.values: expected a non-empty array");
    for (const auto& v : cv["values"]) {
      if (c.axis == "N_per") {
        c.axis_values.push_back(number(v, "convergence.values"));
      } else {
        c.axis_values.push_back(integer(v, "convergence.values"));
      }
    }
  }
  if (doc.contains("field")) {
    const json& fd = doc["field"];
    only_keys(fd, {"x", "y"}, "field");
    if (!fd.contains("x") || !fd.contains("y")) throw ConfigError("field: need x and y");
    c.field_x = grid_axis(fd["x"], "field.x");
    c.field_y = grid_axis(fd["y"], "field.y");
  }
  return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json g;
  g["kind"] = c.geometry.kind;
  if (c.geometry.kind == "circle") {
    g["radius"] = c.geometry.radius;
  } else {
    g["base"] = c.geometry.base;
  }
  g["center"] = {c.geometry.cx, c.geometry.cy};
  out["geometry"] = g;
  out["L"] = c.L;
  if (c.littrow) {
    out["incidence"] = {{"littrow", true}};
  } else {
    out["incidence"] = {{"theta", c.theta}};
  }
  nlohmann::ordered_json f;
  if (c.frequency.wood_order) {
    f["wood_order"] = *c.frequency.wood_order;
    f["k0"] = c.frequency.k0 ? *c.frequency.k0 : wood_frequency(c, *c.frequency.wood_order);
    f["delta_points"] = c.frequency.delta_points;
    f["delta_max"] = c.frequency.delta_max;
  } else {
    f["k"] = c.frequency.k;
  }
  out["frequency"] = f;
  out["j"] = c.j;
  if (c.h) {
    out["h"] = *c.h;
  } else {
    out["h"] = "auto";
  }
  out["N_per"] = c.n_per;
  out["c"] = c.c;
  out["N_ev"] = c.n_ev;
  if (c.gamma) {
    out["gamma"] = *c.gamma;
  } else {
    out["gamma"] = "auto";
  }
  out["tau_wa"] = c.tau_wa;
  out["n_i"] = c.n_i;
  if (!c.axis.empty()) out["convergence"] = {{"axis", c.axis}, {"values", c.axis_values}};
  if (c.field_x) out["field"] = {{"x", grid_json(*c.field_x)}, {"y", grid_json(*c.field_y)}};
  return out;
}

double wood_frequency(const RunConfig& c, int p) {
  if (c.littrow) {
    // alpha = pi / L for every k
    return kPi * std::abs(2 * p + 1) / c.L;
  }
  if (p == 0) throw ConfigError("frequency.wood_order: mode 0 never grazes at oblique or normal incidence");
  const double s = std::sin(c.theta);
  return p > 0 ? 2 * kPi * p / (c.L * (1 - s)) : -2 * kPi * p / (c.L * (1 + s));
}

std::vector<FrequencyPoint> frequency_points(const RunConfig& c) {
  std::vector<FrequencyPoint> out;
  if (!c.frequency.wood_order) {
    for (double k : c.frequency.k) out.push_back({k, 0.0});
    return out;
  }
  const double k0 = c.frequency.k0 ? *c.frequency.k0 : wood_frequency(c, *c.frequency.wood_order);
  const int n = c.frequency.delta_points;
  for (int i = 0; i < n; ++i) {
    const double delta = n == 1 ? 0.0 : -c.frequency.delta_max + 2 * c.frequency.delta_max * i / (n - 1);
    const double step = std::pow(std::abs(delta), 8);
    out.push_back({delta < 0 ? k0 - step : k0 + step, delta});
  }
  return out;
}

geometry::ParametricCurve make_curve(const RunConfig& c) {
  const Point2 center{c.geometry.cx, c.geometry.cy};
  return c.geometry.kind == "star" ? geometry::make_star(c.geometry.base, center)
                                   : geometry::make_circle(c.geometry.radius, center);
}

WaveConfig wave_for(const RunConfig& c, double k) {
  WaveConfig w;
  w.k = k;
  w.period = c.L;
  if (c.littrow) {
    if (k * c.L < kPi) throw ConfigError("incidence.littrow: requires k L >= pi");
    w.theta = std::asin(std::min(1.0, kPi / (k * c.L)));
  } else {
    w.theta = c.theta;
  }
  return w;
}

ShiftConfig shift_for(const RunConfig& c, const geometry::NystromMesh& mesh, double k) {
  ShiftConfig s;
  s.j = c.j;
  s.h = c.h ? *c.h : 1.5 * mesh.height();
  s.window = c.n_per * c.L;
  s.flat = c.c;
  s.gamma = c.gamma ? *c.gamma : k;
  s.n_ev = c.n_ev;
  s.tau_wa = c.tau_wa;
  return s;
}

}  // namespace shiftgreen::cli
