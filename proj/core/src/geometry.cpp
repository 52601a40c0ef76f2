#include "shiftgreen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftgreen/errors.hpp"

namespace shiftgreen::geometry {
namespace {

constexpr double kExtentMargin = 1e-12;

std::string describe(const char* kind, double size, Point2 center) {
  std::ostringstream os;
  os.precision(17);
  os << kind << "(" << size << ", center=(" << center.x << ", " << center.y << "))";
  return os.str();
}

// Polishes a sampled extremum of one coordinate with Newton steps on its derivative.
double refine_extremum(const ParametricCurve& curve, double t, bool use_y, bool maximize) {
  auto coord = [&](const CurveSample& s, int order) {
    const Point2& p = order == 0 ? s.position : order == 1 ? s.d1 : s.d2;
    return use_y ? p.y : p.x;
  };
  double best = coord(curve.sample(t), 0);
  for (int it = 0; it < 20; ++it) {
    const CurveSample s = curve.sample(t);
    const double g = coord(s, 1);
    const double hess = coord(s, 2);
    if (hess == 0.0) break;
    const double step = g / hess;
    t -= step;
    const double v = coord(curve.sample(t), 0);
    if (maximize ? v > best : v < best) best = v;
    if (std::abs(step) < 1e-15) break;
  }
  return best;
}

}  // namespace

ParametricCurve::ParametricCurve(std::string description, Evaluator evaluator)
    : description_(std::move(description)), evaluator_(std::move(evaluator)) {}

ParametricCurve make_circle(double radius, Point2 center) {
  if (!(radius > 0.0)) throw DomainError("make_circle: radius must be positive");
  return ParametricCurve(describe("circle", radius, center), [radius, center](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return CurveSample{{center.x + radius * c, center.y + radius * s}, {-radius * s, radius * c}, {-radius * c, -radius * s}};
  });
}

ParametricCurve make_star(double base, Point2 center) {
  if (!(base > 0.0)) throw DomainError("make_star: base must be positive");
  return ParametricCurve(describe("star", base, center), [base, center](double t) {
    const double r = base * (1.0 + 0.1 * std::cos(5.0 * t) + 0.01 * std::cos(10.0 * t));
    const double r1 = base * (-0.5 * std::sin(5.0 * t) - 0.1 * std::sin(10.0 * t));
    const double r2 = base * (-2.5 * std::cos(5.0 * t) - std::cos(10.0 * t));
    const double c = std::cos(t), s = std::sin(t);
    return CurveSample{{center.x + r * c, center.y + r * s},
                       {r1 * c - r * s, r1 * s + r * c},
                       {r2 * c - 2.0 * r1 * s - r * c, r2 * s + 2.0 * r1 * c - r * s}};
  });
}

NystromMesh build_mesh(const ParametricCurve& curve, int n) {
  if (n < 4 || n % 2 != 0) throw ConfigurationError("build_mesh: node count must be even and at least 4");
  NystromMesh mesh{curve, {}, {}, {}, {}, {}, {}, {}, {}};
  const auto count = static_cast<std::size_t>(n);
  mesh.t.resize(count);
  mesh.position.resize(count);
  mesh.tangent.resize(count);
  mesh.second.resize(count);
  mesh.normal.resize(count);
  mesh.jacobian.resize(count);
  mesh.curvature.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = 2.0 * kPi * double(i) / double(n);
    const CurveSample s = curve.sample(t);
    const double speed = norm(s.d1);
    if (!(speed > 0.0)) throw DomainError("build_mesh: curve parametrization is not regular");
    mesh.t[i] = t;
    mesh.position[i] = s.position;
    mesh.tangent[i] = s.d1;
    mesh.second[i] = s.d2;
    mesh.normal[i] = {s.d1.y / speed, -s.d1.x / speed};
    mesh.jacobian[i] = speed;
    mesh.curvature[i] = (s.d1.x * s.d2.y - s.d1.y * s.d2.x) / (speed * speed * speed);
  }

  const std::size_t dense = 64 * count;
  mesh.outline.resize(dense);
  std::size_t arg[4] = {0, 0, 0, 0};  // y max, y min, x max, x min
  for (std::size_t i = 0; i < dense; ++i) {
    const Point2 p = curve.position(2.0 * kPi * double(i) / double(dense));
    mesh.outline[i] = p;
    if (p.y > mesh.outline[arg[0]].y) arg[0] = i;
    if (p.y < mesh.outline[arg[1]].y) arg[1] = i;
    if (p.x > mesh.outline[arg[2]].x) arg[2] = i;
    if (p.x < mesh.outline[arg[3]].x) arg[3] = i;
  }
  auto param = [&](std::size_t i) { return 2.0 * kPi * double(i) / double(dense); };
  mesh.y_max = refine_extremum(curve, param(arg[0]), true, true) + kExtentMargin;
  mesh.y_min = refine_extremum(curve, param(arg[1]), true, false) - kExtentMargin;
  mesh.x_max = refine_extremum(curve, param(arg[2]), false, true) + kExtentMargin;
  mesh.x_min = refine_extremum(curve, param(arg[3]), false, false) - kExtentMargin;
  return mesh;
}

bool contains(const NystromMesh& mesh, Point2 p) {
  if (p.x < mesh.x_min || p.x > mesh.x_max || p.y < mesh.y_min || p.y > mesh.y_max) return false;
  int winding = 0;
  const auto& poly = mesh.outline;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % poly.size()];
    const double cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && cross > 0.0) ++winding;
    } else if (b.y <= p.y && cross < 0.0) {
      --winding;
    }
  }
  return winding != 0;
}

}  // namespace shiftgreen::geometry
