#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shiftgreen/types.hpp"

namespace shiftgreen::geometry {

struct CurveSample {
  Point2 position;
  Point2 d1;  // dr/dt
  Point2 d2;  // d^2r/dt^2
};

// Closed, regular, counter-clockwise curve on t in [0, 2pi).
class ParametricCurve {
 public:
  using Evaluator = std::function<CurveSample(double)>;

  ParametricCurve(std::string description, Evaluator evaluator);

  CurveSample sample(double t) const { return evaluator_(t); }
  Point2 position(double t) const { return evaluator_(t).position; }
  const std::string& description() const { return description_; }

 private:
  std::string description_;
  Evaluator evaluator_;
};

ParametricCurve make_circle(double radius, Point2 center = {});

// r(t) = base (1 + 0.1 cos 5t + 0.01 cos 10t).
ParametricCurve make_star(double base, Point2 center = {});

struct NystromMesh {
  ParametricCurve curve;
  std::vector<double> t;
  std::vector<Point2> position;
  std::vector<Point2> tangent;  // dr/dt
  std::vector<Point2> second;   // d^2r/dt^2
  std::vector<Point2> normal;   // outward unit normal
  std::vector<double> jacobian;
  std::vector<double> curvature;
  std::vector<Point2> outline;  // dense polygon used for extents and inside tests
  double y_min = 0.0;           // M^-
  double y_max = 0.0;           // M^+
  double x_min = 0.0;
  double x_max = 0.0;

  std::size_t size() const { return t.size(); }
  double height() const { return y_max - y_min; }
  double width() const { return x_max - x_min; }
  // Unnormalized outward normal (y', -x') at node i.
  Point2 scaled_normal(std::size_t i) const { return {tangent[i].y, -tangent[i].x}; }
};

NystromMesh build_mesh(const ParametricCurve& curve, int n);

// Winding-number test against the dense outline.
bool contains(const NystromMesh& mesh, Point2 p);

}  // namespace shiftgreen::geometry
