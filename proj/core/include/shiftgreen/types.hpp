#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace shiftgreen {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2, Point2) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

// Plane wave exp(i alpha x - i beta y) incident on an array of period L.
struct WaveConfig {
  double k = 1.0;
  double theta = 0.0;
  double period = 2.0 * kPi;

  double alpha() const { return k * std::sin(theta); }
  double beta() const { return k * std::cos(theta); }
  void validate() const;
};

struct ShiftConfig {
  int j = 0;
  double h = 1.0;
  double window = 2.0 * kPi;  // half-width A of the lattice window
  double flat = 0.5;          // c: W is identically one on |t| <= c
  double gamma = 1.0;
  int n_ev = 20;
  double tau_wa = 1e-2;

  void validate() const;
};

}  // namespace shiftgreen
