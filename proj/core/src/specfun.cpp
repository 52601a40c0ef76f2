#include "shiftgreen/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "shiftgreen/errors.hpp"
#include "shiftgreen/types.hpp"

namespace shiftgreen::specfun {
namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kSeriesLimit = 8.0;
constexpr double kAsymptoticLimit = 20.0;
constexpr int kAsymptoticTerms = 48;

struct Cylinder01 {
  double j0, j1, y0, y1;
};

Cylinder01 ascending_series(double x) {
  const double q = 0.25 * x * x;
  double t0 = 1.0;  // (-q)^m / (m!)^2
  double t1 = 1.0;  // (-q)^m / (m! (m+1)!)
  double j0 = 1.0;
  double s1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0 - 2.0 * kEuler;  // psi(1) + psi(2)
  double harmonic = 0.0;
  for (int m = 1; m < 80; ++m) {
    t0 *= -q / (double(m) * m);
    t1 *= -q / (double(m) * (m + 1));
    const double next_harmonic = harmonic + 1.0 / m;
    j0 += t0;
    s1 += t1;
    y0 -= t0 * next_harmonic;
    y1 += t1 * (2.0 * next_harmonic + 1.0 / (m + 1) - 2.0 * kEuler);
    harmonic = next_harmonic;
    if (std::abs(t0) * (1.0 + harmonic) < 1e-18 && std::abs(t1) * (2.0 + 2.0 * harmonic) < 1e-18) break;
  }
  const double half = 0.5 * x;
  const double log_half = std::log(half);
  Cylinder01 out{};
  out.j0 = j0;
  out.j1 = half * s1;
  out.y0 = (2.0 / kPi) * ((log_half + kEuler) * j0 + y0);
  out.y1 = (2.0 / kPi) * log_half * out.j1 - 2.0 / (kPi * x) - half * y1 / kPi;
  return out;
}

struct AsymptoticTable {
  std::array<double, kAsymptoticTerms> a0{};
  std::array<double, kAsymptoticTerms> a1{};
};

const AsymptoticTable& asymptotic_table() {
  static const AsymptoticTable table = [] {
    AsymptoticTable t;
    t.a0[0] = t.a1[0] = 1.0;
    for (int m = 1; m < kAsymptoticTerms; ++m) {
      const double odd = 2.0 * m - 1.0;
      t.a0[m] = t.a0[m - 1] * (0.0 - odd * odd) / (8.0 * m);
      t.a1[m] = t.a1[m - 1] * (4.0 - odd * odd) / (8.0 * m);
    }
    return t;
  }();
  return table;
}

// Hankel expansion: H_nu(x) ~ sqrt(2/(pi x)) e^{i(x - nu pi/2 - pi/4)} sum_m i^m a_m(nu) / x^m.
HankelPair asymptotic(double x) {
  const auto& t = asymptotic_table();
  const double inv = 1.0 / x;
  double p0 = 0.0, q0 = 0.0, p1 = 0.0, q1 = 0.0;
  double power = 1.0;
  for (int m = 0; m < kAsymptoticTerms; ++m) {
    const double c0 = t.a0[m] * power;
    const double c1 = t.a1[m] * power;
    switch (m % 4) {
      case 0: p0 += c0; p1 += c1; break;
      case 1: q0 += c0; q1 += c1; break;
      case 2: p0 -= c0; p1 -= c1; break;
      default: q0 -= c0; q1 -= c1; break;
    }
    if (m > 1 && std::abs(c0) < 1e-17 && std::abs(c1) < 1e-17) break;
    power *= inv;
  }
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex e0{(c + s) * r, (s - c) * r};
  const Complex e1{(s - c) * r, -(s + c) * r};
  return {amp * e0 * Complex{p0, q0}, amp * e1 * Complex{p1, q1}};
}

Cylinder01 evaluate(double x) {
  if (x <= kSeriesLimit) return ascending_series(x);
  if (x < kAsymptoticLimit) {
    return {std::cyl_bessel_j(0.0, x), std::cyl_bessel_j(1.0, x), std::cyl_neumann(0.0, x),
            std::cyl_neumann(1.0, x)};
  }
  const HankelPair h = asymptotic(x);
  return {h.h0.real(), h.h1.real(), h.h0.imag(), h.h1.imag()};
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string(what) + ": argument must be positive, got " + std::to_string(x));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  return evaluate(x).j0;
}

double bessel_j1(double x) {
  if (x == 0.0) return 0.0;
  const double v = evaluate(std::abs(x)).j1;
  return x < 0.0 ? -v : v;
}

double bessel_y0(double x) {
  require_positive(x, "bessel_y0");
  return evaluate(x).y0;
}

double bessel_y1(double x) {
  require_positive(x, "bessel_y1");
  return evaluate(x).y1;
}

double bessel(BesselKind kind, int order, double x) {
  if (order != 0 && order != 1) throw DomainError("bessel: only orders 0 and 1 are supported");
  if (kind == BesselKind::J) return order == 0 ? bessel_j0(x) : bessel_j1(x);
  return order == 0 ? bessel_y0(x) : bessel_y1(x);
}

HankelPair hankel1_01(double x) {
  require_positive(x, "hankel1");
  if (x >= kAsymptoticLimit) return asymptotic(x);
  const Cylinder01 v = evaluate(x);
  return {{v.j0, v.y0}, {v.j1, v.y1}};
}

CylFunValue hankel1(int order, double x) {
  if (order != 0 && order != 1) throw DomainError("hankel1: only orders 0 and 1 are supported");
  const HankelPair h = hankel1_01(x);
  return order == 0 ? h.h0 : h.h1;
}

}  // namespace shiftgreen::specfun
