#pragma once

#include <complex>

namespace shiftgreen::specfun {

using CylFunValue = std::complex<double>;

enum class BesselKind { J, Y };

double bessel(BesselKind kind, int order, double x);

double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);
double bessel_y1(double x);

// H_order^(1)(x) = J_order(x) + i Y_order(x), order 0 or 1, x > 0.
CylFunValue hankel1(int order, double x);

struct HankelPair {
  CylFunValue h0;
  CylFunValue h1;
};

// Both orders at once; the lattice sums need them together.
HankelPair hankel1_01(double x);

}  // namespace shiftgreen::specfun
