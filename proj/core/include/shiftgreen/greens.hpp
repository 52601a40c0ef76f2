#pragma once

#include <vector>

#include "shiftgreen/types.hpp"

namespace shiftgreen::greens {

// Value and gradient with respect to the target-minus-source offset (X, Y).
struct GreenValue {
  Complex value;
  Complex dx;
  Complex dy;
};

GreenValue free_green(double k, double X, double Y);

// sum_{l=0}^{j} (-1)^l C(j,l) G_0(X, Y + l h)
GreenValue shifted_green(const ShiftConfig& shift, double k, double X, double Y);

// Smooth cut-off: one on |t| <= c, zero on |t| >= 1.
double window(double t, double c);
double window_derivative(double t, double c);

// Windowed quasi-periodic lattice sum of the shifted Green function. Tables
// that depend only on the configuration are built once.
class WindowedLattice {
 public:
  WindowedLattice(const ShiftConfig& shift, const WaveConfig& wave);

  // skip_self drops the n = 0, l = 0 term together with its window factor.
  GreenValue evaluate(double X, double Y, bool skip_self = false) const;

  int j() const { return j_; }
  double half_width() const { return A_; }
  double flat_half_width() const { return c_ * A_; }

 private:
  Complex phase(int n) const;

  double k_, L_, A_, c_, h_, alpha_;
  int j_;
  std::vector<double> binomial_;  // (-1)^l C(j, l)
  int phase_offset_;
  std::vector<Complex> phases_;   // e^{-i alpha n L}
};

GreenValue windowed_qp_green(const ShiftConfig& shift, const WaveConfig& wave, double X, double Y);

// Plain truncation |n| <= N without a window.
GreenValue truncated_qp_green(const ShiftConfig& shift, const WaveConfig& wave, double X, double Y, long N);

// (i/2L) sum_{|n| <= n_max} e^{i alpha_n X + i beta_n |Y|} / beta_n
Complex spectral_qp_green(const WaveConfig& wave, double X, double Y, int n_max);

}  // namespace shiftgreen::greens
