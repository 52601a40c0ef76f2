#pragma once

#include <vector>

#include "shiftgreen/geometry.hpp"
#include "shiftgreen/types.hpp"

namespace shiftgreen::rayleigh {

struct Mode {
  int n = 0;
  double alpha = 0.0;
  Complex beta;   // principal root of k^2 - alpha^2, Im >= 0
  Complex sigma;  // (1 - e^{i beta h})^j - 1
  bool propagating = false;
  bool wood = false;
};

Complex sigma_factor(Complex beta, double h, int j);

// beta for a given alpha, snapped to exactly zero at grazing.
Complex mode_beta(double k, double alpha);

Mode make_mode(const WaveConfig& wave, const ShiftConfig& shift, int n);

struct ModeSet {
  WaveConfig wave;
  ShiftConfig shift;
  int prop_min = 0;  // propagating indices are prop_min..prop_max
  int prop_max = 0;
  std::vector<Mode> tail;  // truncation list with Wood modes removed
  std::vector<Mode> wood;  // at most two

  bool is_wood(int n) const;
  bool is_propagating(int n) const { return n >= prop_min && n <= prop_max; }
  Mode mode(int n) const { return make_mode(wave, shift, n); }
  // Truncation list including the Wood modes, ordered by n.
  std::vector<Mode> truncation() const;
  int trunc_min() const { return prop_min - shift.n_ev; }
  int trunc_max() const { return prop_max + shift.n_ev; }
};

ModeSet build_modes(const WaveConfig& wave, const ShiftConfig& shift);

enum class Side { plus, minus };

// sin(z)/z with a Taylor branch near zero.
Complex sinc(Complex z);

// Trapezoid weights q with I[psi] = sum_j q_j psi_j.
ComplexVector functional_I_weights(Side side, const geometry::NystromMesh& mesh, const Mode& mode, double gamma);
ComplexVector functional_I_tilde_weights(const geometry::NystromMesh& mesh, const Mode& mode, double gamma);

Complex functional_I(Side side, const geometry::NystromMesh& mesh, const ComplexVector& psi, const Mode& mode,
                     double gamma);
Complex functional_I(Side side, const geometry::NystromMesh& mesh, const ComplexVector& psi, int n,
                     const WaveConfig& wave, double gamma);
Complex functional_I_tilde(const geometry::NystromMesh& mesh, const ComplexVector& psi, const Mode& mode,
                           double gamma);
Complex functional_I_tilde(const geometry::NystromMesh& mesh, const ComplexVector& psi, int n,
                           const WaveConfig& wave, double gamma);

}  // namespace shiftgreen::rayleigh
