#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shiftgreen/geometry.hpp"
#include "shiftgreen/lalg.hpp"
#include "shiftgreen/rayleigh.hpp"
#include "shiftgreen/types.hpp"

namespace shiftgreen::woodsolve {

using SolveFn = std::function<ComplexVector(const ComplexVector&)>;

// (A + R_b)^{-1} f with R_b = sum_j w_j l_j[.] / b_j, where l_j[f] = sum_i functionals[j]_i f_i.
// Well defined at b_j = 0.
ComplexVector woodbury_apply(const SolveFn& a_solve, const std::vector<ComplexVector>& functionals,
                             const std::vector<ComplexVector>& basis, const std::vector<Complex>& b,
                             const ComplexVector& f);

enum class SolverPath { direct, woodbury };
const char* to_string(SolverPath path);

struct WoodSpace {
  std::vector<int> indices;
  std::vector<ComplexVector> basis;  // e^{i alpha_n x + i beta_n y} at the nodes
  std::vector<Complex> beta;
};

WoodSpace wood_space(const geometry::NystromMesh& mesh, const rayleigh::ModeSet& modes);

struct RayleighCoefficient {
  int n = 0;
  double alpha = 0.0;
  Complex beta;
  Complex plus;   // C_n^+
  Complex minus;  // C_n^-
  bool propagating = false;
  bool wood = false;
  double e_plus = 0.0;
  double e_minus = 0.0;
};

struct Diagnostics {
  SolverPath path = SolverPath::direct;
  double residual = 0.0;        // max-norm residual of the discrete equation
  double wood_condition = 0.0;  // condition number of D_beta + T
  std::optional<lalg::SingularValueExtremes> singular_values;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct ScatterSolution {
  geometry::NystromMesh mesh;
  WaveConfig wave;
  ShiftConfig shift;
  rayleigh::ModeSet modes;
  ComplexVector psi;
  std::vector<int> wood_indices;
  ComplexVector d;
  Diagnostics diagnostics;
  std::vector<RayleighCoefficient> coefficients;
  double energy_error = 0.0;
  double total_efficiency = 0.0;
};

struct SolveOptions {
  bool singular_values = false;  // extremes of the assembled A_k
};

ScatterSolution solve(const geometry::NystromMesh& mesh, const WaveConfig& wave, const ShiftConfig& shift,
                      const SolveOptions& options = {});

struct WoodQuotient {
  int n = 0;
  Complex plus;   // -(i/2L) sigma I+ / beta
  Complex minus;  // (i/2L) I- / beta
};

std::vector<WoodQuotient> wood_coefficient_quotients(const ScatterSolution& solution);

}  // namespace shiftgreen::woodsolve
