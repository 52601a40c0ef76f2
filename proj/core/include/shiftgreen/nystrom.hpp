#pragma once

#include <optional>
#include <span>
#include <vector>

#include "shiftgreen/geometry.hpp"
#include "shiftgreen/greens.hpp"
#include "shiftgreen/rayleigh.hpp"
#include "shiftgreen/types.hpp"

namespace shiftgreen::nystrom {

// R_j(t) for d = t - t_j: trapezoid weights for the log(4 sin^2((t - tau)/2)) kernel.
double log_weight(int n, double d);
Eigen::MatrixXd log_quadrature_weights(int n);

// kernel = log_part * log(4 sin^2((t - tau)/2)) + smooth_part
struct KernelSplit {
  Complex log_part;
  Complex smooth_part;
};

// Free-space combined kernel D - i gamma S (Jacobian included) for target on the
// curve at parameter t and source node j.
KernelSplit free_kernel_split(const geometry::NystromMesh& mesh, double t, Point2 target, std::size_t j,
                              double k, double gamma);
KernelSplit free_kernel_diagonal(const geometry::NystromMesh& mesh, std::size_t i, double k, double gamma);

// Discretized boundary operator pieces shared by assembly and boundary evaluation.
class BoundaryOperator {
 public:
  BoundaryOperator(const geometry::NystromMesh& mesh, const WaveConfig& wave, const ShiftConfig& shift);

  // Integral part at the curve point with parameter t; node selects the diagonal limit.
  void integral_row(double t, std::optional<std::size_t> node, std::span<Complex> row) const;

  // Adds -(i/2L) sum_n sigma_n/beta_n e^{i alpha_n x + i beta_n y} I+_n at target p.
  void add_tail_row(std::span<const rayleigh::Mode> modes, Point2 p, std::span<Complex> row) const;

  // Layer potential of the windowed kernel at an arbitrary point (plain trapezoid).
  void potential_row(Point2 p, std::span<Complex> row) const;

  const geometry::NystromMesh& mesh() const { return mesh_; }
  const greens::WindowedLattice& lattice() const { return lattice_; }

 private:
  const geometry::NystromMesh& mesh_;
  WaveConfig wave_;
  ShiftConfig shift_;
  greens::WindowedLattice lattice_;
  std::vector<double> node_log_weights_;
  std::vector<double> binomial_;
};

enum class WoodTerms { exclude, include };

// (1/2) I + windowed combined layer + Rayleigh tail over modes.tail; with
// WoodTerms::include the Wood modes are added to the tail as well.
ComplexMatrix assemble_Ak(const geometry::NystromMesh& mesh, const WaveConfig& wave, const ShiftConfig& shift,
                          const rayleigh::ModeSet& modes, WoodTerms wood = WoodTerms::exclude);

// Tail terms of the Wood modes alone.
ComplexMatrix wood_terms_matrix(const geometry::NystromMesh& mesh, const WaveConfig& wave,
                                const ShiftConfig& shift, const rayleigh::ModeSet& modes);

// Entries -e^{i alpha x_i - i beta y_i}.
ComplexVector assemble_rhs(const geometry::NystromMesh& mesh, const WaveConfig& wave);

Complex incident_field(const WaveConfig& wave, Point2 p);

// Throws ConfigurationError when h or the window cannot accommodate the mesh.
void check_assumptions(const geometry::NystromMesh& mesh, const ShiftConfig& shift);

}  // namespace shiftgreen::nystrom
