#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "varns/field.hpp"
#include "varns/grid.hpp"

namespace varns {

using Complex = std::complex<double>;

/// Spectral transforms and diagonal-in-k operators on one Grid.
///
/// Forward transforms are normalized by 1/(nx*ny) so coefficients are the
/// Fourier coefficients of the trigonometric interpolant. Not thread-safe:
/// each instance owns scratch buffers; use one instance per thread.
class SpectralOps {
 public:
  explicit SpectralOps(const Grid& g);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;

  const Grid& grid() const { return grid_; }

  // Transforms of one scalar component.
  void forward(const std::vector<double>& real, std::vector<Complex>& spec) const;
  void inverse(const std::vector<Complex>& spec, std::vector<double>& real) const;

  // Leray projection onto divergence-free, mean-zero fields. Idempotent,
  // annihilates gradients. Rejects non-finite input with DataError.
  VectorField leray_project(const VectorField& w) const;

  // Unique mean-zero z with laplacian(z) = w (full-spectrum |k|^2).
  // Requires |mean(w)| <= 1e-12 * ||w||.
  std::vector<double> inv_laplacian(const std::vector<double>& w) const;
  VectorField inv_laplacian(const VectorField& w) const;
  std::vector<double> laplacian(const std::vector<double>& w) const;

  // First-derivative operators (Nyquist-zeroed wavenumbers).
  VectorField gradient(const std::vector<double>& q) const;
  std::vector<double> divergence(const VectorField& v) const;
  std::vector<double> curl(const VectorField& v) const;

  // div of a 2x2 matrix field M (components Mxx, Mxy, Myx, Myy):
  // out_c = d/dx M_c0 + d/dy M_c1.
  VectorField div_matrix(const std::array<std::vector<double>, 4>& M) const;

  // Adjoint of div_matrix under the grid L2 quadrature: M_cd = -d/dd v_c.
  std::array<std::vector<double>, 4> neg_grad_vector(const VectorField& v) const;

  // 2/3-rule spectral truncation (self-adjoint projector).
  void dealias(std::vector<double>& w) const;
  void dealias(VectorField& w) const;
  std::array<std::vector<double>, 4> dealias(std::array<std::vector<double>, 4> M) const;

  // Resolved inverse Laplacian used by the lift: divides by -|k~|^2 with the
  // derivative (Nyquist-zeroed) wavenumbers, zeroing modes where |k~| = 0.
  // Coincides with inv_laplacian on the dealiased band.
  VectorField inv_laplacian_resolved(const VectorField& w) const;

  // ||grad u||_{L2}^2 via Parseval with derivative wavenumbers.
  double grad_norm_sq(const VectorField& u) const;
  double grad_dot(const VectorField& a, const VectorField& b) const;

  // -laplacian with derivative wavenumbers; L2-gradient of 1/2 grad_norm_sq.
  VectorField neg_laplacian_resolved(const VectorField& u) const;

  // Remove the spatial mean of both components.
  void remove_mean(VectorField& w) const;

  // Heat semigroup: multiply mode k by exp(-nu |k|^2 t).
  VectorField heat_semigroup(const VectorField& w, double nu, double t) const;

 private:
  Grid grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace varns
