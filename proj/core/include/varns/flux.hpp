#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "varns/field.hpp"
#include "varns/grid.hpp"

namespace varns {

/// Smooth cutoff profile h: 1 on (-inf,1], 0 on [2,inx), smooth in between:
/// h(s) = q(2-s) / (q(2-s) + q(s-1)) with q(t) = exp(-1/t) for t > 0, else 0.
struct CutoffProfile {
  static double h(double s);
  static double h_prime(double s);
  /// Cumulative integral of h from 0 to x (cached table on the [1,2] band).
  static double h_integral(double x);
};

/// 2x2 matrix sample, row-major: {xx, xy, yx, yy}. Component (c,d) at 2c+d.
using Mat2 = std::array<double, 4>;

enum class FluxKind {
  zero,             // F = 0
  exact_quadratic,  // F(v) = v (x) v   (not symmetric-class; negative control)
  cutoff,           // F_n(v) = f_n(|v|^2) v(x)v + g_n(|v|^2) I
};

/// Nonlinear flux F(v) with pointwise value, v-derivative and (when it
/// exists) the potential G with dG_j/dv_i = F_ij.
/// For cutoff: f_n(s) = h(s/n), g_n(r) = (1/2) integral_0^r f_n.
struct FluxModel {
  FluxKind kind = FluxKind::zero;
  double n = 1.0;  // cutoff level (positive real)

  static FluxModel zero_flux() { return {FluxKind::zero, 1.0}; }
  static FluxModel exact_quadratic() { return {FluxKind::exact_quadratic, 1.0}; }
  static FluxModel cutoff(double n);

  double f(double s) const;        // coefficient of v(x)v at s = |v|^2
  double f_prime(double s) const;  // d/ds of f
  double g(double r) const;        // isotropic part (0 unless cutoff)

  Mat2 eval(double vx, double vy) const;
  /// dF/dv_x and dF/dv_y as 2x2 matrices.
  std::array<Mat2, 2> derivative(double vx, double vy) const;
  /// Potential G(v) = g(|v|^2) v; only defined for zero and cutoff kinds
  /// (UsageError otherwise).
  std::array<double, 2> potential(double vx, double vy) const;
  bool has_potential() const { return kind != FluxKind::exact_quadratic; }

  std::string name() const;
};

/// Sample-wise flux of a velocity slice; components ordered like Mat2 so the
/// result feeds SpectralOps::div_matrix directly.
std::array<std::vector<double>, 4> flux_field(const FluxModel& model, const VectorField& v);

/// Directional derivative sum_e delta_e dF/dv_e (v), sample-wise.
std::array<std::vector<double>, 4> flux_directional(const FluxModel& model,
                                                    const VectorField& v,
                                                    const VectorField& delta);

/// Adjoint of the pointwise flux Jacobian: out_e = sum_{cd} dF_cd/dv_e(v) * mbar_cd.
VectorField flux_jacobian_adjoint(const FluxModel& model, const VectorField& v,
                                  const std::array<std::vector<double>, 4>& mbar);

/// Randomized membership check for the symmetric flux class:
/// cross-derivative symmetry dF_ij/dv_m = dF_mj/dv_i (finite differences),
/// potential consistency dG/dv = F^T (finite differences), F(0) = 0, and the
/// quadratic growth bound |F(v)| <= A |v|^2.
struct MembershipReport {
  double symmetry_defect = 0.0;     // max relative defect over samples
  double potential_defect = 0.0;    // max relative defect (0 if no potential)
  double origin_defect = 0.0;       // |F(0)|
  double growth_constant = 0.0;     // sampled sup |F(v)| / |v|^2
  bool pass = false;
  std::array<double, 2> worst_v{0.0, 0.0};  // sample attaining the max defect
};

MembershipReport flux_membership_check(const FluxModel& model, int samples,
                                       std::uint64_t seed = 7u,
                                       double tolerance = 1e-6);

}  // namespace varns
