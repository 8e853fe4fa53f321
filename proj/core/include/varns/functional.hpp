#pragma once

#include <memory>
#include <optional>

#include "varns/field.hpp"
#include "varns/flux.hpp"
#include "varns/lift.hpp"
#include "varns/spectral.hpp"

namespace varns {

enum class FunctionalKind { heat, navier_stokes };

/// Which variational objective to evaluate.
///
/// navier_stokes: value = 1/2 sum_j dt [nu ||grad ubar_j||^2
///                + (1/nu) ||grad H_j||^2] + 1/2 ||u(T)||^2
/// with H the projected Stokes lift of du + div F(ubar); heat drops the
/// projection and the flux (H = inv_laplacian(du)).
///
/// An optional shift r turns the objective into its r-shifted variant
/// (gradient terms become |grad(ubar + rbar)|^2 and |grad(H - rbar)|^2);
/// only stated for nu = 1, rejected otherwise.
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::navier_stokes;
  FluxModel model = FluxModel::zero_flux();
  double nu = 1.0;
  std::optional<SpaceTimeField> r;
  VectorField v0;  // pinned initial datum; evaluate() checks u.slice(0) == v0

  void validate(const SpaceTimeField& u) const;
};

/// Result of one objective evaluation.
///
/// value and value_via_rewrite compute the same number two ways: the
/// defining quadratic form, and the integrated-by-parts form
/// (1/(2 nu)) sum_j dt ||nu grad ubar - grad H||^2 + 1/2 ||v0||^2.
/// Their agreement is the discrete energy identity. w_norm is the
/// space-time norm of the certificate residual W = ubar (+ rbar) - H/nu;
/// it vanishes exactly at stationary points.
struct Evaluation {
  double value = 0.0;
  double value_via_rewrite = 0.0;
  double w_norm = 0.0;
  SpaceTimeField grad;  // present only when requested; slice 0 identically zero
  bool has_grad = false;
};

/// Objective value (and optionally the exact gradient of the discrete
/// objective) at u. The gradient is the Riesz representative under the
/// trapezoid-weighted space-time inner product st_dot, so
/// st_dot(grad, delta) equals the directional derivative for any tangent
/// delta with delta(.,0) = 0.
Evaluation evaluate(const SpaceTimeField& u, const FunctionalSpec& spec,
                    const SpectralOps& ops, bool want_gradient = false);

inline SpaceTimeField gradient(const SpaceTimeField& u, const FunctionalSpec& spec,
                               const SpectralOps& ops) {
  return evaluate(u, spec, ops, true).grad;
}

/// The first-variation quadrature evaluated term by term:
///   sum_j dt [ grad W : grad dbar + W . (d delta/dt) - dF(ubar; dbar) : grad W ]
/// with W = ubar (+ rbar) - H. Independent route to the same derivative as
/// st_dot(gradient(u), delta); the two agree up to
/// discretization-commutation error. Requires nu = 1, delta(.,0) = 0 and
/// divergence-free delta slices.
double first_variation(const SpaceTimeField& u, const SpaceTimeField& delta,
                       const FunctionalSpec& spec, const SpectralOps& ops);

}  // namespace varns
