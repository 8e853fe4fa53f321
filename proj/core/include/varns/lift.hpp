#pragma once

#include <vector>

#include "varns/field.hpp"
#include "varns/flux.hpp"
#include "varns/spectral.hpp"

namespace varns {

/// Output of the per-interval Stokes lift.
///
/// The lift discretizes in time on the m interval midpoints: with
/// ubar_j = (u_j + u_{j+1})/2 and du_j = (u_{j+1} - u_j)/dt, slice j solves
///   laplacian(H_j) = du_j + P div F(ubar_j)          (projected case)
///   laplacian(H_j) = du_j                            (unprojected / heat case)
/// for a mean-zero H_j; the pressure gradient is absorbed by the Leray
/// projection P and never formed. w holds the certificate residual
/// ubar - h (the lift is viscosity-free; weighted residuals are formed by
/// the functional).
struct LiftResult {
  SliceSequence h;     // the lift H
  SliceSequence w;     // ubar - h
  SliceSequence ubar;  // interval-averaged velocity
  SliceSequence du;    // interval difference quotient
  std::vector<double> rhs_norm_per_slice;  // ||grad H_j|| (dual-norm proxy)
};

/// Stokes lift of a space-time field under a flux model. `project` applies
/// the Leray projection to the right-hand side (the Navier-Stokes case);
/// without it the lift inverts the Laplacian on the raw right-hand side
/// (the heat functional's convention). Throws NumericalError naming the
/// first slice at which a non-finite value appears.
LiftResult stokes_lift(const SpaceTimeField& u, const FluxModel& model,
                       const SpectralOps& ops, bool project = true);

/// Discrete L2(0,T; H^-1)-type norm of per-slice right-hand sides:
/// sqrt(sum_j weight_j * ||grad inv_laplacian(v_j)||^2). Slices must be
/// mean-zero.
double dual_norm(const SpectralOps& ops, const std::vector<VectorField>& slices,
                 const std::vector<double>& weights);

/// Convenience overload: midpoint sequence with uniform dt weights.
double dual_norm(const SpectralOps& ops, const SliceSequence& seq);

}  // namespace varns
