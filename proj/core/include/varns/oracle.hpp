#pragma once

#include <functional>
#include <string>

#include "varns/field.hpp"
#include "varns/flux.hpp"
#include "varns/spectral.hpp"

namespace varns {

/// Closed-form solutions used as ground truth.
struct AnalyticCase {
  std::string name;
  std::function<void(double x, double y, double t, double& ux, double& uy)> eval;

  SpaceTimeField sample(const Grid& g, const TimeGrid& t) const;
  VectorField sample_at(const Grid& g, double t) const;
};

/// Decaying single divergence-free mode: a * sin(kx*x + ky*y) * rot(k)/|k|
/// times exp(-nu |k|^2 t) on the 2pi-torus.
AnalyticCase heat_mode(int kx, int ky, double nu, double amplitude = 1.0);

/// (cos x sin y, -sin x cos y) * exp(-2 nu t): exact Navier-Stokes solution
/// on the 2pi-torus (its advective term is a pure gradient).
AnalyticCase taylor_green(double nu);

struct ReferenceRun {
  SpaceTimeField field;    // subsampled onto the requested TimeGrid
  int steps = 0;           // actual step count (rounded up to a multiple of m)
  double max_divergence = 0.0;  // max over steps of the spectral divergence norm
};

/// Classical pseudo-spectral time stepper, independent of the variational
/// solver: fourth-order explicit integration of
///   d/dt u = nu laplacian(u) - P div F(u)
/// with the diffusion handled exactly by an integrating factor and the flux
/// dealiased by the 2/3 rule. Checks the advective step-size restriction
/// dt <= 0.5 dx / max|v0| up front (ConfigError on violation).
ReferenceRun reference_solve(const VectorField& v0, double nu, const TimeGrid& time,
                             int steps, const FluxModel& model, const SpectralOps& ops);

struct ErrorReport {
  double rel_l2_spacetime = 0.0;
  double rel_l2_terminal = 0.0;
  double max_slice_rel = 0.0;
};

/// Relative errors of u against a truth field on the same grids; relative
/// norms fall back to absolute when the truth is numerically zero.
ErrorReport compare(const SpaceTimeField& u, const SpaceTimeField& truth);
ErrorReport compare(const SpaceTimeField& u, const AnalyticCase& truth);

}  // namespace varns
