#include "varns/lift.hpp"

#include <cmath>
#include <string>

#include "varns/errors.hpp"

namespace varns {

LiftResult stokes_lift(const SpaceTimeField& u, const FluxModel& model,
                       const SpectralOps& ops, bool project) {
  if (!ops.grid().same_as(u.grid)) throw UsageError("stokes_lift: grid mismatch");
  const int m = u.time.m;
  const double dt = u.time.dt();

  LiftResult out;
  out.h = SliceSequence(u.grid, u.time);
  out.w = SliceSequence(u.grid, u.time);
  out.ubar = SliceSequence(u.grid, u.time);
  out.du = SliceSequence(u.grid, u.time);
  out.rhs_norm_per_slice.resize(static_cast<size_t>(m));

  for (int j = 0; j < m; ++j) {
    const VectorField& a = u.slice(j);
    const VectorField& b = u.slice(j + 1);
    VectorField& ub = out.ubar.slices[static_cast<size_t>(j)];
    VectorField& du = out.du.slices[static_cast<size_t>(j)];
    for (size_t p = 0; p < a.x.size(); ++p) {
      ub.x[p] = 0.5 * (a.x[p] + b.x[p]);
      ub.y[p] = 0.5 * (a.y[p] + b.y[p]);
      du.x[p] = (b.x[p] - a.x[p]) / dt;
      du.y[p] = (b.y[p] - a.y[p]) / dt;
    }

    VectorField h;
    try {
      VectorField rhs = du;
      if (model.kind != FluxKind::zero) {
        auto F = ops.dealias(flux_field(model, ub));
        rhs += ops.div_matrix(F);
      }
      if (project) rhs = ops.leray_project(rhs);
      h = ops.inv_laplacian_resolved(rhs);
    } catch (const DataError&) {
      throw NumericalError("stokes_lift: non-finite intermediate at interval " +
                           std::to_string(j));
    }
    if (!all_finite(h))
      throw NumericalError("stokes_lift: non-finite lift at interval " + std::to_string(j));

    out.rhs_norm_per_slice[static_cast<size_t>(j)] = std::sqrt(ops.grad_norm_sq(h));
    out.w.slices[static_cast<size_t>(j)] = ub - h;
    out.h.slices[static_cast<size_t>(j)] = std::move(h);
  }
  return out;
}

double dual_norm(const SpectralOps& ops, const std::vector<VectorField>& slices,
                 const std::vector<double>& weights) {
  if (slices.size() != weights.size()) throw UsageError("dual_norm: weight count mismatch");
  double s = 0.0;
  for (size_t j = 0; j < slices.size(); ++j) {
    const VectorField h = ops.inv_laplacian(slices[j]);
    s += weights[j] * ops.grad_norm_sq(h);
  }
  return std::sqrt(s);
}

double dual_norm(const SpectralOps& ops, const SliceSequence& seq) {
  std::vector<double> w(seq.slices.size(), seq.time.dt());
  return dual_norm(ops, seq.slices, w);
}

}  // namespace varns
