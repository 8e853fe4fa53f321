#include "varns/functional.hpp"

#include <cmath>

#include "varns/errors.hpp"

namespace varns {

namespace {

// Interval average of a space-time shift field.
VectorField interval_average(const SpaceTimeField& r, int j) {
  VectorField out = r.slice(j);
  out += r.slice(j + 1);
  out *= 0.5;
  return out;
}

}  // namespace

void FunctionalSpec::validate(const SpaceTimeField& u) const {
  if (!(nu > 0.0)) throw ConfigError("FunctionalSpec: nu must be positive");
  if (r) {
    if (kind == FunctionalKind::heat)
      throw ConfigError("FunctionalSpec: the shifted form is only defined for navier_stokes");
    if (nu != 1.0)
      throw ConfigError("FunctionalSpec: the shifted form is only defined at nu = 1");
    if (!r->grid.same_as(u.grid) || !r->time.same_as(u.time))
      throw UsageError("FunctionalSpec: shift r lives on a different grid");
  }
  if (v0.size() != u.slice(0).size())
    throw UsageError("FunctionalSpec: v0 size does not match u");
  const double scale = std::sqrt(max_speed_sq(v0)) + 1.0;
  for (size_t p = 0; p < v0.size(); ++p)
    if (std::abs(u.slice(0).x[p] - v0.x[p]) > 1e-12 * scale ||
        std::abs(u.slice(0).y[p] - v0.y[p]) > 1e-12 * scale)
      throw UsageError("FunctionalSpec: u(.,0) differs from the pinned datum v0");
}

Evaluation evaluate(const SpaceTimeField& u, const FunctionalSpec& spec,
                    const SpectralOps& ops, bool want_gradient) {
  spec.validate(u);
  const Grid& g = u.grid;
  const TimeGrid& tg = u.time;
  const int m = tg.m;
  const double dt = tg.dt();
  const double nu = spec.nu;
  const bool project = spec.kind == FunctionalKind::navier_stokes;
  const FluxModel model =
      spec.kind == FunctionalKind::heat ? FluxModel::zero_flux() : spec.model;

  const LiftResult lift = stokes_lift(u, model, ops, project);

  Evaluation out;
  double quad = 0.0;     // time integral of the two gradient terms
  double rewrite = 0.0;  // time integral of |nu grad ubar - grad H|^2-type term
  double wsq = 0.0;

  std::vector<VectorField> slice_cotangent;
  if (want_gradient) slice_cotangent.assign(static_cast<size_t>(m) + 1, VectorField(g));

  for (int j = 0; j < m; ++j) {
    const VectorField& ub = lift.ubar.slices[static_cast<size_t>(j)];
    const VectorField& h = lift.h.slices[static_cast<size_t>(j)];

    // a = ubar (+ rbar); the first gradient term uses a, the second uses
    // H (- rbar in the shifted form).
    VectorField a = ub;
    VectorField h_eff = h;
    if (spec.r) {
      const VectorField rb = interval_average(*spec.r, j);
      a += rb;
      h_eff -= rb;
    }

    quad += dt * 0.5 * (nu * ops.grad_norm_sq(a) + ops.grad_norm_sq(h_eff) / nu);

    // Rewrite integrand: (1/(2nu))|nu grad a - grad H|^2, plus |grad rbar|^2/2
    // in the shifted form (where nu = 1). The certificate is W = a - H/nu.
    VectorField resid = a;
    resid *= nu;
    resid -= h;
    rewrite += dt / (2.0 * nu) * ops.grad_norm_sq(resid);
    if (spec.r) {
      VectorField rb = a;
      rb -= ub;
      rewrite += dt / 2.0 * ops.grad_norm_sq(rb);
    }

    VectorField w = a;
    w.axpy(-1.0 / nu, h);
    wsq += dt * dot(g, w, w);

    if (want_gradient) {
      // d/d(a) of (dt/2) nu G(a)  -> ubar cotangent (r is constant data).
      VectorField ubar_cot = ops.neg_laplacian_resolved(a);
      ubar_cot *= dt * nu;

      // d/d(H) of (dt/(2nu)) G(h_eff) pulled back through the lift chain.
      VectorField h_cot = ops.neg_laplacian_resolved(h_eff);
      h_cot *= dt / nu;
      VectorField rhs_cot = ops.inv_laplacian_resolved(h_cot);
      if (project) rhs_cot = ops.leray_project(rhs_cot);

      if (model.kind != FluxKind::zero) {
        auto mbar = ops.dealias(ops.neg_grad_vector(rhs_cot));
        ubar_cot += flux_jacobian_adjoint(model, ub, mbar);
      }

      // Distribute through ubar = (u_j + u_{j+1})/2 and du = (u_{j+1}-u_j)/dt.
      VectorField& cj = slice_cotangent[static_cast<size_t>(j)];
      VectorField& cj1 = slice_cotangent[static_cast<size_t>(j) + 1];
      cj.axpy(0.5, ubar_cot);
      cj1.axpy(0.5, ubar_cot);
      cj.axpy(-1.0 / dt, rhs_cot);
      cj1.axpy(1.0 / dt, rhs_cot);
    }
  }

  const double term_final = 0.5 * dot(g, u.slice(m), u.slice(m));
  const double term_initial = 0.5 * dot(g, spec.v0, spec.v0);
  out.value = quad + term_final;
  out.value_via_rewrite = rewrite + term_initial;
  out.w_norm = std::sqrt(wsq);

  if (want_gradient) {
    slice_cotangent[static_cast<size_t>(m)] += u.slice(m);
    out.grad = SpaceTimeField(g, tg);
    for (int j = 1; j <= m; ++j) {
      VectorField gj = slice_cotangent[static_cast<size_t>(j)];
      gj *= 1.0 / trapezoid_weight(tg, j);
      out.grad.slice(j) = std::move(gj);
    }
    out.has_grad = true;
  }
  return out;
}

double first_variation(const SpaceTimeField& u, const SpaceTimeField& delta,
                       const FunctionalSpec& spec, const SpectralOps& ops) {
  spec.validate(u);
  if (spec.nu != 1.0)
    throw UsageError("first_variation: the term-by-term formula is defined at nu = 1");
  if (!delta.grid.same_as(u.grid) || !delta.time.same_as(u.time))
    throw UsageError("first_variation: delta grid mismatch");
  const double dscale = norm_l2(delta.grid, delta.slice(delta.time.m)) + 1e-30;
  if (norm_l2(delta.grid, delta.slice(0)) > 1e-12 * dscale)
    throw UsageError("first_variation: delta(.,0) must vanish");
  const bool project = spec.kind == FunctionalKind::navier_stokes;
  const FluxModel model =
      spec.kind == FunctionalKind::heat ? FluxModel::zero_flux() : spec.model;
  if (project) {
    for (const VectorField& s : delta.slices) {
      const auto div = ops.divergence(s);
      double dn = 0.0;
      for (double v : div) dn += v * v;
      if (std::sqrt(dn / static_cast<double>(div.size())) > 1e-8 * (dscale + 1.0))
        throw UsageError("first_variation: delta slices must be divergence-free");
    }
  }

  const LiftResult lift = stokes_lift(u, model, ops, project);

  const Grid& g = u.grid;
  const double dt = u.time.dt();
  double sum = 0.0;
  for (int j = 0; j < u.time.m; ++j) {
    VectorField w = lift.ubar.slices[static_cast<size_t>(j)];
    if (spec.r) w += interval_average(*spec.r, j);
    w -= lift.h.slices[static_cast<size_t>(j)];

    const VectorField dbar = 0.5 * (delta.slice(j) + delta.slice(j + 1));
    VectorField ddt = delta.slice(j + 1);
    ddt -= delta.slice(j);
    ddt *= 1.0 / dt;

    double term = ops.grad_dot(w, dbar) + dot(g, w, ddt);
    if (model.kind != FluxKind::zero) {
      auto df = ops.dealias(
          flux_directional(model, lift.ubar.slices[static_cast<size_t>(j)], dbar));
      const auto gw = ops.neg_grad_vector(w);  // gw_cd = -d_d w_c
      double pair = 0.0;
      for (int c = 0; c < 4; ++c)
        for (size_t p = 0; p < gw[static_cast<size_t>(c)].size(); ++p)
          pair += df[static_cast<size_t>(c)][p] * gw[static_cast<size_t>(c)][p];
      pair *= -g.cell();  // undo the neg in neg_grad_vector: = int dF : grad w
      term -= pair;
    }
    sum += dt * term;
  }
  return sum;
}

}  // namespace varns
