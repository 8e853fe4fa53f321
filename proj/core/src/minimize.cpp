#include "varns/minimize.hpp"

#include <cmath>
#include <deque>

#include "varns/errors.hpp"

namespace varns {

void MinimizeConfig::validate() const {
  if (max_iters < 1) throw ConfigError("MinimizeConfig: max_iters must be >= 1");
  if (!(tol_grad > 0.0) || !(tol_w > 0.0))
    throw ConfigError("MinimizeConfig: tolerances must be positive");
  if (memory < 1) throw ConfigError("MinimizeConfig: memory must be >= 1");
  if (!(sufficient_decrease > 0.0) || !(sufficient_decrease < 1.0) ||
      !(backtrack_shrink > 0.0) || !(backtrack_shrink < 1.0))
    throw ConfigError("MinimizeConfig: line-search parameters must lie in (0,1)");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::gradient: return "gradient";
    case StopReason::w_residual: return "w_residual";
    case StopReason::max_iters: return "max_iters";
  }
  return "?";
}

SpaceTimeField constant_in_time(const Grid& g, const TimeGrid& t, const VectorField& v0) {
  SpaceTimeField u(g, t);
  for (auto& s : u.slices) s = v0;
  return u;
}

namespace {

// Tangents are SpaceTimeFields with slice 0 identically zero.
void tangent_axpy(SpaceTimeField& u, double a, const SpaceTimeField& d) {
  for (int j = 1; j <= u.time.m; ++j) u.slice(j).axpy(a, d.slice(j));
}

// Restrict a tangent to the discrete search space: the dealiased band
// (where the energy identities are exact under grid quadrature) intersected
// with the divergence-free subspace when the flux is active. The stationary
// point of the band-restricted problem is the in-band midpoint scheme's
// fixed point, whose certificate vanishes identically.
SpaceTimeField project_tangent(const SpaceTimeField& d, const SpectralOps& ops, bool project) {
  SpaceTimeField out = d;
  for (int j = 1; j <= d.time.m; ++j) {
    ops.dealias(out.slice(j));
    if (project) out.slice(j) = ops.leray_project(out.slice(j));
  }
  return out;
}

// Inverse of the viscous + lifted-time-derivative part of the Hessian,
// applied to a Riesz-form gradient. Per spectral mode k (kappa = |k~|^2) the
// quadratic form in the free slice values u_1..u_m is
//   sum_j [ alpha (u_j + u_{j+1})^2 + beta (u_{j+1} - u_j)^2 ] + u_m^2 / 2,
//   alpha = dt nu kappa / 8,  beta = 1 / (2 nu kappa dt),
// whose Hessian is tridiagonal in time: diagonal 4(alpha+beta) in the
// interior, 2(alpha+beta) + 1 on the last slice, off-diagonal
// 2(alpha-beta). For the heat functional this is the exact Hessian, so the
// preconditioned step is Newton's; for Navier-Stokes it is the Stokes part.
// Acts identically on both velocity components of every mode, so it
// commutes with the Leray projection.
SpaceTimeField precondition(const SpaceTimeField& d, const SpectralOps& ops, double nu) {
  const Grid& g = d.grid;
  const int m = d.time.m;
  const double dt = d.time.dt();
  SpaceTimeField out(g, d.time);

  // Spectra of all free slices at once (time-tridiagonal solves need them).
  const size_t npts = g.size();
  std::vector<std::vector<Complex>> zx(static_cast<size_t>(m)),
      zy(static_cast<size_t>(m));
  for (int j = 1; j <= m; ++j) {
    ops.forward(d.slice(j).x, zx[static_cast<size_t>(j) - 1]);
    ops.forward(d.slice(j).y, zy[static_cast<size_t>(j) - 1]);
  }

  // The gradient slices are Riesz representatives under the trapezoid-weight
  // inner product; restore the raw partial derivatives before solving.
  std::vector<double> weight(static_cast<size_t>(m));
  for (int j = 1; j <= m; ++j)
    weight[static_cast<size_t>(j) - 1] = trapezoid_weight(d.time, j);

  std::vector<Complex> rx(static_cast<size_t>(m)), ry(static_cast<size_t>(m));
  std::vector<double> diag(static_cast<size_t>(m));
  for (size_t p = 0; p < npts; ++p) {
    const int ix = static_cast<int>(p % static_cast<size_t>(g.nx));
    const int iy = static_cast<int>(p / static_cast<size_t>(g.nx));
    const double kx = g.kx_d[static_cast<size_t>(ix)];
    const double ky = g.ky_d[static_cast<size_t>(iy)];
    const double kappa = kx * kx + ky * ky;
    if (kappa == 0.0) {
      for (int j = 0; j < m; ++j) {
        zx[static_cast<size_t>(j)][p] *= weight[static_cast<size_t>(j)];
        zy[static_cast<size_t>(j)][p] *= weight[static_cast<size_t>(j)];
      }
      continue;
    }
    const double alpha = dt * nu * kappa / 8.0;
    const double beta = 1.0 / (2.0 * nu * kappa * dt);
    const double off = 2.0 * (alpha - beta);
    for (int j = 0; j < m; ++j) {
      diag[static_cast<size_t>(j)] =
          j + 1 < m ? 4.0 * (alpha + beta) : 2.0 * (alpha + beta) + 1.0;
      rx[static_cast<size_t>(j)] = zx[static_cast<size_t>(j)][p] * weight[static_cast<size_t>(j)];
      ry[static_cast<size_t>(j)] = zy[static_cast<size_t>(j)][p] * weight[static_cast<size_t>(j)];
    }
    // Thomas elimination (the matrix is SPD, no pivoting needed).
    for (int j = 1; j < m; ++j) {
      const double w = off / diag[static_cast<size_t>(j) - 1];
      diag[static_cast<size_t>(j)] -= w * off;
      rx[static_cast<size_t>(j)] -= w * rx[static_cast<size_t>(j) - 1];
      ry[static_cast<size_t>(j)] -= w * ry[static_cast<size_t>(j) - 1];
    }
    rx[static_cast<size_t>(m) - 1] /= diag[static_cast<size_t>(m) - 1];
    ry[static_cast<size_t>(m) - 1] /= diag[static_cast<size_t>(m) - 1];
    for (int j = m - 2; j >= 0; --j) {
      rx[static_cast<size_t>(j)] =
          (rx[static_cast<size_t>(j)] - off * rx[static_cast<size_t>(j) + 1]) /
          diag[static_cast<size_t>(j)];
      ry[static_cast<size_t>(j)] =
          (ry[static_cast<size_t>(j)] - off * ry[static_cast<size_t>(j) + 1]) /
          diag[static_cast<size_t>(j)];
    }
    for (int j = 0; j < m; ++j) {
      zx[static_cast<size_t>(j)][p] = rx[static_cast<size_t>(j)];
      zy[static_cast<size_t>(j)][p] = ry[static_cast<size_t>(j)];
    }
  }

  for (int j = 1; j <= m; ++j) {
    ops.inverse(zx[static_cast<size_t>(j) - 1], out.slice(j).x);
    ops.inverse(zy[static_cast<size_t>(j) - 1], out.slice(j).y);
  }
  return out;
}

}  // namespace

MinimizeReport minimize(const FunctionalSpec& spec, const SpaceTimeField& init,
                        const MinimizeConfig& cfg, const SpectralOps& ops) {
  cfg.validate();
  const bool project = spec.kind == FunctionalKind::navier_stokes;
  SpaceTimeField u = init;
  for (int j = 1; j <= u.time.m; ++j) {
    ops.dealias(u.slice(j));
    if (project) u.slice(j) = ops.leray_project(u.slice(j));
  }

  Evaluation ev = evaluate(u, spec, ops, true);
  SpaceTimeField g = project_tangent(ev.grad, ops, project);
  double gnorm = st_norm(g);
  const double g0 = std::max(gnorm, 1e-300);

  struct Pair {
    SpaceTimeField s, y;
    double rho;
  };
  std::deque<Pair> history;

  MinimizeReport rep;
  rep.converged_by = StopReason::max_iters;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double unorm = std::max(st_norm(u), 1e-300);
    rep.trace.push_back({ev.value, gnorm, ev.w_norm,
                         std::abs(ev.value - ev.value_via_rewrite) /
                             (1.0 + std::abs(ev.value))});
    if (ev.w_norm / unorm <= cfg.tol_w) {
      rep.converged_by = StopReason::w_residual;
      break;
    }
    if (gnorm <= cfg.tol_grad * g0 || gnorm <= 1e-14 * (1.0 + std::abs(ev.value))) {
      rep.converged_by = StopReason::gradient;
      break;
    }

    // Two-loop recursion with the spectral diagonal as the base metric.
    SpaceTimeField q = g;
    std::vector<double> alpha(history.size());
    for (size_t i = history.size(); i-- > 0;) {
      alpha[i] = history[i].rho * st_dot(history[i].s, q);
      tangent_axpy(q, -alpha[i], history[i].y);
    }
    SpaceTimeField z = precondition(q, ops, spec.nu);
    if (!history.empty()) {
      const Pair& last = history.back();
      const double ypy = st_dot(last.y, precondition(last.y, ops, spec.nu));
      if (ypy > 0.0) {
        const double gamma = 1.0 / (last.rho * ypy);
        for (int j = 1; j <= z.time.m; ++j) z.slice(j) *= gamma;
      }
    }
    for (size_t i = 0; i < history.size(); ++i) {
      const double beta = history[i].rho * st_dot(history[i].y, z);
      tangent_axpy(z, alpha[i] - beta, history[i].s);
    }
    SpaceTimeField d = project_tangent(z, ops, project);
    double slope = -st_dot(d, g);  // directional derivative along -d
    if (!(slope < 0.0)) {  // not a descent direction: restart steepest
      history.clear();
      d = g;
      slope = -st_dot(g, g);
    }

    double step = 1.0;
    bool accepted = false;
    SpaceTimeField u_trial = u;
    Evaluation ev_trial;
    for (; step > 1e-18; step *= cfg.backtrack_shrink) {
      u_trial = u;
      tangent_axpy(u_trial, -step, d);
      bool finite = true;
      try {
        ev_trial = evaluate(u_trial, spec, ops, true);
      } catch (const NumericalError&) {
        finite = false;
      }
      if (finite && std::isfinite(ev_trial.value) &&
          ev_trial.value <= ev.value + cfg.sufficient_decrease * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // At the numerical floor of a smooth objective no decrease is
      // measurable; report stationarity. Anything else is divergence.
      if (ev.w_norm / unorm <= 10.0 * cfg.tol_w || gnorm <= 1e-8 * g0) {
        rep.converged_by = StopReason::gradient;
        break;
      }
      throw NumericalError("minimize: line search failed at iteration " +
                           std::to_string(iter) + " (value " + std::to_string(ev.value) +
                           ", grad " + std::to_string(gnorm) + ")");
    }

    SpaceTimeField g_new = project_tangent(ev_trial.grad, ops, project);
    Pair pair;
    pair.s = SpaceTimeField(u.grid, u.time);
    tangent_axpy(pair.s, -step, d);
    pair.y = g_new;
    tangent_axpy(pair.y, -1.0, g);
    const double sy = st_dot(pair.s, pair.y);
    if (sy > 1e-14 * st_norm(pair.s) * st_norm(pair.y)) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (static_cast<int>(history.size()) > cfg.memory) history.pop_front();
    }

    u = std::move(u_trial);
    ev = std::move(ev_trial);
    g = std::move(g_new);
    gnorm = st_norm(g);
  }

  if (rep.converged_by == StopReason::max_iters)
    rep.trace.push_back({ev.value, gnorm, ev.w_norm,
                         std::abs(ev.value - ev.value_via_rewrite) /
                             (1.0 + std::abs(ev.value))});
  rep.iterations = static_cast<int>(rep.trace.size()) - 1;
  rep.final_field = std::move(u);
  rep.final_value = ev.value;
  rep.final_w_relative = ev.w_norm / std::max(st_norm(rep.final_field), 1e-300);
  return rep;
}

}  // namespace varns
