#include "varns/oracle.hpp"

#include <cmath>
#include <numbers>

#include "varns/errors.hpp"

namespace varns {

SpaceTimeField AnalyticCase::sample(const Grid& g, const TimeGrid& t) const {
  return sample_field(g, t, eval);
}

VectorField AnalyticCase::sample_at(const Grid& g, double t) const {
  return sample_slice(g, [&](double x, double y, double& ux, double& uy) {
    eval(x, y, t, ux, uy);
  });
}

AnalyticCase heat_mode(int kx, int ky, double nu, double amplitude) {
  if (kx == 0 && ky == 0) throw ConfigError("heat_mode: wavevector must be nonzero");
  const double kn = std::sqrt(static_cast<double>(kx * kx + ky * ky));
  const double dx = -ky / kn, dy = kx / kn;
  const double k2 = static_cast<double>(kx * kx + ky * ky);
  AnalyticCase c;
  c.name = "heat_mode(" + std::to_string(kx) + "," + std::to_string(ky) + ")";
  c.eval = [=](double x, double y, double t, double& ux, double& uy) {
    const double s = amplitude * std::exp(-nu * k2 * t) * std::sin(kx * x + ky * y);
    ux = s * dx;
    uy = s * dy;
  };
  return c;
}

AnalyticCase taylor_green(double nu) {
  AnalyticCase c;
  c.name = "taylor_green";
  c.eval = [=](double x, double y, double t, double& ux, double& uy) {
    const double e = std::exp(-2.0 * nu * t);
    ux = std::cos(x) * std::sin(y) * e;
    uy = -std::sin(x) * std::cos(y) * e;
  };
  return c;
}

namespace {

struct SpectralState {
  std::vector<Complex> x, y;
};

}  // namespace

ReferenceRun reference_solve(const VectorField& v0, double nu, const TimeGrid& time,
                             int steps, const FluxModel& model, const SpectralOps& ops) {
  const Grid& g = ops.grid();
  if (v0.size() != static_cast<size_t>(g.size()))
    throw UsageError("reference_solve: v0 size mismatch");
  if (steps < time.m) steps = time.m;
  if (steps % time.m != 0) steps += time.m - steps % time.m;  // align with output slices
  const double dt = time.t_final / steps;
  const double dx = std::min(g.lx / g.nx, g.ly / g.ny);
  const double vmax = std::sqrt(max_speed_sq(v0));
  if (vmax > 0.0 && model.kind != FluxKind::zero && dt > 0.5 * dx / vmax)
    throw ConfigError("reference_solve: step count violates dt <= 0.5 dx / max|v0|");

  const int n = g.size();
  // Per-mode data: full-spectrum |k|^2 for the exact diffusion factor,
  // derivative wavenumbers for div/projection.
  std::vector<double> k2(static_cast<size_t>(n)), kxd(static_cast<size_t>(n)),
      kyd(static_cast<size_t>(n));
  std::vector<unsigned char> keep = g.dealias_keep;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * g.nx + ix;
      k2[p] = g.kx[static_cast<size_t>(ix)] * g.kx[static_cast<size_t>(ix)] +
              g.ky[static_cast<size_t>(iy)] * g.ky[static_cast<size_t>(iy)];
      kxd[p] = g.kx_d[static_cast<size_t>(ix)];
      kyd[p] = g.ky_d[static_cast<size_t>(iy)];
    }

  SpectralState u;
  ops.forward(v0.x, u.x);
  ops.forward(v0.y, u.y);

  double max_div = 0.0;
  auto track_divergence = [&](const SpectralState& s) {
    double d = 0.0;
    for (int p = 0; p < n; ++p)
      d += std::norm(kxd[static_cast<size_t>(p)] * s.x[static_cast<size_t>(p)] +
                     kyd[static_cast<size_t>(p)] * s.y[static_cast<size_t>(p)]);
    max_div = std::max(max_div, std::sqrt(d * g.area()));
  };

  // N(u) = -P div F(u), dealiased, in spectral space.
  VectorField phys(g);
  auto nonlinear = [&](const SpectralState& s) {
    SpectralState out;
    out.x.assign(static_cast<size_t>(n), Complex(0.0, 0.0));
    out.y.assign(static_cast<size_t>(n), Complex(0.0, 0.0));
    if (model.kind == FluxKind::zero) return out;
    ops.inverse(s.x, phys.x);
    ops.inverse(s.y, phys.y);
    const auto F = flux_field(model, phys);
    std::array<std::vector<Complex>, 4> Fs;
    for (int c = 0; c < 4; ++c) ops.forward(F[static_cast<size_t>(c)], Fs[static_cast<size_t>(c)]);
    const Complex I(0.0, 1.0);
    for (int p = 0; p < n; ++p) {
      const size_t q = static_cast<size_t>(p);
      if (!keep[q]) continue;
      Complex dvx = -I * (kxd[q] * Fs[0][q] + kyd[q] * Fs[1][q]);
      Complex dvy = -I * (kxd[q] * Fs[2][q] + kyd[q] * Fs[3][q]);
      const double kk = kxd[q] * kxd[q] + kyd[q] * kyd[q];
      if (kk > 0.0) {  // Leray projection of the divergence
        const Complex kd = (kxd[q] * dvx + kyd[q] * dvy) / kk;
        dvx -= kxd[q] * kd;
        dvy -= kyd[q] * kd;
      } else {
        dvx = dvy = 0.0;
      }
      out.x[q] = dvx;
      out.y[q] = dvy;
    }
    return out;
  };

  std::vector<double> e_half(static_cast<size_t>(n)), e_full(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) {
    e_half[static_cast<size_t>(p)] = std::exp(-nu * k2[static_cast<size_t>(p)] * dt / 2.0);
    e_full[static_cast<size_t>(p)] =
        e_half[static_cast<size_t>(p)] * e_half[static_cast<size_t>(p)];
  }

  auto combine = [&](const SpectralState& a, double ca, const std::vector<double>* ea,
                     const SpectralState& b, double cb, const std::vector<double>* eb) {
    SpectralState out;
    out.x.resize(static_cast<size_t>(n));
    out.y.resize(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
      const size_t q = static_cast<size_t>(p);
      const double fa = ca * (ea ? (*ea)[q] : 1.0);
      const double fb = cb * (eb ? (*eb)[q] : 1.0);
      out.x[q] = fa * a.x[q] + fb * b.x[q];
      out.y[q] = fa * a.y[q] + fb * b.y[q];
    }
    return out;
  };

  ReferenceRun run;
  run.field = SpaceTimeField(g, time);
  run.steps = steps;
  ops.inverse(u.x, run.field.slice(0).x);
  ops.inverse(u.y, run.field.slice(0).y);
  const int per_slice = steps / time.m;

  for (int step = 0; step < steps; ++step) {
    // Integrating-factor RK4 (exact diffusion between stages).
    const SpectralState k1 = nonlinear(u);
    const SpectralState s2 = combine(u, 1.0, &e_half, k1, dt / 2.0, &e_half);
    const SpectralState k2s = nonlinear(s2);
    SpectralState s3 = combine(u, 1.0, &e_half, k2s, dt / 2.0, nullptr);
    const SpectralState k3 = nonlinear(s3);
    const SpectralState s4 = combine(u, 1.0, &e_full, k3, dt, &e_half);
    const SpectralState k4 = nonlinear(s4);

    for (int p = 0; p < n; ++p) {
      const size_t q = static_cast<size_t>(p);
      u.x[q] = e_full[q] * u.x[q] +
               (dt / 6.0) * (e_full[q] * k1.x[q] + 2.0 * e_half[q] * (k2s.x[q] + k3.x[q]) +
                             k4.x[q]);
      u.y[q] = e_full[q] * u.y[q] +
               (dt / 6.0) * (e_full[q] * k1.y[q] + 2.0 * e_half[q] * (k2s.y[q] + k3.y[q]) +
                             k4.y[q]);
    }
    track_divergence(u);

    if ((step + 1) % per_slice == 0) {
      const int j = (step + 1) / per_slice;
      ops.inverse(u.x, run.field.slice(j).x);
      ops.inverse(u.y, run.field.slice(j).y);
      if (!all_finite(run.field.slice(j)))
        throw NumericalError("reference_solve: non-finite state at slice " + std::to_string(j));
    }
  }
  run.max_divergence = max_div;
  return run;
}

ErrorReport compare(const SpaceTimeField& u, const SpaceTimeField& truth) {
  if (!u.grid.same_as(truth.grid) || !u.time.same_as(truth.time))
    throw UsageError("compare: grid mismatch");
  ErrorReport rep;
  const SpaceTimeField diff = u - truth;
  const double tn = st_norm(truth);
  rep.rel_l2_spacetime = st_norm(diff) / (tn > 1e-14 ? tn : 1.0);
  const int m = u.time.m;
  const double ttn = norm_l2(u.grid, truth.slice(m));
  rep.rel_l2_terminal = norm_l2(u.grid, diff.slice(m)) / (ttn > 1e-14 ? ttn : 1.0);
  double scale = 0.0;
  for (const auto& s : truth.slices) scale = std::max(scale, norm_l2(truth.grid, s));
  if (scale < 1e-14) scale = 1.0;
  for (const auto& s : diff.slices)
    rep.max_slice_rel = std::max(rep.max_slice_rel, norm_l2(u.grid, s) / scale);
  return rep;
}

ErrorReport compare(const SpaceTimeField& u, const AnalyticCase& truth) {
  return compare(u, truth.sample(u.grid, u.time));
}

}  // namespace varns
