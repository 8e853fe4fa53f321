#include "varns/random.hpp"

#include <cmath>
#include <numbers>

#include "varns/errors.hpp"

namespace varns {

namespace {

struct Mode {
  int kx, ky;
  double amp, phase;
  double dirx, diry;
};

Mode draw_mode(const Grid& g, Rng& rng, int max_mode, double amplitude, bool divfree) {
  if (max_mode < 1 || max_mode > g.nx / 3 || max_mode > g.ny / 3)
    throw UsageError("random field: max_mode must fit the dealiased band");
  int kx = 0, ky = 0;
  while (kx == 0 && ky == 0) {
    kx = rng.integer(-max_mode, max_mode);
    ky = rng.integer(-max_mode, max_mode);
  }
  const double kn = std::sqrt(static_cast<double>(kx * kx + ky * ky));
  Mode m;
  m.kx = kx;
  m.ky = ky;
  m.amp = amplitude * rng.uniform(0.2, 1.0) * std::exp(-0.5 * (kn - 1.0));
  m.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  if (divfree) {
    m.dirx = -ky / kn;
    m.diry = kx / kn;
  } else {
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    m.dirx = std::cos(th);
    m.diry = std::sin(th);
  }
  return m;
}

void add_mode(const Grid& g, const Mode& m, double scale, VectorField& out) {
  const double bx = 2.0 * std::numbers::pi / g.lx;
  const double by = 2.0 * std::numbers::pi / g.ly;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * g.nx + ix;
      const double s =
          scale * m.amp * std::sin(bx * m.kx * g.x(ix) + by * m.ky * g.y(iy) + m.phase);
      out.x[p] += s * m.dirx;
      out.y[p] += s * m.diry;
    }
}

}  // namespace

VectorField random_divfree_slice(const Grid& g, Rng& rng, int max_mode, int modes,
                                 double amplitude) {
  VectorField out(g);
  for (int i = 0; i < modes; ++i) add_mode(g, draw_mode(g, rng, max_mode, amplitude, true), 1.0, out);
  return out;
}

VectorField random_slice(const Grid& g, Rng& rng, int max_mode, int modes, double amplitude) {
  VectorField out(g);
  for (int i = 0; i < modes; ++i)
    add_mode(g, draw_mode(g, rng, max_mode, amplitude, false), 1.0, out);
  return out;
}

SpaceTimeField random_tangent(const Grid& g, const TimeGrid& t, Rng& rng, int max_mode,
                              int modes, double amplitude) {
  SpaceTimeField out(g, t);
  for (int i = 0; i < modes; ++i) {
    const Mode m = draw_mode(g, rng, max_mode, amplitude, true);
    const double omega = rng.uniform(0.5, 2.5) * std::numbers::pi / t.t_final;
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (int j = 1; j <= t.m; ++j) {
      // (t/T) factor pins the initial slice at zero; the cosine keeps the
      // time dependence smooth and non-monotone.
      const double tau = t.t(j) / t.t_final;
      add_mode(g, m, tau * std::cos(omega * t.t(j) + phase), out.slice(j));
    }
  }
  return out;
}

SpaceTimeField random_admissible(const Grid& g, const TimeGrid& t, const VectorField& v0,
                                 Rng& rng, int max_mode, int modes, double amplitude) {
  SpaceTimeField out = random_tangent(g, t, rng, max_mode, modes, amplitude);
  for (int j = 0; j <= t.m; ++j) out.slice(j) += v0;
  return out;
}

}  // namespace varns
