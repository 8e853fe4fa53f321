#include "varns/flux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "varns/errors.hpp"

namespace varns {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double bump_prime(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// Cumulative Simpson integral of h over [1,2] on a fine uniform table;
// between nodes, cubic Hermite using the exact derivative h.
struct HTable {
  static constexpr int kIntervals = 4096;
  std::array<double, kIntervals + 1> cum{};
  double step = 1.0 / kIntervals;

  HTable() {
    cum[0] = 0.0;
    for (int i = 0; i < kIntervals; ++i) {
      const double a = 1.0 + i * step;
      const double b = a + step;
      cum[static_cast<size_t>(i) + 1] =
          cum[static_cast<size_t>(i)] +
          (step / 6.0) *
              (CutoffProfile::h(a) + 4.0 * CutoffProfile::h((a + b) / 2.0) + CutoffProfile::h(b));
    }
  }

  double eval(double x) const {  // x in [1,2]
    const double u = (x - 1.0) / step;
    int i = std::clamp(static_cast<int>(u), 0, kIntervals - 1);
    const double a = 1.0 + i * step;
    const double t = (x - a) / step;
    const double y0 = cum[static_cast<size_t>(i)], y1 = cum[static_cast<size_t>(i) + 1];
    const double d0 = CutoffProfile::h(a) * step, d1 = CutoffProfile::h(a + step) * step;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
  }
};

const HTable& h_table() {
  static const HTable table;
  return table;
}

}  // namespace

double CutoffProfile::h(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double a = bump(2.0 - s), b = bump(s - 1.0);
  return a / (a + b);
}

double CutoffProfile::h_prime(double s) {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double a = bump(2.0 - s), b = bump(s - 1.0);
  const double ap = -bump_prime(2.0 - s), bp = bump_prime(s - 1.0);
  const double den = a + b;
  return (ap * b - a * bp) / (den * den);
}

double CutoffProfile::h_integral(double x) {
  if (x <= 0.0) return 0.0;
  if (x <= 1.0) return x;
  if (x >= 2.0) return 1.0 + h_table().eval(2.0);
  return 1.0 + h_table().eval(x);
}

FluxModel FluxModel::cutoff(double n) {
  if (!(n > 0.0)) throw ConfigError("FluxModel::cutoff: level must be positive");
  return {FluxKind::cutoff, n};
}

double FluxModel::f(double s) const {
  switch (kind) {
    case FluxKind::zero: return 0.0;
    case FluxKind::exact_quadratic: return 1.0;
    case FluxKind::cutoff: return CutoffProfile::h(s / n);
  }
  return 0.0;
}

double FluxModel::f_prime(double s) const {
  return kind == FluxKind::cutoff ? CutoffProfile::h_prime(s / n) / n : 0.0;
}

double FluxModel::g(double r) const {
  return kind == FluxKind::cutoff ? 0.5 * n * CutoffProfile::h_integral(r / n) : 0.0;
}

Mat2 FluxModel::eval(double vx, double vy) const {
  const double s = vx * vx + vy * vy;
  const double fs = f(s), gs = g(s);
  return {fs * vx * vx + gs, fs * vx * vy, fs * vy * vx, fs * vy * vy + gs};
}

std::array<Mat2, 2> FluxModel::derivative(double vx, double vy) const {
  const double v[2] = {vx, vy};
  const double s = vx * vx + vy * vy;
  const double fs = f(s), fp = f_prime(s);
  const double gp = (kind == FluxKind::cutoff) ? 0.5 * fs : 0.0;  // g' = f/2
  std::array<Mat2, 2> out{};
  for (int m = 0; m < 2; ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double d = 2.0 * fp * v[m] * v[i] * v[j];
        if (i == m) d += fs * v[j];
        if (j == m) d += fs * v[i];
        if (i == j) d += 2.0 * gp * v[m];
        out[static_cast<size_t>(m)][static_cast<size_t>(2 * i + j)] = d;
      }
  return out;
}

std::array<double, 2> FluxModel::potential(double vx, double vy) const {
  if (!has_potential())
    throw UsageError("FluxModel::potential: the pure outer-product flux has none");
  const double gs = g(vx * vx + vy * vy);
  return {gs * vx, gs * vy};
}

std::string FluxModel::name() const {
  switch (kind) {
    case FluxKind::zero: return "zero";
    case FluxKind::exact_quadratic: return "exact_quadratic";
    case FluxKind::cutoff: return "cutoff(" + std::to_string(n) + ")";
  }
  return "?";
}

std::array<std::vector<double>, 4> flux_field(const FluxModel& model, const VectorField& v) {
  std::array<std::vector<double>, 4> out;
  for (auto& c : out) c.resize(v.size());
  for (size_t p = 0; p < v.size(); ++p) {
    const Mat2 m = model.eval(v.x[p], v.y[p]);
    for (int c = 0; c < 4; ++c) out[static_cast<size_t>(c)][p] = m[static_cast<size_t>(c)];
  }
  return out;
}

std::array<std::vector<double>, 4> flux_directional(const FluxModel& model,
                                                    const VectorField& v,
                                                    const VectorField& delta) {
  if (v.size() != delta.size()) throw UsageError("flux_directional: size mismatch");
  std::array<std::vector<double>, 4> out;
  for (auto& c : out) c.resize(v.size());
  for (size_t p = 0; p < v.size(); ++p) {
    const auto d = model.derivative(v.x[p], v.y[p]);
    for (int c = 0; c < 4; ++c)
      out[static_cast<size_t>(c)][p] = delta.x[p] * d[0][static_cast<size_t>(c)] +
                                       delta.y[p] * d[1][static_cast<size_t>(c)];
  }
  return out;
}

VectorField flux_jacobian_adjoint(const FluxModel& model, const VectorField& v,
                                  const std::array<std::vector<double>, 4>& mbar) {
  VectorField out;
  out.x.resize(v.size());
  out.y.resize(v.size());
  for (size_t p = 0; p < v.size(); ++p) {
    const auto d = model.derivative(v.x[p], v.y[p]);
    double sx = 0.0, sy = 0.0;
    for (int c = 0; c < 4; ++c) {
      sx += d[0][static_cast<size_t>(c)] * mbar[static_cast<size_t>(c)][p];
      sy += d[1][static_cast<size_t>(c)] * mbar[static_cast<size_t>(c)][p];
    }
    out.x[p] = sx;
    out.y[p] = sy;
  }
  return out;
}

MembershipReport flux_membership_check(const FluxModel& model, int samples,
                                       std::uint64_t seed, double tolerance) {
  if (samples < 100) throw UsageError("flux_membership_check: need at least 100 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.05, 4.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  MembershipReport rep;
  {
    const Mat2 f0 = model.eval(0.0, 0.0);
    for (double c : f0) rep.origin_defect = std::max(rep.origin_defect, std::abs(c));
  }

  auto frob = [](const Mat2& m) {
    return std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
  };

  for (int s = 0; s < samples; ++s) {
    // Radii span well below, across and above the cutoff band.
    const double r = radius(rng) * std::sqrt(std::max(model.n, 1.0));
    const double th = angle(rng);
    const double v[2] = {r * std::cos(th), r * std::sin(th)};
    const double vsq = v[0] * v[0] + v[1] * v[1];
    const double step = 1e-5 * std::max(1.0, r);

    // Central finite differences of F in each direction m.
    Mat2 fd[2];
    for (int m = 0; m < 2; ++m) {
      double vp[2] = {v[0], v[1]}, vm[2] = {v[0], v[1]};
      vp[m] += step;
      vm[m] -= step;
      const Mat2 a = model.eval(vp[0], vp[1]), b = model.eval(vm[0], vm[1]);
      for (int c = 0; c < 4; ++c)
        fd[m][static_cast<size_t>(c)] =
            (a[static_cast<size_t>(c)] - b[static_cast<size_t>(c)]) / (2.0 * step);
    }
    const double scale = std::max(1.0, vsq);  // derivative magnitudes are O(|v|)..O(|v|^2)

    // dF_ij/dv_m = dF_mj/dv_i.
    for (int m = 0; m < 2; ++m)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double lhs = fd[m][static_cast<size_t>(2 * i + j)];
          const double rhs = fd[i][static_cast<size_t>(2 * m + j)];
          const double d = std::abs(lhs - rhs) / scale;
          if (d > rep.symmetry_defect) {
            rep.symmetry_defect = d;
            rep.worst_v = {v[0], v[1]};
          }
        }

    // dG_j/dv_i = F_ij.
    if (model.has_potential()) {
      const Mat2 fv = model.eval(v[0], v[1]);
      for (int i = 0; i < 2; ++i) {
        double vp[2] = {v[0], v[1]}, vm[2] = {v[0], v[1]};
        vp[i] += step;
        vm[i] -= step;
        const auto gp = model.potential(vp[0], vp[1]);
        const auto gm = model.potential(vm[0], vm[1]);
        for (int j = 0; j < 2; ++j) {
          const double dg = (gp[static_cast<size_t>(j)] - gm[static_cast<size_t>(j)]) / (2.0 * step);
          const double d = std::abs(dg - fv[static_cast<size_t>(2 * i + j)]) / scale;
          if (d > rep.potential_defect) {
            rep.potential_defect = d;
            rep.worst_v = {v[0], v[1]};
          }
        }
      }
    }

    if (vsq > 0.0)
      rep.growth_constant = std::max(rep.growth_constant,
                                     frob(model.eval(v[0], v[1])) / vsq);
  }

  rep.pass = rep.symmetry_defect <= tolerance && rep.potential_defect <= tolerance &&
             rep.origin_defect <= tolerance;
  return rep;
}

}  // namespace varns
