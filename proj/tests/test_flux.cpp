#include <cmath>

#include "doctest.h"
#include "varns/errors.hpp"
#include "varns/flux.hpp"
#include "varns/random.hpp"
#include "varns/spectral.hpp"

using namespace varns;

namespace {

// Independent quadrature oracle for g_n(r) = (1/2) int_0^r h(s/n) ds:
// plain composite Simpson straight through the definition, no shared code
// with the cached-table implementation path.
double g_oracle(double n, double r, int intervals = 20000) {
  auto f = [&](double s) { return CutoffProfile::h(s / n); };
  const double step = r / intervals;
  double sum = 0.0;
  for (int i = 0; i < intervals; ++i) {
    const double a = i * step, b = a + step;
    sum += (step / 6.0) * (f(a) + 4.0 * f((a + b) / 2.0) + f(b));
  }
  return 0.5 * sum;
}

}  // namespace

TEST_CASE("cutoff profile shape") {
  CHECK(CutoffProfile::h(0.3) == 1.0);
  CHECK(CutoffProfile::h(1.0) == 1.0);
  CHECK(CutoffProfile::h(2.0) == 0.0);
  CHECK(CutoffProfile::h(5.0) == 0.0);
  const double mid = CutoffProfile::h(1.5);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(mid == doctest::Approx(0.5));  // profile is symmetric about 1.5
  // h' matches finite differences inside the band.
  for (double s : {1.2, 1.5, 1.8}) {
    const double fd = (CutoffProfile::h(s + 1e-6) - CutoffProfile::h(s - 1e-6)) / 2e-6;
    CHECK(CutoffProfile::h_prime(s) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("h_integral matches independent Simpson quadrature") {
  for (double x : {0.5, 1.0, 1.3, 1.7, 2.0, 3.0}) {
    auto f = [](double s) { return CutoffProfile::h(s); };
    const int n = 20000;
    const double step = x / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = i * step, b = a + step;
      sum += (step / 6.0) * (f(a) + 4.0 * f((a + b) / 2.0) + f(b));
    }
    CHECK(CutoffProfile::h_integral(x) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("flux values: outer product and cutoff core region") {
  const FluxModel q = FluxModel::exact_quadratic();
  const Mat2 fq = q.eval(1.0, 2.0);
  CHECK(fq[0] == doctest::Approx(1.0));
  CHECK(fq[1] == doctest::Approx(2.0));
  CHECK(fq[2] == doctest::Approx(2.0));
  CHECK(fq[3] == doctest::Approx(4.0));

  // cutoff(10) at |v|^2 = 5 <= 10: v(x)v + 2.5 I exactly; oracle quadrature
  // confirms g_n(5) = 2.5.
  const FluxModel c10 = FluxModel::cutoff(10.0);
  const Mat2 fc = c10.eval(1.0, 2.0);
  CHECK(fc[0] == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(fc[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fc[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fc[3] == doctest::Approx(6.5).epsilon(1e-12));
  CHECK(g_oracle(10.0, 5.0) == doctest::Approx(2.5).epsilon(1e-9));

  // cutoff(1) far past the band: f vanishes, isotropic part saturates.
  const FluxModel c1 = FluxModel::cutoff(1.0);
  const Mat2 ff = c1.eval(10.0, 0.0);
  const double gsat = g_oracle(1.0, 100.0);
  CHECK(ff[1] == doctest::Approx(0.0));
  CHECK(ff[2] == doctest::Approx(0.0));
  CHECK(ff[0] == doctest::Approx(gsat).epsilon(1e-8));
  CHECK(ff[3] == doctest::Approx(gsat).epsilon(1e-8));
}

TEST_CASE("flux derivative closed forms and finite differences") {
  // exact_quadratic at v=(1,0): dF_ij/dv_1 = delta_i1 v_j + v_i delta_j1.
  const FluxModel q = FluxModel::exact_quadratic();
  const auto d = q.derivative(1.0, 0.0);
  CHECK(d[0][0] == doctest::Approx(2.0));  // d(v_x v_x)/d v_x = 2 v_x
  CHECK(d[0][1] == doctest::Approx(0.0));
  CHECK(d[0][2] == doctest::Approx(0.0));
  CHECK(d[0][3] == doctest::Approx(0.0));
  CHECK(d[1][1] == doctest::Approx(1.0));  // d(v_x v_y)/d v_y = v_x
  CHECK(d[1][2] == doctest::Approx(1.0));

  // Any model at v = 0: all-zero derivative matrices.
  for (const FluxModel& m :
       {FluxModel::zero_flux(), FluxModel::exact_quadratic(), FluxModel::cutoff(3.0)}) {
    const auto d0 = m.derivative(0.0, 0.0);
    for (int c = 0; c < 4; ++c) {
      CHECK(d0[0][static_cast<size_t>(c)] == 0.0);
      CHECK(d0[1][static_cast<size_t>(c)] == 0.0);
    }
  }

  // cutoff in its core region: exact_quadratic derivative + v_m I.
  const FluxModel c10 = FluxModel::cutoff(10.0);
  const double vx = 0.7, vy = -1.1;
  const auto dq = q.derivative(vx, vy);
  const auto dc = c10.derivative(vx, vy);
  const double v[2] = {vx, vy};
  for (int m = 0; m < 2; ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double expect =
            dq[static_cast<size_t>(m)][static_cast<size_t>(2 * i + j)] + (i == j ? v[m] : 0.0);
        CHECK(dc[static_cast<size_t>(m)][static_cast<size_t>(2 * i + j)] ==
              doctest::Approx(expect).epsilon(1e-12));
      }

  // Analytic derivative matches central differences, including inside the
  // transition band (looser there: h has large higher derivatives).
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const FluxModel m = FluxModel::cutoff(rng.uniform(0.5, 20.0));
    const double r = rng.uniform(0.1, 2.0) * std::sqrt(m.n);
    const double th = rng.uniform(0.0, 6.28);
    const double px = r * std::cos(th), py = r * std::sin(th);
    const double s = px * px + py * py;
    const bool band = s > 0.9 * m.n && s < 2.2 * m.n;
    const double tol = band ? 1e-4 : 1e-6;
    const double step = 1e-5 * std::max(1.0, r);
    const auto da = m.derivative(px, py);
    for (int e = 0; e < 2; ++e) {
      double vp[2] = {px, py}, vm[2] = {px, py};
      vp[e] += step;
      vm[e] -= step;
      const Mat2 a = m.eval(vp[0], vp[1]), b = m.eval(vm[0], vm[1]);
      for (int c = 0; c < 4; ++c) {
        const double fd =
            (a[static_cast<size_t>(c)] - b[static_cast<size_t>(c)]) / (2.0 * step);
        CHECK(da[static_cast<size_t>(e)][static_cast<size_t>(c)] ==
              doctest::Approx(fd).epsilon(tol).scale(std::max(1.0, s)));
      }
    }
  }
}

TEST_CASE("membership: cutoff passes, pure outer product fails symmetry") {
  for (double n : {1.0, 10.0, 100.0}) {
    const auto rep = flux_membership_check(FluxModel::cutoff(n), 200, 7);
    CHECK(rep.pass);
    CHECK(rep.symmetry_defect <= 1e-6);
    CHECK(rep.potential_defect <= 1e-6);
    CHECK(rep.origin_defect <= 1e-6);
  }
  const auto zero = flux_membership_check(FluxModel::zero_flux(), 100, 7);
  CHECK(zero.pass);
  CHECK(zero.growth_constant == 0.0);

  const auto outer = flux_membership_check(FluxModel::exact_quadratic(), 200, 7);
  CHECK_FALSE(outer.pass);
  CHECK(outer.symmetry_defect > 1e-2);  // e.g. dF_12/dv_2 = 1 vs dF_22/dv_1 = 0 at (1,2)
  CHECK(outer.origin_defect <= 1e-12);

  CHECK_THROWS_AS(flux_membership_check(FluxModel::cutoff(1.0), 50, 7), UsageError);
}

TEST_CASE("uniform growth bound across cutoff levels") {
  double worst = 0.0;
  for (double n : {1.0, 10.0, 100.0}) {
    const auto rep = flux_membership_check(FluxModel::cutoff(n), 500, 13);
    worst = std::max(worst, rep.growth_constant);
  }
  CHECK(worst < 3.0);  // one constant A for every level
}

TEST_CASE("saturation: cutoff equals outer product plus isotropic part in core") {
  const Grid g(32, 32);
  Rng rng(41);
  const VectorField u = random_divfree_slice(g, rng, 5, 6, 0.3);
  const double sup = max_speed_sq(u);
  const FluxModel c = FluxModel::cutoff(2.0 * sup + 1.0);
  const auto fc = flux_field(c, u);
  const auto fq = flux_field(FluxModel::exact_quadratic(), u);
  for (size_t p = 0; p < u.size(); ++p) {
    const double gval = c.g(u.x[p] * u.x[p] + u.y[p] * u.y[p]);
    CHECK(fc[0][p] - fq[0][p] == doctest::Approx(gval).epsilon(1e-13));
    CHECK(fc[1][p] - fq[1][p] == doctest::Approx(0.0));
    CHECK(fc[2][p] - fq[2][p] == doctest::Approx(0.0));
    CHECK(fc[3][p] - fq[3][p] == doctest::Approx(gval).epsilon(1e-13));
  }
}

TEST_CASE("Leray-projected divergence ignores the isotropic flux part") {
  const Grid g(32, 32);
  const SpectralOps ops(g);
  Rng rng(43);
  const VectorField u = random_divfree_slice(g, rng, 5, 6, 0.4);
  const FluxModel c = FluxModel::cutoff(2.0 * max_speed_sq(u) + 1.0);

  // In the saturated regime f_n = 1, so the cutoff and outer-product fluxes
  // differ by g_n(|u|^2) I, whose divergence is a gradient.
  const VectorField a = ops.leray_project(ops.div_matrix(ops.dealias(flux_field(c, u))));
  const VectorField b = ops.leray_project(
      ops.div_matrix(ops.dealias(flux_field(FluxModel::exact_quadratic(), u))));
  CHECK(norm_l2(g, a - b) <= 1e-10 * (1.0 + norm_l2(g, b)));
}

TEST_CASE("flux pairs to zero against the gradient of its own field") {
  // int F(delta) : grad delta = 0 for divergence-free delta, evaluated as
  // the dealiased spectral pairing the solver uses.
  const Grid g(32, 32);
  const SpectralOps ops(g);
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const VectorField d = random_divfree_slice(g, rng, 5, 6, 0.5);
    const FluxModel model = FluxModel::cutoff(rng.uniform(0.5, 4.0) * (max_speed_sq(d) + 0.5));
    const auto F = ops.dealias(flux_field(model, d));
    const auto gd = ops.neg_grad_vector(d);
    double pair = 0.0, fn = 0.0;
    for (int c = 0; c < 4; ++c)
      for (size_t p = 0; p < F[static_cast<size_t>(c)].size(); ++p) {
        pair += F[static_cast<size_t>(c)][p] * gd[static_cast<size_t>(c)][p];
        fn += F[static_cast<size_t>(c)][p] * F[static_cast<size_t>(c)][p];
      }
    pair *= -g.cell();
    fn = std::sqrt(fn * g.cell());
    const double gn = std::sqrt(ops.grad_norm_sq(d));
    CHECK(std::abs(pair) <= 1e-10 * std::max(1e-12, gn * fn));
  }
}

TEST_CASE("flux directional derivative and jacobian adjoint are transposes") {
  const Grid g(16, 16);
  Rng rng(53);
  const VectorField v = random_slice(g, rng, 4, 5);
  const VectorField d = random_slice(g, rng, 4, 5);
  const FluxModel model = FluxModel::cutoff(2.0);
  std::array<std::vector<double>, 4> mbar;
  for (auto& c : mbar) {
    c.resize(v.size());
    for (double& x : c) x = rng.uniform(-1.0, 1.0);
  }
  const auto df = flux_directional(model, v, d);
  const VectorField adj = flux_jacobian_adjoint(model, v, mbar);
  double lhs = 0.0;
  for (int c = 0; c < 4; ++c)
    for (size_t p = 0; p < v.size(); ++p)
      lhs += df[static_cast<size_t>(c)][p] * mbar[static_cast<size_t>(c)][p];
  const double rhs = (dot(g, adj, d)) / g.cell();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("cutoff level must be positive") {
  CHECK_THROWS_AS(FluxModel::cutoff(0.0), ConfigError);
  CHECK_THROWS_AS(FluxModel::cutoff(-2.0), ConfigError);
  CHECK_THROWS_AS(FluxModel::exact_quadratic().potential(1.0, 0.0), UsageError);
}
