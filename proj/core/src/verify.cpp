#include "varns/verify.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "varns/errors.hpp"

namespace varns {

TheoremCheck TheoremCheck::make(std::string name, double defect, double tolerance,
                                std::map<std::string, std::string> context) {
  TheoremCheck c;
  c.name = std::move(name);
  c.defect = defect;
  c.tolerance = tolerance;
  c.pass = defect <= tolerance;
  c.context = std::move(context);
  return c;
}

void write_checks_csv(std::ostream& os, const std::vector<TheoremCheck>& checks) {
  os << "name,defect,tolerance,pass,context\n";
  os.precision(17);
  for (const auto& c : checks) {
    os << c.name << ',' << c.defect << ',' << c.tolerance << ',' << (c.pass ? 1 : 0) << ',';
    bool first = true;
    for (const auto& [k, v] : c.context) {
      if (!first) os << ';';
      os << k << '=' << v;
      first = false;
    }
    os << '\n';
  }
}

void write_checks_csv(const std::string& path, const std::vector<TheoremCheck>& checks) {
  std::ofstream f(path);
  if (!f) throw DataError("write_checks_csv: cannot open " + path);
  write_checks_csv(f, checks);
}

std::vector<TheoremCheck> energy_equality_check(const SpaceTimeField& u, double nu,
                                                const SpectralOps& ops, double tolerance) {
  const Grid& g = u.grid;
  const double dt = u.time.dt();
  const double half_v0 = 0.5 * dot(g, u.slice(0), u.slice(0));
  const bool absolute = half_v0 < 1e-14;
  const double scale = absolute ? 1.0 : half_v0;

  std::vector<TheoremCheck> out;
  double viscous = 0.0;  // nu * running midpoint quadrature of ||grad u||^2
  for (int j = 0; j <= u.time.m; ++j) {
    if (j > 0) {
      VectorField ub = u.slice(j - 1);
      ub += u.slice(j);
      ub *= 0.5;
      viscous += nu * dt * ops.grad_norm_sq(ub);
    }
    const double defect =
        std::abs(0.5 * dot(g, u.slice(j), u.slice(j)) + viscous - half_v0) / scale;
    out.push_back(TheoremCheck::make("energy_equality_slice_" + std::to_string(j), defect,
                                     tolerance, {{"slice", std::to_string(j)}}));
  }
  return out;
}

std::vector<TestFunction> standard_battery(double t_final) {
  struct KDir {
    int kx, ky;
  };
  const std::vector<KDir> ks = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
  struct Profile {
    std::string name;
    std::function<double(double)> q, qp;  // q(tau) and dq/dtau
  };
  const double T = t_final;
  const std::vector<Profile> profs = {
      {"lin", [](double t) { return 1.0 - t; }, [](double) { return -1.0; }},
      {"quad",
       [](double t) { return (1.0 - t) * (1.0 - t); },
       [](double t) { return -2.0 * (1.0 - t); }},
      {"cos",
       [](double t) { return std::cos(std::numbers::pi * t / 2.0); },
       [](double t) { return -std::numbers::pi / 2.0 * std::sin(std::numbers::pi * t / 2.0); }},
      {"parab",
       [](double t) { return 1.0 - t * t; },
       [](double t) { return -2.0 * t; }},
  };

  std::vector<TestFunction> out;
  for (const auto& k : ks)
    for (const auto& pr : profs) {
      const double kn = std::sqrt(static_cast<double>(k.kx * k.kx + k.ky * k.ky));
      const double dx = -k.ky / kn, dy = k.kx / kn;
      const int kx = k.kx, ky = k.ky;
      TestFunction tf;
      tf.name = "psi_k" + std::to_string(kx) + std::to_string(ky) + "_" + pr.name;
      auto q = pr.q;
      auto qp = pr.qp;
      tf.psi = [=](double x, double y, double t, double& px, double& py) {
        const double s = q(t / T) * std::sin(kx * x + ky * y);
        px = s * dx;
        py = s * dy;
      };
      tf.psi_t = [=](double x, double y, double t, double& px, double& py) {
        const double s = qp(t / T) / T * std::sin(kx * x + ky * y);
        px = s * dx;
        py = s * dy;
      };
      out.push_back(std::move(tf));
    }
  return out;
}

TheoremCheck weak_form_residual(const SpaceTimeField& u, const FluxModel& model, double nu,
                                const std::vector<TestFunction>& battery,
                                const SpectralOps& ops, double tolerance) {
  if (battery.empty()) throw UsageError("weak_form_residual: empty battery");
  const Grid& g = u.grid;
  const TimeGrid& tg = u.time;
  const double dt = tg.dt();

  double worst = 0.0;
  std::string worst_name;
  for (const auto& tf : battery) {
    const double t_end = tg.t_final;
    {  // the battery contract: psi(., T) = 0
      const VectorField pT = sample_slice(g, [&](double x, double y, double& px, double& py) {
        tf.psi(x, y, t_end, px, py);
      });
      if (norm_l2(g, pT) > 1e-10) throw UsageError("weak_form_residual: psi(.,T) != 0");
    }

    const VectorField psi0 = sample_slice(g, [&](double x, double y, double& px, double& py) {
      tf.psi(x, y, 0.0, px, py);
    });
    const double t1 = dot(g, u.slice(0), psi0);
    // Cauchy-Schwarz bound on each term: normalizing by it keeps the
    // residual meaningful even when the integrals cancel by orthogonality.
    double denom = norm_l2(g, u.slice(0)) * norm_l2(g, psi0);

    double t2 = 0.0, t3 = 0.0, t4 = 0.0;
    for (int j = 0; j < tg.m; ++j) {
      const double tm = tg.t_mid(j);
      VectorField ub = u.slice(j);
      ub += u.slice(j + 1);
      ub *= 0.5;
      const VectorField psi = sample_slice(g, [&](double x, double y, double& px, double& py) {
        tf.psi(x, y, tm, px, py);
      });
      const VectorField psit = sample_slice(g, [&](double x, double y, double& px, double& py) {
        tf.psi_t(x, y, tm, px, py);
      });
      t2 += dt * dot(g, ub, psit);
      t4 += dt * nu * ops.grad_dot(ub, psi);
      denom += dt * norm_l2(g, ub) * norm_l2(g, psit);
      denom += dt * nu * std::sqrt(ops.grad_norm_sq(ub) * ops.grad_norm_sq(psi));
      if (model.kind != FluxKind::zero) {
        const auto F = ops.dealias(flux_field(model, ub));
        const auto gp = ops.neg_grad_vector(psi);  // -d_d psi_c
        double pair = 0.0, fsq = 0.0, gsq = 0.0;
        for (int c = 0; c < 4; ++c)
          for (size_t p = 0; p < gp[static_cast<size_t>(c)].size(); ++p) {
            const double fv = F[static_cast<size_t>(c)][p];
            const double gv = gp[static_cast<size_t>(c)][p];
            pair += fv * gv;
            fsq += fv * fv;
            gsq += gv * gv;
          }
        t3 += dt * (-pair * g.cell());  // = + int F : grad psi
        denom += dt * std::sqrt(fsq * gsq) * g.cell();
      }
    }

    const double resid = denom < 1e-30 ? 0.0 : std::abs(t1 + t2 + t3 - t4) / denom;
    if (resid > worst) {
      worst = resid;
      worst_name = tf.name;
    }
  }
  return TheoremCheck::make("weak_form_residual", worst, tolerance,
                            {{"worst_test_function", worst_name},
                             {"battery_size", std::to_string(battery.size())}});
}

Certificate certify_solution(const MinimizeReport& report, const FunctionalSpec& spec,
                             const SpectralOps& ops, const CertifyTolerances& tol) {
  const SpaceTimeField& u = report.final_field;
  const Evaluation ev = evaluate(u, spec, ops, false);

  Certificate cert;
  const double unorm = std::max(st_norm(u), 1e-300);
  cert.checks.push_back(TheoremCheck::make("w_residual_relative", ev.w_norm / unorm,
                                           tol.w_relative));

  const double half_v0 = 0.5 * dot(u.grid, spec.v0, spec.v0);
  const double gap =
      (ev.value - half_v0) / (half_v0 > 1e-14 ? half_v0 : 1.0);
  cert.checks.push_back(TheoremCheck::make("functional_gap_relative", std::abs(gap),
                                           tol.gap_relative));

  double worst_energy = 0.0;
  int worst_slice = 0;
  for (const auto& c : energy_equality_check(u, spec.nu, ops, tol.energy))
    if (c.defect > worst_energy) {
      worst_energy = c.defect;
      worst_slice = std::stoi(c.context.at("slice"));
    }
  cert.checks.push_back(TheoremCheck::make("energy_equality_worst_slice", worst_energy,
                                           tol.energy,
                                           {{"slice", std::to_string(worst_slice)}}));

  const FluxModel model =
      spec.kind == FunctionalKind::heat ? FluxModel::zero_flux() : spec.model;
  cert.checks.push_back(weak_form_residual(u, model, spec.nu,
                                           standard_battery(u.time.t_final), ops,
                                           tol.weak_form));

  cert.pass = true;
  for (const auto& c : cert.checks) cert.pass = cert.pass && c.pass;
  return cert;
}

CutoffSweepResult cutoff_sweep(const VectorField& v0, double nu, const TimeGrid& time,
                               const std::vector<double>& levels, const MinimizeConfig& cfg,
                               const SpectralOps& ops, int reference_steps) {
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw UsageError("cutoff_sweep: levels must be strictly ascending");

  const ReferenceRun ref =
      reference_solve(v0, nu, time, reference_steps, FluxModel::exact_quadratic(), ops);

  CutoffSweepResult out;
  for (double n : levels) {
    CutoffSweepLevel lvl;
    lvl.n = n;
    FunctionalSpec spec;
    spec.kind = FunctionalKind::navier_stokes;
    spec.model = FluxModel::cutoff(n);
    spec.nu = nu;
    spec.v0 = v0;
    const SpaceTimeField init = constant_in_time(ops.grid(), time, v0);
    try {
      MinimizeReport rep = minimize(spec, init, cfg, ops);
      lvl.w_relative = rep.final_w_relative;
      const Certificate cert = certify_solution(rep, spec, ops);
      lvl.certified = cert.pass;
      if (!cert.pass) {
        out.inconclusive = true;
        for (const auto& c : cert.checks)
          if (!c.pass) out.note += "level " + std::to_string(n) + " failed " + c.name + "; ";
      }
      lvl.field = std::move(rep.final_field);
      lvl.distance_to_reference = st_norm(lvl.field - ref.field);
    } catch (const NumericalError& e) {
      out.inconclusive = true;
      out.note += "level " + std::to_string(n) + " optimizer failure: " + e.what() + "; ";
      lvl.field = init;
      lvl.distance_to_reference = st_norm(lvl.field - ref.field);
    }
    out.levels.push_back(std::move(lvl));
  }
  for (size_t i = 0; i + 1 < out.levels.size(); ++i)
    out.pairwise_distance.push_back(
        st_norm(out.levels[i].field - out.levels[i + 1].field));
  return out;
}

HeatDemoResult heat_demo(const VectorField& v0, const TimeGrid& time,
                         const MinimizeConfig& cfg, const SpectralOps& ops) {
  FunctionalSpec spec;
  spec.kind = FunctionalKind::heat;
  spec.nu = 1.0;
  spec.v0 = v0;
  const SpaceTimeField init = constant_in_time(ops.grid(), time, v0);

  HeatDemoResult res;
  res.report = minimize(spec, init, cfg, ops);
  const SpaceTimeField& u = res.report.final_field;
  res.w_relative = res.report.final_w_relative;

  const LiftResult lift = stokes_lift(u, FluxModel::zero_flux(), ops, false);
  res.w_terminal = norm_l2(ops.grid(), lift.w.slices.back());

  SpaceTimeField truth(ops.grid(), time);
  for (int j = 0; j <= time.m; ++j)
    truth.slice(j) = ops.heat_semigroup(v0, 1.0, time.t(j));
  res.analytic_error = compare(u, truth).rel_l2_spacetime;
  return res;
}

}  // namespace varns
