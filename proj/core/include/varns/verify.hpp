#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "varns/functional.hpp"
#include "varns/minimize.hpp"
#include "varns/oracle.hpp"

namespace varns {

struct TheoremCheck {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, std::string> context;

  static TheoremCheck make(std::string name, double defect, double tolerance,
                           std::map<std::string, std::string> context = {});
};

/// One row per check: name,defect,tolerance,pass,context ("k=v;k=v").
void write_checks_csv(std::ostream& os, const std::vector<TheoremCheck>& checks);
void write_checks_csv(const std::string& path, const std::vector<TheoremCheck>& checks);

/// Per-slice energy balance: defect_j = |1/2||u(t_j)||^2
/// + nu * integral_0^{t_j} ||grad u||^2 - 1/2||v0||^2| relative to
/// 1/2||v0||^2 (absolute when v0 is numerically zero). The running viscous
/// integral uses midpoint quadrature on interval averages, matching the
/// functional's discretization.
std::vector<TheoremCheck> energy_equality_check(const SpaceTimeField& u, double nu,
                                                const SpectralOps& ops,
                                                double tolerance);

/// A fixed, documented battery of 20 divergence-free space-time test
/// functions: spatial modes k in {(1,0),(0,1),(1,1),(2,1),(1,2)} with
/// direction rot(k)/|k|, times the profiles {1-tau, (1-tau)^2,
/// cos(pi tau/2), 1-tau^2} in tau = t/T (all vanish at T).
struct TestFunction {
  std::string name;
  // psi and dpsi/dt at (x, y, t).
  std::function<void(double, double, double, double&, double&)> psi;
  std::function<void(double, double, double, double&, double&)> psi_t;
};

std::vector<TestFunction> standard_battery(double t_final);

/// Max over the battery of the normalized weak-form residual
/// |int v0.psi(0) + int int (u . dpsi/dt + F(u):grad psi - nu grad u:grad psi)|.
TheoremCheck weak_form_residual(const SpaceTimeField& u, const FluxModel& model, double nu,
                                const std::vector<TestFunction>& battery,
                                const SpectralOps& ops, double tolerance);

/// Full certificate for a finished minimization: recomputed relative
/// W-residual, functional gap value - 1/2||v0||^2, worst per-slice energy
/// defect, and the weak-form residual.
struct Certificate {
  std::vector<TheoremCheck> checks;
  bool pass = false;
};

struct CertifyTolerances {
  double w_relative = 1e-6;
  double gap_relative = 1e-6;
  double energy = 1e-3;
  double weak_form = 1e-3;
};

Certificate certify_solution(const MinimizeReport& report, const FunctionalSpec& spec,
                             const SpectralOps& ops,
                             const CertifyTolerances& tol = {});

/// Minimize at each cutoff level and look at the cutoff limit.
struct CutoffSweepLevel {
  double n = 0.0;
  bool certified = false;
  double w_relative = 0.0;
  double distance_to_reference = 0.0;  // L2(space-time), vs exact-flux reference run
  SpaceTimeField field;
};

struct CutoffSweepResult {
  std::vector<CutoffSweepLevel> levels;
  std::vector<double> pairwise_distance;  // d(u_{n_i}, u_{n_{i+1}})
  bool inconclusive = false;              // some level failed to certify
  std::string note;
};

CutoffSweepResult cutoff_sweep(const VectorField& v0, double nu, const TimeGrid& time,
                               const std::vector<double>& levels, const MinimizeConfig& cfg,
                               const SpectralOps& ops, int reference_steps = 256);

/// Heat-functional demonstration: minimize from the constant-in-time start
/// and report the residual and the error against the exact heat semigroup
/// of v0.
struct HeatDemoResult {
  MinimizeReport report;
  double w_relative = 0.0;
  double w_terminal = 0.0;       // residual norm on the last interval
  double analytic_error = 0.0;   // relative L2(space-time) vs semigroup decay
};

HeatDemoResult heat_demo(const VectorField& v0, const TimeGrid& time,
                         const MinimizeConfig& cfg, const SpectralOps& ops);

}  // namespace varns
