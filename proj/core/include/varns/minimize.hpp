#pragma once

#include <string>
#include <vector>

#include "varns/functional.hpp"

namespace varns {

struct MinimizeConfig {
  int max_iters = 500;
  double tol_grad = 1e-10;  // stop when ||P grad|| / ||P grad_0|| <= tol_grad
  double tol_w = 1e-6;      // stop when w_norm / ||u|| <= tol_w
  int memory = 10;          // quasi-second-order history length
  double sufficient_decrease = 1e-4;
  double backtrack_shrink = 0.5;

  void validate() const;
};

enum class StopReason { gradient, w_residual, max_iters };

struct IterationRecord {
  double value = 0.0;
  double grad_norm = 0.0;
  double w_norm = 0.0;
  double energy_defect = 0.0;  // |value - value_via_rewrite| / (1 + |value|)
};

struct MinimizeReport {
  int iterations = 0;
  std::vector<IterationRecord> trace;
  StopReason converged_by = StopReason::max_iters;
  SpaceTimeField final_field;
  double final_value = 0.0;
  double final_w_relative = 0.0;
};

const char* to_string(StopReason r);

/// Limited-memory quasi-second-order descent on slices 1..m with the pinned
/// initial slice never touched. For the navier_stokes kind every search
/// direction is Leray-projected slice-wise, so iterates stay divergence-free
/// and mean-zero; inner products are the trapezoid-weighted space-time
/// pairing st_dot (matching the gradient's Riesz convention). Backtracking
/// line search guarantees a nonincreasing value trace; persistent line-search
/// failure away from stationarity raises NumericalError.
MinimizeReport minimize(const FunctionalSpec& spec, const SpaceTimeField& init,
                        const MinimizeConfig& cfg, const SpectralOps& ops);

/// The paper-style admissible starting point: v0 replicated on every slice.
SpaceTimeField constant_in_time(const Grid& g, const TimeGrid& t, const VectorField& v0);

}  // namespace varns
