#pragma once

#include <cstdint>
#include <random>

#include "varns/field.hpp"
#include "varns/grid.hpp"

namespace varns {

/// Deterministic helpers for reproducible test data. Raw engine bits are
/// mapped to doubles by hand (the standard distributions are
/// implementation-defined, which would tie test oracles to one libstdc++).
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

/// Band-limited divergence-free, mean-zero slice: a sum of `modes` random
/// terms a*sin(k.x + phi) * rot(k)/|k| with integer wavevectors of
/// components in [-max_mode, max_mode] (not both zero). Amplitudes decay
/// with |k| so spectral identities hold to rounding.
VectorField random_divfree_slice(const Grid& g, Rng& rng, int max_mode, int modes,
                                 double amplitude = 1.0);

/// Same construction without the rot(k) direction (generally not
/// divergence-free); mean-zero and band-limited.
VectorField random_slice(const Grid& g, Rng& rng, int max_mode, int modes,
                         double amplitude = 1.0);

/// Space-time tangent: divergence-free slices, zero at t = 0, smooth in t.
SpaceTimeField random_tangent(const Grid& g, const TimeGrid& t, Rng& rng, int max_mode,
                              int modes, double amplitude = 1.0);

/// Admissible space-time field: slice 0 equals v0, each later slice is v0
/// plus a smooth-in-time divergence-free perturbation.
SpaceTimeField random_admissible(const Grid& g, const TimeGrid& t, const VectorField& v0,
                                 Rng& rng, int max_mode, int modes,
                                 double amplitude = 1.0);

}  // namespace varns
