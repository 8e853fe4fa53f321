#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "varns/errors.hpp"
#include "varns/field.hpp"
#include "varns/random.hpp"

using namespace varns;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("time_derivative is zero on constant-in-time fields") {
  const Grid g(16, 16);
  const TimeGrid t(8, 1.0);
  Rng rng(2);
  const VectorField w = random_slice(g, rng, 4, 5);
  SpaceTimeField u(g, t);
  for (auto& s : u.slices) s = w;
  const auto d = time_derivative(u);
  for (const auto& s : d) CHECK(norm_l2(g, s) <= 1e-12);
}

TEST_CASE("time_derivative is exact on fields linear in t") {
  const Grid g(16, 16);
  const TimeGrid t(8, 2.0);
  Rng rng(4);
  const VectorField w = random_slice(g, rng, 4, 5);
  SpaceTimeField u(g, t);
  for (int j = 0; j <= t.m; ++j) {
    u.slice(j) = w;
    u.slice(j) *= t.t(j);
  }
  const auto d = time_derivative(u);
  for (const auto& s : d) CHECK(norm_l2(g, s - w) <= 1e-11 * norm_l2(g, w));
}

TEST_CASE("time_derivative is exact on quadratics at interior slices") {
  const Grid g(16, 16);
  const TimeGrid t(8, 1.0);
  Rng rng(6);
  const VectorField w = random_slice(g, rng, 4, 5);
  SpaceTimeField u(g, t);
  for (int j = 0; j <= t.m; ++j) {
    u.slice(j) = w;
    u.slice(j) *= t.t(j) * t.t(j);
  }
  const auto d = time_derivative(u);
  for (int j = 0; j <= t.m; ++j) {
    VectorField expect = w;
    expect *= 2.0 * t.t(j);
    CHECK(norm_l2(g, d[static_cast<size_t>(j)] - expect) <= 1e-10 * (1.0 + norm_l2(g, expect)));
  }
}

TEST_CASE("time_derivative second-order on exponential decay (Richardson)") {
  const Grid g(16, 16);
  Rng rng(8);
  const VectorField w = random_slice(g, rng, 4, 5);
  auto defect = [&](int m) {
    const TimeGrid t(m, 1.0);
    SpaceTimeField u(g, t);
    for (int j = 0; j <= t.m; ++j) {
      u.slice(j) = w;
      u.slice(j) *= std::exp(-2.0 * t.t(j));
    }
    const auto d = time_derivative(u);
    double worst = 0.0;
    for (int j = 0; j <= t.m; ++j) {
      VectorField expect = w;
      expect *= -2.0 * std::exp(-2.0 * t.t(j));
      worst = std::max(worst, norm_l2(g, d[static_cast<size_t>(j)] - expect));
    }
    return worst;
  };
  const double e64 = defect(64);
  const double e128 = defect(128);
  CHECK(e64 / e128 > 3.0);  // second order: ratio ~ 4
  CHECK(e64 / e128 < 5.0);
}

TEST_CASE("space-time inner product closed forms") {
  const Grid g(16, 16);
  const TimeGrid t(8, 1.0);
  SpaceTimeField ones(g, t);
  for (auto& s : ones.slices)
    for (auto* c : {&s.x, &s.y}) std::fill(c->begin(), c->end(), 1.0);
  // Two components of constant 1: pairing = 2 * area * T.
  CHECK(st_dot(ones, ones) == doctest::Approx(2.0 * 4.0 * pi * pi).epsilon(1e-12));

  // u = (sin x, 0) constant in t: ||u||^2_{L2(space-time)} = 2 pi^2 * T.
  SpaceTimeField u(g, t);
  for (auto& s : u.slices)
    s = sample_slice(g, [](double x, double, double& ux, double& uy) {
      ux = std::sin(x);
      uy = 0.0;
    });
  CHECK(st_dot(u, u) == doctest::Approx(2.0 * pi * pi).epsilon(1e-12));

  // Distinct Fourier modes are orthogonal.
  SpaceTimeField v(g, t);
  for (auto& s : v.slices)
    s = sample_slice(g, [](double x, double y, double& ux, double& uy) {
      ux = std::cos(2.0 * x + y);
      uy = 0.0;
    });
  CHECK(std::abs(st_dot(u, v)) <= 1e-12);
}

TEST_CASE("field text serialization round-trips") {
  const Grid g(8, 12, 2.0 * pi, pi);
  const TimeGrid t(4, 0.5);
  Rng rng(10);
  SpaceTimeField u(g, t);
  for (auto& s : u.slices)
    for (auto* c : {&s.x, &s.y})
      for (double& v : *c) v = rng.uniform(-2.0, 2.0);

  std::stringstream ss;
  write_field(ss, u);
  const SpaceTimeField back = read_field(ss);
  CHECK(back.grid.same_as(g));
  CHECK(back.time.same_as(t));
  for (size_t j = 0; j < u.slices.size(); ++j)
    CHECK(norm_l2(g, back.slices[j] - u.slices[j]) == 0.0);
}

TEST_CASE("read_field rejects malformed input") {
  std::stringstream bad1("nonsense 1\n");
  CHECK_THROWS_AS(read_field(bad1), DataError);
  std::stringstream bad2("varns-field 1\n8 8 4 6.28 6.28 1.0\n1 2 3\n");
  CHECK_THROWS_AS(read_field(bad2), DataError);
}

TEST_CASE("vector field arithmetic and grid mismatch errors") {
  const Grid g(8, 8);
  VectorField a(g), b(g);
  std::fill(a.x.begin(), a.x.end(), 2.0);
  std::fill(b.x.begin(), b.x.end(), 1.0);
  a.axpy(3.0, b);
  CHECK(a.x[0] == doctest::Approx(5.0));
  VectorField c(Grid(16, 16));
  CHECK_THROWS_AS(a += c, UsageError);

  const TimeGrid t1(4, 1.0), t2(4, 2.0);
  SpaceTimeField u1(g, t1), u2(g, t2);
  CHECK_THROWS_AS(st_dot(u1, u2), UsageError);
}
