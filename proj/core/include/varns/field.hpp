#pragma once

#include <cmath>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "varns/errors.hpp"
#include "varns/grid.hpp"

namespace varns {

/// Two-component velocity sample array on a Grid (x fastest, row-major).
struct VectorField {
  std::vector<double> x, y;

  VectorField() = default;
  explicit VectorField(const Grid& g)
      : x(static_cast<size_t>(g.size()), 0.0), y(static_cast<size_t>(g.size()), 0.0) {}

  size_t size() const { return x.size(); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double c);
  void axpy(double a, const VectorField& o);  // this += a*o
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double c, VectorField a);

bool all_finite(const VectorField& f);

/// Pointwise L2 quantities under the grid quadrature (mean x area).
double dot(const Grid& g, const VectorField& a, const VectorField& b);
double norm_l2(const Grid& g, const VectorField& a);
double max_speed_sq(const VectorField& a);  // max over samples of |u|^2

/// Velocity field sampled on the m+1 time slices of a TimeGrid.
/// Slice 0 carries the pinned initial datum.
struct SpaceTimeField {
  Grid grid;
  TimeGrid time;
  std::vector<VectorField> slices;  // size m+1

  SpaceTimeField() = default;
  SpaceTimeField(const Grid& g, const TimeGrid& t)
      : grid(g), time(t), slices(static_cast<size_t>(t.m) + 1, VectorField(g)) {}

  VectorField& slice(int j) { return slices[static_cast<size_t>(j)]; }
  const VectorField& slice(int j) const { return slices[static_cast<size_t>(j)]; }
};

SpaceTimeField operator+(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField scaled(double c, const SpaceTimeField& a);

/// Fields sampled on the m interval midpoints (lift outputs live here).
struct SliceSequence {
  Grid grid;
  TimeGrid time;                    // of the parent field; entries at t_mid(j)
  std::vector<VectorField> slices;  // size m

  SliceSequence() = default;
  SliceSequence(const Grid& g, const TimeGrid& t)
      : grid(g), time(t), slices(static_cast<size_t>(t.m), VectorField(g)) {}
};

/// Trapezoid weight of slice j in the time quadrature.
inline double trapezoid_weight(const TimeGrid& t, int j) {
  return (j == 0 || j == t.m) ? t.dt() / 2.0 : t.dt();
}

/// L2(space-time) pairing: trapezoid in time over slices, exact spatial
/// quadrature of the trigonometric interpolant (sample mean x area).
/// Slices are reduced in ascending index order.
double st_dot(const SpaceTimeField& a, const SpaceTimeField& b);
double st_norm(const SpaceTimeField& a);
std::vector<double> slice_norms(const SpaceTimeField& a);

/// Same pairing on midpoint sequences (uniform dt weights).
double st_dot(const SliceSequence& a, const SliceSequence& b);
double st_norm(const SliceSequence& a);

/// Slice-wise time derivative: second-order central differences at interior
/// slices, second-order one-sided stencils at j = 0 and j = m.
std::vector<VectorField> time_derivative(const SpaceTimeField& u);

/// Build a field by sampling an analytic function (x, y, t) -> (ux, uy).
SpaceTimeField sample_field(const Grid& g, const TimeGrid& t,
                            const std::function<void(double, double, double, double&, double&)>& f);
VectorField sample_slice(const Grid& g,
                         const std::function<void(double, double, double&, double&)>& f);

/// Field snapshot I/O. Text format, stable across versions:
///   line 1: "varns-field 1"
///   line 2: "nx ny m lx ly T" as decimal text
///   then, per slice j = 0..m, component x then component y, one grid row
///   (nx samples, x fastest) per line, printed with 17 significant digits.
void write_field(std::ostream& os, const SpaceTimeField& u);
void write_field(const std::string& path, const SpaceTimeField& u);
SpaceTimeField read_field(std::istream& is);
SpaceTimeField read_field(const std::string& path);

}  // namespace varns
