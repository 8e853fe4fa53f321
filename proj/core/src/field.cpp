#include "varns/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace varns {

namespace {

void check_same_size(const VectorField& a, const VectorField& b) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size())
    throw UsageError("VectorField: size mismatch");
}

}  // namespace

VectorField& VectorField::operator+=(const VectorField& o) {
  check_same_size(*this, o);
  for (size_t i = 0; i < x.size(); ++i) x[i] += o.x[i];
  for (size_t i = 0; i < y.size(); ++i) y[i] += o.y[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  check_same_size(*this, o);
  for (size_t i = 0; i < x.size(); ++i) x[i] -= o.x[i];
  for (size_t i = 0; i < y.size(); ++i) y[i] -= o.y[i];
  return *this;
}

VectorField& VectorField::operator*=(double c) {
  for (double& v : x) v *= c;
  for (double& v : y) v *= c;
  return *this;
}

void VectorField::axpy(double a, const VectorField& o) {
  check_same_size(*this, o);
  for (size_t i = 0; i < x.size(); ++i) x[i] += a * o.x[i];
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * o.y[i];
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double c, VectorField a) { return a *= c; }

bool all_finite(const VectorField& f) {
  auto ok = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
  };
  return ok(f.x) && ok(f.y);
}

double dot(const Grid& g, const VectorField& a, const VectorField& b) {
  check_same_size(a, b);
  double s = 0.0;
  for (size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i] + a.y[i] * b.y[i];
  return s * g.cell();
}

double norm_l2(const Grid& g, const VectorField& a) { return std::sqrt(dot(g, a, a)); }

double max_speed_sq(const VectorField& a) {
  double s = 0.0;
  for (size_t i = 0; i < a.x.size(); ++i)
    s = std::max(s, a.x[i] * a.x[i] + a.y[i] * a.y[i]);
  return s;
}

SpaceTimeField operator+(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!a.grid.same_as(b.grid) || !a.time.same_as(b.time))
    throw UsageError("SpaceTimeField: grid mismatch");
  SpaceTimeField out = a;
  for (size_t j = 0; j < out.slices.size(); ++j) out.slices[j] += b.slices[j];
  return out;
}

SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!a.grid.same_as(b.grid) || !a.time.same_as(b.time))
    throw UsageError("SpaceTimeField: grid mismatch");
  SpaceTimeField out = a;
  for (size_t j = 0; j < out.slices.size(); ++j) out.slices[j] -= b.slices[j];
  return out;
}

SpaceTimeField scaled(double c, const SpaceTimeField& a) {
  SpaceTimeField out = a;
  for (auto& s : out.slices) s *= c;
  return out;
}

double st_dot(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!a.grid.same_as(b.grid) || !a.time.same_as(b.time))
    throw UsageError("st_dot: grid mismatch");
  double s = 0.0;
  for (int j = 0; j <= a.time.m; ++j)
    s += trapezoid_weight(a.time, j) * dot(a.grid, a.slice(j), b.slice(j));
  return s;
}

double st_norm(const SpaceTimeField& a) { return std::sqrt(st_dot(a, a)); }

std::vector<double> slice_norms(const SpaceTimeField& a) {
  std::vector<double> out;
  out.reserve(a.slices.size());
  for (const auto& s : a.slices) out.push_back(norm_l2(a.grid, s));
  return out;
}

double st_dot(const SliceSequence& a, const SliceSequence& b) {
  if (!a.grid.same_as(b.grid) || !a.time.same_as(b.time))
    throw UsageError("st_dot: grid mismatch");
  double s = 0.0;
  for (size_t j = 0; j < a.slices.size(); ++j)
    s += dot(a.grid, a.slices[j], b.slices[j]);
  return s * a.time.dt();
}

double st_norm(const SliceSequence& a) { return std::sqrt(st_dot(a, a)); }

std::vector<VectorField> time_derivative(const SpaceTimeField& u) {
  const int m = u.time.m;
  const double dt = u.time.dt();
  std::vector<VectorField> out(static_cast<size_t>(m) + 1, VectorField(u.grid));
  auto comb = [&](int j, double c0, int j0, double c1, int j1, double c2, int j2) {
    VectorField& d = out[static_cast<size_t>(j)];
    const VectorField &a = u.slice(j0), &b = u.slice(j1), &c = u.slice(j2);
    for (size_t i = 0; i < d.x.size(); ++i) {
      d.x[i] = (c0 * a.x[i] + c1 * b.x[i] + c2 * c.x[i]) / dt;
      d.y[i] = (c0 * a.y[i] + c1 * b.y[i] + c2 * c.y[i]) / dt;
    }
  };
  comb(0, -1.5, 0, 2.0, 1, -0.5, 2);
  for (int j = 1; j < m; ++j) comb(j, -0.5, j - 1, 0.0, j, 0.5, j + 1);
  comb(m, 0.5, m - 2, -2.0, m - 1, 1.5, m);
  return out;
}

SpaceTimeField sample_field(
    const Grid& g, const TimeGrid& t,
    const std::function<void(double, double, double, double&, double&)>& f) {
  SpaceTimeField u(g, t);
  for (int j = 0; j <= t.m; ++j) {
    VectorField& s = u.slice(j);
    const double tj = t.t(j);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const size_t p = static_cast<size_t>(iy) * g.nx + ix;
        f(g.x(ix), g.y(iy), tj, s.x[p], s.y[p]);
      }
  }
  return u;
}

VectorField sample_slice(const Grid& g,
                         const std::function<void(double, double, double&, double&)>& f) {
  VectorField s(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * g.nx + ix;
      f(g.x(ix), g.y(iy), s.x[p], s.y[p]);
    }
  return s;
}

void write_field(std::ostream& os, const SpaceTimeField& u) {
  os << "varns-field 1\n";
  os << u.grid.nx << ' ' << u.grid.ny << ' ' << u.time.m << ' '
     << std::setprecision(17) << u.grid.lx << ' ' << u.grid.ly << ' '
     << u.time.t_final << '\n';
  os << std::setprecision(17);
  for (const VectorField& s : u.slices)
    for (const std::vector<double>* comp : {&s.x, &s.y})
      for (int iy = 0; iy < u.grid.ny; ++iy) {
        for (int ix = 0; ix < u.grid.nx; ++ix) {
          if (ix) os << ' ';
          os << (*comp)[static_cast<size_t>(iy) * u.grid.nx + ix];
        }
        os << '\n';
      }
  if (!os) throw DataError("write_field: stream failure");
}

void write_field(const std::string& path, const SpaceTimeField& u) {
  std::ofstream f(path);
  if (!f) throw DataError("write_field: cannot open " + path);
  write_field(f, u);
}

SpaceTimeField read_field(std::istream& is) {
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (!is || tag != "varns-field" || version != 1)
    throw DataError("read_field: bad header");
  int nx = 0, ny = 0, m = 0;
  double lx = 0, ly = 0, tf = 0;
  is >> nx >> ny >> m >> lx >> ly >> tf;
  if (!is) throw DataError("read_field: bad dimensions line");
  SpaceTimeField u(Grid(nx, ny, lx, ly), TimeGrid(m, tf));
  for (VectorField& s : u.slices)
    for (std::vector<double>* comp : {&s.x, &s.y})
      for (double& v : *comp) {
        is >> v;
        if (!is) throw DataError("read_field: truncated sample data");
        if (!std::isfinite(v)) throw DataError("read_field: non-finite sample");
      }
  return u;
}

SpaceTimeField read_field(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("read_field: cannot open " + path);
  return read_field(f);
}

}  // namespace varns
