#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "varns/errors.hpp"

namespace varns {

/// Uniform periodic grid on the 2-D torus [0,lx) x [0,ly).
///
/// Samples are stored row-major with x fastest: index = iy*nx + ix.
/// Wavenumbers follow the usual DFT layout (0, 1, ..., nx/2, -nx/2+1, ..., -1)
/// scaled by 2*pi/period. First-derivative multipliers use `kx_d`/`ky_d`,
/// which zero the Nyquist mode; even multipliers (|k|^2) use `kx`/`ky`.
struct Grid {
  int nx = 0;
  int ny = 0;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;

  std::vector<double> kx, ky;      // full wavenumbers (Nyquist = +n/2 * 2pi/l)
  std::vector<double> kx_d, ky_d;  // derivative wavenumbers (Nyquist zeroed)
  std::vector<unsigned char> dealias_keep;  // per mode, 2/3 rule

  Grid() = default;
  Grid(int nx_, int ny_, double lx_ = 2.0 * std::numbers::pi,
       double ly_ = 2.0 * std::numbers::pi)
      : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
      throw ConfigError("Grid: nx, ny must be even and >= 8");
    if (lx <= 0.0 || ly <= 0.0) throw ConfigError("Grid: periods must be positive");
    kx.resize(nx);
    kx_d.resize(nx);
    ky.resize(ny);
    ky_d.resize(ny);
    const double bx = 2.0 * std::numbers::pi / lx;
    const double by = 2.0 * std::numbers::pi / ly;
    for (int i = 0; i < nx; ++i) {
      const int s = (i <= nx / 2) ? i : i - nx;
      kx[i] = bx * s;
      kx_d[i] = (i == nx / 2) ? 0.0 : bx * s;
    }
    for (int j = 0; j < ny; ++j) {
      const int s = (j <= ny / 2) ? j : j - ny;
      ky[j] = by * s;
      ky_d[j] = (j == ny / 2) ? 0.0 : by * s;
    }
    dealias_keep.assign(static_cast<size_t>(nx) * ny, 0);
    for (int j = 0; j < ny; ++j) {
      const int sj = std::abs((j <= ny / 2) ? j : j - ny);
      for (int i = 0; i < nx; ++i) {
        const int si = std::abs((i <= nx / 2) ? i : i - nx);
        const bool keep = (si <= nx / 3) && (sj <= ny / 3);
        dealias_keep[static_cast<size_t>(j) * nx + i] = keep ? 1 : 0;
      }
    }
  }

  int size() const { return nx * ny; }
  double area() const { return lx * ly; }
  double cell() const { return area() / size(); }  // quadrature weight per sample
  double x(int i) const { return lx * i / nx; }
  double y(int j) const { return ly * j / ny; }

  bool same_as(const Grid& o) const {
    return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
  }
};

/// Uniform partition of [0, t_final] into m intervals.
struct TimeGrid {
  int m = 0;
  double t_final = 1.0;

  TimeGrid() = default;
  TimeGrid(int m_, double t_final_) : m(m_), t_final(t_final_) {
    if (m < 4) throw ConfigError("TimeGrid: m must be >= 4");
    if (t_final <= 0.0) throw ConfigError("TimeGrid: t_final must be positive");
  }

  double dt() const { return t_final / m; }
  double t(int j) const { return t_final * j / m; }
  double t_mid(int j) const { return (t(j) + t(j + 1)) / 2.0; }  // j = 0..m-1

  bool same_as(const TimeGrid& o) const {
    return m == o.m && t_final == o.t_final;
  }
};

}  // namespace varns
