#include "varns/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

namespace varns {

struct SpectralOps::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  int n = 0;

  explicit Impl(const Grid& g) : n(g.size()) {
    buf = fftw_alloc_complex(static_cast<size_t>(n));
    // Row-major with x fastest means dimensions (ny, nx) in FFTW order.
    fwd = fftw_plan_dft_2d(g.ny, g.nx, buf, buf, FFTW_FORWARD, FFTW_MEASURE);
    bwd = fftw_plan_dft_2d(g.ny, g.nx, buf, buf, FFTW_BACKWARD, FFTW_MEASURE);
  }
  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
};

SpectralOps::SpectralOps(const Grid& g) : grid_(g), impl_(std::make_unique<Impl>(g)) {}
SpectralOps::~SpectralOps() = default;

void SpectralOps::forward(const std::vector<double>& real, std::vector<Complex>& spec) const {
  if (static_cast<int>(real.size()) != impl_->n) throw UsageError("forward: size mismatch");
  for (int i = 0; i < impl_->n; ++i) {
    impl_->buf[i][0] = real[static_cast<size_t>(i)];
    impl_->buf[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  spec.resize(static_cast<size_t>(impl_->n));
  const double scale = 1.0 / impl_->n;
  for (int i = 0; i < impl_->n; ++i)
    spec[static_cast<size_t>(i)] = Complex(impl_->buf[i][0] * scale, impl_->buf[i][1] * scale);
}

void SpectralOps::inverse(const std::vector<Complex>& spec, std::vector<double>& real) const {
  if (static_cast<int>(spec.size()) != impl_->n) throw UsageError("inverse: size mismatch");
  for (int i = 0; i < impl_->n; ++i) {
    impl_->buf[i][0] = spec[static_cast<size_t>(i)].real();
    impl_->buf[i][1] = spec[static_cast<size_t>(i)].imag();
  }
  fftw_execute(impl_->bwd);
  real.resize(static_cast<size_t>(impl_->n));
  for (int i = 0; i < impl_->n; ++i) real[static_cast<size_t>(i)] = impl_->buf[i][0];
}

namespace {

// Apply op(ix, iy, zx, zy) to the spectra of both components, then transform back.
template <class Op>
VectorField spectral_vector_op(const SpectralOps& ops, const Grid& g, const VectorField& w,
                               Op op) {
  std::vector<Complex> zx, zy;
  ops.forward(w.x, zx);
  ops.forward(w.y, zy);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * g.nx + ix;
      op(ix, iy, zx[p], zy[p]);
    }
  VectorField out(g);
  ops.inverse(zx, out.x);
  ops.inverse(zy, out.y);
  return out;
}

}  // namespace

VectorField SpectralOps::leray_project(const VectorField& w) const {
  if (!all_finite(w)) throw DataError("leray_project: non-finite input");
  return spectral_vector_op(*this, grid_, w, [&](int ix, int iy, Complex& zx, Complex& zy) {
    const double kx = grid_.kx_d[static_cast<size_t>(ix)];
    const double ky = grid_.ky_d[static_cast<size_t>(iy)];
    const double k2 = kx * kx + ky * ky;
    if (ix == 0 && iy == 0) {
      zx = zy = 0.0;  // mean-zero
      return;
    }
    if (k2 == 0.0) return;  // no resolved derivative information: identity
    const Complex kd = (kx * zx + ky * zy) / k2;
    zx -= kx * kd;
    zy -= ky * kd;
  });
}

std::vector<double> SpectralOps::inv_laplacian(const std::vector<double>& w) const {
  std::vector<Complex> z;
  forward(w, z);
  double norm = 0.0;
  for (const auto& c : z) norm += std::norm(c);
  norm = std::sqrt(norm);
  if (std::abs(z[0]) > 1e-12 * std::max(norm, 1.0))
    throw DataError("inv_laplacian: input has nonzero mean");
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      const double k2 = grid_.kx[static_cast<size_t>(ix)] * grid_.kx[static_cast<size_t>(ix)] +
                        grid_.ky[static_cast<size_t>(iy)] * grid_.ky[static_cast<size_t>(iy)];
      z[p] = (k2 == 0.0) ? 0.0 : z[p] / (-k2);
    }
  std::vector<double> out;
  inverse(z, out);
  return out;
}

VectorField SpectralOps::inv_laplacian(const VectorField& w) const {
  VectorField out;
  out.x = inv_laplacian(w.x);
  out.y = inv_laplacian(w.y);
  return out;
}

std::vector<double> SpectralOps::laplacian(const std::vector<double>& w) const {
  std::vector<Complex> z;
  forward(w, z);
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      const double k2 = grid_.kx[static_cast<size_t>(ix)] * grid_.kx[static_cast<size_t>(ix)] +
                        grid_.ky[static_cast<size_t>(iy)] * grid_.ky[static_cast<size_t>(iy)];
      z[p] *= -k2;
    }
  std::vector<double> out;
  inverse(z, out);
  return out;
}

VectorField SpectralOps::gradient(const std::vector<double>& q) const {
  std::vector<Complex> z;
  forward(q, z);
  std::vector<Complex> zx(z.size()), zy(z.size());
  const Complex I(0.0, 1.0);
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      zx[p] = I * grid_.kx_d[static_cast<size_t>(ix)] * z[p];
      zy[p] = I * grid_.ky_d[static_cast<size_t>(iy)] * z[p];
    }
  VectorField out(grid_);
  inverse(zx, out.x);
  inverse(zy, out.y);
  return out;
}

std::vector<double> SpectralOps::divergence(const VectorField& v) const {
  std::vector<Complex> zx, zy;
  forward(v.x, zx);
  forward(v.y, zy);
  const Complex I(0.0, 1.0);
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      zx[p] = I * (grid_.kx_d[static_cast<size_t>(ix)] * zx[p] +
                   grid_.ky_d[static_cast<size_t>(iy)] * zy[p]);
    }
  std::vector<double> out;
  inverse(zx, out);
  return out;
}

std::vector<double> SpectralOps::curl(const VectorField& v) const {
  std::vector<Complex> zx, zy;
  forward(v.x, zx);
  forward(v.y, zy);
  const Complex I(0.0, 1.0);
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      zx[p] = I * (grid_.kx_d[static_cast<size_t>(ix)] * zy[p] -
                   grid_.ky_d[static_cast<size_t>(iy)] * zx[p]);
    }
  std::vector<double> out;
  inverse(zx, out);
  return out;
}

VectorField SpectralOps::div_matrix(const std::array<std::vector<double>, 4>& M) const {
  std::array<std::vector<Complex>, 4> z;
  for (int c = 0; c < 4; ++c) forward(M[static_cast<size_t>(c)], z[static_cast<size_t>(c)]);
  std::vector<Complex> ox(z[0].size()), oy(z[0].size());
  const Complex I(0.0, 1.0);
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      const double kx = grid_.kx_d[static_cast<size_t>(ix)];
      const double ky = grid_.ky_d[static_cast<size_t>(iy)];
      ox[p] = I * (kx * z[0][p] + ky * z[1][p]);
      oy[p] = I * (kx * z[2][p] + ky * z[3][p]);
    }
  VectorField out(grid_);
  inverse(ox, out.x);
  inverse(oy, out.y);
  return out;
}

std::array<std::vector<double>, 4> SpectralOps::neg_grad_vector(const VectorField& v) const {
  std::vector<Complex> zx, zy;
  forward(v.x, zx);
  forward(v.y, zy);
  std::array<std::vector<Complex>, 4> z;
  for (auto& c : z) c.resize(zx.size());
  const Complex I(0.0, 1.0);
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      const double kx = grid_.kx_d[static_cast<size_t>(ix)];
      const double ky = grid_.ky_d[static_cast<size_t>(iy)];
      z[0][p] = -I * kx * zx[p];
      z[1][p] = -I * ky * zx[p];
      z[2][p] = -I * kx * zy[p];
      z[3][p] = -I * ky * zy[p];
    }
  std::array<std::vector<double>, 4> out;
  for (int c = 0; c < 4; ++c) inverse(z[static_cast<size_t>(c)], out[static_cast<size_t>(c)]);
  return out;
}

void SpectralOps::dealias(std::vector<double>& w) const {
  std::vector<Complex> z;
  forward(w, z);
  for (size_t p = 0; p < z.size(); ++p)
    if (!grid_.dealias_keep[p]) z[p] = 0.0;
  inverse(z, w);
}

void SpectralOps::dealias(VectorField& w) const {
  dealias(w.x);
  dealias(w.y);
}

std::array<std::vector<double>, 4> SpectralOps::dealias(std::array<std::vector<double>, 4> M) const {
  for (auto& c : M) dealias(c);
  return M;
}

VectorField SpectralOps::inv_laplacian_resolved(const VectorField& w) const {
  return spectral_vector_op(*this, grid_, w, [&](int ix, int iy, Complex& zx, Complex& zy) {
    const double kx = grid_.kx_d[static_cast<size_t>(ix)];
    const double ky = grid_.ky_d[static_cast<size_t>(iy)];
    const double k2 = kx * kx + ky * ky;
    if (k2 == 0.0) {
      zx = zy = 0.0;
      return;
    }
    zx /= -k2;
    zy /= -k2;
  });
}

double SpectralOps::grad_dot(const VectorField& a, const VectorField& b) const {
  std::vector<Complex> ax, ay, bx, by;
  forward(a.x, ax);
  forward(a.y, ay);
  forward(b.x, bx);
  forward(b.y, by);
  double s = 0.0;
  for (int iy = 0; iy < grid_.ny; ++iy)
    for (int ix = 0; ix < grid_.nx; ++ix) {
      const size_t p = static_cast<size_t>(iy) * grid_.nx + ix;
      const double kx = grid_.kx_d[static_cast<size_t>(ix)];
      const double ky = grid_.ky_d[static_cast<size_t>(iy)];
      const double k2 = kx * kx + ky * ky;
      s += k2 * (ax[p].real() * bx[p].real() + ax[p].imag() * bx[p].imag() +
                 ay[p].real() * by[p].real() + ay[p].imag() * by[p].imag());
    }
  return s * grid_.area();
}

double SpectralOps::grad_norm_sq(const VectorField& u) const { return grad_dot(u, u); }

VectorField SpectralOps::neg_laplacian_resolved(const VectorField& u) const {
  return spectral_vector_op(*this, grid_, u, [&](int ix, int iy, Complex& zx, Complex& zy) {
    const double kx = grid_.kx_d[static_cast<size_t>(ix)];
    const double ky = grid_.ky_d[static_cast<size_t>(iy)];
    const double k2 = kx * kx + ky * ky;
    zx *= k2;
    zy *= k2;
  });
}

void SpectralOps::remove_mean(VectorField& w) const {
  for (std::vector<double>* comp : {&w.x, &w.y}) {
    double m = 0.0;
    for (double v : *comp) m += v;
    m /= static_cast<double>(comp->size());
    for (double& v : *comp) v -= m;
  }
}

VectorField SpectralOps::heat_semigroup(const VectorField& w, double nu, double t) const {
  return spectral_vector_op(*this, grid_, w, [&](int ix, int iy, Complex& zx, Complex& zy) {
    const double k2 = grid_.kx[static_cast<size_t>(ix)] * grid_.kx[static_cast<size_t>(ix)] +
                      grid_.ky[static_cast<size_t>(iy)] * grid_.ky[static_cast<size_t>(iy)];
    const double f = std::exp(-nu * k2 * t);
    zx *= f;
    zy *= f;
  });
}

}  // namespace varns
