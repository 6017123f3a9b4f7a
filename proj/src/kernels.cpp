#include "mfield/kernels.hpp"

#include <fftw3.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "mfield/errors.hpp"

namespace mfield {

namespace {

// FFTW planning is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuffer {
  double* p;
  explicit RealBuffer(std::size_t n) : p(fftw_alloc_real(n)) {
    if (!p) throw NumericalError("fftw allocation failed");
  }
  ~RealBuffer() { fftw_free(p); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
};

struct ComplexBuffer {
  fftw_complex* p;
  explicit ComplexBuffer(std::size_t n) : p(fftw_alloc_complex(n)) {
    if (!p) throw NumericalError("fftw allocation failed");
  }
  ~ComplexBuffer() { fftw_free(p); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
};

}  // namespace

Exponent::Exponent(double s) : s_(s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("exponent s must lie in (0, 1]");
}

double velocity_constant(int dim, double s) {
  return 2.0 * std::tgamma(0.5 * dim - s + 1.0) /
         (std::pow(4.0, s) * std::pow(std::numbers::pi, 0.5 * dim) * std::tgamma(s));
}

double riesz_constant(int dim, double s) {
  if (std::abs(0.5 * dim - s) < 1e-14) throw DomainError("riesz_constant: n = 2s is logarithmic");
  return std::tgamma(0.5 * dim - s) /
         (std::pow(4.0, s) * std::pow(std::numbers::pi, 0.5 * dim) * std::tgamma(s));
}

double fractional_laplacian_constant(int dim, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional_laplacian_constant: need 0 < s < 1");
  return std::pow(4.0, s) * s * std::tgamma(0.5 * dim + s) /
         (std::pow(std::numbers::pi, 0.5 * dim) * std::tgamma(1.0 - s));
}

double cell_average_power(int dim, double h, double q) {
  const double a = 0.5 * h;
  if (dim == 1) return std::pow(a, q) / (1.0 + q);
  // Square split into 8 triangles; radial integral done analytically.
  auto f = [&](double th) { return std::pow(a / std::cos(th), 2.0 + q) / (2.0 + q); };
  const double I = boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, std::numbers::pi / 4);
  return 8.0 * I / (h * h);
}

double cell_average_log(int dim, double h) {
  const double a = 0.5 * h;
  if (dim == 1) return std::log(a) - 1.0;
  auto f = [&](double th) {
    const double R = a / std::cos(th);
    return 0.5 * R * R * std::log(R) - 0.25 * R * R;
  };
  const double I = boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, std::numbers::pi / 4);
  return 8.0 * I / (h * h);
}

struct FreeSpaceConvolver::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FreeSpaceConvolver::FreeSpaceConvolver(const CartesianGrid& grid)
    : grid_(grid), padded_(2 * grid.cells()), plans_(std::make_unique<Plans>()) {
  const auto M = static_cast<std::size_t>(padded_);
  real_size_ = grid.dim() == 1 ? M : M * M;
  complex_size_ = grid.dim() == 1 ? M / 2 + 1 : M * (M / 2 + 1);
  RealBuffer r(real_size_);
  ComplexBuffer c(complex_size_);
  std::lock_guard lock(planner_mutex());
  if (grid.dim() == 1) {
    plans_->forward = fftw_plan_dft_r2c_1d(padded_, r.p, c.p, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_1d(padded_, c.p, r.p, FFTW_ESTIMATE);
  } else {
    plans_->forward = fftw_plan_dft_r2c_2d(padded_, padded_, r.p, c.p, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_2d(padded_, padded_, c.p, r.p, FFTW_ESTIMATE);
  }
  if (!plans_->forward || !plans_->backward) throw NumericalError("fftw planning failed");
}

FreeSpaceConvolver::~FreeSpaceConvolver() = default;

FreeSpaceConvolver::Spectrum FreeSpaceConvolver::spectrum(const KernelFn& kernel) const {
  const int M = padded_;
  const int N = grid_.cells();
  RealBuffer r(real_size_);
  ComplexBuffer c(complex_size_);
  auto offset = [&](int idx) { return idx < N ? idx : idx - M; };  // index N maps to -N
  if (grid_.dim() == 1) {
    for (int i = 0; i < M; ++i) r.p[i] = (i == N) ? 0.0 : kernel(offset(i), 0);
  } else {
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < M; ++j) {
        r.p[static_cast<std::size_t>(i) * M + j] =
            (i == N || j == N) ? 0.0 : kernel(offset(i), offset(j));
      }
    }
  }
  fftw_execute_dft_r2c(plans_->forward, r.p, c.p);
  Spectrum out(complex_size_);
  for (std::size_t k = 0; k < complex_size_; ++k) out[k] = {c.p[k][0], c.p[k][1]};
  return out;
}

std::vector<std::vector<double>> FreeSpaceConvolver::apply_many(
    std::span<const double> values, const std::vector<const Spectrum*>& kernels) const {
  if (values.size() != grid_.size()) throw DomainError("convolution: size mismatch");
  const int M = padded_;
  const int N = grid_.cells();
  RealBuffer r(real_size_);
  ComplexBuffer c(complex_size_);
  ComplexBuffer work(complex_size_);
  std::fill(r.p, r.p + real_size_, 0.0);
  if (grid_.dim() == 1) {
    for (int i = 0; i < N; ++i) r.p[i] = values[i];
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        r.p[static_cast<std::size_t>(i) * M + j] = values[static_cast<std::size_t>(i) * N + j];
  }
  fftw_execute_dft_r2c(plans_->forward, r.p, c.p);

  const double scale = grid_.cell_volume() / static_cast<double>(real_size_);
  std::vector<std::vector<double>> out;
  out.reserve(kernels.size());
  for (const Spectrum* k : kernels) {
    for (std::size_t q = 0; q < complex_size_; ++q) {
      const std::complex<double> z = std::complex<double>(c.p[q][0], c.p[q][1]) * (*k)[q];
      work.p[q][0] = z.real();
      work.p[q][1] = z.imag();
    }
    fftw_execute_dft_c2r(plans_->backward, work.p, r.p);
    std::vector<double> res(grid_.size());
    if (grid_.dim() == 1) {
      for (int i = 0; i < N; ++i) res[i] = r.p[i] * scale;
    } else {
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          res[static_cast<std::size_t>(i) * N + j] =
              r.p[static_cast<std::size_t>(i) * M + j] * scale;
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<double> FreeSpaceConvolver::apply(std::span<const double> values,
                                              const Spectrum& kernel) const {
  return std::move(apply_many(values, {&kernel}).front());
}

KernelTable::KernelTable(const CartesianGrid& grid, Exponent s)
    : conv_(grid), s_(s), vel_const_(velocity_constant(grid.dim(), s.value())) {
  for (int axis = 0; axis < grid.dim(); ++axis) {
    vel_spec_.push_back(
        conv_.spectrum([&](int d0, int d1) { return velocity_kernel(axis, d0, d1); }));
  }
}

std::shared_ptr<const KernelTable> KernelTable::shared(const CartesianGrid& grid, Exponent s) {
  static std::mutex m;
  static std::map<std::tuple<int, double, int, double>, std::shared_ptr<const KernelTable>> cache;
  const auto key = std::make_tuple(grid.dim(), grid.half_width(), grid.cells(), s.value());
  {
    std::lock_guard lock(m);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const KernelTable>(grid, s);
  std::lock_guard lock(m);
  return cache.emplace(key, table).first->second;
}

double KernelTable::velocity_kernel(int axis, int d0, int d1) const {
  if (d0 == 0 && d1 == 0) return 0.0;  // principal value: cell average of an odd kernel
  const double h = grid().h();
  const double x0 = d0 * h;
  const double x1 = d1 * h;
  const int n = grid().dim();
  const double r = std::sqrt(x0 * x0 + x1 * x1);
  const double comp = axis == 0 ? x0 : x1;
  return vel_const_ * comp * std::pow(r, 2.0 * s_.value() - n - 2.0);
}

double KernelTable::pressure_kernel(int d0, int d1) const {
  const int n = grid().dim();
  const double s = s_.value();
  const double h = grid().h();
  const bool logarithmic = std::abs(0.5 * n - s) < 1e-14;
  const bool self = d0 == 0 && d1 == 0;
  const double r = h * std::sqrt(static_cast<double>(d0) * d0 + static_cast<double>(d1) * d1);
  if (logarithmic) {
    // n = 2, s = 1 and n = 1, s = 1/2: -(1/(pi (n==1 ? 1 : 2))) log|x|
    const double c = n == 2 ? 1.0 / (2.0 * std::numbers::pi) : 1.0 / std::numbers::pi;
    return -c * (self ? cell_average_log(n, h) : std::log(r));
  }
  const double q = 2.0 * s - n;
  const double c = riesz_constant(n, s);
  return c * (self ? cell_average_power(n, h, q) : std::pow(r, q));
}

VectorField KernelTable::velocity(std::span<const double> u) const {
  std::vector<const FreeSpaceConvolver::Spectrum*> ks;
  for (const auto& k : vel_spec_) ks.push_back(&k);
  auto comps = conv_.apply_many(u, ks);
  VectorField v(grid());
  v.components = std::move(comps);
  return v;
}

std::vector<double> KernelTable::pressure(std::span<const double> u) const {
  std::call_once(pressure_once_, [this] {
    pressure_spec_ = conv_.spectrum([this](int d0, int d1) { return pressure_kernel(d0, d1); });
  });
  return conv_.apply(u, pressure_spec_);
}

}  // namespace mfield
