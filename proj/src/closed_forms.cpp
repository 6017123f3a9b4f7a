#include "mfield/closed_forms.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "mfield/errors.hpp"

namespace mfield {

namespace {

double norm_from(const Point& x, const Point& c, int dim) {
  if (dim == 1) return std::abs(x[0] - c[0]);
  if (dim != 2) throw DomainError("point-valued evaluation needs n <= 2");
  return std::hypot(x[0] - c[0], x[1] - c[1]);
}

// int_0^1 rho^{n-1} (1 - rho^2)^{1-s} d rho
double barenblatt_shape_integral(int dim, double s) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate([&](double rho) {
    return std::pow(rho, dim - 1) * std::pow(std::max(0.0, 1.0 - rho * rho), 1.0 - s);
  }, 0.0, 1.0);
}

}  // namespace

void PatchSpec::validate() const {
  if (dim < 1) throw DomainError("PatchSpec: dimension must be >= 1");
  if (!(radius > 0.0)) throw DomainError("PatchSpec: radius must be positive");
  if (!(tau >= 0.0)) throw DomainError("PatchSpec: tau must be >= 0");
}

double PatchSpec::support_radius(double t) const {
  if (!(t + tau > 0.0)) throw DomainError("patch: need t + tau > 0");
  return radius * std::pow(t + tau, 1.0 / dim);
}

double PatchSpec::height(double t) const {
  if (!(t + tau > 0.0)) throw DomainError("patch: need t + tau > 0");
  return 1.0 / (t + tau);
}

double PatchSpec::radial_mass() const { return std::pow(radius, dim) / dim; }
double PatchSpec::total_mass() const { return sphere_area(dim) * radial_mass(); }

double patch_density(const PatchSpec& spec, double r, double t) {
  spec.validate();
  return r <= spec.support_radius(t) ? spec.height(t) : 0.0;
}

double patch_density(const PatchSpec& spec, const Point& x, double t) {
  return patch_density(spec, norm_from(x, spec.center, spec.dim), t);
}

MassSample patch_mass(const PatchSpec& spec, double r, double t) {
  spec.validate();
  const double T = t + spec.tau;
  if (!(T > 0.0)) throw DomainError("patch: need t + tau > 0");
  const int n = spec.dim;
  const double sigma = std::pow(r, n) / n;
  const double cap = spec.radial_mass();
  if (sigma / T < cap) return {sigma / T, -sigma / (T * T), 1.0 / T};
  return {cap, 0.0, 0.0};
}

LargestSolution largest_solution(double r, double t, int dim) {
  if (!(t > 0.0)) throw DomainError("largest_solution: need t > 0");
  if (dim < 1) throw DomainError("largest_solution: dimension must be >= 1");
  const double sigma = std::pow(r, dim) / dim;
  return {1.0 / t, {sigma / t, -sigma / (t * t), 1.0 / t}};
}

void BarenblattSpec::validate() const {
  if (dim < 1) throw DomainError("BarenblattSpec: dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("BarenblattSpec: need 0 < s < 1");
  if (!(C1 > 0.0) || !(k1 > 0.0)) throw DomainError("BarenblattSpec: C1, k1 must be positive");
}

double BarenblattSpec::alpha() const { return dim / (dim + 2.0 - 2.0 * s); }
double BarenblattSpec::beta() const { return 1.0 / (dim + 2.0 - 2.0 * s); }

double BarenblattSpec::support_radius(double t) const {
  return std::sqrt(C1 / k1) * std::pow(t, beta());
}

double barenblatt_density(const BarenblattSpec& spec, double r, double t) {
  spec.validate();
  if (!(t > 0.0)) throw DomainError("barenblatt: need t > 0");
  const double a = spec.alpha();
  const double inner = spec.C1 - spec.k1 * r * r * std::pow(t, -2.0 * a / spec.dim);
  if (inner <= 0.0) return 0.0;
  return std::pow(t, -a) * std::pow(inner, 1.0 - spec.s);
}

double barenblatt_density(const BarenblattSpec& spec, const Point& x, double t) {
  return barenblatt_density(spec, norm_from(x, {0.0, 0.0}, spec.dim), t);
}

double barenblatt_mass(const BarenblattSpec& spec) {
  spec.validate();
  // In the self-similar variable rho = r t^{-beta} the t-dependence cancels.
  const double a = std::sqrt(spec.C1 / spec.k1);
  return sphere_area(spec.dim) * std::pow(spec.C1, 1.0 - spec.s) * std::pow(a, spec.dim) *
         barenblatt_shape_integral(spec.dim, spec.s);
}

BarenblattSpec barenblatt_matched(int dim, double s, double mass, double radius) {
  if (!(mass > 0.0) || !(radius > 0.0)) throw DomainError("barenblatt_matched: bad mass/radius");
  const double I = barenblatt_shape_integral(dim, s);
  const double c_pow = mass / (sphere_area(dim) * std::pow(radius, dim) * I);
  BarenblattSpec out{dim, s, std::pow(c_pow, 1.0 / (1.0 - s)), 1.0};
  out.k1 = out.C1 / (radius * radius);
  out.validate();
  return out;
}

BarenblattSpec barenblatt_unit_mass(int dim, double s, double k1) {
  if (!(k1 > 0.0)) throw DomainError("barenblatt_unit_mass: k1 must be positive");
  // mass = |S| I C1^{1-s} (C1/k1)^{n/2}
  const double I = barenblatt_shape_integral(dim, s);
  const double e = 1.0 - s + 0.5 * dim;
  const double C1 = std::pow(std::pow(k1, 0.5 * dim) / (sphere_area(dim) * I), 1.0 / e);
  BarenblattSpec out{dim, s, C1, k1};
  out.validate();
  return out;
}

TwoPatchSpec TwoPatchSpec::make(int dim, double c1, double R1, double R2, double R3) {
  TwoPatchSpec spec{dim, c1, c1 * std::pow(R1 / R2, dim), R1, R2, R3};
  spec.validate();
  return spec;
}

void TwoPatchSpec::validate() const {
  if (dim < 1) throw DomainError("TwoPatchSpec: dimension must be >= 1");
  if (!(c1 > 0.0 && c2 > 0.0)) throw DomainError("TwoPatchSpec: heights must be positive");
  if (!(0.0 < R1 && R1 < R2 && R2 < R3)) throw DomainError("TwoPatchSpec: need 0 < R1 < R2 < R3");
  const double lhs = c2 * std::pow(R2, dim);
  const double rhs = c1 * std::pow(R1, dim);
  if (std::abs(lhs - rhs) > 1e-12 * rhs) {
    throw DomainError("TwoPatchSpec: continuity requires c2 R2^n = c1 R1^n");
  }
}

std::array<double, 3> TwoPatchSpec::interfaces(double t) const {
  if (!(t >= 0.0)) throw DomainError("two_patch: need t >= 0");
  const double inv = 1.0 / dim;
  const double g1 = std::pow(c1 * (t + tau1()), inv);
  const double g2 = std::pow(c2 * (t + tau2()), inv);
  return {R1 * g1, R2 * g2, R3 * g2};
}

double TwoPatchSpec::radial_mass() const {
  return (c1 * std::pow(R1, dim) + c2 * (std::pow(R3, dim) - std::pow(R2, dim))) / dim;
}

std::vector<std::array<double, 2>> TwoPatchSpec::initial_mass_knots() const {
  const double s1 = sigma_of_r(dim, R1), s2 = sigma_of_r(dim, R2), s3 = sigma_of_r(dim, R3);
  const double plateau = c1 * s1;
  return {{0.0, 0.0}, {s1, plateau}, {s2, plateau}, {s3, plateau + c2 * (s3 - s2)}};
}

TwoPatchState two_patch_state(const TwoPatchSpec& spec, double r, double t) {
  spec.validate();
  const auto S = spec.interfaces(t);
  const int n = spec.dim;
  const double plateau = spec.c1 * std::pow(spec.R1, n) / n;
  const double T1 = t + spec.tau1(), T2 = t + spec.tau2();
  const double rn = std::pow(r, n);
  TwoPatchState st{0.0, 0.0, S};
  if (r <= S[0]) {
    st.density = 1.0 / T1;
    st.mass = rn / (n * T1);
  } else if (r <= S[1]) {
    st.mass = plateau;
  } else if (r <= S[2]) {
    st.density = 1.0 / T2;
    st.mass = plateau + (rn - std::pow(S[1], n)) / (n * T2);
  } else {
    st.mass = spec.radial_mass();
  }
  return st;
}

}  // namespace mfield
