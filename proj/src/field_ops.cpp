#include "mfield/field_ops.hpp"

#include <algorithm>
#include <cmath>

#include "mfield/errors.hpp"

namespace mfield {

namespace {

double dist2(const CartesianGrid& g, const Point& x, const Point& c) {
  const double dx = x[0] - c[0];
  if (g.dim() == 1) return dx * dx;
  const double dy = x[1] - c[1];
  return dx * dx + dy * dy;
}

}  // namespace

double total_mass(const DensityField& field) {
  double s = 0.0;
  for (double v : field.values()) s += v;
  return s * field.grid().cell_volume();
}

double lp_norm(const DensityField& field, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: exponent must be >= 1");
  const auto vals = field.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  if (p == 1.0) {
    for (double v : vals) s += v;
    return s * field.grid().cell_volume();
  }
  for (double v : vals) s += std::pow(v, p);
  return std::pow(s * field.grid().cell_volume(), 1.0 / p);
}

double second_moment(const DensityField& field, const Point& center) {
  const auto& g = field.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != 0.0) s += field[i] * dist2(g, g.center(i), center);
  }
  return s * g.cell_volume();
}

double l1_distance(const DensityField& a, const DensityField& b) {
  if (!(a.grid() == b.grid())) throw DomainError("l1_distance: grids differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * a.grid().cell_volume();
}

RadialProfile radial_average(const DensityField& field, const Point& center,
                             const RadialGrid& rgrid) {
  const auto& g = field.grid();
  if (rgrid.dim() != g.dim()) throw DomainError("radial_average: dimension mismatch");
  const double L = g.half_width();
  double inradius = L - std::abs(center[0]);
  if (g.dim() == 2) inradius = std::min(inradius, L - std::abs(center[1]));
  if (rgrid.r_max() > inradius * (1.0 + 1e-12)) {
    throw DomainError("radial_average: r_max exceeds the box inradius about the centre");
  }

  const int J = rgrid.nodes();
  const double ds = rgrid.dsigma();
  std::vector<double> mass(J, 0.0), area(J, 0.0);
  constexpr int kSub = 4;
  const double h = g.h();
  const double sub_h = h / kSub;
  const double sub_vol = std::pow(sub_h, g.dim());
  const int sub_y = g.dim() == 2 ? kSub : 1;

  for (std::size_t c = 0; c < field.size(); ++c) {
    const Point xc = g.center(c);
    for (int a = 0; a < kSub; ++a) {
      for (int b = 0; b < sub_y; ++b) {
        Point x{xc[0] - 0.5 * h + (a + 0.5) * sub_h, 0.0};
        if (g.dim() == 2) x[1] = xc[1] - 0.5 * h + (b + 0.5) * sub_h;
        const double r = std::sqrt(dist2(g, x, center));
        const double sigma = sigma_of_r(g.dim(), r);
        const long j = std::lround(sigma / ds);
        if (j >= J) continue;
        mass[static_cast<std::size_t>(j)] += field[c] * sub_vol;
        area[static_cast<std::size_t>(j)] += sub_vol;
      }
    }
  }

  std::vector<double> prof(J, 0.0);
  for (int j = 0; j < J; ++j) {
    if (area[j] > 0.0) {
      prof[j] = mass[j] / area[j];
    } else {
      const Point x{center[0] + rgrid.r(j), center[1]};
      prof[j] = value_at(field, x);
    }
  }
  return RadialProfile(rgrid, std::move(prof));
}

DensityField sample_cell_average(const CartesianGrid& grid,
                                 const std::function<double(const Point&)>& f, int sub) {
  std::vector<double> vals(grid.size(), 0.0);
  const double h = grid.h();
  const double sh = h / sub;
  const int sub_y = grid.dim() == 2 ? sub : 1;
  const double w = 1.0 / (static_cast<double>(sub) * sub_y);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const Point xc = grid.center(c);
    double acc = 0.0;
    for (int a = 0; a < sub; ++a) {
      for (int b = 0; b < sub_y; ++b) {
        Point x{xc[0] - 0.5 * h + (a + 0.5) * sh, 0.0};
        if (grid.dim() == 2) x[1] = xc[1] - 0.5 * h + (b + 0.5) * sh;
        acc += std::max(0.0, f(x));
      }
    }
    vals[c] = acc * w;
  }
  return DensityField(grid, std::move(vals));
}

double value_at(const DensityField& field, const Point& x) {
  const auto& g = field.grid();
  const double L = g.half_width();
  if (std::abs(x[0]) > L || (g.dim() == 2 && std::abs(x[1]) > L)) return 0.0;
  return field[g.locate(x)];
}

double support_extent(const DensityField& field, const Point& center) {
  const auto& g = field.grid();
  const double half_diag = 0.5 * g.h() * std::sqrt(static_cast<double>(g.dim()));
  double r = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] > 0.0) r = std::max(r, std::sqrt(dist2(g, g.center(i), center)) + half_diag);
  }
  return r;
}

Point center_of_mass(const DensityField& field) {
  const auto& g = field.grid();
  double m = 0.0;
  Point c{0.0, 0.0};
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Point x = g.center(i);
    m += field[i];
    c[0] += field[i] * x[0];
    c[1] += field[i] * x[1];
  }
  if (m > 0.0) {
    c[0] /= m;
    c[1] /= m;
  }
  if (g.dim() == 1) c[1] = 0.0;
  return c;
}

}  // namespace mfield
