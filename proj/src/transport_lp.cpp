#include "mfield/transport_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mfield/errors.hpp"

namespace mfield {

TransportSolution solve_transport(const std::vector<double>& supply,
                                  const std::vector<double>& demand_in,
                                  const std::vector<double>& cost, std::size_t max_pivots) {
  const std::size_t m = supply.size(), n = demand_in.size();
  if (m == 0 || n == 0) throw DomainError("solve_transport: empty problem");
  if (cost.size() != m * n) throw DomainError("solve_transport: cost has wrong size");
  const double S = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double D = std::accumulate(demand_in.begin(), demand_in.end(), 0.0);
  if (std::abs(S - D) > 1e-9 * std::max(S, D)) throw DomainError("solve_transport: unbalanced");
  for (double v : supply) if (v < 0.0) throw DomainError("solve_transport: negative supply");
  for (double v : demand_in) if (v < 0.0) throw DomainError("solve_transport: negative demand");
  std::vector<double> demand(demand_in);
  for (double& d : demand) d *= S / D;

  std::vector<double> x(m * n, 0.0);
  std::vector<char> basic(m * n, 0);
  std::vector<std::size_t> basis;  // flat indices, always m + n - 1 entries

  {  // northwest corner
    std::vector<double> s(supply), d(demand);
    std::size_t i = 0, j = 0;
    while (true) {
      const double q = std::min(s[i], d[j]);
      x[i * n + j] = q;
      basic[i * n + j] = 1;
      basis.push_back(i * n + j);
      s[i] -= q;
      d[j] -= q;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (s[i] <= d[j]) {  // row exhausted (ties advance the row)
        ++i;
      } else {
        ++j;
      }
    }
  }

  double cmax = 0.0;
  for (double c : cost) cmax = std::max(cmax, std::abs(c));
  const double tol = 1e-12 * std::max(cmax, 1e-300);

  std::vector<double> u(m), v(n);
  std::vector<char> seen_r(m), seen_c(n);
  std::vector<std::vector<std::size_t>> row_adj(m), col_adj(n);
  TransportSolution sol;

  auto build_adjacency = [&] {
    for (auto& a : row_adj) a.clear();
    for (auto& a : col_adj) a.clear();
    for (std::size_t f : basis) {
      row_adj[f / n].push_back(f % n);
      col_adj[f % n].push_back(f / n);
    }
  };

  for (; sol.pivots < max_pivots; ++sol.pivots) {
    build_adjacency();
    // Potentials u_i + v_j = c_ij on the basis tree, rooted at row 0.
    std::fill(seen_r.begin(), seen_r.end(), 0);
    std::fill(seen_c.begin(), seen_c.end(), 0);
    std::vector<std::pair<bool, std::size_t>> stack{{true, 0}};
    u[0] = 0.0;
    seen_r[0] = 1;
    while (!stack.empty()) {
      auto [is_row, k] = stack.back();
      stack.pop_back();
      if (is_row) {
        for (std::size_t j : row_adj[k]) {
          if (seen_c[j]) continue;
          v[j] = cost[k * n + j] - u[k];
          seen_c[j] = 1;
          stack.push_back({false, j});
        }
      } else {
        for (std::size_t i : col_adj[k]) {
          if (seen_r[i]) continue;
          u[i] = cost[i * n + k] - v[k];
          seen_r[i] = 1;
          stack.push_back({true, i});
        }
      }
    }

    double best = -tol;
    std::size_t enter = m * n;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (basic[i * n + j]) continue;
        const double rc = cost[i * n + j] - u[i] - v[j];
        if (rc < best) {
          best = rc;
          enter = i * n + j;
        }
      }
    }
    if (enter == m * n) {
      sol.optimal = true;
      break;
    }

    // Tree path from row ei to column ej.
    const std::size_t ei = enter / n, ej = enter % n;
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent_r(m, none), parent_c(n, none);  // parent node of the other kind
    std::fill(seen_r.begin(), seen_r.end(), 0);
    std::fill(seen_c.begin(), seen_c.end(), 0);
    std::vector<std::pair<bool, std::size_t>> queue{{true, ei}};
    seen_r[ei] = 1;
    for (std::size_t q = 0; q < queue.size() && !seen_c[ej]; ++q) {
      auto [is_row, k] = queue[q];
      if (is_row) {
        for (std::size_t j : row_adj[k]) {
          if (seen_c[j]) continue;
          seen_c[j] = 1;
          parent_c[j] = k;
          queue.push_back({false, j});
        }
      } else {
        for (std::size_t i : col_adj[k]) {
          if (seen_r[i]) continue;
          seen_r[i] = 1;
          parent_r[i] = k;
          queue.push_back({true, i});
        }
      }
    }
    if (!seen_c[ej]) throw NumericalError("solve_transport: basis is not a spanning tree");
    // Walk back from ej: edges alternate -, +, -, ... starting at the column end.
    std::vector<std::size_t> minus, plus;
    std::size_t col = ej;
    bool sign_minus = true;
    while (true) {
      const std::size_t row = parent_c[col];
      (sign_minus ? minus : plus).push_back(row * n + col);
      sign_minus = !sign_minus;
      if (row == ei) break;
      const std::size_t next_col = parent_r[row];
      (sign_minus ? minus : plus).push_back(row * n + next_col);
      sign_minus = !sign_minus;
      col = next_col;
    }
    std::size_t leave = minus.front();
    double theta = x[leave];
    for (std::size_t f : minus) {
      if (x[f] < theta) {
        theta = x[f];
        leave = f;
      }
    }
    for (std::size_t f : minus) x[f] -= theta;
    for (std::size_t f : plus) x[f] += theta;
    x[enter] += theta;
    x[leave] = 0.0;
    basic[leave] = 0;
    basic[enter] = 1;
    *std::find(basis.begin(), basis.end(), leave) = enter;
  }

  for (std::size_t f = 0; f < m * n; ++f) {
    x[f] = std::max(0.0, x[f]);
    sol.cost += x[f] * cost[f];
  }
  sol.flow = std::move(x);
  return sol;
}

double lp_wasserstein_points(const std::vector<Atom>& a, const std::vector<Atom>& b, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_wasserstein_points: need p >= 1");
  std::vector<double> sa, sb, cost;
  for (const auto& x : a) sa.push_back(x.weight);
  for (const auto& y : b) sb.push_back(y.weight);
  cost.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      cost.push_back(std::pow(std::hypot(x.x[0] - y.x[0], x.x[1] - y.x[1]), p));
    }
  }
  const auto sol = solve_transport(sa, sb, cost);
  if (!sol.optimal) throw NumericalError("lp_wasserstein_points: pivot limit reached");
  return std::pow(sol.cost, 1.0 / p);
}

std::vector<Atom> radial_atoms(const MassFunction& M, int subdivisions) {
  if (subdivisions < 1) throw DomainError("radial_atoms: subdivisions must be >= 1");
  const auto& g = M.grid;
  const double area = sphere_area(g.dim());
  std::vector<Atom> out;
  for (int j = 0; j + 1 < g.nodes(); ++j) {
    const double dm = (M.values[j + 1] - M.values[j]) / subdivisions;
    if (dm <= 0.0) continue;
    for (int k = 0; k < subdivisions; ++k) {
      const double sigma = g.sigma(j) + (k + 0.5) * g.dsigma() / subdivisions;
      out.push_back({{r_of_sigma(g.dim(), sigma), 0.0}, area * dm});
    }
  }
  return out;
}

double lp_wasserstein_radial(const MassFunction& a, const MassFunction& b, double p,
                             int subdivisions, std::uint64_t seed) {
  if (!(p >= 1.0)) throw DomainError("lp_wasserstein_radial: need p >= 1");
  auto A = radial_atoms(a, subdivisions);
  const auto B = radial_atoms(b, subdivisions);
  std::mt19937_64 rng(seed);
  std::shuffle(A.begin(), A.end(), rng);
  std::vector<double> sa, sb, cost;
  for (const auto& x : A) sa.push_back(x.weight);
  for (const auto& y : B) sb.push_back(y.weight);
  cost.reserve(A.size() * B.size());
  for (const auto& x : A)
    for (const auto& y : B) cost.push_back(std::pow(std::abs(x.x[0] - y.x[0]), p));
  const auto sol = solve_transport(sa, sb, cost);
  if (!sol.optimal) throw NumericalError("lp_wasserstein_radial: pivot limit reached");
  return std::pow(sol.cost, 1.0 / p);
}

}  // namespace mfield
