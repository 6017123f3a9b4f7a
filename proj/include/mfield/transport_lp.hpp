#pragma once

#include <cstdint>
#include <vector>

#include "mfield/grid.hpp"

namespace mfield {

/// Balanced transportation problem solved by the transportation simplex (northwest-corner
/// start, MODI potentials, Dantzig pricing). Dense; meant as a small-size oracle.
struct TransportSolution {
  double cost = 0.0;
  std::size_t pivots = 0;
  bool optimal = false;
  std::vector<double> flow;  ///< row-major rows x cols
};

/// `cost` is row-major supply.size() x demand.size(). Demand is rescaled to the supply total
/// when the totals differ by rounding; larger mismatches throw DomainError.
TransportSolution solve_transport(const std::vector<double>& supply,
                                  const std::vector<double>& demand,
                                  const std::vector<double>& cost,
                                  std::size_t max_pivots = 200000);

struct Atom {
  Point x;
  double weight;
};

/// W_p between two point clouds in the plane via solve_transport.
double lp_wasserstein_points(const std::vector<Atom>& a, const std::vector<Atom>& b, double p);

/// Atoms on the radius axis induced by a radial mass function: each sigma interval is split
/// into `subdivisions` pieces carrying full mass |S^{n-1}| dM, placed at the piece midpoints.
std::vector<Atom> radial_atoms(const MassFunction& M, int subdivisions);

/// W_p between radial measures from the 1-D transportation problem on radial_atoms with
/// cost |r - r'|^p. Supply atoms are shuffled with `seed` before the northwest-corner start
/// so the simplex does not begin at the monotone coupling.
double lp_wasserstein_radial(const MassFunction& a, const MassFunction& b, double p,
                             int subdivisions = 4, std::uint64_t seed = 1);

}  // namespace mfield
