#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "mfield/closed_forms.hpp"
#include "mfield/grid.hpp"

namespace mfield {

/// peak * exp(-|x - c|^2 / (2 w^2)) cut off at |x - c| = truncation * w, with w chosen so
/// that the truncated bump carries exactly `mass`.
struct GaussianSpec {
  int dim = 2;
  double peak = 2.0;
  double mass = 1.0;
  double truncation = 4.0;
  Point center{0.0, 0.0};

  void validate() const;
  double width() const;
  double support_radius() const { return truncation * width(); }
  double density(double r) const;
};

struct PatchInitial {
  PatchSpec spec;
  double time = 0.0;  ///< closed form evaluated at this time
};
struct TwoPatchInitial {
  TwoPatchSpec spec;
  double time = 0.0;
};
struct BarenblattInitial {
  BarenblattSpec spec;
  double time = 1.0;
};
/// Whole mass in the cell containing `center`.
struct DiracInitial {
  int dim = 2;
  double mass = 1.0;
  Point center{0.0, 0.0};
};
struct FileInitial {
  std::filesystem::path path;
};

using InitialSpec =
    std::variant<PatchInitial, TwoPatchInitial, GaussianSpec, DiracInitial, BarenblattInitial,
                 FileInitial>;

/// Catalogue name: "patch", "two-patch", "gaussian", "dirac", "barenblatt", "file".
std::string initial_kind(const InitialSpec& spec);
int initial_dim(const InitialSpec& spec);

/// Cell averages of the initial density on `grid` (8 x 8 sub-samples per cell for the
/// closed forms). A file must carry exactly this grid.
DensityField make_initial(const InitialSpec& spec, const CartesianGrid& grid);

/// Radial initial profile; FileInitial is not radial and throws.
double initial_radial_density(const InitialSpec& spec, double r);

}  // namespace mfield
