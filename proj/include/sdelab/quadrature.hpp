#pragma once

// Midpoint quadrature on tensor grids with dyadic grading toward an
// integrable singularity.  Non-finite samples are treated as sitting on a
// null set and contribute zero.

#include <functional>
#include <optional>
#include <vector>

#include "sdelab/geometry.hpp"

namespace sdelab {

struct Cells1D {
    std::vector<double> center;
    std::vector<double> width;
    std::size_t size() const { return center.size(); }
};

// `n_base` uniform cells on [lo, hi]; cells touching `singular_at` are split
// dyadically `levels` times toward the singular coordinate.
Cells1D graded_cells(double lo, double hi, int n_base,
                     std::optional<double> singular_at = std::nullopt,
                     int levels = 0);

struct QuadratureRule {
    int base_cells = 32;   // per axis
    int graded_levels = 20;

    QuadratureRule refined(int extra_levels = 4, int cell_factor = 1) const {
        QuadratureRule r = *this;
        r.graded_levels += extra_levels;
        r.base_cells *= cell_factor;
        return r;
    }
};

// f(t, x) sampled at cell centers; integrates f over the box (d <= 3).
// `singular_t` / `singular_x` mark coordinates the mesh grades toward.
double integrate_box(const std::function<double(double, const double*)>& f,
                     const SpaceTimeBox& box, const QuadratureRule& rule,
                     std::optional<double> singular_t = std::nullopt,
                     const double* singular_x = nullptr);

// Same, restricted to the cylinder (midpoint membership for the ball).
double integrate_cylinder(const std::function<double(double, const double*)>& f,
                          const ParabolicCylinder& cyl, const QuadratureRule& rule,
                          std::optional<double> singular_t = std::nullopt,
                          const double* singular_x = nullptr);

// Purely spatial integral over a ball (d <= 3).
double integrate_ball(const std::function<double(const double*)>& f, int d,
                      const std::vector<double>& center, double radius,
                      const QuadratureRule& rule, const double* singular_x = nullptr);

} // namespace sdelab
