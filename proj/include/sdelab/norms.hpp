#pragma once

// Mixed L_{p,q} norms: p over space, q over time, inner integral taken in
// the order that keeps its exponent <= 1.  Infinite exponents are grid
// suprema and therefore lower bounds on the true essential sup.

#include <functional>
#include <optional>
#include <variant>

#include "sdelab/grid_function.hpp"
#include "sdelab/quadrature.hpp"

namespace sdelab {

using SpaceTimeFn = std::function<double(double, const double*)>;
using Region = std::variant<SpaceTimeBox, ParabolicCylinder>;

// ||f||_{L_{p,q}(region)} for a callable sampled on a graded midpoint grid.
double mixed_norm(const SpaceTimeFn& f, const MixedNormSpec& spec, const Region& region,
                  const QuadratureRule& rule = {},
                  std::optional<double> singular_t = std::nullopt,
                  const double* singular_x = nullptr);

// Same norm evaluated on stored grid samples (component 0); cells outside
// the region are excluded by their centers.  Rejects non-finite samples.
double mixed_norm(const GridFunction& f, const MixedNormSpec& spec, const Region& region);
double mixed_norm(const GridFunction& f, const MixedNormSpec& spec);

// L'_{p,q}: conjugate exponents with branch selection keyed to the original
// p vs q comparison.
double dual_mixed_norm(const SpaceTimeFn& f, const MixedNormSpec& spec, const Region& region,
                       const QuadratureRule& rule = {},
                       std::optional<double> singular_t = std::nullopt,
                       const double* singular_x = nullptr);
double dual_mixed_norm(const GridFunction& f, const MixedNormSpec& spec, const Region& region);
double dual_mixed_norm(const GridFunction& f, const MixedNormSpec& spec);

// Plain L_p norm of a spatial function over R^d (grid quadrature helper).
double spatial_lp_norm(const std::function<double(const double*)>& f, double p, int d,
                       const std::vector<double>& lo, const std::vector<double>& hi,
                       int cells_per_axis);

} // namespace sdelab
