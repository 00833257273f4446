#include "sdelab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace sdelab {

namespace {

enum class InnerAxis { space, time };

struct WeightedPoint {
    double x[3];
    double w;
};

struct NormLayout {
    InnerAxis inner;
    double exp_inner;
    double exp_outer;
};

// Inner integral over space when p >= q, over time otherwise; the inner
// exponent is then always raised to a power <= 1 in the primal norm.
NormLayout primal_layout(const MixedNormSpec& spec) {
    if (spec.p >= spec.q) return {InnerAxis::space, spec.p, spec.q};
    return {InnerAxis::time, spec.q, spec.p};
}

// Conjugate exponents, branch keyed to the original p vs q comparison.
NormLayout dual_layout(const MixedNormSpec& spec) {
    if (spec.p >= spec.q) return {InnerAxis::space, spec.p_conj(), spec.q_conj()};
    return {InnerAxis::time, spec.q_conj(), spec.p_conj()};
}

// Generic evaluator over a t-cell list and a spatial point list.
double eval_layout(const std::function<double(double, const double*)>& f,
                   const Cells1D& tc, const std::vector<WeightedPoint>& xs,
                   const NormLayout& lay) {
    if (tc.size() == 0 || xs.empty())
        throw std::invalid_argument("mixed_norm: empty region");
    const bool inner_sup = std::isinf(lay.exp_inner);
    const bool outer_sup = std::isinf(lay.exp_outer);

    auto sample = [&](double t, const double* x) {
        const double v = std::abs(f(t, x));
        return std::isfinite(v) ? v : 0.0;
    };

    double outer = 0.0;
    if (lay.inner == InnerAxis::space) {
        for (std::size_t it = 0; it < tc.size(); ++it) {
            const double t = tc.center[it];
            double inner = 0.0;
            for (const auto& p : xs) {
                const double v = sample(t, p.x);
                if (inner_sup)
                    inner = std::max(inner, v);
                else
                    inner += p.w * std::pow(v, lay.exp_inner);
            }
            const double slice = inner_sup ? inner : std::pow(inner, 1.0 / lay.exp_inner);
            if (outer_sup)
                outer = std::max(outer, slice);
            else
                outer += tc.width[it] * std::pow(slice, lay.exp_outer);
        }
    } else {
        for (const auto& p : xs) {
            double inner = 0.0;
            for (std::size_t it = 0; it < tc.size(); ++it) {
                const double v = sample(tc.center[it], p.x);
                if (inner_sup)
                    inner = std::max(inner, v);
                else
                    inner += tc.width[it] * std::pow(v, lay.exp_inner);
            }
            const double fiber = inner_sup ? inner : std::pow(inner, 1.0 / lay.exp_inner);
            if (outer_sup)
                outer = std::max(outer, fiber);
            else
                outer += p.w * std::pow(fiber, lay.exp_outer);
        }
    }
    return outer_sup ? outer : std::pow(outer, 1.0 / lay.exp_outer);
}

std::vector<WeightedPoint> spatial_points(const Region& region, const QuadratureRule& rule,
                                          const double* singular_x) {
    const SpaceTimeBox box = std::holds_alternative<SpaceTimeBox>(region)
                                 ? std::get<SpaceTimeBox>(region)
                                 : SpaceTimeBox::bounding(std::get<ParabolicCylinder>(region));
    const int d = box.dim();
    if (d != 2 && d != 3)
        throw std::invalid_argument("mixed_norm: tensor grids support d in {2,3}");
    std::vector<Cells1D> xc(d);
    for (int i = 0; i < d; ++i) {
        std::optional<double> sx;
        if (singular_x) sx = singular_x[i];
        xc[i] = graded_cells(box.xlo[i], box.xhi[i], rule.base_cells, sx, rule.graded_levels);
    }
    const ParabolicCylinder* cyl = std::get_if<ParabolicCylinder>(&region);
    std::vector<WeightedPoint> pts;
    auto keep = [&](const double* x) {
        if (!cyl) return true;
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            const double dx = x[i] - cyl->x0[i];
            s += dx * dx;
        }
        return s < cyl->rho * cyl->rho;
    };
    WeightedPoint p{};
    if (d == 2) {
        for (std::size_t i = 0; i < xc[0].size(); ++i)
            for (std::size_t j = 0; j < xc[1].size(); ++j) {
                p.x[0] = xc[0].center[i];
                p.x[1] = xc[1].center[j];
                if (!keep(p.x)) continue;
                p.w = xc[0].width[i] * xc[1].width[j];
                pts.push_back(p);
            }
    } else {
        for (std::size_t i = 0; i < xc[0].size(); ++i)
            for (std::size_t j = 0; j < xc[1].size(); ++j)
                for (std::size_t k = 0; k < xc[2].size(); ++k) {
                    p.x[0] = xc[0].center[i];
                    p.x[1] = xc[1].center[j];
                    p.x[2] = xc[2].center[k];
                    if (!keep(p.x)) continue;
                    p.w = xc[0].width[i] * xc[1].width[j] * xc[2].width[k];
                    pts.push_back(p);
                }
    }
    return pts;
}

Cells1D time_cells(const Region& region, const QuadratureRule& rule,
                   std::optional<double> singular_t) {
    double t0, t1;
    if (const auto* b = std::get_if<SpaceTimeBox>(&region)) {
        t0 = b->t0;
        t1 = b->t1;
    } else {
        const auto& c = std::get<ParabolicCylinder>(region);
        t0 = c.t0;
        t1 = c.t0 + c.tau;
    }
    return graded_cells(t0, t1, rule.base_cells, singular_t, rule.graded_levels);
}

double eval_callable(const SpaceTimeFn& f, const MixedNormSpec& spec, const Region& region,
                     const QuadratureRule& rule, std::optional<double> singular_t,
                     const double* singular_x, bool dual) {
    spec.validate();
    const Cells1D tc = time_cells(region, rule, singular_t);
    const auto xs = spatial_points(region, rule, singular_x);
    return eval_layout(f, tc, xs, dual ? dual_layout(spec) : primal_layout(spec));
}

double eval_grid(const GridFunction& g, const MixedNormSpec& spec,
                 const Region* region, bool dual) {
    spec.validate();
    g.validate();
    for (double v : g.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("mixed_norm: non-finite grid samples");

    // Grid cells as quadrature cells; membership by cell centers.
    Cells1D tc;
    const double dt = (g.box.t1 - g.box.t0) / g.nt;
    std::vector<int> t_index;
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t_center(it);
        if (region) {
            if (const auto* b = std::get_if<SpaceTimeBox>(region)) {
                if (t < b->t0 || t >= b->t1) continue;
            } else {
                const auto& c = std::get<ParabolicCylinder>(*region);
                if (t < c.t0 || t >= c.t0 + c.tau) continue;
            }
        }
        tc.center.push_back(t);
        tc.width.push_back(dt);
        t_index.push_back(it);
    }

    const int d = g.dim();
    std::vector<WeightedPoint> xs;
    std::vector<std::size_t> flat_index;
    double wx = 1.0;
    for (int a = 0; a < d; ++a) wx *= (g.box.xhi[a] - g.box.xlo[a]) / g.nx[a];
    std::vector<int> ix(d, 0);
    const std::size_t total = g.spatial_cells();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int a = d - 1; a >= 0; --a) {
            ix[a] = static_cast<int>(rem % g.nx[a]);
            rem /= g.nx[a];
        }
        WeightedPoint p{};
        bool ok = true;
        for (int a = 0; a < d; ++a) p.x[a] = g.x_center(a, ix[a]);
        if (region) {
            if (const auto* b = std::get_if<SpaceTimeBox>(region)) {
                for (int a = 0; a < d; ++a)
                    if (p.x[a] < b->xlo[a] || p.x[a] >= b->xhi[a]) ok = false;
            } else {
                const auto& c = std::get<ParabolicCylinder>(*region);
                double s = 0.0;
                for (int a = 0; a < d; ++a) {
                    const double dx = p.x[a] - c.x0[a];
                    s += dx * dx;
                }
                ok = s < c.rho * c.rho;
            }
        }
        if (!ok) continue;
        p.w = wx;
        xs.push_back(p);
        flat_index.push_back(flat);
    }

    const std::size_t sc = g.spatial_cells();
    std::vector<std::size_t> t_of;
    t_of.reserve(tc.size());
    for (int it : t_index) t_of.push_back(static_cast<std::size_t>(it));

    const NormLayout lay = dual ? dual_layout(spec) : primal_layout(spec);
    if (tc.size() == 0 || xs.empty())
        throw std::invalid_argument("mixed_norm: region does not overlap the grid");

    const bool inner_sup = std::isinf(lay.exp_inner);
    const bool outer_sup = std::isinf(lay.exp_outer);
    auto value_at = [&](std::size_t ti, std::size_t xi) {
        return std::abs(g.values[(t_of[ti] * sc + flat_index[xi]) * g.components]);
    };

    double outer = 0.0;
    if (lay.inner == InnerAxis::space) {
        for (std::size_t ti = 0; ti < tc.size(); ++ti) {
            double inner = 0.0;
            for (std::size_t xi = 0; xi < xs.size(); ++xi) {
                const double v = value_at(ti, xi);
                if (inner_sup)
                    inner = std::max(inner, v);
                else
                    inner += xs[xi].w * std::pow(v, lay.exp_inner);
            }
            const double slice = inner_sup ? inner : std::pow(inner, 1.0 / lay.exp_inner);
            if (outer_sup)
                outer = std::max(outer, slice);
            else
                outer += tc.width[ti] * std::pow(slice, lay.exp_outer);
        }
    } else {
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            double inner = 0.0;
            for (std::size_t ti = 0; ti < tc.size(); ++ti) {
                const double v = value_at(ti, xi);
                if (inner_sup)
                    inner = std::max(inner, v);
                else
                    inner += tc.width[ti] * std::pow(v, lay.exp_inner);
            }
            const double fiber = inner_sup ? inner : std::pow(inner, 1.0 / lay.exp_inner);
            if (outer_sup)
                outer = std::max(outer, fiber);
            else
                outer += xs[xi].w * std::pow(fiber, lay.exp_outer);
        }
    }
    return outer_sup ? outer : std::pow(outer, 1.0 / lay.exp_outer);
}

} // namespace

double mixed_norm(const SpaceTimeFn& f, const MixedNormSpec& spec, const Region& region,
                  const QuadratureRule& rule, std::optional<double> singular_t,
                  const double* singular_x) {
    return eval_callable(f, spec, region, rule, singular_t, singular_x, false);
}

double mixed_norm(const GridFunction& f, const MixedNormSpec& spec, const Region& region) {
    return eval_grid(f, spec, &region, false);
}

double mixed_norm(const GridFunction& f, const MixedNormSpec& spec) {
    return eval_grid(f, spec, nullptr, false);
}

double dual_mixed_norm(const SpaceTimeFn& f, const MixedNormSpec& spec, const Region& region,
                       const QuadratureRule& rule, std::optional<double> singular_t,
                       const double* singular_x) {
    return eval_callable(f, spec, region, rule, singular_t, singular_x, true);
}

double dual_mixed_norm(const GridFunction& f, const MixedNormSpec& spec, const Region& region) {
    return eval_grid(f, spec, &region, true);
}

double dual_mixed_norm(const GridFunction& f, const MixedNormSpec& spec) {
    return eval_grid(f, spec, nullptr, true);
}

double spatial_lp_norm(const std::function<double(const double*)>& f, double p, int d,
                       const std::vector<double>& lo, const std::vector<double>& hi,
                       int cells_per_axis) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("spatial_lp_norm: d must be 2 or 3");
    std::vector<Cells1D> xc(d);
    for (int i = 0; i < d; ++i) xc[i] = graded_cells(lo[i], hi[i], cells_per_axis);
    double acc = 0.0;
    double sup = 0.0;
    double x[3];
    const bool is_sup = std::isinf(p);
    auto visit = [&](double w) {
        double v = std::abs(f(x));
        if (!std::isfinite(v)) v = 0.0;
        if (is_sup)
            sup = std::max(sup, v);
        else
            acc += w * std::pow(v, p);
    };
    if (d == 2) {
        for (std::size_t i = 0; i < xc[0].size(); ++i)
            for (std::size_t j = 0; j < xc[1].size(); ++j) {
                x[0] = xc[0].center[i];
                x[1] = xc[1].center[j];
                visit(xc[0].width[i] * xc[1].width[j]);
            }
    } else {
        for (std::size_t i = 0; i < xc[0].size(); ++i)
            for (std::size_t j = 0; j < xc[1].size(); ++j)
                for (std::size_t k = 0; k < xc[2].size(); ++k) {
                    x[0] = xc[0].center[i];
                    x[1] = xc[1].center[j];
                    x[2] = xc[2].center[k];
                    visit(xc[0].width[i] * xc[1].width[j] * xc[2].width[k]);
                }
    }
    return is_sup ? sup : std::pow(acc, 1.0 / p);
}

} // namespace sdelab
