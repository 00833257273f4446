#include "sdelab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace sdelab {

Cells1D graded_cells(double lo, double hi, int n_base,
                     std::optional<double> singular_at, int levels) {
    if (!(hi > lo)) throw std::invalid_argument("graded_cells: degenerate axis");
    if (n_base < 1) n_base = 1;
    Cells1D cells;
    const double w = (hi - lo) / n_base;

    auto push_uniform = [&](double a, double b, int n) {
        const double dw = (b - a) / n;
        for (int i = 0; i < n; ++i) {
            cells.center.push_back(a + (i + 0.5) * dw);
            cells.width.push_back(dw);
        }
    };

    if (!singular_at || *singular_at <= lo - w || *singular_at >= hi + w || levels <= 0) {
        push_uniform(lo, hi, n_base);
        return cells;
    }

    const double s = *singular_at;
    // Dyadic cascade from `a` toward `s` (a < s or a > s), then a final
    // sliver cell next to s whose midpoint stays off the singular point.
    auto push_cascade = [&](double a, double toward_s) {
        double len = std::abs(toward_s - a);
        if (len <= 0.0) return;
        const double sign = (toward_s > a) ? 1.0 : -1.0;
        double pos = a;
        for (int l = 0; l < levels; ++l) {
            const double dw = len * 0.5;
            cells.center.push_back(pos + sign * dw * 0.5);
            cells.width.push_back(dw);
            pos += sign * dw;
            len -= dw;
        }
        cells.center.push_back(pos + sign * len * 0.5);
        cells.width.push_back(len);
    };

    if (s <= lo) {
        // grade the first cell toward lo
        push_cascade(lo + w, lo);
        push_uniform(lo + w, hi, std::max(1, n_base - 1));
    } else if (s >= hi) {
        push_uniform(lo, hi - w, std::max(1, n_base - 1));
        push_cascade(hi - w, hi);
    } else {
        // uniform away from s; a two-cell window around s graded toward it,
        // so s lies strictly inside the window even on a breakpoint
        const int k = std::min(n_base - 1, std::max(0, static_cast<int>((s - lo) / w)));
        const int ka = std::max(0, k - 1);
        const int kb = std::min(n_base, k + 2);
        const double a = lo + ka * w;
        const double b = lo + kb * w;
        if (ka > 0) push_uniform(lo, a, ka);
        push_cascade(a, s);
        push_cascade(b, s);
        if (kb < n_base) push_uniform(b, hi, n_base - kb);
    }
    return cells;
}

namespace {

double accumulate_product(const std::function<double(double, const double*)>& f,
                          const Cells1D& tc, const std::vector<Cells1D>& xc,
                          const std::function<bool(const double*)>& keep) {
    const int d = static_cast<int>(xc.size());
    double total = 0.0;
    double x[3];
    for (std::size_t it = 0; it < tc.size(); ++it) {
        const double t = tc.center[it];
        const double wt = tc.width[it];
        double slice = 0.0;
        if (d == 2) {
            for (std::size_t i = 0; i < xc[0].size(); ++i) {
                x[0] = xc[0].center[i];
                double row = 0.0;
                for (std::size_t j = 0; j < xc[1].size(); ++j) {
                    x[1] = xc[1].center[j];
                    if (keep && !keep(x)) continue;
                    const double v = f(t, x);
                    if (std::isfinite(v)) row += v * xc[1].width[j];
                }
                slice += row * xc[0].width[i];
            }
        } else if (d == 3) {
            for (std::size_t i = 0; i < xc[0].size(); ++i) {
                x[0] = xc[0].center[i];
                double plane = 0.0;
                for (std::size_t j = 0; j < xc[1].size(); ++j) {
                    x[1] = xc[1].center[j];
                    double row = 0.0;
                    for (std::size_t k = 0; k < xc[2].size(); ++k) {
                        x[2] = xc[2].center[k];
                        if (keep && !keep(x)) continue;
                        const double v = f(t, x);
                        if (std::isfinite(v)) row += v * xc[2].width[k];
                    }
                    plane += row * xc[1].width[j];
                }
                slice += plane * xc[0].width[i];
            }
        } else {
            throw std::invalid_argument("quadrature: tensor grids support d in {2,3}");
        }
        total += slice * wt;
    }
    return total;
}

} // namespace

double integrate_box(const std::function<double(double, const double*)>& f,
                     const SpaceTimeBox& box, const QuadratureRule& rule,
                     std::optional<double> singular_t, const double* singular_x) {
    const int d = box.dim();
    if (d != 2 && d != 3)
        throw std::invalid_argument("integrate_box: d must be 2 or 3");
    if (!(box.t1 > box.t0)) throw std::invalid_argument("integrate_box: empty time extent");
    Cells1D tc = graded_cells(box.t0, box.t1, rule.base_cells, singular_t, rule.graded_levels);
    std::vector<Cells1D> xc(d);
    for (int i = 0; i < d; ++i) {
        std::optional<double> sx;
        if (singular_x) sx = singular_x[i];
        xc[i] = graded_cells(box.xlo[i], box.xhi[i], rule.base_cells, sx, rule.graded_levels);
    }
    return accumulate_product(f, tc, xc, nullptr);
}

double integrate_cylinder(const std::function<double(double, const double*)>& f,
                          const ParabolicCylinder& cyl, const QuadratureRule& rule,
                          std::optional<double> singular_t, const double* singular_x) {
    const int d = cyl.dim();
    if (d != 2 && d != 3)
        throw std::invalid_argument("integrate_cylinder: d must be 2 or 3");
    const SpaceTimeBox box = SpaceTimeBox::bounding(cyl);
    Cells1D tc = graded_cells(box.t0, box.t1, rule.base_cells, singular_t, rule.graded_levels);
    std::vector<Cells1D> xc(d);
    for (int i = 0; i < d; ++i) {
        std::optional<double> sx;
        if (singular_x) sx = singular_x[i];
        xc[i] = graded_cells(box.xlo[i], box.xhi[i], rule.base_cells, sx, rule.graded_levels);
    }
    const double r2 = cyl.rho * cyl.rho;
    auto keep = [&](const double* x) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            const double dx = x[i] - cyl.x0[i];
            s += dx * dx;
        }
        return s < r2;
    };
    return accumulate_product(f, tc, xc, keep);
}

double integrate_ball(const std::function<double(const double*)>& f, int d,
                      const std::vector<double>& center, double radius,
                      const QuadratureRule& rule, const double* singular_x) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("integrate_ball: d must be 2 or 3");
    std::vector<Cells1D> xc(d);
    for (int i = 0; i < d; ++i) {
        std::optional<double> sx;
        if (singular_x) sx = singular_x[i];
        xc[i] = graded_cells(center[i] - radius, center[i] + radius, rule.base_cells, sx,
                             rule.graded_levels);
    }
    const double r2 = radius * radius;
    auto keep = [&](const double* x) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            const double dx = x[i] - center[i];
            s += dx * dx;
        }
        return s < r2;
    };
    Cells1D one;
    one.center = {0.0};
    one.width = {1.0};
    auto g = [&](double, const double* x) { return f(x); };
    return accumulate_product(g, one, xc, keep);
}

} // namespace sdelab
