#pragma once

// Cell-centered samples on a uniform spacetime grid.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdelab/geometry.hpp"

namespace sdelab {

struct GridFunction {
    SpaceTimeBox box;
    int nt = 1;
    std::vector<int> nx;      // per spatial axis
    int components = 1;
    std::vector<double> values; // layout: ((t * prod(nx) + flat_x) * components + c)

    int dim() const { return static_cast<int>(nx.size()); }

    std::size_t spatial_cells() const {
        std::size_t n = 1;
        for (int v : nx) n *= static_cast<std::size_t>(v);
        return n;
    }
    std::size_t cell_count() const { return static_cast<std::size_t>(nt) * spatial_cells(); }

    double cell_volume() const {
        double v = (box.t1 - box.t0) / nt;
        for (int i = 0; i < dim(); ++i) v *= (box.xhi[i] - box.xlo[i]) / nx[i];
        return v;
    }

    void validate() const {
        if (nt < 1 || nx.empty() || components < 1)
            throw std::invalid_argument("GridFunction: empty resolution");
        for (int v : nx)
            if (v < 1) throw std::invalid_argument("GridFunction: empty resolution");
        if (!(box.t1 > box.t0)) throw std::invalid_argument("GridFunction: degenerate box");
        for (int i = 0; i < dim(); ++i)
            if (!(box.xhi[i] > box.xlo[i]))
                throw std::invalid_argument("GridFunction: degenerate box");
        if (values.size() != cell_count() * static_cast<std::size_t>(components))
            throw std::invalid_argument("GridFunction: value count mismatch");
    }

    double t_center(int it) const {
        return box.t0 + (it + 0.5) * (box.t1 - box.t0) / nt;
    }
    double x_center(int axis, int ix) const {
        return box.xlo[axis] + (ix + 0.5) * (box.xhi[axis] - box.xlo[axis]) / nx[axis];
    }

    double& at(int it, const int* ix, int c = 0) {
        std::size_t flat = 0;
        for (int a = 0; a < dim(); ++a) flat = flat * nx[a] + ix[a];
        return values[(static_cast<std::size_t>(it) * spatial_cells() + flat) * components + c];
    }
    double at(int it, const int* ix, int c = 0) const {
        return const_cast<GridFunction*>(this)->at(it, ix, c);
    }

    // Samples a callable at cell centers.
    static GridFunction sample(const std::function<double(double, const double*)>& f,
                               const SpaceTimeBox& box, int nt, std::vector<int> nx);

    // Text format: header lines (version, box, resolution, components)
    // followed by one value per line.
    void save_csv(const std::string& path) const;
    static GridFunction load_csv(const std::string& path);
};

} // namespace sdelab
