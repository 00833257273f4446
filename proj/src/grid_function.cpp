#include "sdelab/grid_function.hpp"

#include <fstream>
#include <sstream>

#include "sdelab/io.hpp"

namespace sdelab {

GridFunction GridFunction::sample(const std::function<double(double, const double*)>& f,
                                  const SpaceTimeBox& box, int nt, std::vector<int> nx) {
    GridFunction g;
    g.box = box;
    g.nt = nt;
    g.nx = std::move(nx);
    g.components = 1;
    if (g.dim() != box.dim())
        throw std::invalid_argument("GridFunction::sample: resolution/box dimension mismatch");
    g.values.resize(g.cell_count());
    const int d = g.dim();
    std::vector<int> ix(d, 0);
    std::size_t idx = 0;
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t_center(it);
        std::fill(ix.begin(), ix.end(), 0);
        const std::size_t sc = g.spatial_cells();
        for (std::size_t flat = 0; flat < sc; ++flat) {
            std::size_t rem = flat;
            for (int a = d - 1; a >= 0; --a) {
                ix[a] = static_cast<int>(rem % g.nx[a]);
                rem /= g.nx[a];
            }
            double x[3] = {0, 0, 0};
            for (int a = 0; a < d; ++a) x[a] = g.x_center(a, ix[a]);
            g.values[idx++] = f(t, x);
        }
    }
    g.validate();
    return g;
}

void GridFunction::save_csv(const std::string& path) const {
    validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("GridFunction::save_csv: cannot open " + path);
    out << "# gridfunction v1\n";
    out << "# t " << format_double(box.t0) << ' ' << format_double(box.t1) << ' ' << nt << '\n';
    for (int a = 0; a < dim(); ++a)
        out << "# x" << a << ' ' << format_double(box.xlo[a]) << ' '
            << format_double(box.xhi[a]) << ' ' << nx[a] << '\n';
    out << "# components " << components << '\n';
    for (double v : values) out << format_double(v) << '\n';
}

GridFunction GridFunction::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("GridFunction::load_csv: cannot open " + path);
    GridFunction g;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# gridfunction v1", 0) != 0)
        throw std::runtime_error("GridFunction::load_csv: bad header");
    if (!std::getline(in, line)) throw std::runtime_error("GridFunction::load_csv: truncated");
    {
        std::istringstream ss(line.substr(1));
        std::string tag;
        ss >> tag >> g.box.t0 >> g.box.t1 >> g.nt;
    }
    std::streampos pos = in.tellg();
    while (std::getline(in, line)) {
        if (line.rfind("# x", 0) == 0) {
            std::istringstream ss(line.substr(1));
            std::string tag;
            double lo, hi;
            int n;
            ss >> tag >> lo >> hi >> n;
            g.box.xlo.push_back(lo);
            g.box.xhi.push_back(hi);
            g.nx.push_back(n);
            pos = in.tellg();
        } else if (line.rfind("# components", 0) == 0) {
            std::istringstream ss(line.substr(1));
            std::string tag;
            ss >> tag >> g.components;
            pos = in.tellg();
            break;
        } else {
            break;
        }
    }
    in.seekg(pos);
    double v;
    while (in >> v) g.values.push_back(v);
    g.validate();
    return g;
}

} // namespace sdelab
