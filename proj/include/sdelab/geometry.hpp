#pragma once

// Parabolic cylinders and mixed-norm exponent bookkeeping.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sdelab {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double unit_ball_volume(int d) {
    // |B_1| in R^d via Gamma(d/2+1)
    return std::pow(3.14159265358979323846, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Exponent pair (p, q): p acts on space, q on time.
struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    int d = 2;

    MixedNormSpec() = default;
    MixedNormSpec(double p_, double q_, int d_) : p(p_), q(q_), d(d_) { validate(); }

    void validate() const {
        if (!(p >= 1.0) || !(q >= 1.0))
            throw std::invalid_argument("MixedNormSpec: exponents must be in [1, inf]");
        if (d < 2) throw std::invalid_argument("MixedNormSpec: dimension must be >= 2");
    }

    // 1 - d/p - 1/q; zero (within 1e-12) on the critical line d/p + 1/q = 1.
    double holder_defect() const {
        const double ip = std::isinf(p) ? 0.0 : d / p;
        const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
        return 1.0 - ip - iq;
    }
    bool is_critical() const { return std::abs(holder_defect()) <= 1e-12; }

    static double conjugate(double e) {
        if (std::isinf(e)) return 1.0;
        if (e == 1.0) return kInf;
        return e / (e - 1.0);
    }
    double p_conj() const { return conjugate(p); }
    double q_conj() const { return conjugate(q); }
};

// [t0, t0+tau) x B_rho(x0)
struct ParabolicCylinder {
    double t0 = 0.0;
    std::vector<double> x0;
    double tau = 0.0;
    double rho = 0.0;

    ParabolicCylinder() = default;
    ParabolicCylinder(double t0_, std::vector<double> x0_, double tau_, double rho_)
        : t0(t0_), x0(std::move(x0_)), tau(tau_), rho(rho_) {
        if (!(tau > 0.0) || !(rho > 0.0))
            throw std::invalid_argument("ParabolicCylinder: tau and rho must be positive");
        if (x0.empty()) throw std::invalid_argument("ParabolicCylinder: empty base point");
    }

    // C_R(t, x): tau = R^2
    static ParabolicCylinder standard(double R, double t0, std::vector<double> x0) {
        return ParabolicCylinder(t0, std::move(x0), R * R, R);
    }

    int dim() const { return static_cast<int>(x0.size()); }
    bool is_standard() const { return std::abs(tau - rho * rho) <= 1e-12 * rho * rho; }
    double volume() const { return tau * std::pow(rho, dim()) * unit_ball_volume(dim()); }

    // 2Q of a standard cylinder: same base, twice the radius.
    ParabolicCylinder doubled() const {
        return ParabolicCylinder(t0, x0, 4.0 * tau, 2.0 * rho);
    }

    bool contains(double t, const double* x) const {
        if (t < t0 || t >= t0 + tau) return false;
        double r2 = 0.0;
        for (int i = 0; i < dim(); ++i) {
            const double dx = x[i] - x0[i];
            r2 += dx * dx;
        }
        return r2 < rho * rho;
    }
};

// Axis-aligned spacetime box [t0,t1) x prod [xlo_i, xhi_i)
struct SpaceTimeBox {
    double t0 = 0.0, t1 = 1.0;
    std::vector<double> xlo, xhi;

    int dim() const { return static_cast<int>(xlo.size()); }
    double volume() const {
        double v = t1 - t0;
        for (int i = 0; i < dim(); ++i) v *= xhi[i] - xlo[i];
        return v;
    }
    bool contains(double t, const double* x) const {
        if (t < t0 || t >= t1) return false;
        for (int i = 0; i < dim(); ++i)
            if (x[i] < xlo[i] || x[i] >= xhi[i]) return false;
        return true;
    }
    static SpaceTimeBox bounding(const ParabolicCylinder& c) {
        SpaceTimeBox b;
        b.t0 = c.t0;
        b.t1 = c.t0 + c.tau;
        b.xlo.resize(c.dim());
        b.xhi.resize(c.dim());
        for (int i = 0; i < c.dim(); ++i) {
            b.xlo[i] = c.x0[i] - c.rho;
            b.xhi[i] = c.x0[i] + c.rho;
        }
        return b;
    }
};

} // namespace sdelab
