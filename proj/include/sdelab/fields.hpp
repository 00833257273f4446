#pragma once

// Scalar / vector / matrix spacetime fields, the |t|^-beta |x|^-alpha
// singular family, parabolic self-similar rescaling, and a small registry
// so configs can reference fields by name + parameters.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdelab/geometry.hpp"
#include "sdelab/norms.hpp"

#include <json.hpp>

namespace sdelab {

struct ScalarField {
    int d = 0;
    SpaceTimeFn eval;
    // drift bounds rescale as h_R(t,x) = R h(R^2 t, R x)
    bool drift_weight = false;
    std::optional<double> singular_t;
    std::optional<std::vector<double>> singular_x;

    double operator()(double t, const double* x) const { return eval(t, x); }
};

struct VectorField {
    int d = 0;
    std::function<void(double, const double*, double*)> eval;
    bool is_zero = false;

    void operator()(double t, const double* x, double* out) const {
        if (is_zero) {
            for (int i = 0; i < d; ++i) out[i] = 0.0;
            return;
        }
        eval(t, x, out);
    }
};

struct MatrixField {
    int d = 0;
    std::function<void(double, const double*, double*)> eval; // row-major d*d
    bool is_constant = false;
    std::vector<double> constant; // used when is_constant

    void operator()(double t, const double* x, double* out) const {
        if (is_constant) {
            std::copy(constant.begin(), constant.end(), out);
            return;
        }
        eval(t, x, out);
    }
};

// h = g^{1/(d+1)} with g(t,x) = |t|^-beta |x|^-alpha; requires
// alpha in (0,d), beta in (0,1), alpha + 2 beta = d + 1.  Evaluation on the
// singular set returns +inf; the graded quadrature treats it as an
// integrable singularity.
ScalarField example21_field(int d, double alpha, double beta);

// g itself (without the 1/(d+1) power), for the scaling-identity checks.
ScalarField example21_g(int d, double alpha, double beta);

// (t,x) -> f(R^2 t, R x), with the drift weight R applied when flagged.
ScalarField self_similar_rescale(const ScalarField& f, double R);
VectorField self_similar_rescale_drift(const VectorField& b, double R);

// --- registry -------------------------------------------------------------

// sigma: "identity", "scaled_identity" {scale}, "diagonal" {entries}, "zero"
MatrixField make_sigma_field(const std::string& name, const nlohmann::json& params, int d);

// drift: "zero", "constant" {components}, "example21" {alpha, beta,
// direction = radial_in|radial_out|axis, cap}, "example51" {alpha, beta},
// "radial" {speed, direction}
VectorField make_drift_field(const std::string& name, const nlohmann::json& params, int d);

// scalar integrands: "one", "constant" {value}, "indicator_cylinder"
// {t0, x0, tau, rho}, "gaussian_bump" {center, width}, "example21" {...}
ScalarField make_scalar_field(const std::string& name, const nlohmann::json& params, int d);

} // namespace sdelab
