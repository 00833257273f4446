#pragma once

// Monte Carlo estimators for the exit-time, tail, modulus, occupation,
// resolvent, and hitting-probability diagnostics, with scaling-law fits.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdelab/process.hpp"
#include "sdelab/stats.hpp"

namespace sdelab {

struct PerScaleEstimate {
    double scale = 0.0;
    double estimate = 0.0;
    double se = 0.0;
    std::size_t n = 0;
    std::size_t censored = 0;
};

struct ScalingFitReport {
    double exponent_hat = 0.0;
    double intercept = 0.0;
    double stderr_ = 0.0;
    std::vector<PerScaleEstimate> per_scale;
    // sandwich diagnostics: E tau_R <= R^2 (time face) and >= R^2 / N_hat
    double upper_ratio_max = 0.0; // max over R of E tau_R / R^2 (must be <= 1)
    double N_hat = 0.0;           // max over R of R^2 / E tau_R
    nlohmann::json to_json() const;
};

// E tau_R across radii with a log-log slope fit; horizon is R^2 per radius
// (the time face caps the exit).  Censored paths are excluded and counted.
ScalingFitReport exit_moment_scaling(const DiffusionSpec& spec,
                                     const std::vector<double>& radii, std::size_t n_paths,
                                     double h, std::uint64_t seed);

struct LaplaceExitReport {
    double R = 0.0;
    std::vector<double> lambdas;
    std::vector<double> estimate; // E exp(-lambda tau_R)
    std::vector<double> se;
    double asymptotic_slope = 0.0; // d log E / d sqrt(lambda) at the grid end
    nlohmann::json to_json() const;
};

LaplaceExitReport laplace_exit(const DiffusionSpec& spec, double R,
                               const std::vector<double>& lambda_grid, std::size_t n_paths,
                               double h, std::uint64_t seed);

struct TailBoundFit {
    double R = 0.0;
    std::vector<double> t_grid;
    std::vector<double> tail;          // empirical P(tau_R <= t)
    std::vector<double> tail_monotone; // after nonincreasing regression in R^2/t
    double c_hat = 0.0;                // slope of log P vs R^2/t is -c_hat
    double intercept = 0.0;
    double theta_hat = 0.0;            // 64 c = theta^2
    double fit_r_squared = 0.0;
    std::string status = "ok";         // "ok" | "inconclusive"
    nlohmann::json to_json() const;
};

TailBoundFit tail_bound_fit(const DiffusionSpec& spec, double R,
                            const std::vector<double>& t_grid, std::size_t n_paths, double h,
                            std::uint64_t seed);

struct ModulusMomentsReport {
    int order = 2;
    std::vector<double> interval_start;
    std::vector<double> interval_length;
    std::vector<double> ratio; // E sup |x_r - x_s|^n / |t-s|^{n/2}
    std::vector<double> se;
    double spread = 0.0;       // max ratio / min ratio
    nlohmann::json to_json() const;
};

ModulusMomentsReport modulus_moments(const DiffusionSpec& spec, int order,
                                     const std::vector<std::pair<double, double>>& intervals,
                                     std::size_t n_paths, double h, std::uint64_t seed);

// Weight Phi_lambda(t,x) = exp(-sqrt(lambda) (|x| + sqrt(t)) theta / 32).
double phi_weight(double lambda, double theta, double t, const double* x, int d);

struct FunctionalVsNormReport {
    double lhs = 0.0;       // pathwise functional estimate
    double lhs_se = 0.0;
    double rhs_norm = 0.0;  // weighted mixed norm
    double rate_factor = 0.0;
    double ratio = 0.0;     // lhs / (rate_factor * rhs_norm)
    double remainder = 0.0; // discount truncation bookkeeping
    nlohmann::json to_json() const;
};

struct AleksandrovParams {
    double lambda = 1.0;
    MixedNormSpec norm_spec{3.0, 3.0, 2};
    double d0 = 0.0;       // defaults to d (the conservative regime)
    double theta_hat = 1.0;
    double horizon = 8.0;
    SpaceTimeBox norm_box; // quadrature window for the weighted norm
    QuadratureRule rule{48, 0};
};

// lhs = E int_0^T e^{-lambda t} f(t, x_t) dt (trapezoid along paths);
// rhs = || Phi_lambda^{1-nu} f || with nu = 1 - d0/p - 1/q.
FunctionalVsNormReport aleksandrov_functional(const DiffusionSpec& spec, const ScalarField& f,
                                              const AleksandrovParams& params,
                                              std::size_t n_paths, double h,
                                              std::uint64_t seed);

struct ResolventReport {
    double lambda = 0.0;
    GridFunction values;     // R_lambda f on the start grid
    double norm_ratio = 0.0; // ||R_lambda f|| / ||f|| on the start grid
    double f_norm = 0.0;
    nlohmann::json summary_json() const;
};

// Per-start Monte Carlo of R_lambda f(t,x) = E_{t,x} int e^{-lambda s}
// f(t+s, x_s) ds, evaluated for several lambdas on shared paths.
std::vector<ResolventReport> resolvent_apply(const DiffusionSpec& spec, const ScalarField& f,
                                             const std::vector<double>& lambdas,
                                             const SpaceTimeBox& start_grid_box, int nt,
                                             int nx, std::size_t paths_per_start,
                                             double f_support_end, double h,
                                             const MixedNormSpec& norm_spec,
                                             std::uint64_t seed);

struct HittingProbabilityReport {
    double estimate = 0.0;
    double se = 0.0;
    double gamma_hat = 0.0; // |Gamma| / |C_R| by MC volume estimation
    std::string note;
    nlohmann::json to_json() const;
};

HittingProbabilityReport hitting_probability(
    const DiffusionSpec& spec, const std::function<bool(double, const double*)>& in_gamma,
    double R, const std::vector<double>& x_start, std::size_t n_paths, double h,
    std::uint64_t seed);

struct MomentPowerReport {
    int order = 1;
    double lhs = 0.0; // E [int_0^T f dt]^n
    double lhs_se = 0.0;
    double rhs_unit = 0.0; // n! T^{n chi} ||Phi_{1/T}^{(1-nu)/n} f||^n
    double N_hat = 0.0;    // smallest N with lhs <= N^n rhs_unit
    nlohmann::json to_json() const;
};

MomentPowerReport moment_power_bound(const DiffusionSpec& spec, const ScalarField& f, double T,
                                     int order, const AleksandrovParams& params,
                                     std::size_t n_paths, double h, std::uint64_t seed);

struct BoundedTimeReport {
    double R = 0.0;
    double lhs = 0.0; // E int_0^{tau_R} f dt
    double lhs_se = 0.0;
    double rhs_norm = 0.0;
    double rate_factor = 0.0; // R^{(2 d0 - d)/p}
    double ratio = 0.0;
    nlohmann::json to_json() const;
};

BoundedTimeReport bounded_time_functional(const DiffusionSpec& spec, const ScalarField& f,
                                          double R, const MixedNormSpec& norm_spec, double d0,
                                          std::size_t n_paths, double h, std::uint64_t seed,
                                          const QuadratureRule& rule = {48, 0});

} // namespace sdelab
