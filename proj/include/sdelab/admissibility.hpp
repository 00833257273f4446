#pragma once

// Drift admissibility certification: the smallest constant H such that
//   ||h||^{q0}_{L_{p0,q0}(C_{tau,rho}(t,x))} <= H rho W(tau/rho^2)
// over a sampled family of cylinders.

#include <functional>
#include <string>
#include <vector>

#include "sdelab/fields.hpp"

namespace sdelab {

using Modulus = std::function<double(double)>; // W on [0,1], W(0)=0, W(1)=1

struct CylinderSamplePlan {
    double rho_min = 0.25;
    double rho_max = 1.0;
    int n_rho = 3;               // log-uniform in [rho_min, rho_max]
    std::vector<double> thetas = {0.125, 0.25, 0.5, 1.0}; // tau = theta rho^2
    std::vector<std::vector<double>> base_points;          // (t, x...) rows
    QuadratureRule rule{24, 18};

    std::vector<ParabolicCylinder> cylinders(int d) const;
    static CylinderSamplePlan default_plan(int d);
    CylinderSamplePlan scaled(double R) const; // maps cylinders by (R^2, R)
};

struct AdmissibilityReport {
    double Hbar_hat = 0.0;
    ParabolicCylinder worst_cylinder;
    int samples = 0;
    std::string W_id;
    bool diverged = false;      // running max failed to stabilize
    double refinement_delta = 0.0;
    std::vector<double> per_cylinder_ratio;
};

AdmissibilityReport certify_drift(const ScalarField& h, const Modulus& W,
                                  const MixedNormSpec& norm_spec,
                                  const CylinderSamplePlan& plan,
                                  const std::string& W_id = "custom");

// The two moduli exhibited in the source estimates.
Modulus modulus_power(double exponent); // W(theta) = theta^exponent

} // namespace sdelab
