#include "sdelab/admissibility.hpp"

#include <cmath>

#include "sdelab/parallel.hpp"

namespace sdelab {

std::vector<ParabolicCylinder> CylinderSamplePlan::cylinders(int d) const {
    if (!(rho_min > 0.0) || !(rho_max >= rho_min) || n_rho < 1)
        throw std::invalid_argument("CylinderSamplePlan: bad rho range");
    std::vector<double> rhos;
    if (n_rho == 1) {
        rhos.push_back(rho_max);
    } else {
        const double lmin = std::log(rho_min), lmax = std::log(rho_max);
        for (int i = 0; i < n_rho; ++i)
            rhos.push_back(std::exp(lmin + (lmax - lmin) * i / (n_rho - 1)));
    }
    std::vector<std::vector<double>> bases = base_points;
    if (bases.empty()) bases.push_back(std::vector<double>(1 + d, 0.0));

    std::vector<ParabolicCylinder> out;
    for (const auto& base : bases) {
        if (static_cast<int>(base.size()) != 1 + d)
            throw std::invalid_argument("CylinderSamplePlan: base point dimension mismatch");
        std::vector<double> x0(base.begin() + 1, base.end());
        for (double rho : rhos)
            for (double theta : thetas) {
                if (!(theta > 0.0 && theta <= 1.0))
                    throw std::invalid_argument(
                        "CylinderSamplePlan: theta must lie in (0, 1]");
                out.emplace_back(base[0], x0, theta * rho * rho, rho);
            }
    }
    return out;
}

CylinderSamplePlan CylinderSamplePlan::default_plan(int d) {
    CylinderSamplePlan plan;
    // lattice of base points around the origin, covering shifted cylinders
    for (double t : {0.0, 0.5}) {
        plan.base_points.push_back(std::vector<double>(1 + d, 0.0));
        plan.base_points.back()[0] = t;
        for (int axis = 0; axis < d; ++axis)
            for (double off : {-0.5, 0.5}) {
                std::vector<double> p(1 + d, 0.0);
                p[0] = t;
                p[1 + axis] = off;
                plan.base_points.push_back(p);
            }
    }
    return plan;
}

CylinderSamplePlan CylinderSamplePlan::scaled(double R) const {
    CylinderSamplePlan plan = *this;
    plan.rho_min *= R;
    plan.rho_max *= R;
    for (auto& base : plan.base_points) {
        base[0] *= R * R;
        for (std::size_t i = 1; i < base.size(); ++i) base[i] *= R;
    }
    return plan;
}

Modulus modulus_power(double exponent) {
    return [exponent](double theta) { return std::pow(theta, exponent); };
}

AdmissibilityReport certify_drift(const ScalarField& h, const Modulus& W,
                                  const MixedNormSpec& norm_spec,
                                  const CylinderSamplePlan& plan,
                                  const std::string& W_id) {
    if (std::abs(W(0.0)) > 1e-9 || std::abs(W(1.0) - 1.0) > 1e-9)
        throw std::invalid_argument("certify_drift: modulus must satisfy W(0)=0, W(1)=1");
    if (std::isinf(norm_spec.q))
        throw std::invalid_argument("certify_drift: q0 must be finite");
    const int d = norm_spec.d;
    const auto cyls = plan.cylinders(d);

    auto ratios_at = [&](const QuadratureRule& rule) {
        std::vector<double> ratios(cyls.size(), 0.0);
        for_each_chunk(cyls.size(), kDefaultChunks, true, [&](const ChunkRange& r) {
            for (std::size_t i = r.begin; i < r.end; ++i) {
                const auto& c = cyls[i];
                const double* sx =
                    h.singular_x ? h.singular_x->data() : nullptr;
                const double nrm =
                    mixed_norm(h.eval, norm_spec, c, rule, h.singular_t, sx);
                const double theta = c.tau / (c.rho * c.rho);
                const double denom = c.rho * W(theta);
                ratios[i] = (denom > 0.0)
                                ? std::pow(nrm, norm_spec.q) / denom
                                : kInf;
            }
        });
        return ratios;
    };

    const auto coarse = ratios_at(plan.rule);
    const auto fine = ratios_at(plan.rule.refined(6));

    AdmissibilityReport rep;
    rep.samples = static_cast<int>(cyls.size());
    rep.W_id = W_id;
    rep.per_cylinder_ratio = fine;
    double max_coarse = 0.0, max_fine = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < cyls.size(); ++i) {
        max_coarse = std::max(max_coarse, coarse[i]);
        if (fine[i] > max_fine) {
            max_fine = fine[i];
            worst = i;
        }
    }
    rep.Hbar_hat = max_fine;
    rep.worst_cylinder = cyls[worst];
    rep.refinement_delta =
        (max_coarse > 0.0) ? std::abs(max_fine - max_coarse) / max_coarse : 0.0;
    rep.diverged = !std::isfinite(max_fine) || rep.refinement_delta > 0.10;
    return rep;
}

} // namespace sdelab
