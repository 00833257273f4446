#include "sdelab/fields.hpp"

#include <cmath>

namespace sdelab {

namespace {

double radius(const double* x, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

void check_example21(int d, double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < d))
        throw std::invalid_argument("example21: need alpha in (0, d)");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("example21: need beta in (0, 1)");
    if (std::abs(alpha + 2.0 * beta - (d + 1.0)) > 1e-12)
        throw std::invalid_argument("example21: constraint alpha + 2 beta = d + 1 violated");
}

} // namespace

ScalarField example21_g(int d, double alpha, double beta) {
    check_example21(d, alpha, beta);
    ScalarField f;
    f.d = d;
    f.singular_t = 0.0;
    f.singular_x = std::vector<double>(d, 0.0);
    f.eval = [d, alpha, beta](double t, const double* x) {
        const double r = radius(x, d);
        if (t == 0.0 || r == 0.0) return kInf;
        return std::pow(std::abs(t), -beta) * std::pow(r, -alpha);
    };
    return f;
}

ScalarField example21_field(int d, double alpha, double beta) {
    ScalarField g = example21_g(d, alpha, beta);
    ScalarField h = g;
    h.drift_weight = true;
    const double inv = 1.0 / (d + 1.0);
    auto base = g.eval;
    h.eval = [base, inv](double t, const double* x) {
        const double v = base(t, x);
        return std::isfinite(v) ? std::pow(v, inv) : kInf;
    };
    return h;
}

ScalarField self_similar_rescale(const ScalarField& f, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("self_similar_rescale: R must be positive");
    if (f.d < 2 || f.d > 3)
        throw std::invalid_argument("self_similar_rescale: field dimension not set");
    ScalarField out = f;
    const double weight = f.drift_weight ? R : 1.0;
    const double R2 = R * R;
    const int d = f.d;
    auto base = f.eval;
    out.eval = [base, R, R2, weight, d](double t, const double* x) {
        double y[3] = {0.0, 0.0, 0.0};
        for (int i = 0; i < d; ++i) y[i] = x[i] * R;
        const double v = base(R2 * t, y);
        return std::isfinite(v) ? weight * v : v;
    };
    if (f.singular_t) out.singular_t = *f.singular_t / R2;
    if (f.singular_x) {
        auto sx = *f.singular_x;
        for (auto& v : sx) v /= R;
        out.singular_x = sx;
    }
    return out;
}

VectorField self_similar_rescale_drift(const VectorField& b, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("self_similar_rescale: R must be positive");
    VectorField out = b;
    if (b.is_zero) return out;
    const double R2 = R * R;
    auto base = b.eval;
    const int d = b.d;
    out.eval = [base, R, R2, d](double t, const double* x, double* v) {
        double y[3];
        for (int i = 0; i < d; ++i) y[i] = x[i] * R;
        base(R2 * t, y, v);
        for (int i = 0; i < d; ++i) v[i] *= R;
    };
    return out;
}

MatrixField make_sigma_field(const std::string& name, const nlohmann::json& params, int d) {
    MatrixField m;
    m.d = d;
    m.is_constant = true;
    m.constant.assign(static_cast<std::size_t>(d) * d, 0.0);
    if (name == "identity") {
        for (int i = 0; i < d; ++i) m.constant[i * d + i] = 1.0;
    } else if (name == "scaled_identity") {
        const double s = params.at("scale").get<double>();
        for (int i = 0; i < d; ++i) m.constant[i * d + i] = s;
    } else if (name == "diagonal") {
        const auto entries = params.at("entries").get<std::vector<double>>();
        if (static_cast<int>(entries.size()) != d)
            throw std::invalid_argument("sigma diagonal: entry count != d");
        for (int i = 0; i < d; ++i) m.constant[i * d + i] = entries[i];
    } else if (name == "zero") {
        // degenerate; allowed only for deterministic reference runs
    } else {
        throw std::invalid_argument("unknown sigma field: " + name);
    }
    return m;
}

VectorField make_drift_field(const std::string& name, const nlohmann::json& params, int d) {
    VectorField b;
    b.d = d;
    if (name == "zero" || name == "none") {
        b.is_zero = true;
        return b;
    }
    if (name == "constant") {
        auto c = params.at("components").get<std::vector<double>>();
        if (static_cast<int>(c.size()) != d)
            throw std::invalid_argument("drift constant: component count != d");
        b.eval = [c, d](double, const double*, double* out) {
            for (int i = 0; i < d; ++i) out[i] = c[i];
        };
        return b;
    }
    if (name == "radial") {
        const double speed = params.at("speed").get<double>();
        const double sign = params.value("direction", std::string("out")) == "out" ? 1.0 : -1.0;
        b.eval = [speed, sign, d](double, const double* x, double* out) {
            const double r = radius(x, d);
            if (r == 0.0) {
                for (int i = 0; i < d; ++i) out[i] = 0.0;
                return;
            }
            for (int i = 0; i < d; ++i) out[i] = sign * speed * x[i] / r;
        };
        return b;
    }
    if (name == "example21") {
        const double alpha = params.at("alpha").get<double>();
        const double beta = params.at("beta").get<double>();
        const double sign = params.value("direction", std::string("radial_in")) == "radial_out"
                                ? 1.0
                                : -1.0;
        ScalarField h = example21_field(d, alpha, beta);
        auto mag = h.eval;
        b.eval = [mag, sign, d](double t, const double* x, double* out) {
            const double r = radius(x, d);
            const double v = mag(t, x);
            // singular points carry zero drift; the truncation handles the
            // neighborhood
            if (r == 0.0 || !std::isfinite(v)) {
                for (int i = 0; i < d; ++i) out[i] = 0.0;
                return;
            }
            for (int i = 0; i < d; ++i) out[i] = sign * v * x[i] / r;
        };
        return b;
    }
    if (name == "example51") {
        const double alpha = params.at("alpha").get<double>();
        const double beta = params.at("beta").get<double>();
        const double amp = (1.0 - alpha) / (1.0 + beta);
        b.eval = [alpha, beta, amp, d](double t, const double* x, double* out) {
            const double r = radius(x, d);
            if (t == 0.0 || r == 0.0) {
                for (int i = 0; i < d; ++i) out[i] = 0.0;
                return;
            }
            const double st = (t > 0.0) ? 1.0 : -1.0;
            const double mag =
                -amp * std::pow(std::abs(t), -alpha) * std::pow(r, -beta) * st;
            for (int i = 0; i < d; ++i) out[i] = mag * x[i] / r;
        };
        return b;
    }
    throw std::invalid_argument("unknown drift field: " + name);
}

ScalarField make_scalar_field(const std::string& name, const nlohmann::json& params, int d) {
    ScalarField f;
    f.d = d;
    if (name == "one") {
        f.eval = [](double, const double*) { return 1.0; };
        return f;
    }
    if (name == "constant") {
        const double v = params.at("value").get<double>();
        f.eval = [v](double, const double*) { return v; };
        return f;
    }
    if (name == "indicator_cylinder") {
        const double t0 = params.value("t0", 0.0);
        const double tau = params.at("tau").get<double>();
        const double rho = params.at("rho").get<double>();
        std::vector<double> x0 = params.value("x0", std::vector<double>(d, 0.0));
        ParabolicCylinder cyl(t0, x0, tau, rho);
        f.eval = [cyl](double t, const double* x) { return cyl.contains(t, x) ? 1.0 : 0.0; };
        return f;
    }
    if (name == "gaussian_bump") {
        std::vector<double> c = params.value("center", std::vector<double>(d, 0.0));
        const double w = params.value("width", 0.5);
        f.eval = [c, w, d](double, const double* x) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) {
                const double dx = x[i] - c[i];
                s += dx * dx;
            }
            return std::exp(-s / (2.0 * w * w));
        };
        return f;
    }
    if (name == "example21") {
        return example21_field(d, params.at("alpha").get<double>(),
                               params.at("beta").get<double>());
    }
    throw std::invalid_argument("unknown scalar field: " + name);
}

} // namespace sdelab
