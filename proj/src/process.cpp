#include "sdelab/process.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sdelab/io.hpp"

namespace sdelab {

void DiffusionSpec::validate(bool allow_degenerate) const {
    if (d < 2 || d > 3)
        throw std::invalid_argument("DiffusionSpec: d must be 2 or 3 at desk scale");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("DiffusionSpec: delta must lie in (0,1)");
    if (!(nu > 0.0)) throw std::invalid_argument("DiffusionSpec: nu must be positive");

    const double lo = std::sqrt(delta) * (1.0 - 1e-9);
    const double hi = (1.0 / std::sqrt(delta)) * (1.0 + 1e-9);
    double sig[9];
    double v[3];
    CounterRng dirs(0x5DE1ABu, 0);
    const double probe_t[] = {0.0, 0.37, 1.0};
    const double probe_c[] = {-0.71, 0.0, 0.53};
    for (double t : probe_t)
        for (double cx : probe_c) {
            double x[3] = {cx, -cx, 0.4 * cx};
            sigma(t, x, sig);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j)
                    if (std::abs(sig[i * d + j] - sig[j * d + i]) > 1e-9)
                        throw std::invalid_argument("DiffusionSpec: sigma not symmetric");
            bool zero = true;
            for (int i = 0; i < d * d; ++i)
                if (sig[i] != 0.0) zero = false;
            if (zero) {
                if (allow_degenerate) continue;
                throw std::invalid_argument("DiffusionSpec: degenerate sigma");
            }
            for (int probe = 0; probe < 16; ++probe) {
                dirs.normals(static_cast<std::uint64_t>(probe), d, v);
                double n2 = 0.0;
                for (int i = 0; i < d; ++i) n2 += v[i] * v[i];
                const double inv = 1.0 / std::sqrt(n2);
                double q = 0.0;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) q += v[i] * inv * sig[i * d + j] * v[j] * inv;
                if (q < lo || q > hi)
                    throw std::invalid_argument(
                        "DiffusionSpec: sigma spectrum outside [sqrt(delta), 1/sqrt(delta)]");
            }
        }
}

DiffusionSpec brownian_spec(int d) {
    DiffusionSpec spec;
    spec.d = d;
    spec.sigma = make_sigma_field("identity", {}, d);
    spec.drift = make_drift_field("zero", {}, d);
    spec.delta = 0.5;
    spec.nu = 1e6;
    return spec;
}

DiffusionSpec make_spec(int d, const MatrixField& sigma, const VectorField& b, double delta,
                        double nu) {
    DiffusionSpec spec;
    spec.d = d;
    spec.sigma = sigma;
    spec.drift = b;
    spec.delta = delta;
    spec.nu = nu;
    return spec;
}

PathSample simulate_path(const DiffusionSpec& spec, double t0, const std::vector<double>& x0,
                         double h, double horizon, std::uint64_t base_seed,
                         std::uint64_t stream_id) {
    if (static_cast<int>(x0.size()) != spec.d)
        throw std::invalid_argument("simulate_path: start dimension mismatch");
    const std::uint64_t K = static_cast<std::uint64_t>(std::llround(horizon / h));
    if (std::abs(K * h - horizon) > 1e-9 * std::max(1.0, horizon))
        throw std::invalid_argument("simulate_path: horizon must be an integer multiple of h");
    PathSample path;
    path.t0 = t0;
    path.x0 = x0;
    path.step = h;
    path.d = spec.d;
    path.rng_stream_id = stream_id;
    path.states.reserve((K + 1) * spec.d);
    step_path(spec, t0, x0.data(), h, K, base_seed, stream_id,
              [&](std::uint64_t, double, const double* x) {
                  path.states.insert(path.states.end(), x, x + spec.d);
                  return true;
              });
    return path;
}

namespace {

ExitRecord make_exit(const PathSample& path, std::optional<std::uint64_t> k) {
    ExitRecord rec;
    if (!k) {
        rec.censored = true;
        rec.exit_time = static_cast<double>(path.n_steps()) * path.step;
        rec.exit_point.assign(path.state(path.n_steps()),
                              path.state(path.n_steps()) + path.d);
        return rec;
    }
    rec.exit_step = *k;
    rec.exit_time = static_cast<double>(*k) * path.step;
    rec.exit_point.assign(path.state(*k), path.state(*k) + path.d);
    return rec;
}

} // namespace

ExitRecord exit_time_cylinder(const PathSample& path, double R, double base_t,
                              const std::vector<double>& base_x) {
    const double R2 = R * R;
    auto outside = [&](std::uint64_t k) {
        const double t = path.time_at(k) - base_t;
        if (t < 0.0 || t >= R2) return true;
        double r2 = 0.0;
        const double* x = path.state(k);
        for (int i = 0; i < path.d; ++i) {
            const double dx = x[i] - base_x[i];
            r2 += dx * dx;
        }
        return r2 >= R2;
    };
    if (outside(0))
        throw std::invalid_argument("exit_time_cylinder: path must start inside the cylinder");
    for (std::uint64_t k = 1; k <= path.n_steps(); ++k)
        if (outside(k)) return make_exit(path, k);
    return make_exit(path, std::nullopt);
}

ExitRecord exit_time_ball(const PathSample& path, double R,
                          const std::vector<double>& center) {
    const double R2 = R * R;
    auto outside = [&](std::uint64_t k) {
        double r2 = 0.0;
        const double* x = path.state(k);
        for (int i = 0; i < path.d; ++i) {
            const double dx = x[i] - center[i];
            r2 += dx * dx;
        }
        return r2 >= R2;
    };
    if (outside(0))
        throw std::invalid_argument("exit_time_ball: path must start inside the ball");
    for (std::uint64_t k = 1; k <= path.n_steps(); ++k)
        if (outside(k)) return make_exit(path, k);
    return make_exit(path, std::nullopt);
}

ExitRecord hitting_time(const PathSample& path,
                        const std::function<bool(double, const double*)>& in_region) {
    for (std::uint64_t k = 0; k <= path.n_steps(); ++k)
        if (in_region(path.time_at(k), path.state(k))) return make_exit(path, k);
    return make_exit(path, std::nullopt);
}

PathSample PathBatch::materialize(std::size_t i) const {
    if (i >= n_paths) throw std::out_of_range("PathBatch: path index out of range");
    return simulate_path(spec, t0, x0, h, horizon, base_seed,
                         static_cast<std::uint64_t>(i));
}

PathBatch run_batch(const DiffusionSpec& spec, std::size_t n_paths, double t0,
                    const std::vector<double>& x0, double h, double horizon,
                    std::uint64_t base_seed) {
    if (n_paths < 1) throw std::invalid_argument("run_batch: need n_paths >= 1");
    if (static_cast<int>(x0.size()) != spec.d)
        throw std::invalid_argument("run_batch: start dimension mismatch");
    PathBatch batch;
    batch.spec = spec;
    batch.t0 = t0;
    batch.x0 = x0;
    batch.h = h;
    batch.horizon = horizon;
    batch.n_paths = n_paths;
    batch.base_seed = base_seed;
    const double work = static_cast<double>(n_paths) * (horizon / h);
    if (work > 4e10)
        throw std::runtime_error("run_batch: capacity exceeded (n_paths * steps too large)");
    return batch;
}

namespace {

// Early-stopping exit kernel shared by the batch drivers.
ExitRecord stream_exit(const PathBatch& batch, std::size_t i,
                       const std::function<bool(double, const double*)>& outside) {
    ExitRecord rec;
    rec.censored = true;
    const int d = batch.spec.d;
    std::uint64_t last_k = 0;
    batch.replay(i, [&](std::uint64_t k, double t, const double* x) {
        last_k = k;
        if (k > 0 && outside(t, x)) {
            rec.censored = false;
            rec.exit_step = k;
            rec.exit_time = static_cast<double>(k) * batch.h;
            rec.exit_point.assign(x, x + d);
            return false;
        }
        if (k == 0 && outside(t, x))
            throw std::invalid_argument("batch exits: start point lies outside the region");
        return true;
    });
    if (rec.censored) {
        rec.exit_time = static_cast<double>(last_k) * batch.h;
    }
    return rec;
}

} // namespace

std::vector<ExitRecord> batch_cylinder_exits(const PathBatch& batch, double R) {
    const double R2 = R * R;
    const double base_t = batch.t0;
    const std::vector<double> base_x = batch.x0;
    const int d = batch.spec.d;
    std::vector<ExitRecord> out(batch.n_paths);
    batch.for_each_path([&](std::size_t i) {
        out[i] = stream_exit(batch, i, [&](double t, const double* x) {
            const double dt = t - base_t;
            if (dt < 0.0 || dt >= R2) return true;
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double dx = x[a] - base_x[a];
                r2 += dx * dx;
            }
            return r2 >= R2;
        });
    });
    return out;
}

std::vector<ExitRecord> batch_ball_exits(const PathBatch& batch, double R,
                                         const std::vector<double>& center) {
    const double R2 = R * R;
    const int d = batch.spec.d;
    std::vector<ExitRecord> out(batch.n_paths);
    batch.for_each_path([&](std::size_t i) {
        out[i] = stream_exit(batch, i, [&](double, const double* x) {
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double dx = x[a] - center[a];
                r2 += dx * dx;
            }
            return r2 >= R2;
        });
    });
    return out;
}

MeanSE mean_se(const std::vector<double>& values) {
    MeanSE out;
    out.n = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        const double dv = v - out.mean;
        ss += dv * dv;
    }
    if (values.size() > 1)
        out.se = std::sqrt(ss / (static_cast<double>(values.size()) - 1.0) /
                           static_cast<double>(values.size()));
    return out;
}

MeanSE terminal_statistic(const PathBatch& batch,
                          const std::function<double(const double*)>& phi) {
    std::vector<double> vals(batch.n_paths, 0.0);
    const std::uint64_t K = batch.steps();
    batch.for_each_path([&](std::size_t i) {
        batch.replay(i, [&](std::uint64_t k, double, const double* x) {
            if (k == K) vals[i] = phi(x);
            return true;
        });
    });
    return mean_se(vals);
}

void write_exit_summary_csv(const std::string& path, const std::vector<ExitRecord>& exits,
                            const PathBatch& batch) {
    CsvWriter csv(path);
    std::vector<std::string> header = {"path_id", "exit_time"};
    for (int i = 0; i < batch.spec.d; ++i) header.push_back("exit_x" + std::to_string(i));
    header.push_back("censored");
    header.push_back("seed");
    header.push_back("h");
    header.push_back("n_paths");
    csv.header(header);
    for (std::size_t i = 0; i < exits.size(); ++i) {
        csv.field(static_cast<long long>(i));
        csv.field(exits[i].exit_time);
        for (int a = 0; a < batch.spec.d; ++a) csv.field(exits[i].exit_point[a]);
        csv.field(static_cast<long long>(exits[i].censored ? 1 : 0));
        csv.field(static_cast<long long>(batch.base_seed));
        csv.field(batch.h);
        csv.field(static_cast<long long>(batch.n_paths));
        csv.end_row();
    }
}

void dump_paths_binary(const std::string& path, const PathBatch& batch,
                       std::size_t max_paths) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_paths_binary: cannot open " + path);
    const std::uint64_t n = std::min<std::size_t>(batch.n_paths, max_paths);
    const std::uint64_t K = batch.steps();
    const std::uint32_t d = static_cast<std::uint32_t>(batch.spec.d);
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        const PathSample p = batch.materialize(i);
        const std::uint64_t sid = p.rng_stream_id;
        out.write(reinterpret_cast<const char*>(&sid), sizeof(sid));
        out.write(reinterpret_cast<const char*>(&p.step), sizeof(p.step));
        out.write(reinterpret_cast<const char*>(&K), sizeof(K));
        out.write(reinterpret_cast<const char*>(&d), sizeof(d));
        out.write(reinterpret_cast<const char*>(p.states.data()),
                  static_cast<std::streamsize>(p.states.size() * sizeof(double)));
    }
}

std::vector<PathSample> load_paths_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_paths_binary: cannot open " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    std::vector<PathSample> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        PathSample p;
        std::uint64_t sid = 0, K = 0;
        std::uint32_t d = 0;
        in.read(reinterpret_cast<char*>(&sid), sizeof(sid));
        in.read(reinterpret_cast<char*>(&p.step), sizeof(p.step));
        in.read(reinterpret_cast<char*>(&K), sizeof(K));
        in.read(reinterpret_cast<char*>(&d), sizeof(d));
        if (!in) throw std::runtime_error("load_paths_binary: truncated file");
        p.rng_stream_id = sid;
        p.d = static_cast<int>(d);
        p.states.resize((K + 1) * d);
        in.read(reinterpret_cast<char*>(p.states.data()),
                static_cast<std::streamsize>(p.states.size() * sizeof(double)));
        p.x0.assign(p.states.begin(), p.states.begin() + d);
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace sdelab
