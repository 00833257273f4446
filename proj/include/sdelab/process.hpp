#pragma once

// Truncated-drift Euler scheme with counter-based noise.  Every path is a
// pure function of (spec, start, h, stream id), so batches are bit-identical
// across thread counts; the serial and OpenMP drivers share this kernel.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdelab/fields.hpp"
#include "sdelab/parallel.hpp"
#include "sdelab/rng.hpp"

namespace sdelab {

struct DiffusionSpec {
    int d = 2;
    MatrixField sigma;
    VectorField drift;
    double delta = 0.5; // ellipticity constant in (0,1)
    double nu = 1e6;    // drift truncation level, |b_nu| < nu

    // Spot-checks sigma on sample points: symmetry and Rayleigh quotients
    // within [sqrt(delta), 1/sqrt(delta)] (so a = sigma^2/2 lies in the
    // delta/2-ellipticity class).  Degenerate sigma ("zero") passes only
    // with allow_degenerate.
    void validate(bool allow_degenerate = false) const;
};

// Convenience constructors for the common specs.
DiffusionSpec brownian_spec(int d);                       // sigma = I, b = 0
DiffusionSpec make_spec(int d, const MatrixField& sigma, const VectorField& b,
                        double delta, double nu);

struct ExitRecord {
    std::optional<std::uint64_t> exit_step;
    double exit_time = 0.0;          // elapsed time from path start
    std::vector<double> exit_point;
    bool censored = false;
};

struct PathSample {
    double t0 = 0.0;
    std::vector<double> x0;
    double step = 0.0;
    int d = 0;
    std::uint64_t rng_stream_id = 0;
    std::vector<double> states; // (K+1) x d, states[0] = x0

    std::uint64_t n_steps() const {
        return states.size() / static_cast<std::size_t>(d) - 1;
    }
    const double* state(std::uint64_t k) const { return states.data() + k * d; }
    double time_at(std::uint64_t k) const { return t0 + static_cast<double>(k) * step; }
};

namespace detail {

inline void truncated_drift(const DiffusionSpec& spec, double t, const double* x,
                            double* out) {
    spec.drift(t, x, out);
    double n2 = 0.0;
    for (int i = 0; i < spec.d; ++i) n2 += out[i] * out[i];
    if (!(n2 < spec.nu * spec.nu)) {
        for (int i = 0; i < spec.d; ++i) out[i] = 0.0;
    }
}

} // namespace detail

// Visits states x_0 .. x_K at times t0 + k h; the visitor is called with
// (k, t, x) and may return false to stop.  max_steps = K.
template <class Visitor>
void step_path(const DiffusionSpec& spec, double t0, const double* x0, double h,
               std::uint64_t max_steps, std::uint64_t base_seed, std::uint64_t stream_id,
               Visitor&& visit) {
    const int d = spec.d;
    if (d < 1 || d > 3) throw std::invalid_argument("step_path: d must be in {1,2,3}");
    if (!(h > 0.0)) throw std::invalid_argument("step_path: step must be positive");
    CounterRng rng(base_seed, stream_id);
    const double sqrt_h = std::sqrt(h);

    double x[3] = {0, 0, 0};
    for (int i = 0; i < d; ++i) x[i] = x0[i];

    double sig_const[9];
    const bool const_sigma = spec.sigma.is_constant;
    if (const_sigma)
        std::copy(spec.sigma.constant.begin(), spec.sigma.constant.end(), sig_const);

    double sig[9];
    double b[3];
    double z[4];
    for (std::uint64_t k = 0; k < max_steps; ++k) {
        const double t = t0 + static_cast<double>(k) * h;
        if (!visit(k, t, static_cast<const double*>(x))) return;

        rng.normals(k, d, z);
        const double* s = const_sigma ? sig_const : sig;
        if (!const_sigma) spec.sigma(t, x, sig);

        double dx[3] = {0, 0, 0};
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j) acc += s[i * d + j] * z[j];
            dx[i] = acc * sqrt_h;
        }
        if (!spec.drift.is_zero) {
            detail::truncated_drift(spec, t, x, b);
            for (int i = 0; i < d; ++i) dx[i] += b[i] * h;
        }
        for (int i = 0; i < d; ++i) {
            x[i] += dx[i];
            if (!std::isfinite(x[i]))
                throw std::runtime_error("step_path: non-finite state (stream " +
                                         std::to_string(stream_id) + ", step " +
                                         std::to_string(k) + ")");
        }
    }
    visit(max_steps, t0 + static_cast<double>(max_steps) * h, static_cast<const double*>(x));
}

PathSample simulate_path(const DiffusionSpec& spec, double t0, const std::vector<double>& x0,
                         double h, double horizon, std::uint64_t base_seed,
                         std::uint64_t stream_id);

// First k with (t0 + k h - base_t, x_k - base_x) outside [0, R^2) x B_R.
ExitRecord exit_time_cylinder(const PathSample& path, double R, double base_t,
                              const std::vector<double>& base_x);
// First k with x_k outside B_R(center); censoring possible.
ExitRecord exit_time_ball(const PathSample& path, double R, const std::vector<double>& center);
// First k with (t0 + k h, x_k) in the closed set described by the predicate.
ExitRecord hitting_time(const PathSample& path,
                        const std::function<bool(double, const double*)>& in_region);

// Lazy batch: path i regenerates deterministically from (base_seed, i).
struct PathBatch {
    DiffusionSpec spec;
    double t0 = 0.0;
    std::vector<double> x0;
    double h = 1e-3;
    double horizon = 1.0;
    std::size_t n_paths = 0;
    std::uint64_t base_seed = 0;
    std::size_t chunks = kDefaultChunks;
    bool parallel = true;

    std::uint64_t steps() const {
        return static_cast<std::uint64_t>(std::llround(horizon / h));
    }
    PathSample materialize(std::size_t i) const;

    template <class Visitor>
    void replay(std::size_t i, Visitor&& v) const {
        step_path(spec, t0, x0.data(), h, steps(), base_seed,
                  static_cast<std::uint64_t>(i), std::forward<Visitor>(v));
    }

    // Runs body(path_index) over all paths, chunk-parallel; the body must
    // write only to per-path slots to keep results order-free.
    template <class Body>
    void for_each_path(Body&& body) const {
        for_each_chunk(n_paths, chunks, parallel, [&](const ChunkRange& r) {
            for (std::size_t i = r.begin; i < r.end; ++i) body(i);
        });
    }
};

PathBatch run_batch(const DiffusionSpec& spec, std::size_t n_paths, double t0,
                    const std::vector<double>& x0, double h, double horizon,
                    std::uint64_t base_seed);

// Streaming exits (paths stop at exit; no materialization).
std::vector<ExitRecord> batch_cylinder_exits(const PathBatch& batch, double R);
std::vector<ExitRecord> batch_ball_exits(const PathBatch& batch, double R,
                                         const std::vector<double>& center);

// terminal-state functional, reduced in path-index order
struct MeanSE {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};
MeanSE mean_se(const std::vector<double>& values);
MeanSE terminal_statistic(const PathBatch& batch,
                          const std::function<double(const double*)>& phi);

// CSV rows (path id, exit_time, exit_point..., censored) and binary dump
// (stream id, h, K, coordinates).
void write_exit_summary_csv(const std::string& path, const std::vector<ExitRecord>& exits,
                            const PathBatch& batch);
void dump_paths_binary(const std::string& path, const PathBatch& batch,
                       std::size_t max_paths);
std::vector<PathSample> load_paths_binary(const std::string& path);

} // namespace sdelab
