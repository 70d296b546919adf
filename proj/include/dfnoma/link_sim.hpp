#pragma once

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fading.hpp"
#include "rng.hpp"
#include "system.hpp"

namespace dfnoma {

struct SimResult {
    std::uint64_t trials = 0;
    std::uint64_t errors_sr_far = 0;
    std::uint64_t errors_sr_near = 0;
    std::uint64_t errors_rd_far = 0;
    std::uint64_t errors_rd_near = 0;
    std::uint64_t errors_e2e_far = 0;
    std::uint64_t errors_e2e_near = 0;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 0;

    double ber_sr_far() const { return rate(errors_sr_far); }
    double ber_sr_near() const { return rate(errors_sr_near); }
    double ber_rd_far() const { return rate(errors_rd_far); }
    double ber_rd_near() const { return rate(errors_rd_near); }
    double ber_e2e_far() const { return rate(errors_e2e_far); }
    double ber_e2e_near() const { return rate(errors_e2e_near); }

    /// Binomial standard error sqrt(p_hat (1 - p_hat) / n) of an error rate.
    double stderr_of(std::uint64_t errors) const {
        const double p = rate(errors);
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
    double stderr_e2e_far() const { return stderr_of(errors_e2e_far); }
    double stderr_e2e_near() const { return stderr_of(errors_e2e_near); }

    bool operator==(const SimResult&) const = default;

private:
    double rate(std::uint64_t errors) const {
        return static_cast<double>(errors) / static_cast<double>(trials);
    }
};

struct SimOptions {
    std::uint64_t chunk_size = 65536;
    unsigned workers = 0;  // 0: hardware concurrency
};

namespace detail {

// One chunk of the two-hop chain. Per trial the stream is consumed in a fixed
// order: source bits, S->R gain, relay noise, R->D1 gain, R->D2 gain, D2
// noise, D1 noise; this order is part of the reproducibility contract.
inline void run_chunk(const SystemConfig& cfg, std::uint64_t n, RngStream& rng, SimResult& out) {
    const double as_weak = std::sqrt(cfg.rho_s * cfg.source.weak);
    const double as_strong = std::sqrt(cfg.rho_s * cfg.source.strong);
    const double ar_weak = std::sqrt(cfg.rho_r * cfg.relay.weak);
    const double ar_strong = std::sqrt(cfg.rho_r * cfg.relay.strong);
    const double sigma = std::sqrt(0.5);  // real-baseband noise, N0 = 1

    for (std::uint64_t t = 0; t < n; ++t) {
        const std::uint32_t bits = rng.next_u32();
        const double x_near = (bits & 1u) ? -1.0 : 1.0;
        const double x_far = (bits & 2u) ? -1.0 : 1.0;

        const double g_sr = nakagami_gain(cfg.sr, rng);
        const double y_r = (as_weak * x_near + as_strong * x_far) * g_sr + sigma * awgn(rng);
        const double r_far = y_r >= 0.0 ? 1.0 : -1.0;
        const double r_near = (y_r - as_strong * g_sr * r_far) >= 0.0 ? 1.0 : -1.0;
        out.errors_sr_far += r_far != x_far;
        out.errors_sr_near += r_near != x_near;

        const double s_relay = ar_weak * r_near + ar_strong * r_far;
        const double g_r1 = nakagami_gain(cfg.r1, rng);
        const double g_r2 = nakagami_gain(cfg.r2, rng);

        const double y_2 = s_relay * g_r2 + sigma * awgn(rng);
        const double d2_far = y_2 >= 0.0 ? 1.0 : -1.0;

        const double y_1 = s_relay * g_r1 + sigma * awgn(rng);
        const double d1_far = y_1 >= 0.0 ? 1.0 : -1.0;
        const double d1_near = (y_1 - ar_strong * g_r1 * d1_far) >= 0.0 ? 1.0 : -1.0;

        out.errors_rd_far += d2_far != r_far;
        out.errors_rd_near += d1_near != r_near;
        out.errors_e2e_far += d2_far != x_far;
        out.errors_e2e_near += d1_near != x_near;
    }
    out.trials += n;
}

// Stream base for one operating point. Mixing the SNR bit patterns into the
// stream id keeps sweep points decorrelated while leaving the result a pure
// function of (config, trials, seed, chunk layout).
inline std::uint64_t stream_base(const SystemConfig& cfg) {
    return mix64(std::bit_cast<std::uint64_t>(cfg.rho_s) ^
                 mix64(std::bit_cast<std::uint64_t>(cfg.rho_r)));
}

}  // namespace detail

/// Monte Carlo run of the full chain. Chunks map to fixed Philox streams, so
/// the result is bit-identical for any worker count.
inline SimResult simulate(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                          const SimOptions& opt = {}) {
    if (trials == 0) throw std::domain_error("simulate: trials must be positive");
    if (opt.chunk_size == 0) throw std::domain_error("simulate: chunk_size must be positive");
    const std::uint64_t nchunks = (trials + opt.chunk_size - 1) / opt.chunk_size;
    const std::uint64_t base = detail::stream_base(cfg);

    unsigned workers = opt.workers ? opt.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > nchunks) workers = static_cast<unsigned>(nchunks);

    std::vector<SimResult> parts(nchunks);
    std::atomic<std::uint64_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const std::uint64_t i = cursor.fetch_add(1);
            if (i >= nchunks) return;
            const std::uint64_t lo = i * opt.chunk_size;
            const std::uint64_t n = std::min(opt.chunk_size, trials - lo);
            RngStream rng(seed, base + i);
            detail::run_chunk(cfg, n, rng, parts[i]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SimResult total;
    total.trials = trials;
    total.seed = seed;
    total.chunk_size = opt.chunk_size;
    for (const SimResult& p : parts) {
        total.errors_sr_far += p.errors_sr_far;
        total.errors_sr_near += p.errors_sr_near;
        total.errors_rd_far += p.errors_rd_far;
        total.errors_rd_near += p.errors_rd_near;
        total.errors_e2e_far += p.errors_e2e_far;
        total.errors_e2e_near += p.errors_e2e_near;
    }
    return total;
}

struct BerPoint {
    double rho_db;
    SimResult sim;
    bool operator==(const BerPoint&) const = default;
};

struct BerCurve {
    std::vector<BerPoint> points;
};

/// Sweep of simulate() with rho_s = rho_r swept along the grid. Each point is
/// keyed by its own SNR, so permuting the grid permutes the points unchanged.
inline BerCurve simulate_curve(const SystemConfig& cfg, const std::vector<double>& rho_db_grid,
                               std::uint64_t trials, std::uint64_t seed,
                               const SimOptions& opt = {}) {
    if (rho_db_grid.empty()) throw std::domain_error("simulate_curve: grid must be nonempty");
    BerCurve curve;
    curve.points.reserve(rho_db_grid.size());
    for (double db : rho_db_grid) {
        SystemConfig point = cfg;
        point.rho_s = point.rho_r = db_to_linear(db);
        curve.points.push_back({db, simulate(point, trials, seed, opt)});
    }
    return curve;
}

}  // namespace dfnoma
