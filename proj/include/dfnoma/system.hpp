#pragma once

#include <cmath>
#include <stdexcept>

namespace dfnoma {

inline constexpr const char* version = "0.1.0";

enum class User { near_user, far_user };

inline double db_to_linear(double db) {
    if (!std::isfinite(db)) throw std::domain_error("db_to_linear: argument must be finite");
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("linear_to_db: argument must be positive");
    return 10.0 * std::log10(x);
}

/// Superposition power allocation. The weak share goes to the user that must
/// cancel interference; the strong share to the user decoded directly.
struct PowerSplit {
    double weak;
    double strong;

    PowerSplit(double weak_share, double strong_share) : weak(weak_share), strong(strong_share) {
        if (!std::isfinite(weak) || !std::isfinite(strong) || weak <= 0.0 || !(weak < strong))
            throw std::domain_error("PowerSplit: shares must satisfy 0 < weak < strong");
        if (std::abs(weak + strong - 1.0) > 1e-12)
            throw std::domain_error("PowerSplit: shares must sum to 1");
    }

    static PowerSplit from_weak(double weak_share) {
        return PowerSplit(weak_share, 1.0 - weak_share);
    }
};

/// Nakagami-m fading descriptor: channel power gamma ~ Gamma(m, omega / m),
/// so E[gamma] = omega.
struct FadingParam {
    double m;
    double omega;

    FadingParam(double shape, double mean_power) : m(shape), omega(mean_power) {
        if (!std::isfinite(m) || m < 0.5)
            throw std::domain_error("FadingParam: shape must be >= 0.5");
        if (!std::isfinite(omega) || omega <= 0.0)
            throw std::domain_error("FadingParam: mean power must be positive");
    }
};

/// Two-hop topology: source -> relay (sr), relay -> near user (r1),
/// relay -> far user (r2). SNRs are linear transmit-power-to-noise ratios.
struct SystemConfig {
    PowerSplit source;
    PowerSplit relay;
    double rho_s;
    double rho_r;
    FadingParam sr;
    FadingParam r1;
    FadingParam r2;

    SystemConfig(PowerSplit source_split, PowerSplit relay_split, double rho_source,
                 double rho_relay, FadingParam fade_sr, FadingParam fade_r1, FadingParam fade_r2)
        : source(source_split),
          relay(relay_split),
          rho_s(rho_source),
          rho_r(rho_relay),
          sr(fade_sr),
          r1(fade_r1),
          r2(fade_r2) {
        if (!std::isfinite(rho_s) || rho_s <= 0.0 || !std::isfinite(rho_r) || rho_r <= 0.0)
            throw std::domain_error("SystemConfig: SNRs must be positive");
    }
};

}  // namespace dfnoma
