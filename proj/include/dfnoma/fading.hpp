#pragma once

#include <cmath>
#include <stdexcept>

#include "rng.hpp"
#include "system.hpp"

namespace dfnoma {

/// Gamma(shape, scale) variate, Marsaglia-Tsang squeeze method. Shapes in
/// [0.5, 1) are boosted through Gamma(shape + 1) * U^(1/shape).
inline double gamma_sample(double shape, double scale, RngStream& rng) {
    if (!std::isfinite(shape) || shape < 0.5)
        throw std::domain_error("gamma_sample: shape must be >= 0.5");
    if (!std::isfinite(scale) || scale <= 0.0)
        throw std::domain_error("gamma_sample: scale must be positive");
    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::pow(rng.u01(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.u01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v * scale;
    }
}

/// Nakagami-m envelope: the squared gain is Gamma(m, omega/m), so E[gain^2] = omega.
inline double nakagami_gain(const FadingParam& fading, RngStream& rng) {
    return std::sqrt(gamma_sample(fading.m, fading.omega / fading.m, rng));
}

/// Unit-variance real Gaussian noise sample.
inline double awgn(RngStream& rng) { return rng.normal(); }

}  // namespace dfnoma
