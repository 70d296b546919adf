#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dfnoma {

// Tolerances for the series evaluations below.
struct Accuracy {
    double abs_tol = 1e-12;
    std::uint32_t max_terms = 100000;
};

class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_func(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_func: argument must be finite");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

/// mu(z) = sqrt(z / (1 + z)), the SNR mapping used by the fading averages.
inline double mu(double z) {
    if (!std::isfinite(z) || z < 0.0) throw std::domain_error("mu: argument must be >= 0");
    return std::sqrt(z / (1.0 + z));
}

inline double ln_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("ln_gamma: argument must be positive");
    return std::lgamma(x);
}

namespace detail {

// 2F1(1, b; c; x) by direct summation; with a unit first parameter every term
// ratio collapses to (b+n)/(c+n) * x. Terminates early when b is a
// non-positive integer (the series is then a polynomial).
inline double hyp2f1_1bc(double b, double c, double x, const Accuracy& acc) {
    double term = 1.0;
    double sum = 1.0;
    for (std::uint32_t n = 0; n < acc.max_terms; ++n) {
        term *= (b + n) / (c + n) * x;
        sum += term;
        if (std::abs(term) <= acc.abs_tol * std::abs(sum)) return sum;
    }
    throw convergence_error("hyp2f1: series did not converge");
}

inline double hyp2f1_unit_direct(double m, double z, const Accuracy& acc) {
    return hyp2f1_1bc(m + 0.5, m + 1.0, z, acc);
}

// Connection formula in w = 1 - 1/z. For z in (0.6, 1) the transformed
// argument sits in (-2/3, 0), so the series converges geometrically where
// the direct one slows down.
inline double hyp2f1_unit_transformed(double m, double z, const Accuracy& acc) {
    const double w = 1.0 - 1.0 / z;
    const double tail = -(2.0 * m / z) * hyp2f1_1bc(1.0 - m, 1.5, w, acc);
    const double head = std::sqrt(std::numbers::pi) *
                        std::exp(ln_gamma(m + 1.0) - ln_gamma(m + 0.5)) /
                        (std::sqrt(1.0 - z) * std::pow(z, m));
    return head + tail;
}

}  // namespace detail

/// 2F1(1, m + 1/2; m + 1; z) for m >= 0.5 and 0 <= z < 1. The switch point
/// keeps the worse of the two series ratios at 2/3.
inline double hyp2f1_unit(double m, double z, const Accuracy& acc = {}) {
    if (!std::isfinite(m) || m < 0.5) throw std::domain_error("hyp2f1_unit: m must be >= 0.5");
    if (!(z >= 0.0) || !(z < 1.0)) throw std::domain_error("hyp2f1_unit: z must be in [0, 1)");
    return z <= 0.6 ? detail::hyp2f1_unit_direct(m, z, acc)
                    : detail::hyp2f1_unit_transformed(m, z, acc);
}

}  // namespace dfnoma
