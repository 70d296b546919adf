#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "specfun.hpp"
#include "system.hpp"

namespace dfnoma {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_panels = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimate, sum of per-panel |G15 - G7|
    int panels = 0;
};

namespace detail {

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n starting
// from the Chebyshev approximation, weights 2 / ((1 - x^2) P_n'(x)^2).
template <int N>
struct GaussRule {
    std::array<double, N> x{};
    std::array<double, N> w{};

    GaussRule() {
        for (int i = 1; i <= (N + 1) / 2; ++i) {
            double z = std::cos(std::numbers::pi * (i - 0.25) / (N + 0.5));
            double pn = 0.0;
            double dpn = 0.0;
            for (int it = 0; it < 64; ++it) {
                double p1 = 1.0;
                double p2 = 0.0;
                for (int j = 1; j <= N; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
                }
                pn = p1;
                dpn = N * (z * p1 - p2) / (z * z - 1.0);
                const double dz = pn / dpn;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i - 1] = -z;
            x[N - i] = z;
            w[i - 1] = w[N - i] = 2.0 / ((1.0 - z * z) * dpn * dpn);
        }
    }
};

inline const GaussRule<7>& gauss7() {
    static const GaussRule<7> rule;
    return rule;
}

inline const GaussRule<15>& gauss15() {
    static const GaussRule<15> rule;
    return rule;
}

// Embedded low/high pair on one panel; the rule difference is the error
// estimate, the high-order value is kept.
template <class F>
std::pair<double, double> gauss_pair(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double lo = 0.0;
    double hi = 0.0;
    const auto& g7 = gauss7();
    const auto& g15 = gauss15();
    for (int i = 0; i < 7; ++i) lo += g7.w[i] * f(c + h * g7.x[i]);
    for (int i = 0; i < 15; ++i) hi += g15.w[i] * f(c + h * g15.x[i]);
    lo *= h;
    hi *= h;
    return {hi, std::abs(hi - lo)};
}

// Worst-panel-first bisection until the summed error estimate meets the
// tolerance target. The initial panels follow the given breakpoints; callers
// seed a geometric ladder toward any endpoint where the integrand may spike
// at a scale the top-level nodes would miss.
template <class F>
QuadratureResult adapt(const F& f, const std::vector<double>& breaks, double abs_tol,
                       double rel_tol, int max_panels) {
    struct Panel {
        double a, b, value, error;
    };
    auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
    auto make = [&f](double lo, double hi) {
        const auto [v, e] = gauss_pair(f, lo, hi);
        return Panel{lo, hi, v, e};
    };

    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const Panel p = make(breaks[i], breaks[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
        ++panels;
    }
    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (panels >= max_panels)
            throw convergence_error("avg_by_quadrature: refinement budget exhausted");
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = make(worst.a, mid);
        const Panel right = make(mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    return {value, error, panels};
}

// Breakpoints 0, hi * 2^-levels, ..., hi / 2, hi.
inline std::vector<double> geometric_breaks(double hi, int levels) {
    std::vector<double> breaks{0.0};
    for (int k = levels; k >= 0; --k) breaks.push_back(hi * std::ldexp(1.0, -k));
    return breaks;
}

}  // namespace detail

/// Reference average BEP by direct numerical integration of
/// cond_bep(wqs, rho, g) against the Gamma(m, omega/m) density. Shares only
/// the conditional BEP with the closed forms; the averaging route is disjoint.
///
/// The infinite range is mapped through g = g0 + omega * t / (1 - t). For
/// m < 1 the density's g^(m-1) endpoint singularity on (0, omega/1000] is
/// first removed exactly by substituting g = u^(1/m).
inline QuadratureResult avg_by_quadrature_est(const WeightedQSum& wqs, double rho,
                                              const FadingParam& fading,
                                              const QuadratureSpec& spec = {}) {
    if (!std::isfinite(rho) || rho <= 0.0)
        throw std::domain_error("avg_by_quadrature: rho must be positive");
    const double m = fading.m;
    const double omega = fading.omega;
    const double scale = omega / m;
    const double log_norm = -ln_gamma(m) - m * std::log(scale);

    QuadratureResult total;
    double g_lo = 0.0;
    const bool split_origin = m < 1.0;
    const double tol_share = split_origin ? 0.5 : 1.0;

    if (split_origin) {
        g_lo = omega / 1000.0;
        // g = u^(1/m) turns g^(m-1) dg into du / m
        auto head = [&](double u) {
            const double g = std::pow(u, 1.0 / m);
            return cond_bep(wqs, rho, g) * std::exp(log_norm - g / scale) / m;
        };
        const QuadratureResult r =
            detail::adapt(head, detail::geometric_breaks(std::pow(g_lo, m), 40),
                          tol_share * spec.abs_tol, tol_share * spec.rel_tol, spec.max_panels);
        total.value += r.value;
        total.error += r.error;
        total.panels += r.panels;
    }

    auto tail = [&](double t) {
        const double stretch = omega / (1.0 - t);
        const double g = g_lo + stretch * t;
        const double jacobian = stretch / (1.0 - t);
        const double shape_term = m == 1.0 ? 0.0 : (m - 1.0) * std::log(g);
        const double pdf = std::exp(log_norm + shape_term - g / scale);
        return cond_bep(wqs, rho, g) * pdf * jacobian;
    };
    const QuadratureResult r =
        detail::adapt(tail, detail::geometric_breaks(1.0, 40), tol_share * spec.abs_tol,
                      tol_share * spec.rel_tol, spec.max_panels);
    total.value += r.value;
    total.error += r.error;
    total.panels += r.panels;
    return total;
}

inline double avg_by_quadrature(const WeightedQSum& wqs, double rho, const FadingParam& fading,
                                const QuadratureSpec& spec = {}) {
    return avg_by_quadrature_est(wqs, rho, fading, spec).value;
}

}  // namespace dfnoma
