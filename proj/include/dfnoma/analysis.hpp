#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "specfun.hpp"
#include "system.hpp"

namespace dfnoma {

/// Conditional BEP shape: p(gamma) = sum_k weights[k] * Q(sqrt(2 * coeffs[k] * rho * gamma)).
/// Weights may be negative (they come from signed decision-region unions) but
/// must sum to 1 so that p(0) = 1/2.
struct WeightedQSum {
    std::vector<double> weights;
    std::vector<double> coeffs;

    WeightedQSum(std::vector<double> w, std::vector<double> c)
        : weights(std::move(w)), coeffs(std::move(c)) {
        if (weights.empty() || weights.size() != coeffs.size())
            throw std::domain_error("WeightedQSum: weights/coeffs must have equal nonzero length");
        double sum = 0.0;
        for (double wk : weights) {
            if (!std::isfinite(wk)) throw std::domain_error("WeightedQSum: non-finite weight");
            sum += wk;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::domain_error("WeightedQSum: weights must sum to 1");
        for (double ck : coeffs)
            if (!std::isfinite(ck) || ck < 0.0)
                throw std::domain_error("WeightedQSum: coeffs must be >= 0");
    }
};

/// Maximum-likelihood detection of the strong (far-user) symbol with the weak
/// symbol treated as interference: two Q terms from the shifted constellation.
inline WeightedQSum far_coeffs(const PowerSplit& split) {
    const double sw = std::sqrt(split.weak);
    const double ss = std::sqrt(split.strong);
    return WeightedQSum({0.5, 0.5}, {(ss - sw) * (ss - sw), (ss + sw) * (ss + sw)});
}

/// Weak-symbol detection after cancelling the detected strong symbol. The
/// signed five-term union accounts for cancellation errors.
inline WeightedQSum near_coeffs(const PowerSplit& split) {
    const double sw = std::sqrt(split.weak);
    const double ss = std::sqrt(split.strong);
    return WeightedQSum({-0.5, 0.5, 1.0, 0.5, -0.5},
                        {(ss + sw) * (ss + sw), (ss - sw) * (ss - sw), split.weak,
                         (2.0 * ss + sw) * (2.0 * ss + sw), (2.0 * ss - sw) * (2.0 * ss - sw)});
}

/// BEP conditioned on the instantaneous channel power gamma.
inline double cond_bep(const WeightedQSum& wqs, double rho, double gamma) {
    if (!std::isfinite(rho) || rho <= 0.0) throw std::domain_error("cond_bep: rho must be positive");
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw std::domain_error("cond_bep: gamma must be >= 0");
    double p = 0.0;
    for (std::size_t k = 0; k < wqs.weights.size(); ++k)
        p += wqs.weights[k] * q_func(std::sqrt(2.0 * wqs.coeffs[k] * rho * gamma));
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::logic_error("cond_bep: result is not a probability");
    return std::clamp(p, 0.0, 1.0);
}

enum class AvgBranch { automatic, binomial, hypergeometric };

namespace detail {

inline bool is_integer_shape(double m) { return m == std::floor(m); }

// E[Q(sqrt(2 A g / E[g]))] for g ~ Gamma(m, .) with integer m, via the
// central binomial sum. The ratio C(2l,l)/C(2l-2,l-1) = 2(2l-1)/l keeps the
// accumulation overflow-free.
inline double avg_term_binomial(double A, int m) {
    const double u = mu(A);
    const double q = 0.25 / (1.0 + A);  // (1 - mu^2)/4 without cancellation
    double term = 1.0;
    double sum = 1.0;
    for (int l = 1; l < m; ++l) {
        term *= 2.0 * (2.0 * l - 1.0) / l * q;
        sum += term;
    }
    return 0.5 * (1.0 - u * sum);
}

// General-m average. For A >= 1 the direct 2F1 series at z = 1/(1+A) is
// already geometric. For A < 1 the connection formula collapses to
//   1/2 - m * G(m+1/2)/(sqrt(pi) G(m+1)) * sqrt(A) (1+A)^(1/2-m) 2F1(1, 1-m; 3/2; -A)
// which is cancellation-free and exact in the A -> 0 limit.
inline double avg_term_hypergeometric(double A, double m, const Accuracy& acc) {
    if (A == 0.0) return 0.5;
    const double gratio = std::exp(ln_gamma(m + 0.5) - ln_gamma(m + 1.0));
    if (A >= 1.0) {
        const double z = 1.0 / (1.0 + A);
        return gratio / (2.0 * std::sqrt(std::numbers::pi)) * std::sqrt(A) *
               std::pow(1.0 + A, -(m + 0.5)) * hyp2f1_unit(m, z, acc);
    }
    return 0.5 - m * gratio / std::sqrt(std::numbers::pi) * std::sqrt(A) *
                     std::pow(1.0 + A, 0.5 - m) * hyp2f1_1bc(1.0 - m, 1.5, -A, acc);
}

}  // namespace detail

/// BEP averaged over Nakagami-m fading of the channel power. The binomial
/// branch requires integer m; "automatic" picks it whenever m is integral.
inline double avg_bep(const WeightedQSum& wqs, double rho, const FadingParam& fading,
                      AvgBranch branch = AvgBranch::automatic, const Accuracy& acc = {}) {
    if (!std::isfinite(rho) || rho <= 0.0) throw std::domain_error("avg_bep: rho must be positive");
    const bool integral = detail::is_integer_shape(fading.m);
    AvgBranch eff = branch;
    if (eff == AvgBranch::automatic)
        eff = integral ? AvgBranch::binomial : AvgBranch::hypergeometric;
    if (eff == AvgBranch::binomial && !integral)
        throw std::domain_error("avg_bep: binomial branch requires integer m");
    double p = 0.0;
    for (std::size_t k = 0; k < wqs.weights.size(); ++k) {
        const double A = wqs.coeffs[k] * rho * fading.omega / fading.m;
        const double b = (eff == AvgBranch::binomial)
                             ? detail::avg_term_binomial(A, static_cast<int>(fading.m))
                             : detail::avg_term_hypergeometric(A, fading.m, acc);
        p += wqs.weights[k] * b;
    }
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::logic_error("avg_bep: result is not a probability");
    return std::clamp(p, 0.0, 1.0);
}

/// Average BEP of the far symbol at the relay (first hop).
inline double bep_relay_far(const SystemConfig& cfg, AvgBranch branch = AvgBranch::automatic,
                            const Accuracy& acc = {}) {
    return avg_bep(far_coeffs(cfg.source), cfg.rho_s, cfg.sr, branch, acc);
}

/// Average BEP of the near symbol at the relay (first hop, after SIC).
inline double bep_relay_near(const SystemConfig& cfg, AvgBranch branch = AvgBranch::automatic,
                             const Accuracy& acc = {}) {
    return avg_bep(near_coeffs(cfg.source), cfg.rho_s, cfg.sr, branch, acc);
}

/// Average BEP of the far user's own symbol on the relay -> D2 hop.
inline double bep_dest_far(const SystemConfig& cfg, AvgBranch branch = AvgBranch::automatic,
                           const Accuracy& acc = {}) {
    return avg_bep(far_coeffs(cfg.relay), cfg.rho_r, cfg.r2, branch, acc);
}

/// Average BEP of the near user's own symbol on the relay -> D1 hop.
inline double bep_dest_near(const SystemConfig& cfg, AvgBranch branch = AvgBranch::automatic,
                            const Accuracy& acc = {}) {
    return avg_bep(near_coeffs(cfg.relay), cfg.rho_r, cfg.r1, branch, acc);
}

/// End-to-end BEP of a decode-and-forward chain: an end-to-end bit error
/// happens when exactly one hop flips the bit.
inline double e2e_bep(double p_hop1, double p_hop2) {
    if (!(p_hop1 >= 0.0) || !(p_hop1 <= 1.0) || !(p_hop2 >= 0.0) || !(p_hop2 <= 1.0))
        throw std::domain_error("e2e_bep: hop BEPs must be in [0, 1]");
    return p_hop1 + p_hop2 - 2.0 * p_hop1 * p_hop2;
}

inline double user_e2e(const SystemConfig& cfg, User user, AvgBranch branch = AvgBranch::automatic,
                       const Accuracy& acc = {}) {
    return user == User::far_user
               ? e2e_bep(bep_relay_far(cfg, branch, acc), bep_dest_far(cfg, branch, acc))
               : e2e_bep(bep_relay_near(cfg, branch, acc), bep_dest_near(cfg, branch, acc));
}

}  // namespace dfnoma
