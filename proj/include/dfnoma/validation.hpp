#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "quadrature.hpp"
#include "system.hpp"

namespace dfnoma {

struct CheckResult {
    std::string name;
    double worst = 0.0;
    double tol = 0.0;
    std::size_t cases = 0;

    bool pass() const { return worst <= tol; }
};

/// Cross-validation grid. `perturb` is a fault-injection hook: it offsets the
/// first coefficient fed to the closed forms (but not to the oracle), so a
/// nonzero value must trip the checks.
struct ValidationGrids {
    std::vector<double> m_values{0.5, 1.0, 1.5, 2.0, 3.0};
    std::vector<double> rho_db{0.0, 10.0, 20.0, 30.0};
    std::vector<double> omega_db{0.0, 10.0};
    std::vector<double> weak{0.1, 0.2, 0.3};
    double perturb = 0.0;
};

namespace detail {

inline WeightedQSum perturbed(const WeightedQSum& wqs, double delta) {
    if (delta == 0.0) return wqs;
    std::vector<double> coeffs = wqs.coeffs;
    coeffs[0] += delta;
    return WeightedQSum(wqs.weights, std::move(coeffs));
}

}  // namespace detail

/// Compare every closed-form average against the quadrature oracle over the
/// grid, and the two closed-form branches against each other at integer m.
inline std::vector<CheckResult> validate_closed_forms(const ValidationGrids& grids) {
    CheckResult quad_int{"closed_vs_quadrature_integer_m", 0.0, 1e-8, 0};
    CheckResult quad_frac{"closed_vs_quadrature_noninteger_m", 0.0, 1e-6, 0};
    CheckResult branches{"branch_consistency_integer_m", 0.0, 1e-9, 0};

    for (double m : grids.m_values) {
        const bool integral = m == std::floor(m);
        for (double rho_db : grids.rho_db) {
            const double rho = db_to_linear(rho_db);
            for (double omega_db : grids.omega_db) {
                const FadingParam fading(m, db_to_linear(omega_db));
                for (double weak : grids.weak) {
                    const PowerSplit split = PowerSplit::from_weak(weak);
                    for (const WeightedQSum& wqs : {far_coeffs(split), near_coeffs(split)}) {
                        const WeightedQSum tested = detail::perturbed(wqs, grids.perturb);
                        const double closed = avg_bep(tested, rho, fading);
                        const double oracle = avg_by_quadrature(wqs, rho, fading);
                        CheckResult& quad = integral ? quad_int : quad_frac;
                        quad.worst = std::max(quad.worst, std::abs(closed - oracle));
                        ++quad.cases;
                        if (integral) {
                            const double forced =
                                avg_bep(tested, rho, fading, AvgBranch::hypergeometric);
                            branches.worst = std::max(branches.worst, std::abs(closed - forced));
                            ++branches.cases;
                        }
                    }
                }
            }
        }
    }
    return {quad_int, quad_frac, branches};
}

}  // namespace dfnoma
