// Minimal library walkthrough: closed-form waterfall curves for both users
// next to a quick Monte Carlo cross-check at one SNR point.

#include <cstdio>

#include <dfnoma/analysis.hpp>
#include <dfnoma/link_sim.hpp>

int main() {
    using namespace dfnoma;

    const PowerSplit split = PowerSplit::from_weak(0.1);
    const FadingParam sr(2.0, db_to_linear(10.0));
    const FadingParam r1(2.0, db_to_linear(10.0));
    const FadingParam r2(2.0, db_to_linear(0.0));

    std::printf("rho_db  near_e2e      far_e2e\n");
    for (double db = 0.0; db <= 30.0; db += 5.0) {
        const SystemConfig cfg(split, split, db_to_linear(db), db_to_linear(db), sr, r1, r2);
        std::printf("%6.1f  %.6e  %.6e\n", db, user_e2e(cfg, User::near_user),
                    user_e2e(cfg, User::far_user));
    }

    const SystemConfig cfg(split, split, db_to_linear(10.0), db_to_linear(10.0), sr, r1, r2);
    const SimResult sim = simulate(cfg, 500000, 2024);
    std::printf("\nMonte Carlo at 10 dB (%llu trials):\n",
                static_cast<unsigned long long>(sim.trials));
    std::printf("near: sim %.4e vs analytic %.4e\n", sim.ber_e2e_near(),
                user_e2e(cfg, User::near_user));
    std::printf("far:  sim %.4e vs analytic %.4e\n", sim.ber_e2e_far(),
                user_e2e(cfg, User::far_user));
    return 0;
}
