// Command line front end: closed-form curves, Monte Carlo curves, power-split
// sweeps and closed-form-vs-quadrature validation, all as CSV on stdout.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <CLI11.hpp>

#include <charconv>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <dfnoma/analysis.hpp>
#include <dfnoma/link_sim.hpp>
#include <dfnoma/system.hpp>
#include <dfnoma/validation.hpp>

namespace {

using namespace dfnoma;

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw CLI::ValidationError("expected a number, got '" + text + "'");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

// "VALUE" or "LO:HI:STEP"; the sweep includes HI up to half a step of slack.
std::vector<double> parse_sweep(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() == 1) return {parse_double(parts[0])};
    if (parts.size() != 3)
        throw CLI::ValidationError("expected VALUE or LO:HI:STEP, got '" + text + "'");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) throw CLI::ValidationError("sweep step must be positive in '" + text + "'");
    if (hi < lo) throw CLI::ValidationError("sweep upper bound below lower bound in '" + text + "'");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = lo + k * step;
        if (v > hi + 0.5 * step) break;
        grid.push_back(v);
    }
    return grid;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) values.push_back(parse_double(part));
    return values;
}

struct ModelFlags {
    double alpha1 = 0.1;
    double beta1 = 0.1;
    double m_sr = 2.0;
    double m_r1 = 2.0;
    double m_r2 = 2.0;
    double omega_sr_db = 10.0;
    double omega_r1_db = 10.0;
    double omega_r2_db = 0.0;

    void attach_fading(CLI::App& cmd) {
        cmd.add_option("--m-sr", m_sr, "Nakagami shape of the S->R link")->capture_default_str();
        cmd.add_option("--m-r1", m_r1, "Nakagami shape of the R->D1 link")->capture_default_str();
        cmd.add_option("--m-r2", m_r2, "Nakagami shape of the R->D2 link")->capture_default_str();
        cmd.add_option("--omega-sr-db", omega_sr_db, "mean power of the S->R link, dB")
            ->capture_default_str();
        cmd.add_option("--omega-r1-db", omega_r1_db, "mean power of the R->D1 link, dB")
            ->capture_default_str();
        cmd.add_option("--omega-r2-db", omega_r2_db, "mean power of the R->D2 link, dB")
            ->capture_default_str();
    }

    void attach_splits(CLI::App& cmd) {
        cmd.add_option("--alpha1", alpha1, "source power share of the near user")
            ->capture_default_str();
        cmd.add_option("--beta1", beta1, "relay power share of the near user")
            ->capture_default_str();
    }

    SystemConfig config(double rho, double a1, double b1) const {
        return SystemConfig(PowerSplit::from_weak(a1), PowerSplit::from_weak(b1), rho, rho,
                            FadingParam(m_sr, db_to_linear(omega_sr_db)),
                            FadingParam(m_r1, db_to_linear(omega_r1_db)),
                            FadingParam(m_r2, db_to_linear(omega_r2_db)));
    }

    SystemConfig config(double rho) const { return config(rho, alpha1, beta1); }

    void echo_fading() const {
        std::printf("# m_sr=%.10g\n# m_r1=%.10g\n# m_r2=%.10g\n", m_sr, m_r1, m_r2);
        std::printf("# omega_sr_db=%.10g\n# omega_r1_db=%.10g\n# omega_r2_db=%.10g\n", omega_sr_db,
                    omega_r1_db, omega_r2_db);
    }

    void echo_splits() const { std::printf("# alpha1=%.10g\n# beta1=%.10g\n", alpha1, beta1); }
};

void echo_banner(const char* command) {
    std::printf("# dfnoma %s\n# command=%s\n", version, command);
}

int run_analytic(const ModelFlags& model, const std::string& rho_text) {
    const std::vector<double> grid = parse_sweep(rho_text);
    echo_banner("analytic");
    model.echo_splits();
    model.echo_fading();
    std::printf("# rho_db=%s\n", rho_text.c_str());
    std::printf("rho_db,analytic_near,analytic_far\n");
    for (double db : grid) {
        const SystemConfig cfg = model.config(db_to_linear(db));
        std::printf("%.10g,%.10g,%.10g\n", db, user_e2e(cfg, User::near_user),
                    user_e2e(cfg, User::far_user));
    }
    return 0;
}

int run_simulate(const ModelFlags& model, const std::string& rho_text, std::uint64_t trials,
                 std::uint64_t seed, std::uint64_t chunk_size, unsigned workers) {
    const std::vector<double> grid = parse_sweep(rho_text);
    echo_banner("simulate");
    model.echo_splits();
    model.echo_fading();
    std::printf("# rho_db=%s\n", rho_text.c_str());
    std::printf("# trials=%" PRIu64 "\n# seed=%" PRIu64 "\n# chunk_size=%" PRIu64 "\n", trials,
                seed, chunk_size);
    std::printf(
        "rho_db,analytic_near,analytic_far,sim_near,sim_far,sim_trials,stderr_near,stderr_far\n");
    const SystemConfig base = model.config(1.0);
    const BerCurve curve = simulate_curve(base, grid, trials, seed, {chunk_size, workers});
    for (const BerPoint& point : curve.points) {
        const SystemConfig cfg = model.config(db_to_linear(point.rho_db));
        std::printf("%.10g,%.10g,%.10g,%.10g,%.10g,%" PRIu64 ",%.10g,%.10g\n", point.rho_db,
                    user_e2e(cfg, User::near_user), user_e2e(cfg, User::far_user),
                    point.sim.ber_e2e_near(), point.sim.ber_e2e_far(), point.sim.trials,
                    point.sim.stderr_e2e_near(), point.sim.stderr_e2e_far());
    }
    return 0;
}

int run_power_sweep(const ModelFlags& model, double rho_db, const std::string& alpha_text,
                    const std::string& beta_text) {
    const std::vector<double> alphas = parse_sweep(alpha_text);
    const std::vector<double> betas = parse_sweep(beta_text);
    echo_banner("power-sweep");
    std::printf("# rho_db=%.10g\n", rho_db);
    std::printf("# alpha1=%s\n# beta1=%s\n", alpha_text.c_str(), beta_text.c_str());
    model.echo_fading();
    std::printf("alpha1,beta1,analytic_near,analytic_far\n");
    const double rho = db_to_linear(rho_db);
    for (double a1 : alphas) {
        for (double b1 : betas) {
            const SystemConfig cfg = model.config(rho, a1, b1);
            std::printf("%.10g,%.10g,%.10g,%.10g\n", a1, b1, user_e2e(cfg, User::near_user),
                        user_e2e(cfg, User::far_user));
        }
    }
    return 0;
}

int run_validate(const std::string& m_text, const std::string& rho_text,
                 const std::string& omega_text, const std::string& weak_text, double perturb) {
    ValidationGrids grids;
    grids.m_values = parse_list(m_text);
    grids.rho_db = parse_list(rho_text);
    grids.omega_db = parse_list(omega_text);
    grids.weak = parse_list(weak_text);
    grids.perturb = perturb;
    echo_banner("validate");
    std::printf("# m_grid=%s\n# rho_db_grid=%s\n# omega_db_grid=%s\n# weak_grid=%s\n",
                m_text.c_str(), rho_text.c_str(), omega_text.c_str(), weak_text.c_str());
    std::printf("# perturb=%.10g\n", perturb);
    std::printf("check,worst_abs_err,tolerance,cases,status\n");
    bool all_pass = true;
    for (const CheckResult& check : validate_closed_forms(grids)) {
        std::printf("%s,%.10g,%.10g,%zu,%s\n", check.name.c_str(), check.worst, check.tol,
                    check.cases, check.pass() ? "PASS" : "FAIL");
        all_pass = all_pass && check.pass();
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decode-and-forward NOMA bit error probability toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    ModelFlags analytic_model;
    std::string analytic_rho = "0:30:5";
    CLI::App* analytic = app.add_subcommand("analytic", "closed-form end-to-end BEP curves");
    analytic_model.attach_splits(*analytic);
    analytic_model.attach_fading(*analytic);
    analytic->add_option("--rho-db", analytic_rho, "transmit SNR in dB, VALUE or LO:HI:STEP")
        ->capture_default_str();
    analytic->callback([&] { rc = run_analytic(analytic_model, analytic_rho); });

    ModelFlags sim_model;
    std::string sim_rho = "0:30:5";
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 12345;
    std::uint64_t chunk_size = 65536;
    unsigned workers = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo end-to-end BER curves");
    sim_model.attach_splits(*simulate);
    sim_model.attach_fading(*simulate);
    simulate->add_option("--rho-db", sim_rho, "transmit SNR in dB, VALUE or LO:HI:STEP")
        ->capture_default_str();
    simulate->add_option("--trials", trials, "Monte Carlo trials per SNR point")
        ->capture_default_str();
    simulate->add_option("--seed", seed, "base RNG seed")->capture_default_str();
    simulate->add_option("--chunk-size", chunk_size, "trials per RNG stream chunk")
        ->capture_default_str();
    simulate->add_option("--workers", workers, "worker threads, 0 = hardware")
        ->capture_default_str();
    simulate->callback(
        [&] { rc = run_simulate(sim_model, sim_rho, trials, seed, chunk_size, workers); });

    ModelFlags sweep_model;
    double sweep_rho_db = 20.0;
    std::string sweep_alpha = "0.05:0.45:0.05";
    std::string sweep_beta = "0.05:0.45:0.05";
    CLI::App* sweep = app.add_subcommand("power-sweep", "closed-form BEP over power splits");
    sweep_model.attach_fading(*sweep);
    sweep->add_option("--rho-db", sweep_rho_db, "transmit SNR in dB")->capture_default_str();
    sweep->add_option("--alpha1", sweep_alpha, "source near-user share, VALUE or LO:HI:STEP")
        ->capture_default_str();
    sweep->add_option("--beta1", sweep_beta, "relay near-user share, VALUE or LO:HI:STEP")
        ->capture_default_str();
    sweep->callback([&] { rc = run_power_sweep(sweep_model, sweep_rho_db, sweep_alpha, sweep_beta); });

    std::string val_m = "0.5,1,1.5,2,3";
    std::string val_rho = "0,10,20,30";
    std::string val_omega = "0,10";
    std::string val_weak = "0.1,0.2,0.3";
    double perturb = 0.0;
    CLI::App* validate = app.add_subcommand("validate", "closed forms vs quadrature oracle");
    validate->add_option("--m-grid", val_m, "comma list of Nakagami shapes")->capture_default_str();
    validate->add_option("--rho-db-grid", val_rho, "comma list of SNRs in dB")
        ->capture_default_str();
    validate->add_option("--omega-db-grid", val_omega, "comma list of mean powers in dB")
        ->capture_default_str();
    validate->add_option("--weak-grid", val_weak, "comma list of weak power shares")
        ->capture_default_str();
    validate->add_option("--perturb", perturb, "fault injection offset on the first coefficient")
        ->capture_default_str();
    validate->callback([&] { rc = run_validate(val_m, val_rho, val_omega, val_weak, perturb); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
