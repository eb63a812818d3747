// Command-line surface for the observation-game solver: reproduces the
// reference case study and emits machine-readable curve data.

#include "levygame/equilibrium.hpp"
#include "levygame/errors.hpp"
#include "levygame/montecarlo.hpp"
#include "levygame/run_config.hpp"
#include "levygame/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using levygame::format_double;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInconclusive = 3;

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void write_table(const levygame::RunConfig& cfg, const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string base = cfg.out_dir + "/" + name;
    if (cfg.format == "csv") {
        levygame::write_csv(base + ".csv", header, rows);
        std::cout << "wrote " << base << ".csv\n";
        return;
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
        doc.push_back(obj);
    }
    std::ofstream out(base + ".json", std::ios::binary);
    out << doc.dump(2) << "\n";
    std::cout << "wrote " << base << ".json\n";
}

void print_equilibrium(const levygame::GameSpec& spec,
                       const levygame::Equilibrium& eq) {
    std::cout << "a_star       = " << format_double(eq.a_star) << "\n"
              << "l_star       = " << format_double(eq.l_star) << "\n"
              << "exp(a_star)  = " << format_double(std::exp(eq.a_star)) << "\n"
              << "exp(l_star)  = " << format_double(std::exp(eq.l_star)) << "\n"
              << "I_residual   = " << format_double(eq.i_residual) << "\n"
              << "J_residual   = " << format_double(eq.j_residual) << "\n"
              << "x_under_c    = " << format_double(spec.x_under_c()) << "\n"
              << "x_bar_c      = " << format_double(spec.x_bar_c()) << "\n"
              << "x_bar_p      = " << format_double(spec.x_bar_p()) << "\n"
              << "roots        =";
    for (double r : eq.all_roots) std::cout << " " << format_double(r);
    std::cout << "\n"
              << "pareto_minimal = " << (eq.pareto_minimal ? "true" : "false")
              << "\n";
}

int cmd_solve(const levygame::RunConfig& cfg) {
    const levygame::GameSpec spec = cfg.make_spec();
    const levygame::Equilibrium eq =
        levygame::solve_equilibrium(spec, cfg.make_solver_options());
    print_equilibrium(spec, eq);
    return kExitOk;
}

int cmd_curves(const levygame::RunConfig& cfg, double xmin, double xmax,
               int points) {
    const levygame::GameSpec spec = cfg.make_spec();
    const levygame::Equilibrium eq =
        levygame::solve_equilibrium(spec, cfg.make_solver_options());
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < points; ++i) {
        const double x = xmin + (xmax - xmin) * i / (points - 1);
        rows.push_back({std::exp(x), x,
                        levygame::v_c(spec, x, eq.a_star, eq.l_star),
                        levygame::v_p(spec, x, eq.a_star, eq.l_star),
                        spec.reward_c().value(x), spec.reward_p().value(x)});
    }
    write_table(cfg, "curves", {"e_x", "x", "v_c", "v_p", "f_c", "f_p"}, rows);
    print_equilibrium(spec, eq);
    return kExitOk;
}

int cmd_sweep(const levygame::RunConfig& cfg, const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw levygame::ConfigError("sweep: empty lambda list");
    const levygame::SweepResult sweep = levygame::sweep_lambda(
        cfg.make_model(), cfg.q,
        levygame::GameRewards(std::make_shared<levygame::PutReward>(cfg.k_c),
                              std::make_shared<levygame::PutReward>(cfg.k_p)),
        lambdas, {}, cfg.make_solver_options());

    std::vector<std::vector<double>> rows;
    for (const auto& row : sweep.rows)
        rows.push_back({row.lambda, row.eq.a_star, row.eq.l_star,
                        std::exp(row.eq.a_star), std::exp(row.eq.l_star),
                        row.eq.i_residual, row.eq.j_residual});
    write_table(cfg, "sweep",
                {"lambda", "a_star", "l_star", "exp_a_star", "exp_l_star",
                 "i_residual", "j_residual"},
                rows);

    std::vector<std::vector<double>> curve_rows;
    for (const auto& row : sweep.rows)
        for (std::size_t i = 0; i < sweep.x_grid.size(); ++i)
            curve_rows.push_back({row.lambda, sweep.x_grid[i],
                                  std::exp(sweep.x_grid[i]),
                                  row.v_c_curve[i], row.v_p_curve[i]});
    write_table(cfg, "sweep_curves", {"lambda", "x", "e_x", "v_c", "v_p"},
                curve_rows);
    std::cout << "max_vc_increase = " << format_double(sweep.max_vc_increase)
              << "\n";
    return kExitOk;
}

int cmd_voi(const levygame::RunConfig& cfg, const std::vector<double>& exs,
            const std::vector<double>& lambdas) {
    std::vector<std::vector<double>> rows;
    const auto one = [&](double ex, double lambda) {
        try {
            const levygame::VoiResult voi = levygame::value_of_information(
                cfg.make_model(), cfg.q, lambda, cfg.k_p, std::log(ex),
                cfg.make_solver_options(), cfg.voi_gap_tol);
            rows.push_back({ex, lambda, voi.k_c, voi.delta, voi.gap, 1.0});
        } catch (const levygame::NoBracketError&) {
            // Row flagged, run continues.
            rows.push_back({ex, lambda, 0.0, 0.0, 0.0, 0.0});
        }
    };
    for (double ex : exs) one(ex, cfg.lambda);
    for (double lambda : lambdas) one(cfg.k_p, lambda); // lambda sweep at e^x = K_p
    write_table(cfg, "voi", {"e_x", "lambda", "k_c", "delta", "gap", "ok"},
                rows);
    return kExitOk;
}

int cmd_verify(const levygame::RunConfig& cfg) {
    const levygame::GameSpec spec = cfg.make_spec();
    const levygame::Equilibrium eq =
        levygame::solve_equilibrium(spec, cfg.make_solver_options());
    std::ostringstream report;
    print_equilibrium(spec, eq);

    const levygame::VerificationReport ver =
        levygame::verify_equilibrium(spec, eq);
    report << ver.summary();

    // Monte Carlo cross-checks of both value functions at three starting
    // points around the equilibrium band, common random numbers throughout.
    const levygame::SimConfig sim = cfg.make_sim_config();
    bool mc_ok = true;
    bool conclusive = true;
    for (double x : {eq.l_star + 0.15, 0.5 * (eq.a_star + eq.l_star)}) {
        const auto [est_c, est_p] =
            levygame::simulate_game(spec, x, eq.a_star, eq.l_star, sim);
        const double ana_c = levygame::v_c(spec, x, eq.a_star, eq.l_star);
        const double ana_p = levygame::v_p(spec, x, eq.a_star, eq.l_star);
        const auto check = [&](const char* name, double ana,
                               const levygame::Estimate& est) {
            const double tol = 3.0 * est.std_error + 0.005 * std::abs(ana);
            const bool ok = std::abs(est.mean - ana) <= tol;
            const bool concl =
                3.0 * est.std_error <= 0.1 * std::max(1.0, std::abs(ana));
            report << name << " x=" << format_double(x) << " analytic="
                   << format_double(ana) << " mc=" << format_double(est.mean)
                   << " se=" << format_double(est.std_error) << " "
                   << (concl ? (ok ? "ok" : "FAIL") : "inconclusive") << "\n";
            mc_ok = mc_ok && (ok || !concl);
            conclusive = conclusive && concl;
        };
        check("mc_v_c", ana_c, est_c);
        check("mc_v_p", ana_p, est_p);
    }

    // Empirical best-response scan (coarse grid at the mid starting point).
    levygame::SimConfig scan_sim = sim;
    scan_sim.paths = std::max<std::uint64_t>(2000, sim.paths / 10);
    const levygame::BestResponseScan scan =
        levygame::empirical_best_response_scan(
            spec, eq, 0.5 * (eq.a_star + eq.l_star) + 0.3, 7, scan_sim);
    report << "empirical_scan_c = " << (scan.c_consistent ? "ok" : "FAIL")
           << "\n"
           << "empirical_scan_p = " << (scan.p_consistent ? "ok" : "FAIL")
           << "\n";

    const bool pass =
        ver.all_pass() && mc_ok && scan.c_consistent && scan.p_consistent;
    report << "verify = "
           << (conclusive ? (pass ? "PASS" : "FAIL") : "INCONCLUSIVE") << "\n";
    std::cout << report.str();
    if (!conclusive) return kExitInconclusive;
    return pass ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nash-equilibrium solver for the continuous-vs-periodic "
                 "observation stopping game"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "Config file path");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Monte Carlo seed override");
    app.add_option("--format", format, "Output format: csv|json");
    app.add_option("--threads", threads, "Worker count (0 = hardware)");

    auto* solve = app.add_subcommand("solve", "Solve the equilibrium");
    auto* curves =
        app.add_subcommand("curves", "Emit value-function curves");
    double xmin = std::log(25.0), xmax = std::log(90.0);
    int points = 131;
    curves->add_option("--xmin", xmin, "Lower log-price");
    curves->add_option("--xmax", xmax, "Upper log-price");
    curves->add_option("--points", points, "Grid size")->check(CLI::Range(2, 100000));
    auto* sweep = app.add_subcommand("sweep", "Equilibrium per lambda");
    std::string lambda_csv = "0.1,0.5,1,2,5,10,50,100,500";
    sweep->add_option("--lambdas", lambda_csv, "Comma-separated lambdas");
    auto* voi = app.add_subcommand("voi", "Value of information");
    std::string voi_x_csv = "40,50,60,70,80";
    std::string voi_lambda_csv = "";
    voi->add_option("--xs", voi_x_csv, "Comma-separated e^x values");
    voi->add_option("--lambdas", voi_lambda_csv,
                    "Comma-separated lambdas (at e^x = 60)");
    auto* verify =
        app.add_subcommand("verify", "Verifier + Monte Carlo cross-checks");

    CLI11_PARSE(app, argc, argv);

    try {
        levygame::RunConfig cfg = levygame::RunConfig::load(config_path);
        cfg.apply_env();
        if (out_dir) cfg.out_dir = *out_dir;
        if (seed) cfg.seed = *seed;
        if (format) {
            if (*format != "csv" && *format != "json")
                throw levygame::ConfigError("format must be csv or json");
            cfg.format = *format;
        }
        if (threads) cfg.threads = *threads;
        cfg.validate();

        if (solve->parsed()) return cmd_solve(cfg);
        if (curves->parsed()) return cmd_curves(cfg, xmin, xmax, points);
        if (sweep->parsed()) return cmd_sweep(cfg, parse_list(lambda_csv));
        if (voi->parsed())
            return cmd_voi(cfg, parse_list(voi_x_csv),
                           parse_list(voi_lambda_csv));
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const levygame::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
