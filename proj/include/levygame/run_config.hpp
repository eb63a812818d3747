#ifndef LEVYGAME_RUN_CONFIG_HPP
#define LEVYGAME_RUN_CONFIG_HPP

#include "levygame/equilibrium.hpp"
#include "levygame/montecarlo.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace levygame {

/// Configuration file problem (syntax, unknown key, bad value); the CLI
/// maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat sectioned key-value configuration. Every default equals the case
/// study of the library's reference model, so an empty config reproduces it.
struct RunConfig {
    // [model]
    double mu = 0.31333;
    double nu = 0.2;
    double alpha = 1.0;
    double beta = 2.0;
    // [game]
    double q = 0.05;
    double lambda = 1.0;
    double k_c = 50.0;
    double k_p = 60.0;
    // [solver]
    int scan_points = 2000;
    double root_tol = 1e-10;
    double voi_gap_tol = 1e-6;
    // [mc]
    double dt = 1e-3;
    double horizon = 200.0;
    std::uint64_t paths = 100000;
    std::uint64_t seed = 20240915;
    bool antithetic = false;
    unsigned threads = 0;
    // [output]
    std::string out_dir = "out";
    std::string format = "csv";

    /// Parse a config file; unknown sections or keys are rejected with a
    /// line diagnostic. An empty path yields the defaults.
    static RunConfig load(const std::string& path);

    /// Apply LEVYGAME_<SECTION>_<KEY> environment overrides.
    void apply_env();

    /// Revalidate every module-level invariant (delegated to the module
    /// constructors) and basic output settings.
    void validate() const;

    LevyModel make_model() const;
    GameSpec make_spec() const;
    GameSpec make_spec_with(double lambda_override, double k_c_override) const;
    SimConfig make_sim_config() const;
    SolverOptions make_solver_options() const;
};

/// 17-significant-digit decimal rendering used by every emitted table.
std::string format_double(double v);

/// CSV with a header row, comma separator and '.' decimal point.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows);

} // namespace levygame

#endif
