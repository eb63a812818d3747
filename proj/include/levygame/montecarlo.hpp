#ifndef LEVYGAME_MONTECARLO_HPP
#define LEVYGAME_MONTECARLO_HPP

#include "levygame/equilibrium.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace levygame {

/// Simulation controls. Estimates are bit-identical for a fixed config
/// regardless of worker count: every path derives its random streams from
/// (seed, path index) and the reduction runs in path order.
struct SimConfig {
    double dt = 1e-3;
    double horizon = 200.0;
    std::uint64_t paths = 100000;
    std::uint64_t seed = 20240915;
    bool antithetic = false;
    unsigned threads = 0; // 0 = hardware concurrency

    /// Discount truncation must be negligible: q * horizon >= 9.
    void validate(double q) const;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    double truncated_fraction = 0.0;
};

/// Simulates the game under threshold strategies (tau_a^-, T_l^-): exact
/// compound-Poisson jumps, Brownian increments on the dt grid refined so
/// jump and observation times are grid points, player C's stop detected as
/// the first grid time with X < a, player P's as the first observation with
/// X < l. Both estimates come from the same paths.
std::pair<Estimate, Estimate> simulate_game(const GameSpec& spec, double x,
                                            double a, double l,
                                            const SimConfig& cfg);

/// Same with additional killing at the first passage above b.
std::pair<Estimate, Estimate> simulate_game_two_sided(const GameSpec& spec,
                                                      double x, double a,
                                                      double l, double b,
                                                      const SimConfig& cfg);

struct ScanPoint {
    double barrier = 0.0;
    Estimate estimate;
};

/// Empirical best-response check around a solved equilibrium: Monte Carlo
/// values of v_c(x; a, l*) over an a grid and v_p(x; a*, l) over an l grid,
/// all with common random numbers.
struct BestResponseScan {
    std::vector<ScanPoint> c_scan; // varying a, l fixed at l*
    std::vector<ScanPoint> p_scan; // varying l, a fixed at a*
    double analytic_v_c = 0.0;     // v_c(x; a*, l*)
    double analytic_v_p = 0.0;
    bool c_consistent = false; // analytic optimum within 3 SE of best point
    bool p_consistent = false;
};

BestResponseScan empirical_best_response_scan(const GameSpec& spec,
                                              const Equilibrium& eq, double x,
                                              int grid_size,
                                              const SimConfig& cfg);

} // namespace levygame

#endif
