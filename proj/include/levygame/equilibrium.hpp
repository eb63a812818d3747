#ifndef LEVYGAME_EQUILIBRIUM_HPP
#define LEVYGAME_EQUILIBRIUM_HPP

#include "levygame/exp_sum.hpp"
#include "levygame/levy_model.hpp"
#include "levygame/rewards.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace levygame {

/// The game instance: model, discount q, observation rate lambda and the
/// reward pair. Construction precomputes Phi(q), the exponential sum of
/// W^(q+lambda) and all reward thresholds, and fails when the standing
/// assumption (finite a_underbar) is violated.
class GameSpec {
public:
    GameSpec(LevyModel model, double q, double lambda, GameRewards rewards);

    const LevyModel& model() const { return model_; }
    double q() const { return q_; }
    double lambda() const { return lambda_; }
    const Reward& reward_c() const { return *rewards_.c; }
    const Reward& reward_p() const { return *rewards_.p; }
    const GameRewards& rewards() const { return rewards_; }

    double phi() const { return phi_; }

    /// W^(q+lambda)(x) and its derivative.
    double w_ql(double x) const { return w_ql_.value(x); }
    double w_ql_prime(double x) const { return w_ql_.derivative(x); }
    double w_ql_zero() const { return w_ql_zero_; }

    /// Z^(q+lambda)(x; Phi(q)).
    double z_ql(double x) const;
    /// Z^(q+lambda)(num; Phi(q)) / Z^(q+lambda)(den; Phi(q)), evaluated with
    /// the dominant exponent factored out so extreme arguments stay finite.
    double z_ratio(double num, double den) const;

    /// Gamma(x; l) with the player-P reward.
    double gamma_p(double x, double l) const;
    /// Same integral against f_p' and f_p'' (the verifier needs both).
    double gamma_p_slope(double x, double l) const;
    double gamma_p_curvature(double x, double l) const;

    double a_under() const { return a_under_; }
    double x_under_c() const { return x_under_c_; }
    std::optional<double> x_under_p() const { return x_under_p_; }
    double x_bar_c() const { return x_bar_c_; }
    double x_bar_p() const { return x_bar_p_; }

private:
    std::pair<double, double> z_ql_scaled(double x) const;
    double gamma_weighted(int order, double x, double l) const;

    LevyModel model_;
    double q_;
    double lambda_;
    GameRewards rewards_;
    double phi_;
    ExpSum w_ql_;
    double w_ql_zero_;
    double phi_ql_; // dominant exponent of W^(q+lambda)
    double a_under_;
    double x_under_c_;
    std::optional<double> x_under_p_;
    double x_bar_c_;
    double x_bar_p_;
};

/// Solved threshold pair plus solver diagnostics.
struct Equilibrium {
    double a_star = 0.0;
    double l_star = 0.0;
    double i_residual = 0.0;
    double j_residual = 0.0;
    std::vector<double> all_roots; // every grid-resolved root of J(.; a~(.))
    bool pareto_minimal = false;
};

struct SolverOptions {
    int scan_points = 2000;   // grid for the l -> J(l; a~(l)) sign scan
    double root_tol = 1e-10;  // bisection tolerance in the argument
};

/// Player C's threshold value v_c(x; a, l). Delegates to the single-player
/// value when l < a (player P never stops first there).
double v_c(const GameSpec& spec, double x, double a, double l);

/// Player P's threshold value v_p(x; a, l); zero for x <= a and for l <= a.
double v_p(const GameSpec& spec, double x, double a, double l);

/// Finite-horizon variants with additional killing at the upper level b.
double v_c_finite(const GameSpec& spec, double x, double a, double l,
                  double b);
double v_p_finite(const GameSpec& spec, double x, double a, double l,
                  double b);

/// First-order function of player C:
/// I(a; l) = f_c'(a) + Phi(q) f_c(a) + lambda W^(q+lambda)(l-a) v_c(l; a, l).
double big_i(const GameSpec& spec, double a, double l);

/// First-order function of player P:
/// J(l; a) = f_p(l) Z^(q+lambda)(l-a; Phi(q)) - lambda Gamma(a; l).
double big_j(const GameSpec& spec, double l, double a);

/// Closed-form partial derivative d v_c / d a, valid for a < l and a < x.
double dv_c_da(const GameSpec& spec, double x, double a, double l);

/// Closed-form partial derivative d v_p / d l, valid for x >= a, l > a,
/// l != x.
double dv_p_dl(const GameSpec& spec, double x, double a, double l);

/// Unique zero a~(l) of I(.; l) on [x_under_c, x_bar_c ^ l]. Throws
/// NoBestResponseError for l < x_under_c where no root exists.
double best_response_a(const GameSpec& spec, double l);

/// Unique zero l~(a) of J(.; a) on (a, x_bar_p). Domain error for
/// a >= x_bar_p.
double best_response_l(const GameSpec& spec, double a);

/// Scans l -> J(l; a~(l)) on a uniform grid over (x_under_c, x_bar_p),
/// bisects every sign change and returns the minimal root with its best
/// response (the Pareto-superior Nash equilibrium).
Equilibrium solve_equilibrium(const GameSpec& spec,
                              const SolverOptions& options = {});

struct VoiResult {
    double delta = 0.0; // K_p - K_c at the indifference point
    double k_c = 0.0;
    double gap = 0.0;   // v_c - v_p residual at the solved K_c
};

/// Value of additional information for put rewards: the fee delta = K_p -
/// K_c at which both players' equilibrium values coincide at x. Bisects
/// K_c over (1, K_p); the value gap must change sign on that bracket
/// (monotonicity in K_c), otherwise NoBracketError.
VoiResult value_of_information(const LevyModel& model, double q,
                               double lambda, double k_p, double x,
                               const SolverOptions& options = {},
                               double gap_tol = 1e-6);

struct SweepRow {
    double lambda = 0.0;
    Equilibrium eq;
    std::vector<double> v_c_curve;
    std::vector<double> v_p_curve;
};

struct SweepResult {
    std::vector<double> x_grid;
    std::vector<SweepRow> rows;
    /// Largest observed increase of v_c(x) between consecutive lambdas;
    /// nonpositive values confirm the pointwise monotone decrease.
    double max_vc_increase = 0.0;
};

/// Equilibrium per lambda over a sorted, nonempty list, with value curves
/// on the x grid.
SweepResult sweep_lambda(const LevyModel& model, double q,
                         const GameRewards& rewards,
                         const std::vector<double>& lambdas,
                         std::vector<double> x_grid = {},
                         const SolverOptions& options = {});

} // namespace levygame

#endif
