#ifndef LEVYGAME_REWARDS_HPP
#define LEVYGAME_REWARDS_HPP

#include "levygame/levy_model.hpp"

#include <memory>
#include <optional>
#include <utility>

namespace levygame {

/// Stopping payoff f: strictly decreasing, concave, C^1 on all of R, with a
/// single sign change at `root()`. The curvature hook exists because the
/// optimality verifier needs f''; rewards that cannot supply it exactly
/// inherit a central-difference fallback (h = 1e-5).
class Reward {
public:
    virtual ~Reward() = default;

    virtual double value(double x) const = 0;
    virtual double slope(double x) const = 0;
    virtual double curvature(double x) const;

    /// x_bar with f > 0 below and f < 0 above. Default: bisection with an
    /// expanding bracket.
    virtual double root() const;

    /// Coefficients (c0, c1) when f(x) = c0 + c1 exp(x); enables closed-form
    /// reward-weighted integrals of scale functions.
    virtual std::optional<std::pair<double, double>> exp_affine() const {
        return std::nullopt;
    }
};

/// Put payoff f(x) = K - exp(x) on the log-price x.
class PutReward final : public Reward {
public:
    explicit PutReward(double strike);

    double value(double x) const override;
    double slope(double x) const override;
    double curvature(double x) const override;
    double root() const override;
    std::optional<std::pair<double, double>> exp_affine() const override;

    double strike() const { return strike_; }

private:
    double strike_;
};

/// The pair (f_c, f_p); validates the dominance f_c < f_p on a grid.
struct GameRewards {
    GameRewards(std::shared_ptr<const Reward> reward_c,
                std::shared_ptr<const Reward> reward_p);

    std::shared_ptr<const Reward> c;
    std::shared_ptr<const Reward> p;
};

enum class Player { C, P };

/// x_bar of the reward: the unique zero of f.
double x_bar(const Reward& reward);

/// h_c^o(x) = Phi(q) f_c(x) + f_c'(x), the single-player first-order
/// function.
double h_c_o(const LevyModel& model, double q, const Reward& reward_c,
             double x);

/// Sign-change point a_underbar of h_c^o; closed form for exponential-affine
/// rewards. Throws NoFiniteRootError when h_c^o stays positive below the
/// reward root.
double a_underbar(const LevyModel& model, double q, const Reward& reward_c);

/// h_c(x) = (Phi(q) + lambda W^(q+lambda)(0)) f_c(x) + f_c'(x); coincides
/// with h_c^o exactly when the model has unbounded variation.
double h_c(const LevyModel& model, double q, double lambda,
           const Reward& reward_c, double x);

/// h_p(x) = Phi(q) f_p(x) + f_p'(x).
double h_p(const LevyModel& model, double q, const Reward& reward_p, double x);

/// Sign-change point x_underbar of h_c or h_p. Empty optional encodes the
/// -infinity sentinel, which can occur only for Player::P.
std::optional<double> x_under(const LevyModel& model, double q, double lambda,
                              const Reward& reward, Player which);

/// Single-player threshold value v_c^o(x; a): f_c(x) at or below the
/// barrier, exp(Phi(q)(a - x)) f_c(a) above it.
double v_single_player(const LevyModel& model, double q,
                       const Reward& reward_c, double x, double a);

} // namespace levygame

#endif
