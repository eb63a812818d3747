#include "levygame/rewards.hpp"

#include "levygame/errors.hpp"
#include "levygame/exp_sum.hpp"
#include "levygame/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace levygame {

namespace {

/// Sign-change point of a decreasing-through-zero function g: g > 0 left of
/// the root, g < 0 right of it. `hi` must satisfy g(hi) < 0. Expands the
/// bracket to the left; empty when no sign change is found within reach.
std::optional<double> falling_root(const std::function<double(double)>& g,
                                   double hi) {
    double offset = 1.0;
    double lo = hi - offset;
    while (!(g(lo) > 0.0)) {
        offset *= 2.0;
        lo = hi - offset;
        if (offset > 1e12) return std::nullopt;
    }
    return bisect(g, lo, hi, 1e-13);
}

double w_q_lambda_at_zero(const LevyModel& model, double q, double lambda) {
    // Remark-3.1 endpoint: 0 for unbounded variation, 1/mu for bounded.
    if (model.variation_class() == VariationClass::Unbounded) return 0.0;
    (void)q;
    (void)lambda;
    return 1.0 / model.mu();
}

} // namespace

double Reward::curvature(double x) const {
    const double h = 1e-5;
    return (slope(x + h) - slope(x - h)) / (2.0 * h);
}

double Reward::root() const {
    double lo = 0.0, hi = 0.0, step = 1.0;
    while (!(value(lo) > 0.0)) {
        lo -= step;
        step *= 2.0;
        if (step > 1e12)
            throw NoFiniteRootError("Reward::root: no positive region found");
    }
    step = 1.0;
    while (!(value(hi) < 0.0)) {
        hi += step;
        step *= 2.0;
        if (step > 1e12)
            throw NoFiniteRootError("Reward::root: no negative region found");
    }
    return bisect([this](double x) { return value(x); }, lo, hi, 1e-13);
}

PutReward::PutReward(double strike) : strike_(strike) {
    if (!(strike > 0.0))
        throw std::invalid_argument("PutReward: strike must be > 0");
}

double PutReward::value(double x) const { return strike_ - std::exp(x); }
double PutReward::slope(double x) const { return -std::exp(x); }
double PutReward::curvature(double x) const { return -std::exp(x); }
double PutReward::root() const { return std::log(strike_); }

std::optional<std::pair<double, double>> PutReward::exp_affine() const {
    return std::make_pair(strike_, -1.0);
}

GameRewards::GameRewards(std::shared_ptr<const Reward> reward_c,
                         std::shared_ptr<const Reward> reward_p)
    : c(std::move(reward_c)), p(std::move(reward_p)) {
    if (!c || !p)
        throw std::invalid_argument("GameRewards: rewards must be non-null");
    const double lo = std::min(c->root(), p->root()) - 10.0;
    const double hi = std::max(c->root(), p->root()) + 10.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = lo + (hi - lo) * i / 100.0;
        if (!(c->value(x) < p->value(x)))
            throw std::invalid_argument(
                "GameRewards: dominance f_c < f_p violated");
    }
}

double x_bar(const Reward& reward) { return reward.root(); }

double h_c_o(const LevyModel& model, double q, const Reward& reward_c,
             double x) {
    return model.phi(q) * reward_c.value(x) + reward_c.slope(x);
}

namespace {

/// Root of c_eff f(x) + f'(x) for decreasing concave f: closed form for
/// exponential-affine rewards, otherwise bisection below the reward root.
std::optional<double> h_root(const Reward& reward, double c_eff,
                             const std::function<double(double)>& h) {
    if (const auto affine = reward.exp_affine()) {
        const auto [c0, c1] = *affine;
        // h(x) = c_eff c0 + (1 + c_eff) c1 exp(x).
        const double ratio = -c_eff * c0 / ((1.0 + c_eff) * c1);
        if (!(ratio > 0.0)) return std::nullopt;
        return std::log(ratio);
    }
    return falling_root(h, reward.root());
}

} // namespace

double a_underbar(const LevyModel& model, double q, const Reward& reward_c) {
    const double phi = model.phi(q);
    const auto root =
        h_root(reward_c, phi,
               [&](double x) { return h_c_o(model, q, reward_c, x); });
    if (!root)
        throw NoFiniteRootError(
            "a_underbar: h_c^o has no finite sign change (Assumption 4.2)");
    return *root;
}

double h_c(const LevyModel& model, double q, double lambda,
           const Reward& reward_c, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("h_c: lambda must be > 0");
    const double c_eff =
        model.phi(q) + lambda * w_q_lambda_at_zero(model, q, lambda);
    return c_eff * reward_c.value(x) + reward_c.slope(x);
}

double h_p(const LevyModel& model, double q, const Reward& reward_p,
           double x) {
    return model.phi(q) * reward_p.value(x) + reward_p.slope(x);
}

std::optional<double> x_under(const LevyModel& model, double q, double lambda,
                              const Reward& reward, Player which) {
    const double phi = model.phi(q);
    const double c_eff =
        which == Player::C
            ? phi + lambda * w_q_lambda_at_zero(model, q, lambda)
            : phi;
    const auto h = [&](double x) {
        return c_eff * reward.value(x) + reward.slope(x);
    };
    const auto root = h_root(reward, c_eff, h);
    if (!root && which == Player::C)
        throw NoFiniteRootError("x_under: x_underbar_c must be finite when "
                                "Assumption 4.2 holds");
    return root;
}

double v_single_player(const LevyModel& model, double q,
                       const Reward& reward_c, double x, double a) {
    if (x <= a) return reward_c.value(x);
    return std::exp(model.phi(q) * (a - x)) * reward_c.value(a);
}

} // namespace levygame
