#include "levygame/scale.hpp"

#include "levygame/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace levygame {

namespace {

using cd = std::complex<double>;

constexpr double kCoincidenceTol = 1e-9;

cd exp_integral(cd a, double t) {
    if (std::abs(a) < kCoincidenceTol) return cd(t, 0.0) * (1.0 + 0.5 * a * t);
    return (std::exp(a * t) - 1.0) / a;
}

} // namespace

double w(const LevyModel& model, double q, double x) {
    if (x < 0.0) return 0.0;
    return ExpSum::scale_w(model, q).value(x);
}

double w_prime(const LevyModel& model, double q, double x) {
    return ExpSum::scale_w(model, q).derivative(x);
}

double z(const LevyModel& model, double r, double theta, double x) {
    if (!(r > 0.0)) throw std::domain_error("z: r must be > 0");
    if (theta < 0.0) throw std::domain_error("z: theta must be >= 0");
    if (x <= 0.0) return std::exp(theta * x);
    const ExpSum wr = ExpSum::scale_w(model, r);
    const double factor = r - model.laplace_exponent(theta);
    return std::exp(theta * x) *
           (1.0 + factor * wr.laplace_partial_integral(theta, x));
}

double z_prime(const LevyModel& model, double q, double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("z_prime: lambda must be > 0");
    if (x == 0.0 && model.variation_class() == VariationClass::Bounded)
        throw std::domain_error(
            "z_prime: kink at 0 for bounded variation models");
    const double phi = model.phi(q);
    return phi * z(model, q + lambda, phi, x) +
           lambda * w(model, q + lambda, x);
}

double script_w(const LevyModel& model, double q, double lambda, double b,
                double x) {
    if (!(lambda > 0.0))
        throw std::domain_error("script_w: lambda must be > 0");
    if (x <= 0.0) return w(model, q, x + b);

    const ExpSum wq = ExpSum::scale_w(model, q);
    const ExpSum wql = ExpSum::scale_w(model, q + lambda);

    double out = wq.value(x + b);
    const double u0 = std::max(0.0, -b); // W^(q)(u+b) vanishes below u = -b
    if (x <= u0) return out;

    cd conv(0.0, 0.0);
    for (const auto& ti : wq.terms()) {
        const cd eb = ti.residue * std::exp(ti.root * b);
        for (const auto& tj : wql.terms()) {
            const cd diff = ti.root - tj.root;
            conv += eb * tj.residue * std::exp(tj.root * x) *
                    (exp_integral(diff, x) - exp_integral(diff, u0));
        }
    }
    return out + lambda * conv.real();
}

double gamma_integral(const LevyModel& model, double q, double lambda,
                      const Reward& reward, double x, double l) {
    if (!(lambda > 0.0))
        throw std::domain_error("gamma_integral: lambda must be > 0");
    if (x >= l) return 0.0;
    const ExpSum wql = ExpSum::scale_w(model, q + lambda);
    if (const auto affine = reward.exp_affine()) {
        const auto [c0, c1] = *affine;
        return wql.exp_affine_weighted_integral(c0, c1, x, l - x);
    }
    return adaptive_simpson(
        [&](double u) { return reward.value(u + x) * wql.value(u); }, 0.0,
        l - x, 1e-10, 40);
}

double exit_down_one_sided(const LevyModel& model, double q, double x) {
    if (x <= 0.0) return 1.0; // immediate passage below the barrier
    return std::exp(-model.phi(q) * x);
}

double exit_down_two_sided(const LevyModel& model, double q, double x,
                           double b) {
    if (!(b > 0.0))
        throw std::domain_error("exit_down_two_sided: b must be > 0");
    if (x < 0.0 || x > b)
        throw std::domain_error("exit_down_two_sided: x outside [0, b]");
    const ExpSum wq = ExpSum::scale_w(model, q);
    return wq.value(b - x) / wq.value(b);
}

double exit_up_overshoot_laplace(const LevyModel& model, double q, double x,
                                 double b, double theta) {
    if (theta < 0.0)
        throw std::domain_error("exit_up_overshoot_laplace: theta >= 0");
    if (x < 0.0 || x > b)
        throw std::domain_error("exit_up_overshoot_laplace: x outside [0, b]");
    const ExpSum wq = ExpSum::scale_w(model, q);
    const double factor = q - model.laplace_exponent(theta);
    const auto z_of = [&](double y) {
        if (y <= 0.0) return std::exp(theta * y);
        return std::exp(theta * y) *
               (1.0 + factor * wq.laplace_partial_integral(theta, y));
    };
    return z_of(b - x) - z_of(b) * wq.value(b - x) / wq.value(b);
}

double resolvent_two_sided(const LevyModel& model, double q,
                           const std::function<double(double)>& f, double x,
                           double a, double b) {
    if (!(a < b)) throw std::domain_error("resolvent_two_sided: need a < b");
    if (x < a || x > b) return 0.0;
    const ExpSum wq = ExpSum::scale_w(model, q);
    const double ratio = wq.value(b - x) / wq.value(b - a);
    const auto density = [&](double u) {
        return f(b - u) * (ratio * wq.value(b - a - u) - wq.value(b - x - u));
    };
    // The density kinks at u = b - x where the second scale term hits 0.
    const double split = b - x;
    if (split <= 0.0 || split >= b - a)
        return adaptive_simpson(density, 0.0, b - a, 1e-10, 40);
    return adaptive_simpson(density, 0.0, split, 1e-10, 40) +
           adaptive_simpson(density, split, b - a, 1e-10, 40);
}

} // namespace levygame
