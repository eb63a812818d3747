#ifndef LEVYGAME_SCALE_HPP
#define LEVYGAME_SCALE_HPP

#include "levygame/exp_sum.hpp"
#include "levygame/levy_model.hpp"
#include "levygame/rewards.hpp"

#include <functional>

namespace levygame {

/// W^(q)(x): 0 for x < 0, exponential sum over the roots of psi(s) = q for
/// x >= 0.
double w(const LevyModel& model, double q, double x);

/// Term-wise derivative of W^(q); domain error at x <= 0.
double w_prime(const LevyModel& model, double q, double x);

/// Z^(r)(x; theta) = exp(theta x)(1 + (r - psi(theta)) int_0^x
/// exp(-theta u) W^(r)(u) du); equals exp(theta x) for x <= 0. Evaluated
/// term-wise in closed form.
double z(const LevyModel& model, double r, double theta, double x);

/// d/dx Z^(q+lambda)(x; Phi(q)) = Phi(q) Z^(q+lambda)(x; Phi(q)) +
/// lambda W^(q+lambda)(x). Domain error at x = 0 for bounded variation
/// (the scale function kinks there).
double z_prime(const LevyModel& model, double q, double lambda, double x);

/// Composite scale function for mixed continuous/Poisson monitoring:
/// script W^(q,lambda)_b(x) = W^(q)(x+b) +
///   lambda int_0^x W^(q+lambda)(x-u) W^(q)(u+b) du,
/// which reduces to W^(q)(x+b) for x <= 0.
double script_w(const LevyModel& model, double q, double lambda, double b,
                double x);

/// Gamma(x; l) = int_0^{l-x} f_p(u+x) W^(q+lambda)(u) du; 0 when x >= l.
/// Closed form for exponential-affine rewards, adaptive quadrature
/// otherwise.
double gamma_integral(const LevyModel& model, double q, double lambda,
                      const Reward& reward, double x, double l);

/// E_x[exp(-q tau_0^-); tau_0^- < infinity] = exp(-Phi(q) x); clamps to 1
/// below the barrier (immediate passage).
double exit_down_one_sided(const LevyModel& model, double q, double x);

/// E_x[exp(-q tau_0^-); tau_b^+ > tau_0^-] = W^(q)(b-x) / W^(q)(b).
double exit_down_two_sided(const LevyModel& model, double q, double x,
                           double b);

/// E_x[exp(-q tau_b^+ - theta (X_{tau_b^+} - b)); tau_0^- > tau_b^+] =
/// Z^(q)(b-x; theta) - Z^(q)(b; theta) W^(q)(b-x) / W^(q)(b).
double exit_up_overshoot_laplace(const LevyModel& model, double q, double x,
                                 double b, double theta);

/// E_x[int_0^{tau_a^- ^ tau_b^+} exp(-q s) f(X_s) ds] via the two-sided
/// resolvent density, integrated by adaptive quadrature. Returns 0 for x
/// outside [a, b].
double resolvent_two_sided(const LevyModel& model, double q,
                           const std::function<double(double)>& f, double x,
                           double a, double b);

} // namespace levygame

#endif
