#include "levygame/verification.hpp"

#include "levygame/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace levygame {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(bool v) { return v ? "pass" : "FAIL"; }

/// Closed-form pieces of v_p(.; a, l) and its two derivatives away from the
/// kinks, written without using the first-order conditions so the checks
/// stay meaningful for perturbed (non-equilibrium) pairs.
struct VpPieces {
    const GameSpec& spec;
    double a, l;
    double gamma_a;  // Gamma(a; l)
    double z_den;    // Z^(q+lambda)(l - a)
    double vp_l;     // lambda Gamma(a; l) / Z(l - a)

    VpPieces(const GameSpec& s, double a_, double l_)
        : spec(s), a(a_), l(l_) {
        gamma_a = spec.gamma_p(a, l);
        z_den = spec.z_ql(l - a);
        vp_l = spec.lambda() * gamma_a / z_den;
    }

    double wql(double y) const { return spec.w_ql(y); }
    double wql_prime(double y) const {
        return y > 0.0 ? spec.w_ql_prime(y) : 0.0;
    }

    double value(double x) const {
        if (x <= a) return 0.0;
        return spec.lambda() * (spec.z_ratio(l - x, l - a) * gamma_a -
                                spec.gamma_p(x, l));
    }

    double first(double x) const {
        const double lam = spec.lambda();
        return lam * (-(spec.phi() * spec.z_ql(l - x) + lam * wql(l - x)) *
                          gamma_a / z_den +
                      spec.reward_p().value(l) * wql(l - x) -
                      spec.gamma_p_slope(x, l));
    }

    double second(double x) const {
        const double lam = spec.lambda();
        const double phi = spec.phi();
        return lam *
               ((phi * phi * spec.z_ql(l - x) + lam * phi * wql(l - x) +
                 lam * wql_prime(l - x)) *
                    gamma_a / z_den -
                spec.reward_p().value(l) * wql_prime(l - x) +
                spec.reward_p().slope(l) * wql(l - x) -
                spec.gamma_p_curvature(x, l));
    }
};

/// Infinitesimal generator applied to v_p through the compensated form,
/// with drift gamma = mu - int_0^1 z Pi(dz) and the jump integral by
/// adaptive quadrature plus a closed-form exponential tail.
double generator(const GameSpec& spec, const VpPieces& vp, double x) {
    const LevyModel& m = spec.model();
    const double mu = m.mu();
    const double alpha = m.alpha();
    const double beta = m.beta();

    const double v = vp.value(x);
    const double v1 = vp.first(x);
    const double v2 = vp.second(x);

    double out = 0.5 * m.nu() * m.nu() * v2;
    if (alpha == 0.0) return out - mu * v1;

    // mu = gamma + int_0^1 z Pi(dz) for this finite-activity measure.
    const double small_jump_mean =
        alpha * ((1.0 - std::exp(-beta)) / beta - std::exp(-beta));
    const double gamma_drift = mu - small_jump_mean;
    out -= gamma_drift * v1;

    const auto integrand = [&](double z) {
        const double comp = z < 1.0 ? v1 * z : 0.0;
        return (vp.value(x + z) - v - comp) * alpha * beta *
               std::exp(-beta * z);
    };
    const double to_l = vp.l - x;     // beyond it v_p is purely exponential
    const double z_cut = std::max(1.0, to_l);
    double jump = 0.0;
    if (to_l > 0.0 && to_l != 1.0) {
        const double b1 = std::min(1.0, to_l);
        const double b2 = std::max(1.0, to_l);
        jump += adaptive_simpson(integrand, 0.0, b1, 1e-9, 40);
        jump += adaptive_simpson(integrand, b1, b2, 1e-9, 40);
    } else {
        jump += adaptive_simpson(integrand, 0.0, z_cut, 1e-9, 40);
    }
    // Tail: v_p(x+z) = vp_l exp(Phi(q)(l - x - z)) for x + z >= l.
    const double c_exp = vp.vp_l * std::exp(spec.phi() * to_l);
    jump += alpha * beta * c_exp * std::exp(-(beta + spec.phi()) * z_cut) /
            (beta + spec.phi());
    jump -= alpha * v * std::exp(-beta * z_cut);
    return out + jump;
}

} // namespace

bool VerificationReport::all_pass() const {
    return error.empty() && generator_ok && vp_dominates_reward_above &&
           vp_below_reward_between && vp_zero_below && hazard_sign_ok &&
           vc_smooth_ok && vp_smooth_ok && vc_decreasing_convex &&
           first_order_ok;
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << "generator residual above l*     : "
       << fmt(max_generator_residual_above) << "\n"
       << "generator residual on (a*, l*)  : "
       << fmt(max_generator_residual_between) << " [" << fmt(generator_ok)
       << "]\n"
       << "v_p >= f_p on [l*, l*+5]        : "
       << fmt(vp_dominates_reward_above) << "\n"
       << "v_p <= f_p on [a*, l*]          : " << fmt(vp_below_reward_between)
       << "\n"
       << "v_p = 0 below a*                : " << fmt(vp_zero_below) << "\n"
       << "hazard-rate sign flip at -a*    : " << fmt(hazard_sign_ok) << "\n"
       << "v_c' gap at a*                  : " << fmt(vc_slope_gap_at_a)
       << "\n"
       << "v_c' kink at l*                 : " << fmt(vc_kink_at_l)
       << " (expected: " << (vc_l_kink_expected ? "kink" : "smooth") << ") ["
       << fmt(vc_smooth_ok) << "]\n"
       << "v_p' kink at l*                 : " << fmt(vp_kink_at_l) << " ["
       << fmt(vp_smooth_ok) << "]\n"
       << "v_c decreasing/convex beyond a* : " << fmt(vc_decreasing_convex)
       << "\n"
       << "C_a residual |I(a*; l*)|        : " << fmt(c_a_residual) << "\n"
       << "C_l residual |f_p - v_p|(l*)    : " << fmt(c_l_residual) << " ["
       << fmt(first_order_ok) << "]\n"
       << "overall                         : "
       << (all_pass() ? "PASS" : "FAIL") << "\n";
    if (!error.empty()) os << "error: " << error << "\n";
    return os.str();
}

VerificationReport verify_equilibrium(const GameSpec& spec,
                                      const Equilibrium& eq,
                                      const VerificationOptions& options) {
    VerificationReport rep;
    try {
        const double a = eq.a_star;
        const double l = eq.l_star;
        const double lam = spec.lambda();
        const double phi = spec.phi();
        const Reward& fp = spec.reward_p();
        const Reward& fc = spec.reward_c();
        const int n = options.grid_points;
        const VpPieces vp(spec, a, l);

        // (1) generator residuals.
        rep.max_generator_residual_above = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double x = l + 3.0 * i / n;
            const double res =
                generator(spec, vp, x) - spec.q() * vp.value(x);
            rep.max_generator_residual_above =
                std::max(rep.max_generator_residual_above, std::abs(res));
        }
        rep.max_generator_residual_between = 0.0;
        for (int i = 1; i < n; ++i) {
            const double x = a + (l - a) * i / n;
            const double res = generator(spec, vp, x) -
                               (spec.q() + lam) * vp.value(x) +
                               lam * fp.value(x);
            rep.max_generator_residual_between =
                std::max(rep.max_generator_residual_between, std::abs(res));
        }
        rep.generator_ok =
            rep.max_generator_residual_above <= options.generator_tol &&
            rep.max_generator_residual_between <= options.generator_tol;

        // (2) inequality conditions.
        rep.vp_dominates_reward_above = true;
        for (int i = 0; i <= n; ++i) {
            const double x = l + 5.0 * i / n;
            if (vp.value(x) < fp.value(x) - 1e-9)
                rep.vp_dominates_reward_above = false;
        }
        rep.vp_below_reward_between = true;
        for (int i = 0; i <= n; ++i) {
            const double x = a + (l - a) * i / n;
            if (vp.value(x) > fp.value(x) + 1e-9)
                rep.vp_below_reward_between = false;
        }

        // (3) absorption below a*.
        rep.vp_zero_below = v_p(spec, a, a, l) == 0.0 &&
                            v_p(spec, a - 1.0, a, l) == 0.0 &&
                            v_p(spec, a - 2.5, a, l) == 0.0;

        // (4) hazard-rate sign flip at -a*.
        rep.hazard_sign_ok = true;
        for (int i = 0; i <= 80; ++i) {
            const double y = -a - 2.0 + 4.0 * i / 80.0;
            if (std::abs(y + a) < 1e-8) continue;
            const double hazard =
                phi + lam * spec.w_ql(l + y) / spec.z_ql(l + y);
            const double h_hat = fc.value(-y) + fc.slope(-y) / hazard;
            if (y < -a && h_hat > 1e-12) rep.hazard_sign_ok = false;
            if (y > -a && h_hat <= -1e-12) rep.hazard_sign_ok = false;
        }

        // (5) smooth fit.
        const double vc_l = fc.value(a) / spec.z_ql(l - a);
        const auto vc_slope = [&](double x) {
            return -(phi * spec.z_ql(l - x) + lam * spec.w_ql(l - x)) * vc_l;
        };
        rep.vc_slope_gap_at_a = std::abs(vc_slope(a) - fc.slope(a));
        const double vc_slope_l_minus =
            -(phi + lam * spec.w_ql_zero()) * vc_l;
        const double vc_slope_l_plus = -phi * vc_l;
        rep.vc_kink_at_l = std::abs(vc_slope_l_plus - vc_slope_l_minus);
        rep.vc_l_kink_expected =
            spec.model().variation_class() == VariationClass::Bounded;
        rep.vc_smooth_ok =
            rep.vc_slope_gap_at_a <= options.smooth_fit_tol &&
            (rep.vc_l_kink_expected
                 ? rep.vc_kink_at_l > options.smooth_fit_tol
                 : rep.vc_kink_at_l <= options.smooth_fit_tol);

        const double vp_slope_l_minus =
            lam * (-(phi + lam * spec.w_ql_zero()) * vp.gamma_a / vp.z_den +
                   fp.value(l) * spec.w_ql_zero());
        const double vp_slope_l_plus = lam * (-phi * vp.gamma_a / vp.z_den);
        rep.vp_kink_at_l = std::abs(vp_slope_l_plus - vp_slope_l_minus);
        rep.vp_smooth_ok = rep.vp_kink_at_l <= options.smooth_fit_tol;

        rep.vc_decreasing_convex = true;
        const double span = 6.0;
        const double h = span / 60.0;
        std::vector<double> vc_vals;
        for (int i = 1; i <= 61; ++i) {
            const double x = a + h * i;
            vc_vals.push_back(v_c(spec, x, a, l));
            if (x != l && vc_slope(x) > 1e-12)
                rep.vc_decreasing_convex = false;
        }
        for (std::size_t i = 1; i + 1 < vc_vals.size(); ++i) {
            const double second =
                vc_vals[i - 1] - 2.0 * vc_vals[i] + vc_vals[i + 1];
            if (second < -1e-7) rep.vc_decreasing_convex = false;
        }

        // First-order conditions at the supplied pair.
        rep.c_a_residual = std::abs(big_i(spec, a, l));
        rep.c_l_residual = std::abs(fp.value(l) - vp.vp_l);
        rep.first_order_ok = rep.c_a_residual <= options.first_order_tol &&
                             rep.c_l_residual <= options.first_order_tol;
    } catch (const std::exception& ex) {
        rep.error = ex.what();
    }
    return rep;
}

} // namespace levygame
