#ifndef LEVYGAME_VERIFICATION_HPP
#define LEVYGAME_VERIFICATION_HPP

#include "levygame/equilibrium.hpp"

#include <string>

namespace levygame {

/// Numerical check of the variational-inequality system certifying the
/// equilibrium, plus the hazard-rate sign test for player C and the
/// smooth-fit diagnostics. Produced by verify_equilibrium; never throws --
/// evaluation problems surface as a failing report.
struct VerificationReport {
    // Generator residuals: (L - q) v_p above l*, and
    // (L - (q + lambda)) v_p + lambda f_p between a* and l*.
    double max_generator_residual_above = 0.0;
    double max_generator_residual_between = 0.0;
    bool generator_ok = false;

    // Inequalities: v_p >= f_p on [l*, l*+5], v_p <= f_p on [a*, l*],
    // v_p = 0 at and below a*.
    bool vp_dominates_reward_above = false;
    bool vp_below_reward_between = false;
    bool vp_zero_below = false;

    // Hazard-rate test: h^ changes sign exactly at -a*.
    bool hazard_sign_ok = false;

    // Smooth fit: v_c' continuous at a*; v_c' kinks at l* iff bounded
    // variation; v_p' continuous at l*; v_c decreasing and convex beyond a*.
    double vc_slope_gap_at_a = 0.0;
    double vc_kink_at_l = 0.0;
    bool vc_l_kink_expected = false;
    bool vc_smooth_ok = false;
    double vp_kink_at_l = 0.0;
    bool vp_smooth_ok = false;
    bool vc_decreasing_convex = false;

    // First-order condition residuals at the supplied pair.
    double c_a_residual = 0.0;
    double c_l_residual = 0.0;
    bool first_order_ok = false;

    // Non-empty when evaluation itself failed.
    std::string error;

    bool all_pass() const;

    /// Deterministic multi-line text rendering (17 significant digits).
    std::string summary() const;
};

struct VerificationOptions {
    double generator_tol = 1e-5;
    double smooth_fit_tol = 1e-5;
    double first_order_tol = 1e-8;
    int grid_points = 24;
};

VerificationReport verify_equilibrium(const GameSpec& spec,
                                      const Equilibrium& eq,
                                      const VerificationOptions& options = {});

} // namespace levygame

#endif
