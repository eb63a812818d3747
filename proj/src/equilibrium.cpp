#include "levygame/equilibrium.hpp"

#include "levygame/errors.hpp"
#include "levygame/numerics.hpp"
#include "levygame/scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace levygame {

namespace {

using cd = std::complex<double>;

constexpr double kCoincidenceTol = 1e-9;
constexpr double kFactorThreshold = 600.0;

} // namespace

GameSpec::GameSpec(LevyModel model, double q, double lambda,
                   GameRewards rewards)
    : model_(model),
      q_(q),
      lambda_(lambda),
      rewards_(std::move(rewards)),
      phi_(0.0),
      w_ql_(ExpSum::scale_w(model, [&] {
          if (!(q > 0.0)) throw std::invalid_argument("GameSpec: q must be > 0");
          if (!(lambda > 0.0))
              throw std::invalid_argument("GameSpec: lambda must be > 0");
          return q + lambda;
      }())),
      w_ql_zero_(0.0),
      phi_ql_(0.0) {
    phi_ = model_.phi(q_);
    w_ql_zero_ = model_.variation_class() == VariationClass::Unbounded
                     ? 0.0
                     : 1.0 / model_.mu();
    for (const auto& t : w_ql_.terms())
        phi_ql_ = std::max(phi_ql_, t.root.real());

    // Standing assumption: player C's single-player threshold is finite.
    a_under_ = a_underbar(model_, q_, *rewards_.c);
    x_under_c_ = *x_under(model_, q_, lambda_, *rewards_.c, Player::C);
    x_under_p_ = x_under(model_, q_, lambda_, *rewards_.p, Player::P);
    x_bar_c_ = rewards_.c->root();
    x_bar_p_ = rewards_.p->root();
}

std::pair<double, double> GameSpec::z_ql_scaled(double x) const {
    if (x <= 0.0) return {1.0, phi_ * x};
    const double shift = std::max(phi_, phi_ql_) * x;
    const bool rescale = shift > kFactorThreshold;
    const double base = rescale ? shift : 0.0;
    cd sum = std::exp(cd(phi_ * x - base, 0.0));
    for (const auto& t : w_ql_.terms()) {
        const cd diff = t.root - phi_;
        if (std::abs(diff) < kCoincidenceTol) {
            sum += lambda_ * t.residue * x * std::exp(phi_ * x - base);
        } else {
            sum += lambda_ * t.residue *
                   (std::exp(t.root * x - base) -
                    std::exp(cd(phi_ * x - base, 0.0))) /
                   diff;
        }
    }
    return {sum.real(), base};
}

double GameSpec::z_ql(double x) const {
    const auto [mantissa, shift] = z_ql_scaled(x);
    return mantissa * std::exp(shift);
}

double GameSpec::z_ratio(double num, double den) const {
    const auto [mn, sn] = z_ql_scaled(num);
    const auto [md, sd] = z_ql_scaled(den);
    return mn / md * std::exp(sn - sd);
}

double GameSpec::gamma_weighted(int order, double x, double l) const {
    if (x >= l) return 0.0;
    const Reward& fp = *rewards_.p;
    if (const auto affine = fp.exp_affine()) {
        const auto [c0, c1] = *affine;
        // Derivatives of c0 + c1 e^y keep only the exponential part.
        return w_ql_.exp_affine_weighted_integral(order == 0 ? c0 : 0.0, c1,
                                                  x, l - x);
    }
    const auto weight = [&](double y) {
        switch (order) {
            case 0: return fp.value(y);
            case 1: return fp.slope(y);
            default: return fp.curvature(y);
        }
    };
    return adaptive_simpson(
        [&](double u) { return weight(u + x) * w_ql_.value(u); }, 0.0, l - x,
        1e-10, 40);
}

double GameSpec::gamma_p(double x, double l) const {
    return gamma_weighted(0, x, l);
}

double GameSpec::gamma_p_slope(double x, double l) const {
    return gamma_weighted(1, x, l);
}

double GameSpec::gamma_p_curvature(double x, double l) const {
    return gamma_weighted(2, x, l);
}

double v_c(const GameSpec& spec, double x, double a, double l) {
    if (l < a) // player P never stops first; single-player problem
        return v_single_player(spec.model(), spec.q(), spec.reward_c(), x, a);
    if (x <= a) return spec.reward_c().value(x);
    return spec.reward_c().value(a) * spec.z_ratio(l - x, l - a);
}

double v_p(const GameSpec& spec, double x, double a, double l) {
    if (l < a || x <= a) return 0.0;
    return spec.lambda() * (spec.z_ratio(l - x, l - a) * spec.gamma_p(a, l) -
                            spec.gamma_p(x, l));
}

namespace {

void check_finite_ordering(double a, double l, double b) {
    if (!(b >= l && l >= a))
        throw std::domain_error("finite-horizon value: need a <= l <= b");
}

} // namespace

double v_c_finite(const GameSpec& spec, double x, double a, double l,
                  double b) {
    check_finite_ordering(a, l, b);
    if (x <= a) return spec.reward_c().value(x);
    const double num = script_w(spec.model(), spec.q(), spec.lambda(), b - l,
                                l - x);
    const double den = script_w(spec.model(), spec.q(), spec.lambda(), b - l,
                                l - a);
    return spec.reward_c().value(a) * num / den;
}

double v_p_finite(const GameSpec& spec, double x, double a, double l,
                  double b) {
    check_finite_ordering(a, l, b);
    if (x <= a) return 0.0;
    const double num = script_w(spec.model(), spec.q(), spec.lambda(), b - l,
                                l - x);
    const double den = script_w(spec.model(), spec.q(), spec.lambda(), b - l,
                                l - a);
    return spec.lambda() *
           (num / den * spec.gamma_p(a, l) - spec.gamma_p(x, l));
}

double big_i(const GameSpec& spec, double a, double l) {
    if (!(a <= l)) throw std::domain_error("big_i: need a <= l");
    const Reward& fc = spec.reward_c();
    const double vc_l = fc.value(a) / spec.z_ql(l - a);
    return fc.slope(a) + spec.phi() * fc.value(a) +
           spec.lambda() * spec.w_ql(l - a) * vc_l;
}

double big_j(const GameSpec& spec, double l, double a) {
    if (!(l >= a)) throw std::domain_error("big_j: need l >= a");
    return spec.reward_p().value(l) * spec.z_ql(l - a) -
           spec.lambda() * spec.gamma_p(a, l);
}

double dv_c_da(const GameSpec& spec, double x, double a, double l) {
    if (!(a < l && a < x))
        throw std::domain_error("dv_c_da: need a < l and a < x");
    return spec.z_ratio(l - x, l - a) * big_i(spec, a, l);
}

double dv_p_dl(const GameSpec& spec, double x, double a, double l) {
    if (!(x >= a && l > a && l != x))
        throw std::domain_error("dv_p_dl: need x >= a, l > a, l != x");
    const double vp_l = spec.lambda() * spec.gamma_p(a, l) / spec.z_ql(l - a);
    return spec.lambda() *
           (spec.z_ratio(l - x, l - a) * spec.w_ql(l - a) -
            spec.w_ql(l - x)) *
           (spec.reward_p().value(l) - vp_l);
}

double best_response_a(const GameSpec& spec, double l) {
    const double lo = spec.x_under_c();
    if (l < lo)
        throw NoBestResponseError(
            "best_response_a: I(.; l) has no root for l < x_under_c");
    if (l == lo) return lo;
    const double hi = std::min(spec.x_bar_c(), l);
    if (!(big_i(spec, lo, l) >= 0.0) || !(big_i(spec, hi, l) <= 0.0))
        throw NoBestResponseError(
            "best_response_a: bracket endpoints lost their signs");
    return bisect([&](double a) { return big_i(spec, a, l); }, lo, hi, 1e-13);
}

double best_response_l(const GameSpec& spec, double a) {
    if (!(a < spec.x_bar_p()))
        throw std::domain_error("best_response_l: need a < x_bar_p");
    // J(a; a) = f_p(a) > 0 and J(x_bar_p; a) = -lambda Gamma(a; x_bar_p) < 0,
    // with a single crossing between them.
    return bisect([&](double l) { return big_j(spec, l, a); }, a,
                  spec.x_bar_p(), 1e-13);
}

Equilibrium solve_equilibrium(const GameSpec& spec,
                              const SolverOptions& options) {
    if (options.scan_points < 2)
        throw std::invalid_argument("solve_equilibrium: scan_points >= 2");
    constexpr double kEdge = 1e-9;
    const double lo = spec.x_under_c() + kEdge;
    const double hi = spec.x_bar_p() - kEdge;
    if (!(lo < hi))
        throw NoSignChangeError("solve_equilibrium: empty scan interval");

    const auto f = [&](double l) { return big_j(spec, l, best_response_a(spec, l)); };

    const int n = options.scan_points;
    std::vector<double> grid(n), values(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * i / (n - 1);
        values[i] = f(grid[i]);
    }
    if (!(values.front() > 0.0))
        throw NoSignChangeError(
            "solve_equilibrium: J(x_under_c; a~) must be positive");
    if (!(values.back() < 0.0))
        throw NoSignChangeError(
            "solve_equilibrium: J(x_bar_p; a~) must be negative");

    std::vector<double> roots;
    for (int i = 0; i + 1 < n; ++i) {
        if (values[i] == 0.0) {
            roots.push_back(grid[i]);
        } else if (values[i] * values[i + 1] < 0.0) {
            roots.push_back(
                bisect(f, grid[i], grid[i + 1], options.root_tol));
        }
    }
    if (roots.empty())
        throw NoSignChangeError(
            "solve_equilibrium: no sign change of J(.; a~(.)) on the grid");

    Equilibrium eq;
    eq.all_roots = roots;
    eq.l_star = roots.front(); // Pareto-superior minimal root
    eq.a_star = best_response_a(spec, eq.l_star);
    eq.i_residual = std::abs(big_i(spec, eq.a_star, eq.l_star));
    eq.j_residual = std::abs(big_j(spec, eq.l_star, eq.a_star));
    eq.pareto_minimal = true;
    return eq;
}

VoiResult value_of_information(const LevyModel& model, double q,
                               double lambda, double k_p, double x,
                               const SolverOptions& options, double gap_tol) {
    const auto gap_at = [&](double k_c) {
        GameSpec spec(model, q, lambda,
                      GameRewards(std::make_shared<PutReward>(k_c),
                                  std::make_shared<PutReward>(k_p)));
        const Equilibrium eq = solve_equilibrium(spec, options);
        return v_c(spec, x, eq.a_star, eq.l_star) -
               v_p(spec, x, eq.a_star, eq.l_star);
    };

    double lo = 1.0 + 1e-9;
    double hi = k_p * (1.0 - 1e-12);
    const double glo = gap_at(lo);
    const double ghi = gap_at(hi);
    // The gap is monotone increasing in K_c; demand that on the bracket.
    if (!(glo < 0.0 && ghi > 0.0))
        throw NoBracketError(
            "value_of_information: v_c - v_p does not change sign on "
            "(1, K_p)");
    double gap_lo = glo;
    double mid = 0.5 * (lo + hi);
    double gap_mid = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        gap_mid = gap_at(mid);
        if (std::abs(gap_mid) <= gap_tol) break;
        if (gap_lo * gap_mid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            gap_lo = gap_mid;
        }
    }
    VoiResult out;
    out.k_c = mid;
    out.delta = k_p - mid;
    out.gap = gap_mid;
    return out;
}

SweepResult sweep_lambda(const LevyModel& model, double q,
                         const GameRewards& rewards,
                         const std::vector<double>& lambdas,
                         std::vector<double> x_grid,
                         const SolverOptions& options) {
    if (lambdas.empty())
        throw std::invalid_argument("sweep_lambda: empty lambda list");
    if (!std::is_sorted(lambdas.begin(), lambdas.end()))
        throw std::invalid_argument("sweep_lambda: lambdas must be sorted");

    if (x_grid.empty()) {
        // Default grid spans the reward roots on the asset scale.
        const double lo = rewards.c->root() - 0.6;
        const double hi = rewards.p->root() + 0.4;
        for (int i = 0; i <= 24; ++i)
            x_grid.push_back(lo + (hi - lo) * i / 24.0);
    }

    SweepResult result;
    result.x_grid = x_grid;
    result.max_vc_increase = -std::numeric_limits<double>::infinity();
    for (double lambda : lambdas) {
        GameSpec spec(model, q, lambda, rewards);
        SweepRow row;
        row.lambda = lambda;
        row.eq = solve_equilibrium(spec, options);
        for (double x : x_grid) {
            row.v_c_curve.push_back(v_c(spec, x, row.eq.a_star, row.eq.l_star));
            row.v_p_curve.push_back(v_p(spec, x, row.eq.a_star, row.eq.l_star));
        }
        if (!result.rows.empty()) {
            const auto& prev = result.rows.back().v_c_curve;
            for (std::size_t i = 0; i < x_grid.size(); ++i)
                result.max_vc_increase = std::max(
                    result.max_vc_increase, row.v_c_curve[i] - prev[i]);
        }
        result.rows.push_back(std::move(row));
    }
    if (result.rows.size() < 2) result.max_vc_increase = 0.0;
    return result;
}

} // namespace levygame
