#include "levygame/levy_model.hpp"

#include "levygame/errors.hpp"
#include "levygame/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace levygame {

namespace {

using cd = std::complex<double>;

void check_domain(double s, double beta) {
    if (s <= -beta)
        throw std::domain_error("laplace_exponent: s <= -beta is outside the "
                                "analytic domain");
}

/// Stable complex quadratic solve of a s^2 + b s + c = 0, a != 0.
std::vector<cd> solve_quadratic(double a, double b, double c) {
    const cd disc = std::sqrt(cd(b * b - 4.0 * a * c, 0.0));
    // Pick the subtraction-free branch first.
    const cd u = (b >= 0.0) ? (-b - disc) : (-b + disc);
    const cd r1 = u / (2.0 * a);
    const cd r2 = (2.0 * c) / u;
    return {r1, r2};
}

/// Closed-form roots of a s^3 + b s^2 + c s + d = 0 with complex arithmetic.
std::vector<cd> solve_cubic(double a, double b, double c, double d) {
    const cd d0 = cd(b * b - 3.0 * a * c, 0.0);
    const cd d1 = cd(2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d, 0.0);
    cd inner = std::sqrt(d1 * d1 - 4.0 * d0 * d0 * d0);
    // Choose the sign that avoids cancellation in d1 +- inner.
    cd big = d1 + inner;
    if (std::abs(d1 - inner) > std::abs(big)) big = d1 - inner;
    cd C = std::pow(0.5 * big, 1.0 / 3.0);
    if (std::abs(C) == 0.0) {
        // Triple root; downstream distinctness validation rejects it.
        const cd r = cd(-b / (3.0 * a), 0.0);
        return {r, r, r};
    }
    const cd zeta(-0.5, std::sqrt(3.0) / 2.0);
    std::vector<cd> roots;
    cd ck = C;
    for (int k = 0; k < 3; ++k) {
        roots.push_back(-(cd(b, 0.0) + ck + d0 / ck) / (3.0 * a));
        ck *= zeta;
    }
    return roots;
}

} // namespace

LevyModel::LevyModel(double mu, double nu, double alpha, double beta)
    : mu_(mu), nu_(nu), alpha_(alpha), beta_(beta) {
    if (!(beta > 0.0))
        throw std::invalid_argument("LevyModel: beta must be > 0");
    if (nu < 0.0)
        throw std::invalid_argument("LevyModel: nu must be >= 0");
    if (alpha < 0.0)
        throw std::invalid_argument("LevyModel: alpha must be >= 0");
    if (!(std::isfinite(mu) && std::isfinite(nu) && std::isfinite(alpha) &&
          std::isfinite(beta)))
        throw std::invalid_argument("LevyModel: parameters must be finite");
    // Monotone paths are excluded: with nu = 0 the process must drift down.
    if (nu == 0.0 && !(mu > 0.0))
        throw std::invalid_argument(
            "LevyModel: subordinator excluded (nu = 0 requires mu > 0)");
}

double LevyModel::laplace_exponent(double s) const {
    check_domain(s, beta_);
    return mu_ * s + 0.5 * nu_ * nu_ * s * s +
           alpha_ * (beta_ / (beta_ + s) - 1.0);
}

std::complex<double> LevyModel::laplace_exponent(std::complex<double> s) const {
    return mu_ * s + 0.5 * nu_ * nu_ * s * s +
           alpha_ * (beta_ / (beta_ + s) - 1.0);
}

double LevyModel::laplace_exponent_derivative(double s) const {
    check_domain(s, beta_);
    const double bs = beta_ + s;
    return mu_ + nu_ * nu_ * s - alpha_ * beta_ / (bs * bs);
}

std::complex<double>
LevyModel::laplace_exponent_derivative(std::complex<double> s) const {
    const cd bs = beta_ + s;
    return mu_ + nu_ * nu_ * s - alpha_ * beta_ / (bs * bs);
}

double LevyModel::phi(double q) const {
    if (!(q > 0.0)) throw std::domain_error("phi: q must be > 0");
    // psi is convex with psi(0) = 0 and psi(s) -> infinity, so doubling the
    // upper end until psi exceeds q yields a valid bracket.
    double hi = 1.0;
    while (laplace_exponent(hi) <= q) hi *= 2.0;
    double root = bisect([&](double s) { return laplace_exponent(s) - q; },
                         0.0, hi, 1e-12);
    const double dpsi = laplace_exponent_derivative(root);
    if (dpsi != 0.0) root -= (laplace_exponent(root) - q) / dpsi;
    return root;
}

RootSet LevyModel::equation_roots(double q) const {
    if (!(q > 0.0)) throw std::domain_error("equation_roots: q must be > 0");

    std::vector<cd> roots;
    if (alpha_ > 0.0) {
        // (psi(s) - q)(beta + s) expanded in s.
        const double c3 = 0.5 * nu_ * nu_;
        const double c2 = mu_ + 0.5 * nu_ * nu_ * beta_;
        const double c1 = mu_ * beta_ - alpha_ - q;
        const double c0 = -q * beta_;
        roots = (nu_ > 0.0) ? solve_cubic(c3, c2, c1, c0)
                            : solve_quadratic(c2, c1, c0);
    } else {
        // No jump part: psi - q is itself a polynomial and the factor
        // (beta + s) would only contribute the excluded root s = -beta.
        if (nu_ > 0.0) {
            roots = solve_quadratic(0.5 * nu_ * nu_, mu_, -q);
        } else {
            roots = {cd(q / mu_, 0.0)};
        }
    }

    // One Newton polish per root against psi(s) - q restores full precision
    // after the closed-form solve.
    for (auto& s : roots) {
        for (int it = 0; it < 2; ++it) {
            const cd f = laplace_exponent(s) - q;
            const cd df = laplace_exponent_derivative(s);
            if (std::abs(df) == 0.0) break;
            s -= f / df;
        }
        if (std::abs(s.imag()) < 1e-12 * std::max(1.0, std::abs(s.real())))
            s = cd(s.real(), 0.0);
    }

    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= 1e-8) {
                std::ostringstream msg;
                msg << "equation_roots: roots " << roots[i].real() << "+"
                    << roots[i].imag() << "i and " << roots[j].real() << "+"
                    << roots[j].imag() << "i are nearly repeated";
                throw NearlyRepeatedRootsError(msg.str());
            }

    const double tol = 1e-9 * std::max(1.0, std::abs(q));
    for (const auto& s : roots)
        if (std::abs(laplace_exponent(s) - q) > tol)
            throw std::runtime_error("equation_roots: root failed the "
                                     "psi(s) = q residual check");

    RootSet out;
    out.q = q;
    out.roots = roots;
    const auto top = std::max_element(
        roots.begin(), roots.end(),
        [](const cd& a, const cd& b) { return a.real() < b.real(); });
    if (top == roots.end() || top->imag() != 0.0 || !(top->real() > 0.0))
        throw std::runtime_error("equation_roots: no real positive root");
    out.phi = top->real();
    return out;
}

} // namespace levygame
