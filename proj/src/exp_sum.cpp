#include "levygame/exp_sum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levygame {

namespace {

using cd = std::complex<double>;

constexpr double kCoincidenceTol = 1e-9; // switch to the u-linear limit form
constexpr double kFactorThreshold = 600.0;

/// int_0^x exp(a u) du with the linear limit near a = 0.
cd exp_integral(cd a, double x) {
    if (std::abs(a) < kCoincidenceTol) return cd(x, 0.0) * (1.0 + 0.5 * a * x);
    return (std::exp(a * x) - 1.0) / a;
}

} // namespace

ExpSum::ExpSum(std::vector<Term> terms, double q)
    : terms_(std::move(terms)), q_(q) {
    max_real_root_ = 0.0;
    for (const auto& t : terms_)
        max_real_root_ = std::max(max_real_root_, t.root.real());
}

ExpSum ExpSum::scale_w(const LevyModel& model, double q) {
    const RootSet rs = model.equation_roots(q);
    std::vector<Term> terms;
    terms.reserve(rs.roots.size());
    for (const auto& root : rs.roots)
        terms.push_back({root, 1.0 / model.laplace_exponent_derivative(root)});
    return ExpSum(std::move(terms), q);
}

double ExpSum::value_at_zero() const {
    cd sum(0.0, 0.0);
    for (const auto& t : terms_) sum += t.residue;
    return sum.real();
}

double ExpSum::value(double x) const {
    if (x < 0.0) return 0.0;
    if (max_real_root_ * x > kFactorThreshold) {
        const double shift = max_real_root_ * x;
        cd sum(0.0, 0.0);
        for (const auto& t : terms_)
            sum += t.residue * std::exp(t.root * x - shift);
        return sum.real() * std::exp(shift);
    }
    cd sum(0.0, 0.0);
    for (const auto& t : terms_) sum += t.residue * std::exp(t.root * x);
    return sum.real();
}

double ExpSum::derivative(double x) const {
    if (x <= 0.0)
        throw std::domain_error("ExpSum::derivative: x must be > 0");
    return derivative_right_limit(x);
}

double ExpSum::derivative_right_limit(double x) const {
    cd sum(0.0, 0.0);
    for (const auto& t : terms_)
        sum += t.residue * t.root * std::exp(t.root * x);
    return sum.real();
}

double ExpSum::laplace_partial_integral(double theta, double x) const {
    if (x <= 0.0) return 0.0;
    cd sum(0.0, 0.0);
    for (const auto& t : terms_)
        sum += t.residue * exp_integral(t.root - theta, x);
    return sum.real();
}

double ExpSum::exp_affine_weighted_integral(double c0, double c1, double x,
                                            double d) const {
    if (d <= 0.0) return 0.0;
    cd sum(0.0, 0.0);
    const double ex = std::exp(x);
    for (const auto& t : terms_) {
        sum += t.residue *
               (c0 * exp_integral(t.root, d) +
                c1 * ex * exp_integral(t.root + 1.0, d));
    }
    return sum.real();
}

} // namespace levygame
