#ifndef LEVYGAME_EXP_SUM_HPP
#define LEVYGAME_EXP_SUM_HPP

#include "levygame/levy_model.hpp"

#include <complex>
#include <vector>

namespace levygame {

/// Finite exponential sum sum_i residue_i exp(root_i x), the representation
/// of every scale-type function of a rational Laplace exponent. Conjugate
/// root pairs carry conjugate residues, so real evaluations stay real up to
/// rounding. The value is defined as 0 on the negative half-line.
class ExpSum {
public:
    struct Term {
        std::complex<double> root;
        std::complex<double> residue;
    };

    ExpSum(std::vector<Term> terms, double q);

    /// W^(q) as an exponential sum: residues 1/psi'(root_i) over the roots
    /// of psi(s) = q.
    static ExpSum scale_w(const LevyModel& model, double q);

    double q() const { return q_; }
    const std::vector<Term>& terms() const { return terms_; }

    /// Sum of residues; equals the value at 0+ (0 for unbounded variation,
    /// 1/mu for bounded variation when built by scale_w).
    double value_at_zero() const;

    /// 0 for x < 0, otherwise the real part of the term sum. Large exponents
    /// are evaluated with the dominant term factored out.
    double value(double x) const;

    /// Term-wise derivative; domain error for x <= 0 (kink of the scale
    /// function at the origin).
    double derivative(double x) const;

    /// Term-wise derivative extended to x = 0+ by its finite limit.
    double derivative_right_limit(double x) const;

    /// int_0^x exp(-theta u) value(u) du in closed form, x >= 0.
    double laplace_partial_integral(double theta, double x) const;

    /// int_0^d (c0 + c1 exp(u + x)) value(u) du in closed form, d >= 0.
    /// This is the reward-weighted integral for exponential-affine rewards.
    double exp_affine_weighted_integral(double c0, double c1, double x,
                                        double d) const;

private:
    std::vector<Term> terms_;
    double q_;
    double max_real_root_;
};

} // namespace levygame

#endif
