#ifndef LEVYGAME_LEVY_MODEL_HPP
#define LEVYGAME_LEVY_MODEL_HPP

#include <complex>
#include <vector>

namespace levygame {

enum class VariationClass { Bounded, Unbounded };

/// Roots of (psi(s) - q)(beta + s) = 0, excluding s = -beta. They carry the
/// partial-fraction basis of the q-scale function. `phi` is the unique real
/// root with the largest real part (the right inverse of psi at q).
struct RootSet {
    double q = 0.0;
    std::vector<std::complex<double>> roots;
    double phi = 0.0;
};

/// Spectrally positive jump diffusion
///
///   X_t = X_0 - mu t + nu B_t + sum_{n <= M_t} Z_n,
///
/// with M a Poisson process of rate alpha and Z_n i.i.d. Exp(beta). Its
/// Laplace exponent psi(s) = log E[exp(-s X_1)] is rational, so scale
/// functions are finite exponential sums over the roots of psi(s) = q.
class LevyModel {
public:
    /// Validates all parameters once here; every evaluation afterwards is
    /// a pure function of the stored values.
    LevyModel(double mu, double nu, double alpha, double beta);

    double mu() const { return mu_; }
    double nu() const { return nu_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// psi(s) = mu s + nu^2 s^2 / 2 + alpha (beta / (beta + s) - 1),
    /// defined for s > -beta; the public contract asks s >= 0.
    double laplace_exponent(double s) const;
    std::complex<double> laplace_exponent(std::complex<double> s) const;

    /// psi'(s) = mu + nu^2 s - alpha beta / (beta + s)^2.
    double laplace_exponent_derivative(double s) const;
    std::complex<double> laplace_exponent_derivative(std::complex<double> s) const;

    /// Largest nonnegative root of psi(s) = q, q > 0. Bracketing bisection
    /// polished by one Newton step; |psi(phi) - q| <= 1e-10.
    double phi(double q) const;

    /// All roots of (psi(s) - q)(beta + s) = 0 except s = -beta. Three roots
    /// for nu > 0, two for nu = 0 (one fewer when alpha = 0, where the factor
    /// beta + s is spurious). Throws NearlyRepeatedRootsError when two roots
    /// are closer than 1e-8.
    RootSet equation_roots(double q) const;

    VariationClass variation_class() const {
        return nu_ > 0.0 ? VariationClass::Unbounded : VariationClass::Bounded;
    }

private:
    double mu_;
    double nu_;
    double alpha_;
    double beta_;
};

} // namespace levygame

#endif
