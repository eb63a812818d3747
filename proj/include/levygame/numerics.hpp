#ifndef LEVYGAME_NUMERICS_HPP
#define LEVYGAME_NUMERICS_HPP

#include <cmath>
#include <functional>

namespace levygame {

/// Bisection on [lo, hi]. Requires f(lo) and f(hi) of opposite sign
/// (zero endpoint values are accepted as roots). Stops when the bracket
/// width falls below xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol = 1e-12, int max_iter = 200);

/// Adaptive Simpson quadrature with absolute tolerance and bounded depth.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10, int max_depth = 40);

/// Central finite difference (f(x+h) - f(x-h)) / 2h.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace levygame

#endif
