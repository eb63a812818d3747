// Test-only numerical oracles, independent of the library's evaluation
// paths: fixed-panel composite Simpson, Gauss-Legendre nodes computed from
// scratch, and a plain bisection. Used to pin expected values.

#ifndef LEVYGAME_TESTS_ORACLES_HPP
#define LEVYGAME_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracles {

/// Composite Simpson with a fixed (even) panel count.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels = 10000) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>>
gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

/// 64-point Gauss-Legendre on [a, b].
inline double gauss64(const std::function<double(double)>& f, double a,
                      double b) {
    static const auto nodes = gauss_legendre(64);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 64; ++i)
        sum += nodes.second[i] * f(mid + half * nodes.first[i]);
    return sum * half;
}

/// Bisection requiring a sign change; independent of the library's root
/// helpers.
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, double tol = 1e-13) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::runtime_error("oracle bisect: no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace oracles

#endif
