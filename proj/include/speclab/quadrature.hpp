// 1D quadrature rules used by the orthonormality checks and coupling oracles.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace speclab {

struct Quad1D {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Gauss-Legendre on [-1,1], exact for polynomials of degree 2n-1.
// Nodes by Newton iteration on P_n, standard three-term recurrence.
inline Quad1D gauss_legendre(std::size_t n) {
    Quad1D q;
    q.x.resize(n);
    q.w.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.x[i] = -x;
        q.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.w[i] = w;
        q.w[n - 1 - i] = w;
    }
    return q;
}

// Affine image of gauss_legendre on [lo, hi].
inline Quad1D gauss_legendre_on(std::size_t n, double lo, double hi) {
    Quad1D q = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
        q.x[i] = mid + half * q.x[i];
        q.w[i] *= half;
    }
    return q;
}

// Composite trapezoid on [0, len] with n intervals. Exact for cos(j pi x/len)
// with 0 < j < 2n, which covers every integrand this project feeds it.
inline Quad1D trapezoid(std::size_t n, double len) {
    Quad1D q;
    q.x.resize(n + 1);
    q.w.resize(n + 1);
    const double h = len / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        q.x[i] = h * static_cast<double>(i);
        q.w[i] = (i == 0 || i == n) ? 0.5 * h : h;
    }
    return q;
}

// Rectangle rule on the periodic interval [0, len): exact for trigonometric
// polynomials of degree < n.
inline Quad1D periodic_rectangle(std::size_t n, double len) {
    Quad1D q;
    q.x.resize(n);
    q.w.resize(n);
    const double h = len / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.x[i] = h * static_cast<double>(i);
        q.w[i] = h;
    }
    return q;
}

}  // namespace speclab
