#include "speclab/sphere_bases.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speclab/quadrature.hpp"

namespace speclab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kFactMax = 170;

const long double* factorial_table() {
    static long double table[kFactMax + 1] = {};
    if (table[0] == 0.0L) {
        table[0] = 1.0L;
        for (int i = 1; i <= kFactMax; ++i) table[i] = table[i - 1] * static_cast<long double>(i);
    }
    return table;
}

long double fact(int n) { return factorial_table()[n]; }

}  // namespace

double assoc_legendre(int n, int m, double x) {
    m = std::abs(m);  // P_n^{-m} = P_n^m
    if (m > n) return 0.0;
    // seed P_m^m = (2m-1)!! (1-x^2)^{m/2}
    double pmm = 1.0;
    if (m > 0) {
        double s = std::sqrt((1.0 - x) * (1.0 + x));
        double df = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= df * s;
            df += 2.0;
        }
    }
    if (n == m) return pmm;
    double pm1 = x * (2.0 * m + 1.0) * pmm;  // P_{m+1}^m
    if (n == m + 1) return pm1;
    double p = 0.0;
    for (int k = m + 2; k <= n; ++k) {
        p = (x * (2.0 * k - 1.0) * pm1 - (k + m - 1.0) * pmm) / (k - m);
        pmm = pm1;
        pm1 = p;
    }
    return p;
}

double assoc_legendre_dx(int n, int m, double x) {
    m = std::abs(m);
    if (m > n) return 0.0;
    // (x^2-1) dP_n/dx = n x P_n - (n+m) P_{n-1}
    return (n * x * assoc_legendre(n, m, x) - (n + m) * assoc_legendre(n - 1, m, x)) /
           ((x - 1.0) * (x + 1.0));
}

double assoc_legendre_dxx(int n, int m, double x) {
    m = std::abs(m);
    if (m > n) return 0.0;
    const double d = (x - 1.0) * (x + 1.0);
    const double pn = assoc_legendre(n, m, x);
    const double dpn = assoc_legendre_dx(n, m, x);
    const double dpn1 = assoc_legendre_dx(n - 1, m, x);
    return (n * pn + n * x * dpn - (n + m) * dpn1 - 2.0 * x * dpn) / d;
}

double assoc_legendre_rodrigues(int n, int m, double x) {
    m = std::abs(m);
    if (m > n) return 0.0;
    // (x^2-1)^n as integer-coefficient polynomial, differentiated n+m times
    std::vector<long double> c(2 * n + 1, 0.0L);
    long double binom = 1.0L;
    for (int j = 0; j <= n; ++j) {
        c[2 * j] = ((n - j) % 2 == 0 ? binom : -binom);
        binom = binom * static_cast<long double>(n - j) / static_cast<long double>(j + 1);
    }
    for (int d = 0; d < n + m; ++d) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = c[i + 1] * static_cast<long double>(i + 1);
        c.back() = 0.0L;
    }
    long double val = 0.0L;
    for (std::size_t i = c.size(); i-- > 0;) val = val * x + c[i];
    long double scale = std::pow(static_cast<long double>((1.0 - x) * (1.0 + x)), 0.5L * m) /
                        (std::pow(2.0L, n) * fact(n));
    return static_cast<double>(val * scale);
}

double sph_norm_constant(int n, int m) {
    m = std::abs(m);
    return std::sqrt((2.0 * n + 1.0) / (4.0 * kPi) *
                     static_cast<double>(fact(n - m) / fact(n + m)));
}

namespace {

double phi_factor(int m, double phi) {
    if (m == 0) return 1.0;
    if (m > 0) return std::sqrt(2.0) * std::cos(m * phi);
    return std::sqrt(2.0) * std::sin(-m * phi);
}

double phi_factor_d(int m, double phi) {
    if (m == 0) return 0.0;
    if (m > 0) return -std::sqrt(2.0) * m * std::sin(m * phi);
    return std::sqrt(2.0) * (-m) * std::cos(-m * phi);
}

}  // namespace

double real_sph_harmonic(int n, int m, double x, double phi) {
    return sph_norm_constant(n, m) * assoc_legendre(n, std::abs(m), x) * phi_factor(m, phi);
}

double real_sph_harmonic_dx(int n, int m, double x, double phi) {
    return sph_norm_constant(n, m) * assoc_legendre_dx(n, std::abs(m), x) * phi_factor(m, phi);
}

double real_sph_harmonic_dphi(int n, int m, double x, double phi) {
    return sph_norm_constant(n, m) * assoc_legendre(n, std::abs(m), x) * phi_factor_d(m, phi);
}

double wigner3j(const Wigner3jQuery& q) {
    const int j1 = q.j1, j2 = q.j2, j3 = q.j3, m1 = q.m1, m2 = q.m2, m3 = q.m3;
    if (j1 < 0 || j2 < 0 || j3 < 0) return 0.0;
    // conditions i-iv
    if (m1 + m2 + m3 != 0) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
    if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
    if (m1 == 0 && m2 == 0 && m3 == 0 && (j1 + j2 + j3) % 2 != 0) return 0.0;
    if (j1 + j2 + j3 + 1 > 60) throw std::domain_error("wigner3j: j out of table range");

    const long double delta =
        std::sqrt(fact(j1 + j2 - j3) * fact(j1 - j2 + j3) * fact(-j1 + j2 + j3) /
                  fact(j1 + j2 + j3 + 1));
    const long double scale = std::sqrt(fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) *
                                        fact(j2 - m2) * fact(j3 + m3) * fact(j3 - m3));
    const int tmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int tmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        long double term = 1.0L / (fact(t) * fact(j1 + j2 - j3 - t) * fact(j1 - m1 - t) *
                                   fact(j2 + m2 - t) * fact(j3 - j2 + m1 + t) * fact(j3 - j1 - m2 + t));
        sum += (t % 2 == 0) ? term : -term;
    }
    const int phase = j1 - j2 - m3;
    long double result = (phase % 2 == 0 ? 1.0L : -1.0L) * delta * scale * sum;
    return static_cast<double>(result);
}

double sphere_triple_product(int n, int i, int m, int j, int l, int k) {
    if (n < 1 || m < 1 || l < 1 || std::abs(i) > n || std::abs(j) > m || std::abs(k) > l)
        throw std::invalid_argument("sphere_triple_product: bad harmonic indices");
    const double lam_m = static_cast<double>(m) * (m + 1);
    const std::size_t nx = static_cast<std::size_t>(n + m + l + 2);
    const std::size_t nphi =
        static_cast<std::size_t>(2 * (std::abs(i) + std::abs(j) + std::abs(k)) + 1);
    Quad1D qx = gauss_legendre(nx);
    Quad1D qp = periodic_rectangle(nphi, 2.0 * kPi);
    double acc = 0.0;
    for (std::size_t a = 0; a < qx.size(); ++a) {
        const double x = qx.x[a];
        for (std::size_t b = 0; b < qp.size(); ++b) {
            const double phi = qp.x[b];
            const double ym = real_sph_harmonic(m, j, x, phi);
            const double nx_d = real_sph_harmonic_dx(n, i, x, phi);
            const double np_d = real_sph_harmonic_dphi(n, i, x, phi);
            const double lx_d = real_sph_harmonic_dx(l, k, x, phi);
            const double lp_d = real_sph_harmonic_dphi(l, k, x, phi);
            acc += qx.w[a] * qp.w[b] * ym * (np_d * lx_d - nx_d * lp_d);
        }
    }
    return lam_m * acc;
}

double sphere_coupling(int n, int i, int m, int j, int l, int k) {
    const double lam_n = static_cast<double>(n) * (n + 1);
    const double lam_m = static_cast<double>(m) * (m + 1);
    const double lam_l = static_cast<double>(l) * (l + 1);
    return (sphere_triple_product(n, i, m, j, l, k) + sphere_triple_product(m, j, n, i, l, k)) /
           std::sqrt(lam_n * lam_m * lam_l);
}

std::vector<SpectralMode> sphere_modes(double lambda_max) {
    std::vector<SpectralMode> out;
    for (int n = 1; static_cast<double>(n) * (n + 1) <= lambda_max; ++n) {
        const double lam = static_cast<double>(n) * (n + 1);
        for (int m = -n; m <= n; ++m)
            out.push_back({{n, m, 0}, Variant::None, 0, lam, 1.0 / std::sqrt(lam)});
    }
    std::sort(out.begin(), out.end(), mode_less);
    return out;
}

std::vector<SpectralMode> hemisphere_modes(double lambda_max) {
    std::vector<SpectralMode> out;
    for (const auto& m : sphere_modes(lambda_max)) {
        if ((std::abs(m.key[1]) + m.key[0]) % 2 != 1) continue;
        SpectralMode h = m;
        h.normalization *= std::sqrt(2.0);
        out.push_back(h);
    }
    return out;
}

double hemisphere_mode_norm(const SpectralMode& mode) {
    const int n = mode.key[0], m = mode.key[1];
    // |norm * grad_perp Y|^2 = norm^2 ((1-x^2) Y_x^2 + Y_phi^2/(1-x^2))
    const std::size_t nx = static_cast<std::size_t>(2 * n + 4);
    const std::size_t nphi = static_cast<std::size_t>(4 * std::abs(m) + 4);
    Quad1D qx = gauss_legendre_on(nx, 0.0, 1.0);
    Quad1D qp = periodic_rectangle(nphi, 2.0 * kPi);
    double acc = 0.0;
    for (std::size_t a = 0; a < qx.size(); ++a) {
        const double x = qx.x[a];
        const double oneminus = (1.0 - x) * (1.0 + x);
        for (std::size_t b = 0; b < qp.size(); ++b) {
            const double phi = qp.x[b];
            const double yx = real_sph_harmonic_dx(n, m, x, phi);
            const double yp = real_sph_harmonic_dphi(n, m, x, phi);
            double g2 = oneminus * yx * yx;
            if (m != 0) g2 += yp * yp / oneminus;
            acc += qx.w[a] * qp.w[b] * g2;
        }
    }
    return mode.normalization * std::sqrt(acc);
}

namespace {

std::array<double, 2> chart_gradient(const ChartScalar& fn, double w1, double w2) {
    if (fn.grad) return fn.grad(w1, w2);
    const double h = 1e-5;
    return {(fn.f(w1 + h, w2) - fn.f(w1 - h, w2)) / (2.0 * h),
            (fn.f(w1, w2 + h) - fn.f(w1, w2 - h)) / (2.0 * h)};
}

// Degree-0 homogeneous extension used by the Cartesian curl: f(x) depends on
// x1/|x|, x2/|x| only. Chart inversion: w^i = x_i/|x|.
double extension_value(const ChartScalar& fn, double x1, double x2, double x3) {
    const double r = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
    return fn.f(x1 / r, x2 / r);
}

std::array<double, 3> extension_gradient(const ChartScalar& fn, double x1, double x2, double x3) {
    const double r = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
    if (fn.grad) {
        const auto g = fn.grad(x1 / r, x2 / r);
        const double r3 = r * r * r;
        // d(x_i/r)/dx_j = delta_ij / r - x_i x_j / r^3
        return {g[0] * (1.0 / r - x1 * x1 / r3) + g[1] * (-x2 * x1 / r3),
                g[0] * (-x1 * x2 / r3) + g[1] * (1.0 / r - x2 * x2 / r3),
                g[0] * (-x1 * x3 / r3) + g[1] * (-x2 * x3 / r3)};
    }
    const double h = 1e-5;
    return {(extension_value(fn, x1 + h, x2, x3) - extension_value(fn, x1 - h, x2, x3)) / (2.0 * h),
            (extension_value(fn, x1, x2 + h, x3) - extension_value(fn, x1, x2 - h, x3)) / (2.0 * h),
            (extension_value(fn, x1, x2, x3 + h) - extension_value(fn, x1, x2, x3 - h)) / (2.0 * h)};
}

}  // namespace

double curl_equivalence_residual(const ChartScalar& fn,
                                 const std::vector<std::array<double, 2>>& samples) {
    double worst = 0.0;
    for (const auto& s : samples) {
        const double w1 = s[0], w2 = s[1];
        const double r2 = w1 * w1 + w2 * w2;
        if (r2 >= 0.5) throw std::invalid_argument("curl sample outside chart disc");
        const double phi0 = std::sqrt(1.0 - r2);

        // chart formula: sqrt(gbar)^{-1} (f_{w1} d/dw2 - f_{w2} d/dw1), with
        // d/dw^i = e_i - (w^i/phi0) e_3 on the sphere
        const auto g = chart_gradient(fn, w1, w2);
        const std::array<double, 3> grad_perp{
            -phi0 * g[1], phi0 * g[0], w1 * g[1] - w2 * g[0]};

        // Cartesian curl of the normal extension f~ n~ restricted to the sphere
        const auto gx = extension_gradient(fn, w1, w2, phi0);
        const std::array<double, 3> curl{phi0 * gx[1] - w2 * gx[2], w1 * gx[2] - phi0 * gx[0],
                                         w2 * gx[0] - w1 * gx[1]};

        double res = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = grad_perp[i] + curl[i];
            res += d * d;
        }
        worst = std::max(worst, std::sqrt(res));
    }
    return worst;
}

}  // namespace speclab
