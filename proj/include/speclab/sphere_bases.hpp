// Spherical harmonics, Wigner-3j machinery, the hemisphere parity basis and
// the chart-level curl equivalence check.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "speclab/mode.hpp"

namespace speclab {

// Ferrers associated Legendre function, no Condon-Shortley phase, with the
// convention P_n^{-m} = P_n^m. m > n returns 0. Evaluated by the m-diagonal
// seed plus upward n-recurrence; the Rodrigues form below is the small-n
// test oracle (repeated differentiation is unstable at larger n).
double assoc_legendre(int n, int m, double x);
double assoc_legendre_dx(int n, int m, double x);   // d/dx, |x| < 1
double assoc_legendre_dxx(int n, int m, double x);  // d^2/dx^2, |x| < 1
double assoc_legendre_rodrigues(int n, int m, double x);

// Orthonormalizing constant ((2n+1)/(4 pi) (n-|m|)!/(n+|m|)!)^{1/2}.
double sph_norm_constant(int n, int m);

// Real spherical harmonic in x = cos(theta): m > 0 pairs with cos(m phi),
// m < 0 with sin(|m| phi), m = 0 is zonal. Unit L2 norm on the sphere.
double real_sph_harmonic(int n, int m, double x, double phi);
double real_sph_harmonic_dx(int n, int m, double x, double phi);
double real_sph_harmonic_dphi(int n, int m, double x, double phi);

struct Wigner3jQuery {
    int j1 = 0, j2 = 0, j3 = 0;
    int m1 = 0, m2 = 0, m3 = 0;
};

// Racah single-sum evaluation; exact 0 whenever any selection condition
// fails. Throws std::domain_error once factorials leave the table range
// (j1+j2+j3 > 60).
double wigner3j(const Wigner3jQuery& q);

// (Delta Y_m^j grad Y_n^i, curl Y_l^k) over the sphere, evaluated with real
// harmonics by Gauss-Legendre in cos(theta) times the periodic rectangle rule
// in phi; the orientation of the surface curl fixes the global sign.
double sphere_triple_product(int n, int i, int m, int j, int l, int k);

// Symmetrized vector-mode coupling (B(Z_n^i + Z_m^j), Z_l^k)_H up to the
// fixed global sign, assembled from two triple products and the
// lambda^{-1/2} stream normalizations.
double sphere_coupling(int n, int i, int m, int j, int l, int k);

// Sphere modes: degrees n >= 1, |m| <= n, eigenvalue n(n+1).
std::vector<SpectralMode> sphere_modes(double lambda_max);
// Parity-filtered (|m|+n odd) restriction with the sqrt(2) renormalization.
std::vector<SpectralMode> hemisphere_modes(double lambda_max);

// L2 norm of the (hemisphere-normalized) vector mode over the upper
// hemisphere, by quadrature; 1 for members of the hemisphere system.
double hemisphere_mode_norm(const SpectralMode& m);

// Scalar test function on the chart disc (w1)^2+(w2)^2 < 1/2 with an
// optional analytic gradient; absent gradient means central differences.
struct ChartScalar {
    std::function<double(double, double)> f;
    std::function<std::array<double, 2>(double, double)> grad;  // may be empty
};

// max over samples of |grad^perp f + Curl f| in R^3, comparing the chart
// formula for grad^perp with the normal-extension Cartesian curl.
double curl_equivalence_residual(const ChartScalar& fn,
                                 const std::vector<std::array<double, 2>>& samples);

}  // namespace speclab
