// Stokes eigenbases on the flat domains: enumeration, pointwise evaluation,
// sup-norm bounds and eigenvalue growth checks.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "speclab/geometry.hpp"
#include "speclab/mode.hpp"

namespace speclab {

using Vec3 = std::array<double, 3>;

// All modes with eigenvalue <= lambda_max, sorted by (eigenvalue, key,
// variant, pol). Torus modes carry cos/sin variants (and two polarizations in
// 3D); cylinder modes carry the sigma/kappa variant with k2 >= 1 always and
// k1 >= 1 for sigma, k1 >= 0 for kappa.
std::vector<SpectralMode> enumerate_modes(const GeometryDescriptor& g, double lambda_max);

// Unit-normalized eigenfield value at a point of the fundamental domain.
Vec3 evaluate_mode(const GeometryDescriptor& g, const SpectralMode& m, const Vec3& point);

// d/dx_j of every component; grad[j][i] = d W^i / d x_j.
std::array<Vec3, 3> evaluate_mode_gradient(const GeometryDescriptor& g, const SpectralMode& m,
                                           const Vec3& point);

// Orthonormal basis of {k}^perp used by the torus modes. In 2D this is the
// rotation of k; in 3D the pair is built by Gram-Schmidt from the coordinate
// axis least aligned with k, so the basis is reproducible.
std::vector<Vec3> torus_polarization_vectors(const std::array<int, 3>& k, int dim);

struct LinfBoundReport {
    double theta = 0.0;
    double c = 0.0;
    double worst_ratio = 0.0;          // analytic amplitude bound / (c lambda^theta)
    double worst_sampled_ratio = 0.0;  // dense-grid max / (c lambda^theta)
    bool pass = false;                 // worst_ratio <= 1 (+eps)
};

// theta = 0 with c = pi^{-d/2} on the torus and c = 2 (ab)^{-1/2} on the
// rectangle and cylinder.
LinfBoundReport linf_bound_check(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes,
                                 std::size_t samples_per_axis = 64);

struct GrowthReport {
    double xi = 0.0;
    double rho_hat = 0.0;   // min over k of lambda_k / k^xi
    std::size_t argmin = 0; // 1-based index attaining rho_hat
    double margin = 0.0;    // min over k of lambda_k - rho k^xi (when rho given)
    std::vector<std::size_t> violations;  // 1-based k with lambda_k < rho k^xi
};

// `eigens` must be sorted ascending; k starts at 1.
GrowthReport growth_check(const std::vector<double>& eigens, double xi,
                          std::optional<double> rho = std::nullopt);
GrowthReport growth_check(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes,
                          double xi, std::optional<double> rho = std::nullopt);

// rho_1 = min(varrho/4, varrho_0) with varrho = min(2 pi/(ab), pi^2/b^2) and
// varrho_0 the worst lambda_k/k over the first three repeated eigenvalues.
double cylinder_growth_rho1(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes);

// Distinct-eigenvalue grouping at relative tolerance 1e-9: group[i] is the
// 0-based group index of modes[i]; the return value is the group count.
std::size_t eigenvalue_groups(const std::vector<SpectralMode>& modes, std::vector<std::size_t>& group);

}  // namespace speclab
