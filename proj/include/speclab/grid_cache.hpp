// Precomputed mode values and gradients on a shared tensor quadrature grid.
// Built once per (geometry, cutoff); every coupling scan is a dot product
// over these arrays. The fill is embarrassingly parallel over modes, so the
// OpenMP and serial fills produce bit-identical tables.
#pragma once

#include <cstddef>
#include <vector>

#include "speclab/flat_bases.hpp"
#include "speclab/geometry.hpp"
#include "speclab/mode.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {

struct FlatModeGrid {
    GeometryDescriptor g;
    std::vector<SpectralMode> modes;
    int dim = 2;
    std::vector<Quad1D> axes;
    std::size_t npts = 0;
    std::vector<double> weight;               // per grid point
    std::vector<std::vector<double>> value;   // [mode][comp * npts + p]
    std::vector<std::vector<double>> deriv;   // [mode][(j*dim + i) * npts + p] = dW_i/dx_j

    Vec3 point(std::size_t p) const;
};

// Axis resolutions are sized for exact integration of triple products of the
// listed modes (2 * (three times the largest per-axis frequency) + 1).
FlatModeGrid build_mode_grid(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes,
                             bool parallel = true);

// Symmetrized convection field (W_n . grad) W_m + (W_m . grad) W_n sampled on
// the grid; out has dim * npts entries, component-major.
void interaction_field(const FlatModeGrid& grid, std::size_t n, std::size_t m,
                       std::vector<double>& out);

// L2 pairing of a sampled field with mode l, i.e. the symmetrized coupling
// coefficient when `field` came from interaction_field.
double project_onto_mode(const FlatModeGrid& grid, const std::vector<double>& field, std::size_t l);

}  // namespace speclab
