#include "speclab/grid_cache.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace speclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Largest per-axis frequency index over the mode set. For the cylinder the
// x1 frequency of sin(2 k1 pi x/a) relative to the a-periodic fundamental is
// k1 itself.
std::vector<int> max_axis_frequency(const GeometryDescriptor& g,
                                    const std::vector<SpectralMode>& modes) {
    std::vector<int> kmax(static_cast<std::size_t>(g.dim()), 1);
    for (const auto& m : modes)
        for (int i = 0; i < g.dim(); ++i)
            kmax[i] = std::max(kmax[i], std::abs(m.key[i]));
    return kmax;
}

}  // namespace

Vec3 FlatModeGrid::point(std::size_t p) const {
    Vec3 x{0.0, 0.0, 0.0};
    std::size_t rem = p;
    for (int axis = dim - 1; axis >= 0; --axis) {
        const std::size_t n = axes[axis].size();
        x[axis] = axes[axis].x[rem % n];
        rem /= n;
    }
    return x;
}

FlatModeGrid build_mode_grid(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes,
                             bool parallel) {
    if (!g.is_flat()) throw std::invalid_argument("build_mode_grid: flat geometry required");
    FlatModeGrid grid;
    grid.g = g;
    grid.modes = modes;
    grid.dim = g.dim();
    const auto kmax = max_axis_frequency(g, modes);

    for (int axis = 0; axis < grid.dim; ++axis) {
        const std::size_t pts = static_cast<std::size_t>(2 * (3 * kmax[axis]) + 1);
        switch (g.kind) {
            case GeometryKind::Torus2:
            case GeometryKind::Torus3:
                grid.axes.push_back(periodic_rectangle(pts, 2.0 * kPi));
                break;
            case GeometryKind::Rectangle:
                grid.axes.push_back(trapezoid(pts, axis == 0 ? g.a : g.b));
                break;
            case GeometryKind::Cylinder:
                grid.axes.push_back(axis == 0 ? periodic_rectangle(pts, g.a)
                                              : trapezoid(pts, g.b));
                break;
            default: break;
        }
    }

    grid.npts = 1;
    for (const auto& q : grid.axes) grid.npts *= q.size();
    grid.weight.resize(grid.npts);
    for (std::size_t p = 0; p < grid.npts; ++p) {
        double w = 1.0;
        std::size_t rem = p;
        for (int axis = grid.dim - 1; axis >= 0; --axis) {
            const std::size_t n = grid.axes[axis].size();
            w *= grid.axes[axis].w[rem % n];
            rem /= n;
        }
        grid.weight[p] = w;
    }

    const std::size_t nmodes = modes.size();
    const int dim = grid.dim;
    grid.value.assign(nmodes, {});
    grid.deriv.assign(nmodes, {});

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t k = 0; k < nmodes; ++k) {
        auto& val = grid.value[k];
        auto& der = grid.deriv[k];
        val.resize(static_cast<std::size_t>(dim) * grid.npts);
        der.resize(static_cast<std::size_t>(dim) * dim * grid.npts);
        for (std::size_t p = 0; p < grid.npts; ++p) {
            const Vec3 x = grid.point(p);
            const Vec3 v = evaluate_mode(g, modes[k], x);
            const auto dv = evaluate_mode_gradient(g, modes[k], x);
            for (int i = 0; i < dim; ++i) {
                val[static_cast<std::size_t>(i) * grid.npts + p] = v[i];
                for (int j = 0; j < dim; ++j)
                    der[(static_cast<std::size_t>(j) * dim + i) * grid.npts + p] = dv[j][i];
            }
        }
    }
    return grid;
}

void interaction_field(const FlatModeGrid& grid, std::size_t n, std::size_t m,
                       std::vector<double>& out) {
    const int dim = grid.dim;
    const std::size_t npts = grid.npts;
    out.assign(static_cast<std::size_t>(dim) * npts, 0.0);
    const auto& un = grid.value[n];
    const auto& um = grid.value[m];
    const auto& dn = grid.deriv[n];
    const auto& dm = grid.deriv[m];
    for (int i = 0; i < dim; ++i) {
        double* oi = out.data() + static_cast<std::size_t>(i) * npts;
        for (int j = 0; j < dim; ++j) {
            const double* unj = un.data() + static_cast<std::size_t>(j) * npts;
            const double* umj = um.data() + static_cast<std::size_t>(j) * npts;
            const double* dmji = dm.data() + (static_cast<std::size_t>(j) * dim + i) * npts;
            const double* dnji = dn.data() + (static_cast<std::size_t>(j) * dim + i) * npts;
            for (std::size_t p = 0; p < npts; ++p) oi[p] += unj[p] * dmji[p] + umj[p] * dnji[p];
        }
    }
}

double project_onto_mode(const FlatModeGrid& grid, const std::vector<double>& field, std::size_t l) {
    const int dim = grid.dim;
    const std::size_t npts = grid.npts;
    const auto& vl = grid.value[l];
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double* fi = field.data() + static_cast<std::size_t>(i) * npts;
        const double* wi = vl.data() + static_cast<std::size_t>(i) * npts;
        for (std::size_t p = 0; p < npts; ++p) acc += grid.weight[p] * fi[p] * wi[p];
    }
    return acc;
}

}  // namespace speclab
