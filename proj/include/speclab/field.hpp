// Sparse spectral fields u = sum_k u_k W_k and their CSV form.
#pragma once

#include <algorithm>
#include <iosfwd>
#include <map>
#include <tuple>
#include <vector>

#include "speclab/geometry.hpp"
#include "speclab/mode.hpp"

namespace speclab {

namespace detail {
// Map key ordered like the serialization order of modes.
struct ModeOrder {
    bool operator()(const SpectralMode& x, const SpectralMode& y) const { return mode_less(x, y); }
};
}  // namespace detail

// Absent modes mean zero coefficient. Iteration order is the deterministic
// serialization order, which keeps every downstream sum reproducible.
struct SpectralField {
    GeometryDescriptor geometry;
    std::map<SpectralMode, double, detail::ModeOrder> coeffs;

    SpectralField() = default;
    explicit SpectralField(GeometryDescriptor g) : geometry(g) {}

    void set(const SpectralMode& m, double c) {
        if (c == 0.0)
            coeffs.erase(m);
        else
            coeffs[m] = c;
    }

    double get(const SpectralMode& m) const {
        auto it = coeffs.find(m);
        return it == coeffs.end() ? 0.0 : it->second;
    }

    std::size_t size() const { return coeffs.size(); }
    bool empty() const { return coeffs.empty(); }
};

double energy(const SpectralField& u);

template <typename F>
SpectralField apply_spectral_multiplier(const SpectralField& u, F&& f) {
    SpectralField out(u.geometry);
    for (const auto& [mode, c] : u.coeffs) {
        double scaled = f(mode.eigenvalue) * c;
        if (scaled != 0.0) out.coeffs[mode] = scaled;
    }
    return out;
}

// CSV columns: mode_key,variant,eigenvalue,coefficient. `header` becomes the
// '#'-prefixed first line when nonempty.
void write_field_csv(std::ostream& os, const SpectralField& u, const std::string& header);
SpectralField read_field_csv(std::istream& is, const GeometryDescriptor& g);

}  // namespace speclab
