// Mode keys, variants and the per-mode record carried through every table.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "speclab/format.hpp"
#include "speclab/geometry.hpp"

namespace speclab {

// cos/sin distinguish the two torus phases, Sigma/Kappa the two cylinder
// families (sin- and cos-type stream functions). Rectangle and sphere modes
// carry no variant.
enum class Variant : std::uint8_t { None = 0, Cos = 1, Sin = 2, Sigma = 3, Kappa = 4 };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::None: return "";
        case Variant::Cos: return "cos";
        case Variant::Sin: return "sin";
        case Variant::Sigma: return "sigma";
        case Variant::Kappa: return "kappa";
    }
    return "?";
}

inline Variant variant_from_name(const std::string& s) {
    if (s.empty()) return Variant::None;
    if (s == "cos") return Variant::Cos;
    if (s == "sin") return Variant::Sin;
    if (s == "sigma") return Variant::Sigma;
    if (s == "kappa") return Variant::Kappa;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

struct SpectralMode {
    std::array<int, 3> key{0, 0, 0};  // multi-index; sphere stores (degree, order, 0)
    Variant variant = Variant::None;
    int pol = 0;                      // polarization, 1 or 2 on the 3D torus, else 0
    double eigenvalue = 0.0;
    double normalization = 1.0;       // scales the raw eigenfield to unit L2 norm

    bool operator==(const SpectralMode& o) const {
        return key == o.key && variant == o.variant && pol == o.pol;
    }
};

// (eigenvalue, key, variant, pol): the serialization order. Ties in eigenvalue
// are broken deterministically so golden files are reproducible.
inline bool mode_less(const SpectralMode& x, const SpectralMode& y) {
    if (x.eigenvalue != y.eigenvalue) return x.eigenvalue < y.eigenvalue;
    if (x.key != y.key) return x.key < y.key;
    if (x.variant != y.variant) return x.variant < y.variant;
    return x.pol < y.pol;
}

// "/"-joined integers; the 3D torus appends the polarization index.
inline std::string key_string(const SpectralMode& m, const GeometryDescriptor& g) {
    std::string s = std::to_string(m.key[0]) + "/" + std::to_string(m.key[1]);
    if (g.kind == GeometryKind::Torus3) s += "/" + std::to_string(m.key[2]) + "/" + std::to_string(m.pol);
    return s;
}

inline std::string mode_label(const SpectralMode& m, const GeometryDescriptor& g) {
    std::string s = key_string(m, g);
    const char* v = variant_name(m.variant);
    if (*v) s += std::string(":") + v;
    return s;
}

}  // namespace speclab
