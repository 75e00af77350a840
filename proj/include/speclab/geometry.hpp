// Domain descriptors for the five geometries.
#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

enum class GeometryKind { Torus2, Torus3, Rectangle, Cylinder, Sphere, Hemisphere };

inline const char* kind_name(GeometryKind k) {
    switch (k) {
        case GeometryKind::Torus2: return "torus2";
        case GeometryKind::Torus3: return "torus3";
        case GeometryKind::Rectangle: return "rect";
        case GeometryKind::Cylinder: return "cyl";
        case GeometryKind::Sphere: return "sphere";
        case GeometryKind::Hemisphere: return "hemisphere";
    }
    return "?";
}

inline GeometryKind kind_from_name(const std::string& s) {
    if (s == "torus2") return GeometryKind::Torus2;
    if (s == "torus3") return GeometryKind::Torus3;
    if (s == "rect") return GeometryKind::Rectangle;
    if (s == "cyl") return GeometryKind::Cylinder;
    if (s == "sphere") return GeometryKind::Sphere;
    if (s == "hemisphere") return GeometryKind::Hemisphere;
    throw std::invalid_argument("unknown geometry '" + s + "'");
}

// The torus is always the 2*pi-periodic one; a and b are the side lengths of
// the rectangle, respectively the circumference and height of the cylinder.
// Both are ignored on the sphere and hemisphere.
struct GeometryDescriptor {
    GeometryKind kind = GeometryKind::Rectangle;
    double a = 1.0;
    double b = 1.0;

    int dim() const { return kind == GeometryKind::Torus3 ? 3 : 2; }

    bool is_flat() const {
        return kind == GeometryKind::Torus2 || kind == GeometryKind::Torus3 ||
               kind == GeometryKind::Rectangle || kind == GeometryKind::Cylinder;
    }

    bool is_spherical() const {
        return kind == GeometryKind::Sphere || kind == GeometryKind::Hemisphere;
    }

    bool uses_sides() const {
        return kind == GeometryKind::Rectangle || kind == GeometryKind::Cylinder;
    }

    void validate() const {
        if (uses_sides() && (a <= 0.0 || b <= 0.0))
            throw std::invalid_argument("geometry sides must be positive");
    }

    static GeometryDescriptor torus2() { return {GeometryKind::Torus2, 0.0, 0.0}; }
    static GeometryDescriptor torus3() { return {GeometryKind::Torus3, 0.0, 0.0}; }
    static GeometryDescriptor rectangle(double a, double b) { return {GeometryKind::Rectangle, a, b}; }
    static GeometryDescriptor cylinder(double a, double b) { return {GeometryKind::Cylinder, a, b}; }
    static GeometryDescriptor sphere() { return {GeometryKind::Sphere, 0.0, 0.0}; }
    static GeometryDescriptor hemisphere() { return {GeometryKind::Hemisphere, 0.0, 0.0}; }
};

}  // namespace speclab
