// Triad coupling coefficients c = (B(W_n,W_m)+B(W_m,W_n), W_l)_H: a
// quadrature oracle for every geometry, the closed-form expansion where one
// exists (cylinder), selection predicates, and the interaction sets F.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "speclab/geometry.hpp"
#include "speclab/grid_cache.hpp"
#include "speclab/mode.hpp"

namespace speclab {

// Direct tensor quadrature of b(W_n,W_m,W_l) + b(W_m,W_n,W_l) on the flat
// geometries, with per-triad axis resolutions (2 * frequency-sum + 1, scaled
// by `resolution_factor`). Exact for the trig-polynomial integrand; this is
// the independent oracle every closed form is checked against. Sphere and
// hemisphere triads are served by sphere_coupling instead.
double coupling_quadrature(const GeometryDescriptor& g, const SpectralMode& n,
                           const SpectralMode& m, const SpectralMode& l,
                           int resolution_factor = 1);

// Single (unsymmetrized) trilinear form b(W_n, W_m, W_l) by the same rule.
double trilinear_quadrature(const GeometryDescriptor& g, const SpectralMode& n,
                            const SpectralMode& m, const SpectralMode& l,
                            int resolution_factor = 1);

// Geometry-specific necessary condition for a nonzero coefficient. The sound
// direction (predicate false => coefficient below tolerance) is what gets
// verified; the predicate may admit triads whose coefficient still vanishes.
bool selection_allows(const GeometryDescriptor& g, const SpectralMode& n, const SpectralMode& m,
                      const SpectralMode& l);

// Four-term expansion of B(Y_n + Y_m) on the cylinder, rescaled to the
// unit-normalized basis. Variant pairing: sigma*sigma and kappa*kappa feed
// sigma targets, mixed pairs feed kappa targets.
std::vector<std::pair<SpectralMode, double>> coupling_closed_form_cylinder(
    const GeometryDescriptor& g, const SpectralMode& n, const SpectralMode& m);

// Same expansion in the raw (unnormalized) Y basis.
std::vector<std::pair<SpectralMode, double>> coupling_closed_form_cylinder_raw(
    const GeometryDescriptor& g, const SpectralMode& n, const SpectralMode& m);

struct TriadEntry {
    std::uint32_t n = 0, m = 0, l = 0;  // indices into modes, n <= m
    double c = 0.0;
};

struct TriadTable {
    GeometryDescriptor g;
    double cutoff = 0.0;
    double drop_tol = 1e-12;
    std::vector<SpectralMode> modes;   // sorted by (eigenvalue, key, variant)
    std::vector<TriadEntry> entries;   // sorted by (n, m, l)

    const SpectralMode& mode(std::uint32_t i) const { return modes[i]; }
    std::pair<const TriadEntry*, const TriadEntry*> pair_range(std::uint32_t n,
                                                               std::uint32_t m) const;
};

struct TableBuildOptions {
    double drop_tol = 1e-12;
    bool parallel = true;
    std::string cache_dir;  // empty disables the disk cache
};

TriadTable build_triad_table(const GeometryDescriptor& g, double cutoff,
                             const TableBuildOptions& opts = {});

// Interaction sets of Assumptions on the repeated spectrum:
//   forward (n,m) with n < m -> { l : c(n,m,l) != 0 }
//   inverse (n,l)            -> { m : n < m, c(n,m,l) != 0 }
struct TriadSets {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<std::uint32_t>> forward;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<std::uint32_t>> inverse;
    std::size_t card_max_forward = 0;
    std::size_t card_max_inverse = 0;
    std::pair<std::uint32_t, std::uint32_t> witness_forward{0, 0};
    std::pair<std::uint32_t, std::uint32_t> witness_inverse{0, 0};
};

// grouped = true replaces mode indices by distinct-eigenvalue group indices
// (the nonrepeated-spectrum variant of the sets).
TriadSets triad_sets(const TriadTable& table, bool grouped = false);

struct SoundnessReport {
    double tol = 0.0;
    std::size_t checked = 0;
    std::vector<std::array<std::uint32_t, 3>> counterexamples;  // (n, m, l)
    double worst_off_predicate = 0.0;  // largest |c| seen where predicate is false
};

// Exhaustive scan of every triad under the cutoff: wherever the predicate
// says "no coupling", the quadrature coefficient must stay below tol.
SoundnessReport selection_soundness(const GeometryDescriptor& g, double cutoff, double tol,
                                    bool parallel = true);

// couplings CSV (closed-form column only on the cylinder).
void write_couplings_csv(std::ostream& os, const TriadTable& table, const std::string& header);

std::string triad_cache_key(const GeometryDescriptor& g, double cutoff, double drop_tol);

}  // namespace speclab
