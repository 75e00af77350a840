#include "speclab/spectrum_io.hpp"

#include <ostream>

#include "speclab/flat_bases.hpp"
#include "speclab/format.hpp"
#include "speclab/sphere_bases.hpp"

namespace speclab {

std::vector<SpectralMode> enumerate_any(const GeometryDescriptor& g, double lambda_max) {
    if (g.is_flat()) return enumerate_modes(g, lambda_max);
    if (g.kind == GeometryKind::Sphere) return sphere_modes(lambda_max);
    return hemisphere_modes(lambda_max);
}

void write_spectrum_csv(std::ostream& os, const GeometryDescriptor& g,
                        const std::vector<SpectralMode>& modes, const std::string& header) {
    if (!header.empty()) os << header << "\n";
    os << "rank,mode_key,variant,eigenvalue,multiplicity_group\n";
    std::vector<std::size_t> group;
    eigenvalue_groups(modes, group);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        os << (i + 1) << "," << key_string(modes[i], g) << "," << variant_name(modes[i].variant)
           << "," << format_double(modes[i].eigenvalue) << "," << (group[i] + 1) << "\n";
    }
}

}  // namespace speclab
