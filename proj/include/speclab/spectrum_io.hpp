// spectrum CSV: rank,mode_key,variant,eigenvalue,multiplicity_group
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "speclab/geometry.hpp"
#include "speclab/mode.hpp"

namespace speclab {

void write_spectrum_csv(std::ostream& os, const GeometryDescriptor& g,
                        const std::vector<SpectralMode>& modes, const std::string& header);

// Dispatches to the flat enumerator or the sphere/hemisphere lists.
std::vector<SpectralMode> enumerate_any(const GeometryDescriptor& g, double lambda_max);

}  // namespace speclab
