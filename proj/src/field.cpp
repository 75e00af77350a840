#include "speclab/field.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "speclab/format.hpp"
#include "speclab/gevrey.hpp"

namespace speclab {

double energy(const SpectralField& u) {
    double e = 0.0;
    for (const auto& [mode, c] : u.coeffs) e += c * c;
    return e;
}

double gevrey_norm(const SpectralField& u, const GevreyParams& p) {
    p.validate();
    // exp argument above this would push the squared weight past DBL_MAX
    constexpr double kMaxExp = 700.0;
    double sum = 0.0;
    for (const auto& [mode, c] : u.coeffs) {
        const double lam = mode.eigenvalue;
        double log_weight = 2.0 * p.sigma * std::pow(lam, p.alpha) + 2.0 * p.s * std::log(lam);
        if (log_weight > kMaxExp)
            throw WeightOverflow("gevrey weight overflow at lambda=" + format_double(lam));
        sum += std::exp(log_weight) * c * c;
    }
    return std::sqrt(sum);
}

void write_field_csv(std::ostream& os, const SpectralField& u, const std::string& header) {
    if (!header.empty()) os << header << "\n";
    os << "mode_key,variant,eigenvalue,coefficient\n";
    for (const auto& [mode, c] : u.coeffs) {
        os << key_string(mode, u.geometry) << "," << variant_name(mode.variant) << ","
           << format_double(mode.eigenvalue) << "," << format_double(c) << "\n";
    }
}

SpectralField read_field_csv(std::istream& is, const GeometryDescriptor& g) {
    SpectralField u(g);
    std::string line;
    bool saw_columns = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_columns) {  // column header
            saw_columns = true;
            continue;
        }
        auto cols = split(line, ',');
        if (cols.size() != 4) throw std::runtime_error("field csv: expected 4 columns");
        auto keys = split(cols[0], '/');
        SpectralMode m;
        for (std::size_t i = 0; i < keys.size() && i < 3; ++i) m.key[i] = std::stoi(keys[i]);
        if (g.kind == GeometryKind::Torus3) {
            if (keys.size() != 4) throw std::runtime_error("field csv: torus3 key needs k1/k2/k3/j");
            m.pol = std::stoi(keys[3]);
        } else if (g.kind == GeometryKind::Torus2) {
            m.pol = 1;  // the single polarization is implicit in 2D
        }
        m.variant = variant_from_name(cols[1]);
        m.eigenvalue = parse_double(cols[2]);
        u.coeffs[m] = parse_double(cols[3]);
    }
    return u;
}

}  // namespace speclab
