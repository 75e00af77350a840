// Exponentially weighted spectral norms |A^s e^{sigma A^alpha} u|.
#pragma once

#include <stdexcept>

#include "speclab/field.hpp"

namespace speclab {

struct GevreyParams {
    double s = 0.0;      // Sobolev exponent
    double sigma = 0.0;  // exponential weight strength
    double alpha = 0.5;  // exponent on the eigenvalue, in (0, 1]

    void validate() const {
        if (s < 0.0 || sigma < 0.0 || alpha <= 0.0 || alpha > 1.0)
            throw std::invalid_argument("GevreyParams: need s>=0, sigma>=0, 0<alpha<=1");
    }
};

// Thrown when a weight e^{sigma lambda^alpha} would exceed the double range.
// Clipping silently would corrupt decay-rate fits, so this is a hard error.
struct WeightOverflow : std::runtime_error {
    explicit WeightOverflow(const std::string& what) : std::runtime_error(what) {}
};

// (sum_k e^{2 sigma lambda_k^alpha} lambda_k^{2s} u_k^2)^{1/2}
double gevrey_norm(const SpectralField& u, const GevreyParams& p);

}  // namespace speclab
