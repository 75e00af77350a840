// Machine verification of the triad inequality, the cardinality bounds, and
// the appendix lemmas with their sharp constants.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speclab/coupling.hpp"
#include "speclab/flat_bases.hpp"

namespace speclab {

struct TriadInequalityReport {
    double alpha = 0.5;
    double beta_required = 0.0;  // max over stored triads of (lam_l^a - lam_n^a - lam_m^a)+
    std::array<std::uint32_t, 3> witness{0, 0, 0};
    std::size_t triads = 0;
};

TriadInequalityReport verify_triad_inequality(const TriadTable& table, double alpha);

// Constant of the eigenvalue comparison lemma:
// C = (1 + beta/(2 lambda1^alpha))^{s/alpha} D_{s/alpha},
// D_r = 1 for r <= 1 and 2^{r-1} for r >= 1.
double lambda_s_constant(double s, double alpha, double beta, double lambda1);

// Signed slacks of the two-sided power inequality, oriented so both are
// nonnegative when the inequality holds (regime s<=1 vs s>=1).
std::pair<double, double> power_inequality_margin(double a, double b, double s);

// K = |p(0)|^{1/2} + 4 |p(xbar)|^{1/2} for p(x) = x^T H x / 2 + G.x + c with
// positive-definite H; xbar solves xbar^T H + G = 0.
double triangle_k(const std::vector<std::vector<double>>& hessian, const std::vector<double>& linear,
                  double constant);

// Smallest zeta >= 0 with card <= C_F lambda_n^zeta for every n; infinity
// when some lambda_n <= 1 carries card > C_F.
double fit_zeta(const std::vector<double>& lambda_n, const std::vector<std::size_t>& card_n,
                double c_f);

struct AssumptionReport {
    GeometryDescriptor g;
    double cutoff = 0.0;
    double alpha = 0.5;
    double beta_required = 0.0;
    std::array<std::uint32_t, 3> beta_witness{0, 0, 0};
    std::array<std::string, 3> beta_witness_labels{};
    std::size_t card_max_forward = 0;
    std::size_t card_max_inverse = 0;
    std::pair<std::uint32_t, std::uint32_t> card_fwd_witness{0, 0};
    std::pair<std::uint32_t, std::uint32_t> card_inv_witness{0, 0};
    double zeta_fit = 0.0;           // per-mode sets (repeated spectrum)
    std::size_t card_max_forward_grouped = 0;
    std::size_t card_max_inverse_grouped = 0;
    double zeta_fit_grouped = 0.0;   // distinct-eigenvalue sets
    double c_f = 4.0;
    GrowthReport growth;
    bool growth_uses_distinct = false;
    std::size_t n_modes = 0;
    std::size_t n_triads = 0;
    bool pass_triad_inequality = false;
    bool pass_cardinality = false;
    bool pass_growth = false;
    bool pass = false;               // conjunction of the three verdicts
    std::string claim;               // the target constants the verdict is against
};

// Full report for one geometry: triad inequality at `alpha`, both set
// cardinalities, the zeta fits against `c_f`, and the growth bound with the
// geometry's own (rho, xi). Flat geometries use the repeated spectrum, the
// sphere and hemisphere the distinct one.
AssumptionReport verify_assumptions(const TriadTable& table, double alpha, double c_f, double tol);

std::string assumption_report_json(const AssumptionReport& rep, const std::string& manifest_header);

}  // namespace speclab
