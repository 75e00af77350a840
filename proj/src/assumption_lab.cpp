#include "speclab/assumption_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "speclab/format.hpp"

namespace speclab {

TriadInequalityReport verify_triad_inequality(const TriadTable& table, double alpha) {
    TriadInequalityReport rep;
    rep.alpha = alpha;
    rep.triads = table.entries.size();
    for (const auto& e : table.entries) {
        const double gap = std::pow(table.modes[e.l].eigenvalue, alpha) -
                           std::pow(table.modes[e.n].eigenvalue, alpha) -
                           std::pow(table.modes[e.m].eigenvalue, alpha);
        if (gap > rep.beta_required) {
            rep.beta_required = gap;
            rep.witness = {e.n, e.m, e.l};
        }
    }
    return rep;
}

double lambda_s_constant(double s, double alpha, double beta, double lambda1) {
    if (s <= 0.0 || alpha <= 0.0 || alpha >= 1.0 || beta < 0.0 || lambda1 <= 0.0)
        throw std::invalid_argument("lambda_s_constant: need s>0, 0<alpha<1, beta>=0, lambda1>0");
    const double r = s / alpha;
    const double d_r = r <= 1.0 ? 1.0 : std::pow(2.0, r - 1.0);
    return std::pow(1.0 + beta / (2.0 * std::pow(lambda1, alpha)), r) * d_r;
}

std::pair<double, double> power_inequality_margin(double a, double b, double s) {
    if (a < 0.0 || b < 0.0 || a + b <= 0.0 || s <= 0.0)
        throw std::invalid_argument("power_inequality_margin: need a,b>=0, a+b>0, s>0");
    const double lhs = std::pow(a + b, s);
    const double sum = std::pow(a, s) + std::pow(b, s);
    const double half = std::pow(2.0, s - 1.0) * sum;
    if (s <= 1.0) return {lhs - half, sum - lhs};
    return {lhs - sum, half - lhs};
}

double triangle_k(const std::vector<std::vector<double>>& hessian, const std::vector<double>& linear,
                  double constant) {
    const std::size_t n = hessian.size();
    if (n == 0 || linear.size() != n)
        throw std::invalid_argument("triangle_k: dimension mismatch");
    // Cholesky; failure means the Hessian is not positive definite.
    std::vector<std::vector<double>> chol(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = hessian[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= chol[i][k] * chol[j][k];
            if (i == j) {
                if (sum <= 0.0) throw std::invalid_argument("triangle_k: hessian not positive definite");
                chol[i][i] = std::sqrt(sum);
            } else {
                chol[i][j] = sum / chol[j][j];
            }
        }
    }
    // solve H xbar = -G
    std::vector<double> y(n, 0.0), xbar(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = -linear[i];
        for (std::size_t k = 0; k < i; ++k) sum -= chol[i][k] * y[k];
        y[i] = sum / chol[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double sum = y[i];
        for (std::size_t k = i + 1; k < n; ++k) sum -= chol[k][i] * xbar[k];
        xbar[i] = sum / chol[i][i];
    }
    double p_bar = constant;
    for (std::size_t i = 0; i < n; ++i) {
        p_bar += linear[i] * xbar[i];
        double hx = 0.0;
        for (std::size_t j = 0; j < n; ++j) hx += hessian[i][j] * xbar[j];
        p_bar += 0.5 * xbar[i] * hx;
    }
    return std::sqrt(std::abs(constant)) + 4.0 * std::sqrt(std::abs(p_bar));
}

double fit_zeta(const std::vector<double>& lambda_n, const std::vector<std::size_t>& card_n,
                double c_f) {
    double zeta = 0.0;
    for (std::size_t i = 0; i < lambda_n.size(); ++i) {
        if (static_cast<double>(card_n[i]) <= c_f) continue;
        if (lambda_n[i] <= 1.0) return std::numeric_limits<double>::infinity();
        zeta = std::max(zeta, std::log(static_cast<double>(card_n[i]) / c_f) / std::log(lambda_n[i]));
    }
    return zeta;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// per-n suprema of the two set cardinalities, indexed by the first slot
void per_n_cards(const TriadSets& sets, std::size_t count, std::vector<std::size_t>& out) {
    out.assign(count, 0);
    for (const auto& [key, s] : sets.forward)
        out[key.first] = std::max(out[key.first], s.size());
    for (const auto& [key, s] : sets.inverse)
        out[key.first] = std::max(out[key.first], s.size());
}

std::vector<double> distinct_eigenvalues(const std::vector<SpectralMode>& modes,
                                         const std::vector<std::size_t>& group, std::size_t ngroups) {
    std::vector<double> lam(ngroups, 0.0);
    for (std::size_t i = 0; i < modes.size(); ++i) lam[group[i]] = modes[i].eigenvalue;
    return lam;
}

}  // namespace

AssumptionReport verify_assumptions(const TriadTable& table, double alpha, double c_f, double tol) {
    AssumptionReport rep;
    rep.g = table.g;
    rep.cutoff = table.cutoff;
    rep.alpha = alpha;
    rep.c_f = c_f;
    rep.n_modes = table.modes.size();
    rep.n_triads = table.entries.size();

    const auto ineq = verify_triad_inequality(table, alpha);
    rep.beta_required = ineq.beta_required;
    rep.beta_witness = ineq.witness;
    for (int i = 0; i < 3; ++i)
        rep.beta_witness_labels[i] = mode_label(table.modes[ineq.witness[i]], table.g);

    const TriadSets sets = triad_sets(table, false);
    rep.card_max_forward = sets.card_max_forward;
    rep.card_max_inverse = sets.card_max_inverse;
    rep.card_fwd_witness = sets.witness_forward;
    rep.card_inv_witness = sets.witness_inverse;

    std::vector<std::size_t> group;
    const std::size_t ngroups = eigenvalue_groups(table.modes, group);
    const std::vector<double> lam_groups = distinct_eigenvalues(table.modes, group, ngroups);

    std::vector<std::size_t> cards;
    per_n_cards(sets, table.modes.size(), cards);
    std::vector<double> lam_modes;
    for (const auto& m : table.modes) lam_modes.push_back(m.eigenvalue);
    rep.zeta_fit = fit_zeta(lam_modes, cards, c_f);

    const TriadSets gsets = triad_sets(table, true);
    rep.card_max_forward_grouped = gsets.card_max_forward;
    rep.card_max_inverse_grouped = gsets.card_max_inverse;
    std::vector<std::size_t> gcards;
    per_n_cards(gsets, ngroups, gcards);
    rep.zeta_fit_grouped = fit_zeta(lam_groups, gcards, c_f);

    // growth bound with the geometry's own (rho, xi)
    bool growth_ok = true;
    switch (table.g.kind) {
        case GeometryKind::Torus2:
        case GeometryKind::Torus3: {
            const double xi = 2.0 / table.g.dim();
            rep.growth = growth_check(table.g, table.modes, xi);
            growth_ok = rep.growth.rho_hat > 0.0;
            break;
        }
        case GeometryKind::Rectangle: {
            rep.growth = growth_check(table.g, table.modes, 1.0, 2.0 * kPi / (table.g.a * table.g.b));
            growth_ok = rep.growth.violations.empty();
            break;
        }
        case GeometryKind::Cylinder: {
            const double rho1 = cylinder_growth_rho1(table.g, table.modes);
            rep.growth = growth_check(table.g, table.modes, 1.0, rho1);
            growth_ok = rep.growth.violations.empty();
            break;
        }
        case GeometryKind::Sphere:
        case GeometryKind::Hemisphere: {
            rep.growth_uses_distinct = true;
            rep.growth = growth_check(lam_groups, 2.0, 1.0);
            growth_ok = rep.growth.violations.empty();
            break;
        }
    }

    // verdict against the geometry's target constants
    rep.pass_growth = growth_ok;
    switch (table.g.kind) {
        case GeometryKind::Torus2:
        case GeometryKind::Torus3:
            rep.claim = "beta=0, C_F=4, zeta=0";
            rep.pass_triad_inequality = rep.beta_required <= tol;
            rep.pass_cardinality = rep.card_max_forward <= 4 && rep.card_max_inverse <= 4 &&
                                   fit_zeta(lam_modes, cards, 4.0) == 0.0;
            break;
        case GeometryKind::Rectangle:
            rep.claim = "beta=0, C_F=4, zeta=0, rho=2pi/(ab)";
            rep.pass_triad_inequality = rep.beta_required <= tol;
            rep.pass_cardinality = rep.card_max_forward <= 4 && rep.card_max_inverse <= 4 &&
                                   fit_zeta(lam_modes, cards, 4.0) == 0.0;
            break;
        case GeometryKind::Cylinder:
            rep.claim = "beta=0, card_fwd<=4, card_inv<=8, zeta=0, rho=rho1";
            rep.pass_triad_inequality = rep.beta_required <= tol;
            rep.pass_cardinality = rep.card_max_forward <= 4 && rep.card_max_inverse <= 8 &&
                                   fit_zeta(lam_modes, cards, 8.0) == 0.0;
            break;
        case GeometryKind::Sphere:
        case GeometryKind::Hemisphere:
            rep.claim = "beta<=2, C_F=2 with zeta<=1/2, xi=2";
            rep.pass_triad_inequality = rep.beta_required <= 2.0 + tol;
            rep.pass_cardinality = fit_zeta(lam_modes, cards, 2.0) <= 0.5 + tol;
            break;
    }
    rep.pass = rep.pass_triad_inequality && rep.pass_cardinality && rep.pass_growth;
    return rep;
}

namespace {

// JSON has no infinity literal; fitted zeta can genuinely be infinite (a
// lambda=1 group whose cardinality already exceeds C_F admits no exponent).
nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "infinity" : "-infinity";
}

}  // namespace

std::string assumption_report_json(const AssumptionReport& rep, const std::string& manifest_header) {
    nlohmann::json j;
    j["geometry"] = kind_name(rep.g.kind);
    j["a"] = rep.g.a;
    j["b"] = rep.g.b;
    j["cutoff"] = rep.cutoff;
    j["alpha"] = rep.alpha;
    j["beta_required"] = rep.beta_required;
    j["c_f"] = rep.c_f;
    j["card_max_forward"] = rep.card_max_forward;
    j["card_max_inverse"] = rep.card_max_inverse;
    j["zeta_fit"] = json_number(rep.zeta_fit);
    j["grouped"] = {{"card_max_forward", rep.card_max_forward_grouped},
                    {"card_max_inverse", rep.card_max_inverse_grouped},
                    {"zeta_fit", json_number(rep.zeta_fit_grouped)}};
    j["growth"] = {{"xi", rep.growth.xi},
                   {"rho_hat", rep.growth.rho_hat},
                   {"violations", rep.growth.violations.size()},
                   {"uses_distinct", rep.growth_uses_distinct}};
    j["n_modes"] = rep.n_modes;
    j["n_triads"] = rep.n_triads;
    j["pass"] = rep.pass;
    j["pass_by_assumption"] = {{"triad_inequality", rep.pass_triad_inequality},
                               {"cardinality", rep.pass_cardinality},
                               {"growth", rep.pass_growth}};
    j["claim"] = rep.claim;

    // regularity threshold implied by the measured constants, under both
    // conventions for how zeta enters
    const double d = rep.g.dim();
    const double xi_inv = 1.0 / rep.growth.xi;
    const double z = rep.zeta_fit;
    j["s_threshold"] = {{"with_2zeta", (d + 2.0 * (xi_inv + 2.0 * z - 1.0)) / 4.0},
                        {"with_zeta", (d + 2.0 * (xi_inv + z - 1.0)) / 4.0}};

    nlohmann::json witnesses = nlohmann::json::array();
    witnesses.push_back({{"type", "beta"},
                         {"n", rep.beta_witness_labels[0]},
                         {"m", rep.beta_witness_labels[1]},
                         {"l", rep.beta_witness_labels[2]},
                         {"value", rep.beta_required}});
    witnesses.push_back({{"type", "card_forward"},
                         {"n", rep.card_fwd_witness.first},
                         {"m", rep.card_fwd_witness.second},
                         {"card", rep.card_max_forward}});
    witnesses.push_back({{"type", "card_inverse"},
                         {"n", rep.card_inv_witness.first},
                         {"l", rep.card_inv_witness.second},
                         {"card", rep.card_max_inverse}});
    witnesses.push_back({{"type", "growth"},
                         {"k", rep.growth.argmin},
                         {"ratio", rep.growth.rho_hat}});
    j["witnesses"] = witnesses;

    std::string out;
    if (!manifest_header.empty()) out += manifest_header + "\n";
    out += j.dump(2);
    out += "\n";
    return out;
}

}  // namespace speclab
