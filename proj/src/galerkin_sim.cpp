#include "speclab/galerkin_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "speclab/flat_bases.hpp"
#include "speclab/format.hpp"

namespace speclab {

void SimConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("SimConfig: dt must be positive");
    if (t_max < 0.0) throw std::invalid_argument("SimConfig: t_max must be nonnegative");
    if (nu < 0.0) throw std::invalid_argument("SimConfig: nu must be nonnegative");
    gevrey.validate();
    if (monitor_stride == 0) throw std::invalid_argument("SimConfig: monitor_stride must be >= 1");
    if (forcing_schedule != "constant")
        throw std::invalid_argument("SimConfig: only the constant forcing schedule exists");
}

GalerkinSystem::GalerkinSystem(const TriadTable& table, double nu, const SpectralField& forcing)
    : table_(&table), nu_(nu) {
    const std::size_t n = table.modes.size();
    lam_.resize(n);
    for (std::size_t i = 0; i < n; ++i) lam_[i] = table.modes[i].eigenvalue;
    h_.assign(n, 0.0);
    for (const auto& [mode, c] : forcing.coeffs) {
        auto it = std::lower_bound(table.modes.begin(), table.modes.end(), mode, mode_less);
        if (it == table.modes.end() || !(*it == mode))
            throw std::invalid_argument("forcing mode outside the truncated spectrum");
        h_[static_cast<std::size_t>(it - table.modes.begin())] = c;
    }
    gather_.resize(n);
    for (const auto& e : table.entries)
        gather_[e.l].push_back({e.n, e.m, e.n == e.m ? 0.5 * e.c : e.c});
}

std::vector<double> GalerkinSystem::to_dense(const SpectralField& u) const {
    std::vector<double> out(size(), 0.0);
    for (const auto& [mode, c] : u.coeffs) {
        auto it = std::lower_bound(table_->modes.begin(), table_->modes.end(), mode, mode_less);
        if (it == table_->modes.end() || !(*it == mode))
            throw std::invalid_argument("field mode outside the truncated spectrum");
        out[static_cast<std::size_t>(it - table_->modes.begin())] = c;
    }
    return out;
}

SpectralField GalerkinSystem::to_field(const std::vector<double>& u) const {
    SpectralField out(table_->g);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != 0.0) out.coeffs[table_->modes[i]] = u[i];
    return out;
}

void GalerkinSystem::nonlinear(const std::vector<double>& u, std::vector<double>& out,
                               bool parallel) const {
    const std::size_t n = size();
    out.assign(n, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::size_t l = 0; l < n; ++l) {
        double acc = 0.0;
        for (const auto& t : gather_[l]) acc += t.c * u[t.n] * u[t.m];
        out[l] = -acc - h_[l];
    }
}

void GalerkinSystem::rhs(const std::vector<double>& u, std::vector<double>& out,
                         bool parallel) const {
    nonlinear(u, out, parallel);
    for (std::size_t l = 0; l < size(); ++l) out[l] -= nu_ * lam_[l] * u[l];
}

void GalerkinSystem::rhs_serial_reference(const std::vector<double>& u,
                                          std::vector<double>& out) const {
    const std::size_t n = size();
    out.assign(n, 0.0);
    // scatter over stored pairs: independent summation order vs the gather path
    for (const auto& e : table_->entries) {
        const double w = (e.n == e.m ? 0.5 : 1.0) * e.c * u[e.n] * u[e.m];
        out[e.l] -= w;
    }
    for (std::size_t l = 0; l < n; ++l) out[l] -= nu_ * lam_[l] * u[l] + h_[l];
}

void GalerkinSystem::step_exponential_rk2(std::vector<double>& u, double dt, bool parallel) const {
    const std::size_t n = size();
    if (cached_dt_ != dt) {
        exp_full_.resize(n);
        exp_half_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            exp_full_[i] = std::exp(-nu_ * lam_[i] * dt);
            exp_half_[i] = std::exp(-nu_ * lam_[i] * dt * 0.5);
        }
        cached_dt_ = dt;
    }
    static thread_local std::vector<double> k1, mid, k2;
    nonlinear(u, k1, parallel);
    mid.resize(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = exp_half_[i] * (u[i] + 0.5 * dt * k1[i]);
    nonlinear(mid, k2, parallel);
    for (std::size_t i = 0; i < n; ++i) u[i] = exp_full_[i] * u[i] + dt * exp_half_[i] * k2[i];
}

double fitted_radius(const std::vector<SpectralMode>& modes, const std::vector<double>& u, double s) {
    std::vector<std::size_t> group;
    const std::size_t ngroups = eigenvalue_groups(modes, group);
    std::vector<double> gmax(ngroups, 0.0), glam(ngroups, 0.0);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        gmax[group[i]] = std::max(gmax[group[i]], std::abs(u[i]));
        glam[group[i]] = modes[i].eigenvalue;
    }
    std::vector<double> xs, ys;
    for (std::size_t gi = 0; gi < ngroups; ++gi) {
        if (gmax[gi] < 1e-300) continue;
        xs.push_back(std::sqrt(glam[gi]));
        ys.push_back(-(s * std::log(glam[gi]) + std::log(gmax[gi])));
    }
    if (xs.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= xs.size();
    ybar /= ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xbar) * (ys[i] - ybar);
        den += (xs[i] - xbar) * (xs[i] - xbar);
    }
    return num / den;
}

SimResult run(const SimConfig& config, const TriadTable& table, bool parallel) {
    config.validate();
    GalerkinSystem sys(table, config.nu, config.forcing);
    std::vector<double> u = sys.to_dense(config.u0);

    SimResult result;
    auto record = [&](double t) {
        DecayRecord r;
        r.t = t;
        r.energy = 0.0;
        for (double c : u) r.energy += c * c;
        GevreyParams p = config.gevrey;
        p.sigma = std::min(config.gevrey.sigma, t);  // the ramp phi(t)
        try {
            r.gevrey_norm = gevrey_norm(sys.to_field(u), p);
        } catch (const WeightOverflow&) {
            r.gevrey_norm = std::numeric_limits<double>::infinity();
        }
        r.fitted_radius = fitted_radius(table.modes, u, config.gevrey.s);
        r.n_active_modes = 0;
        for (double c : u)
            if (std::abs(c) > 1e-300) ++r.n_active_modes;
        result.records.push_back(r);
    };

    const std::size_t nsteps = static_cast<std::size_t>(std::llround(config.t_max / config.dt));
    record(0.0);
    for (std::size_t step = 1; step <= nsteps; ++step) {
        sys.step_exponential_rk2(u, config.dt, parallel);
        const double t = config.dt * static_cast<double>(step);
        double e = 0.0;
        bool finite = true;
        for (double c : u) {
            e += c * c;
            if (!std::isfinite(c)) finite = false;
        }
        if (!finite || e > 1e12) {
            result.blew_up = true;
            result.blowup_time = t;
            break;
        }
        if (step % config.monitor_stride == 0 || step == nsteps) record(t);
    }
    result.final_state = sys.to_field(u);
    return result;
}

void write_records_csv(std::ostream& os, const std::vector<DecayRecord>& records,
                       const std::string& header) {
    if (!header.empty()) os << header << "\n";
    os << "t,energy,gevrey_norm,fitted_radius,n_active_modes\n";
    for (const auto& r : records) {
        os << format_double(r.t) << "," << format_double(r.energy) << ","
           << format_double(r.gevrey_norm) << "," << format_double(r.fitted_radius) << ","
           << r.n_active_modes << "\n";
    }
}

SpectralField make_preset(const std::string& name, const GeometryDescriptor& g,
                          const std::vector<SpectralMode>& modes, double scale, std::uint64_t seed) {
    SpectralField u(g);
    if (name == "lowmode") {
        std::vector<std::size_t> group;
        eigenvalue_groups(modes, group);
        for (std::size_t i = 0; i < modes.size(); ++i)
            if (group[i] < 3) u.coeffs[modes[i]] = scale * std::pow(0.5, static_cast<double>(group[i]));
    } else if (name == "analytic-decay") {
        for (const auto& m : modes) u.coeffs[m] = scale * std::exp(-std::sqrt(m.eigenvalue));
    } else if (name == "random-seeded") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (const auto& m : modes) {
            const double c = scale * std::exp(-std::sqrt(m.eigenvalue)) * dist(rng);
            if (c != 0.0) u.coeffs[m] = c;
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return u;
}

}  // namespace speclab
