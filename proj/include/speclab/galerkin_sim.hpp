// Time integration of the truncated Galerkin system
//   du/dt = -nu A u - B(u) - h
// with an integrating-factor midpoint scheme (exact on the linear part), and
// the Gevrey-norm monitoring that exhibits the smoothing.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "speclab/coupling.hpp"
#include "speclab/field.hpp"
#include "speclab/gevrey.hpp"

namespace speclab {

struct SimConfig {
    GeometryDescriptor g;
    double cutoff = 0.0;
    double nu = 1.0;
    SpectralField u0;
    SpectralField forcing;
    // only "constant" exists today; the field is reserved so configs with
    // time-dependent schedules stay readable later
    std::string forcing_schedule = "constant";
    double dt = 1e-3;
    double t_max = 1.0;
    GevreyParams gevrey;    // sigma acts through the ramp phi(t) = min(sigma, t)
    std::size_t monitor_stride = 10;

    void validate() const;
};

struct DecayRecord {
    double t = 0.0;
    double energy = 0.0;
    double gevrey_norm = 0.0;     // with sigma replaced by min(sigma, t)
    double fitted_radius = 0.0;   // NaN while fewer than 3 eigenvalue groups are populated
    std::size_t n_active_modes = 0;
};

struct SimResult {
    std::vector<DecayRecord> records;
    SpectralField final_state;
    bool blew_up = false;
    double blowup_time = 0.0;
};

// Dense view of the truncated system: per-mode eigenvalues plus a gather
// index (per output mode) over the stored triads. The gather contraction is
// deterministic for any thread count; the scatter contraction below is the
// serial reference with an independent summation order.
class GalerkinSystem {
  public:
    GalerkinSystem(const TriadTable& table, double nu, const SpectralField& forcing);

    std::size_t size() const { return table_->modes.size(); }
    const TriadTable& table() const { return *table_; }

    std::vector<double> to_dense(const SpectralField& u) const;
    SpectralField to_field(const std::vector<double>& u) const;

    // full right-hand side -nu A u - B(u) - h
    void rhs(const std::vector<double>& u, std::vector<double>& out, bool parallel = true) const;
    void rhs_serial_reference(const std::vector<double>& u, std::vector<double>& out) const;

    // nonlinear + forcing part only (what the integrating factor does not see)
    void nonlinear(const std::vector<double>& u, std::vector<double>& out, bool parallel = true) const;

    // one integrating-factor midpoint step
    void step_exponential_rk2(std::vector<double>& u, double dt, bool parallel = true) const;

    const std::vector<double>& eigenvalues() const { return lam_; }

  private:
    const TriadTable* table_;
    double nu_;
    std::vector<double> lam_;
    std::vector<double> h_;
    struct GatherTerm {
        std::uint32_t n, m;
        double c;  // includes the 1/2 for diagonal pairs
    };
    std::vector<std::vector<GatherTerm>> gather_;  // per output mode
    mutable std::vector<double> exp_full_, exp_half_;
    mutable double cached_dt_ = -1.0;
};

// Least-squares slope of -log(lambda^s g_k) against sqrt(lambda) over the
// populated distinct-eigenvalue groups (group maxima; groups below 1e-300
// excluded). NaN with fewer than 3 groups.
double fitted_radius(const std::vector<SpectralMode>& modes, const std::vector<double>& u, double s);

SimResult run(const SimConfig& config, const TriadTable& table, bool parallel = true);

void write_records_csv(std::ostream& os, const std::vector<DecayRecord>& records,
                       const std::string& header);

// u0 presets so tests and the CLI need no external files:
//   lowmode        scale on every mode of the three lowest eigenvalue groups
//   analytic-decay scale * exp(-sqrt(lambda)) on every mode
//   random-seeded  scale * exp(-sqrt(lambda)) * uniform(-1,1) from mt19937(seed)
SpectralField make_preset(const std::string& name, const GeometryDescriptor& g,
                          const std::vector<SpectralMode>& modes, double scale = 1.0,
                          std::uint64_t seed = 1234);

}  // namespace speclab
