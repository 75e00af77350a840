// speclab command line: spectrum | wigner | couplings | verify-assumptions |
// simulate. Exit codes: 0 ok, 1 internal error, 2 usage, 3 verification
// failure, 4 blow-up.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "speclab/assumption_lab.hpp"
#include "speclab/coupling.hpp"
#include "speclab/field.hpp"
#include "speclab/flat_bases.hpp"
#include "speclab/format.hpp"
#include "speclab/galerkin_sim.hpp"
#include "speclab/spectrum_io.hpp"
#include "speclab/sphere_bases.hpp"

namespace {

using namespace speclab;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitBlowup = 4;

struct GeometryArgs {
    std::string name = "rect";
    double a = 0.0;
    double b = 0.0;

    GeometryDescriptor resolve() const {
        GeometryDescriptor g;
        g.kind = kind_from_name(name);
        g.a = a;
        g.b = b;
        if (g.uses_sides() && (a <= 0.0 || b <= 0.0))
            throw CLI::ValidationError("--a and --b must be positive for " + name);
        g.validate();
        return g;
    }
};

void add_geometry_flags(CLI::App* cmd, GeometryArgs& ga) {
    cmd->add_option("--geometry", ga.name, "torus2|torus3|rect|cyl|sphere|hemisphere")->required();
    cmd->add_option("--a", ga.a, "x1 side (rect) or circumference (cyl)");
    cmd->add_option("--b", ga.b, "x2 side");
}

// stdout unless --out was given
struct OutputSink {
    std::string path;
    std::ofstream file;
    std::ostream& open() {
        if (path.empty()) return std::cout;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file " + path);
        return file;
    }
};

RunManifest make_manifest(const std::string& sub, const GeometryArgs& ga) {
    RunManifest man;
    man.subcommand = sub;
    man.set("geometry", ga.name);
    man.set("a", ga.a);
    man.set("b", ga.b);
    return man;
}

int run_spectrum(const GeometryArgs& ga, double cutoff, OutputSink& sink) {
    const GeometryDescriptor g = ga.resolve();
    auto modes = enumerate_any(g, cutoff);
    RunManifest man = make_manifest("spectrum", ga);
    man.set("cutoff", cutoff);
    write_spectrum_csv(sink.open(), g, modes, man.header());
    return kExitOk;
}

int run_wigner(OutputSink& sink) {
    std::ostream& os = sink.open();
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        Wigner3jQuery q;
        if (!(is >> q.j1 >> q.j2 >> q.j3 >> q.m1 >> q.m2 >> q.m3)) {
            std::cerr << "wigner: bad query line '" << line << "'\n";
            return kExitUsage;
        }
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", wigner3j(q));
        os << buf << "\n";
    }
    return kExitOk;
}

int run_couplings(const GeometryArgs& ga, double cutoff, double tol, const std::string& cache_dir,
                  OutputSink& sink) {
    const GeometryDescriptor g = ga.resolve();
    TableBuildOptions opts;
    opts.drop_tol = tol;
    opts.cache_dir = cache_dir;
    const TriadTable table = build_triad_table(g, cutoff, opts);
    RunManifest man = make_manifest("couplings", ga);
    man.set("cutoff", cutoff);
    man.set("tol", tol);
    write_couplings_csv(sink.open(), table, man.header());
    return kExitOk;
}

int run_verify(const GeometryArgs& ga, double cutoff, double alpha, double c_f, double tol,
               const std::string& cache_dir, OutputSink& sink) {
    const GeometryDescriptor g = ga.resolve();
    TableBuildOptions opts;
    opts.cache_dir = cache_dir;
    const TriadTable table = build_triad_table(g, cutoff, opts);
    if (c_f <= 0.0) {
        c_f = 4.0;
        if (g.kind == GeometryKind::Cylinder) c_f = 8.0;
        if (g.is_spherical()) c_f = 2.0;
    }
    const AssumptionReport rep = verify_assumptions(table, alpha, c_f, tol);
    RunManifest man = make_manifest("verify-assumptions", ga);
    man.set("cutoff", cutoff);
    man.set("alpha", alpha);
    man.set("c_f", c_f);
    man.set("tol", tol);
    sink.open() << assumption_report_json(rep, man.header());
    return rep.pass ? kExitOk : kExitVerifyFail;
}

struct SimulateArgs {
    GeometryArgs ga;
    double cutoff = 0.0;
    double nu = 1.0;
    double dt = 1e-3;
    double tmax = 1.0;
    double s = 1.0;
    double sigma = 0.5;
    double alpha = 0.5;
    std::string u0 = "lowmode";
    std::string h = "zero";
    double u0_scale = 1.0;
    std::uint64_t seed = 1234;
    std::size_t monitor_stride = 10;
    std::string final_field;
    std::string cache_dir;
};

SpectralField load_field_arg(const std::string& arg, const GeometryDescriptor& g,
                             const std::vector<SpectralMode>& modes, double scale,
                             std::uint64_t seed) {
    if (arg == "lowmode" || arg == "analytic-decay" || arg == "random-seeded")
        return make_preset(arg, g, modes, scale, seed);
    std::ifstream is(arg);
    if (!is) throw CLI::ValidationError("cannot open field file " + arg);
    return read_field_csv(is, g);
}

int run_simulate(const SimulateArgs& sa, OutputSink& sink) {
    const GeometryDescriptor g = sa.ga.resolve();
    TableBuildOptions topts;
    topts.cache_dir = sa.cache_dir;
    const TriadTable table = build_triad_table(g, sa.cutoff, topts);

    SimConfig config;
    config.g = g;
    config.cutoff = sa.cutoff;
    config.nu = sa.nu;
    config.dt = sa.dt;
    config.t_max = sa.tmax;
    config.gevrey = {sa.s, sa.sigma, sa.alpha};
    config.monitor_stride = sa.monitor_stride;
    config.u0 = load_field_arg(sa.u0, g, table.modes, sa.u0_scale, sa.seed);
    if (sa.h != "zero") config.forcing = load_field_arg(sa.h, g, table.modes, 1.0, sa.seed + 1);
    else config.forcing = SpectralField(g);
    config.validate();

    RunManifest man = make_manifest("simulate", sa.ga);
    man.set("cutoff", sa.cutoff);
    man.set("nu", sa.nu);
    man.set("dt", sa.dt);
    man.set("tmax", sa.tmax);
    man.set("s", sa.s);
    man.set("sigma", sa.sigma);
    man.set("alpha", sa.alpha);
    man.set("u0", sa.u0);
    man.set("h", sa.h);
    man.set("u0_scale", sa.u0_scale);
    man.set("seed", static_cast<long long>(sa.seed));
    man.set("monitor_stride", static_cast<long long>(sa.monitor_stride));

    const SimResult result = run(config, table);
    write_records_csv(sink.open(), result.records, man.header());
    if (!sa.final_field.empty()) {
        std::ofstream ff(sa.final_field);
        if (!ff) throw std::runtime_error("cannot open " + sa.final_field);
        write_field_csv(ff, result.final_state, man.header());
    }
    if (result.blew_up) {
        std::cerr << "blow-up at t=" << format_double(result.blowup_time) << "\n";
        return kExitBlowup;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral Galerkin laboratory for Stokes eigenbases and triad couplings"};
    app.require_subcommand(1);
    // the simulate subcommand takes --h (the forcing field), so the help flag
    // must not claim the short -h
    app.set_help_flag("--help", "print help");

    GeometryArgs spec_ga;
    double spec_cutoff = 0.0;
    OutputSink spec_sink;
    auto* spectrum = app.add_subcommand("spectrum", "enumerate the truncated eigenbasis");
    add_geometry_flags(spectrum, spec_ga);
    spectrum->add_option("--cutoff", spec_cutoff, "largest eigenvalue")->required();
    spectrum->add_option("--out", spec_sink.path, "output file (default stdout)");

    OutputSink wig_sink;
    auto* wigner = app.add_subcommand("wigner", "evaluate Wigner-3j queries from stdin");
    wigner->add_option("--out", wig_sink.path, "output file (default stdout)");

    GeometryArgs cou_ga;
    double cou_cutoff = 0.0, cou_tol = 1e-12;
    std::string cou_cache;
    OutputSink cou_sink;
    auto* couplings = app.add_subcommand("couplings", "dump the triad coupling table");
    add_geometry_flags(couplings, cou_ga);
    couplings->add_option("--cutoff", cou_cutoff)->required();
    couplings->add_option("--tol", cou_tol, "drop tolerance (default 1e-12)");
    couplings->add_option("--cache-dir", cou_cache, "triad table disk cache");
    couplings->add_option("--out", cou_sink.path);

    GeometryArgs ver_ga;
    double ver_cutoff = 0.0, ver_alpha = 0.5, ver_cf = 0.0, ver_tol = 1e-10;
    std::string ver_cache;
    OutputSink ver_sink;
    auto* verify = app.add_subcommand("verify-assumptions", "measure the assumption constants");
    add_geometry_flags(verify, ver_ga);
    verify->add_option("--cutoff", ver_cutoff)->required();
    verify->add_option("--alpha", ver_alpha, "triad inequality exponent (default 0.5)");
    verify->add_option("--c-f", ver_cf, "cardinality constant (default per geometry)");
    verify->add_option("--tol", ver_tol, "verification tolerance (default 1e-10)");
    verify->add_option("--cache-dir", ver_cache);
    verify->add_option("--out", ver_sink.path);

    SimulateArgs sim;
    OutputSink sim_sink;
    auto* simulate = app.add_subcommand("simulate", "integrate the truncated system");
    add_geometry_flags(simulate, sim.ga);
    simulate->add_option("--cutoff", sim.cutoff)->required();
    simulate->add_option("--nu", sim.nu, "viscosity")->required();
    simulate->add_option("--dt", sim.dt)->required();
    simulate->add_option("--tmax", sim.tmax)->required();
    simulate->add_option("--s", sim.s, "Sobolev exponent of the monitor (default 1)");
    simulate->add_option("--sigma", sim.sigma, "Gevrey weight ceiling (default 0.5)");
    simulate->add_option("--alpha", sim.alpha, "Gevrey exponent (default 0.5)");
    simulate->add_option("--u0", sim.u0, "initial field: path or lowmode|analytic-decay|random-seeded");
    simulate->add_option("--h", sim.h, "forcing: path or 'zero'");
    simulate->add_option("--u0-scale", sim.u0_scale, "preset amplitude (default 1)");
    simulate->add_option("--seed", sim.seed, "preset rng seed (default 1234)");
    simulate->add_option("--monitor-stride", sim.monitor_stride, "steps between records");
    simulate->add_option("--final-field", sim.final_field, "dump the terminal spectral field");
    simulate->add_option("--cache-dir", sim.cache_dir);
    simulate->add_option("--out", sim_sink.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(spec_ga, spec_cutoff, spec_sink);
        if (wigner->parsed()) return run_wigner(wig_sink);
        if (couplings->parsed()) return run_couplings(cou_ga, cou_cutoff, cou_tol, cou_cache, cou_sink);
        if (verify->parsed())
            return run_verify(ver_ga, ver_cutoff, ver_alpha, ver_cf, ver_tol, ver_cache, ver_sink);
        if (simulate->parsed()) return run_simulate(sim, sim_sink);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
