// Wall-time comparison of the OpenMP kernels against their serial paths:
// triad table construction, the soundness scan, and the rhs contraction.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "speclab/coupling.hpp"
#include "speclab/galerkin_sim.hpp"

using namespace speclab;

namespace {

constexpr double kPi = 3.14159265358979323846;
using Clock = std::chrono::steady_clock;

double timed(const char* label, int reps, const std::function<void()>& fn) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count() / reps;
    std::printf("  %-28s %10.3f ms\n", label, dt * 1e3);
    return dt;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp\n");
#endif

    {
        std::printf("triad table build, torus2 lambda<=40\n");
        const GeometryDescriptor g = GeometryDescriptor::torus2();
        TableBuildOptions serial;
        serial.parallel = false;
        TableBuildOptions parallel;
        const double ts = timed("serial", 3, [&] { (void)build_triad_table(g, 40.0, serial); });
        const double tp = timed("openmp", 3, [&] { (void)build_triad_table(g, 40.0, parallel); });
        std::printf("  speedup %.2fx\n", ts / tp);
    }

    {
        std::printf("selection soundness scan, rect lambda<=50\n");
        const GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
        const double ts = timed("serial", 3, [&] { (void)selection_soundness(g, 50.0, 1e-10, false); });
        const double tp = timed("openmp", 3, [&] { (void)selection_soundness(g, 50.0, 1e-10, true); });
        std::printf("  speedup %.2fx\n", ts / tp);
    }

    {
        std::printf("rhs contraction, rect lambda<=145\n");
        const GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
        TriadTable table = build_triad_table(g, 145.0, {});
        GalerkinSystem sys(table, 1.0, SpectralField(g));
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> u(sys.size()), out;
        for (auto& c : u) c = dist(rng);
        const double ts = timed("gather serial", 2000, [&] { sys.rhs(u, out, false); });
        const double tp = timed("gather openmp", 2000, [&] { sys.rhs(u, out, true); });
        timed("scatter reference", 2000, [&] { sys.rhs_serial_reference(u, out); });
        std::printf("  speedup %.2fx\n", ts / tp);
    }
    return 0;
}
