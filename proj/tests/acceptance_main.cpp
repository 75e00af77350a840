// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "speclab/assumption_lab.hpp"
#include "speclab/coupling.hpp"
#include "speclab/galerkin_sim.hpp"
#include "speclab/sphere_bases.hpp"

using namespace speclab;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;
using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    Clock::time_point start = Clock::now();
    bool ok = true;
    std::string detail;

    explicit Criterion(int n) : id(n) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }

    ~Criterion() {
        const double dt = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("criterion %2d: %s (%.1fs)%s%s\n", id, ok ? "PASS" : "FAIL", dt,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void criterion_1_torus2_constants() {
    Criterion c(1);
    TriadTable table = build_triad_table(GeometryDescriptor::torus2(), 40.0, {});
    auto rep = verify_assumptions(table, 0.5, 4.0, 1e-10);
    c.expect(rep.beta_required <= 1e-10, "beta_required=" + num(rep.beta_required) + " > 1e-10");
    c.expect(rep.card_max_forward <= 4, "card_fwd=" + num(rep.card_max_forward));
    c.expect(rep.card_max_inverse <= 4, "card_inv=" + num(rep.card_max_inverse));
    c.expect(rep.zeta_fit == 0.0, "zeta_fit=" + num(rep.zeta_fit));
}

void criterion_2_rectangle_constants() {
    Criterion c(2);
    const GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
    TriadTable table = build_triad_table(g, 50.0, {});
    auto rep = verify_assumptions(table, 0.5, 4.0, 1e-10);
    c.expect(rep.beta_required <= 1e-10, "beta_required=" + num(rep.beta_required));
    c.expect(rep.card_max_forward <= 4 && rep.card_max_inverse <= 4,
             "cards " + num(rep.card_max_forward) + "/" + num(rep.card_max_inverse));
    auto sound = selection_soundness(g, 50.0, 1e-10);
    c.expect(sound.counterexamples.empty(),
             num(sound.counterexamples.size()) + " selection counterexamples, worst |c|=" +
                 num(sound.worst_off_predicate));
}

void criterion_3_cylinder_oracle_equivalence() {
    Criterion c(3);
    const GeometryDescriptor g = GeometryDescriptor::cylinder(2.0 * kPi, kPi);
    // indices (k1, k2) <= 8 for all three legs; lambda = k1^2 + k2^2 here
    TriadTable table = build_triad_table(g, 128.5, {});
    auto in_box = [&](const SpectralMode& m) { return m.key[0] <= 8 && m.key[1] <= 8; };
    double worst = 0.0;
    std::size_t compared = 0;
    for (const auto& e : table.entries) {
        const auto& n = table.modes[e.n];
        const auto& m = table.modes[e.m];
        const auto& l = table.modes[e.l];
        if (!in_box(n) || !in_box(m) || !in_box(l)) continue;
        double closed = 0.0;
        for (const auto& [lm, cc] : coupling_closed_form_cylinder(g, n, m))
            if (lm.key == l.key && lm.variant == l.variant) closed += cc;
        worst = std::max(worst, std::abs(closed - e.c));
        ++compared;
    }
    c.expect(compared > 1000, "only " + num(compared) + " triads compared");
    c.expect(worst <= 1e-10, "worst |closed - quad| = " + num(worst));

    // the hand-derived Y-basis coefficient on target (2,3) sigma has
    // magnitude 3/52; the orientation follows the convection integral
    auto modes = enumerate_modes(g, 16.0);
    SpectralMode n, m, l;
    for (const auto& mm : modes) {
        if (mm.key == std::array<int, 3>{1, 1, 0} && mm.variant == Variant::Sigma) n = mm;
        if (mm.key == std::array<int, 3>{1, 2, 0} && mm.variant == Variant::Sigma) m = mm;
        if (mm.key == std::array<int, 3>{2, 3, 0} && mm.variant == Variant::Sigma) l = mm;
    }
    double c_y = 0.0;
    for (const auto& [lm, cc] : coupling_closed_form_cylinder_raw(g, n, m))
        if (lm.key == l.key && lm.variant == l.variant) c_y = cc;
    c.expect(std::abs(std::abs(c_y) - 3.0 / 52.0) <= 1e-14,
             "|c_Y(2,3)| = " + num(std::abs(c_y)) + " != 3/52");
    const double quad_y = coupling_quadrature(g, n, m, l) * l.normalization /
                          (n.normalization * m.normalization);
    c.expect(std::abs(c_y - quad_y) <= 1e-12, "closed/quad disagree on (2,3)sigma");
}

void criterion_4_sphere_selection() {
    Criterion c(4);
    // triple products vanish off the parity/window predicate
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (int i = -n; i <= n; ++i)
            for (int m = 1; m <= 6; ++m)
                for (int j = -m; j <= m; ++j)
                    for (int l = 1; l <= 6; ++l) {
                        const bool parity_ok = (n + m + l) % 2 == 1;
                        const bool window_ok = l >= std::abs(n - m) && l <= n + m;
                        if (parity_ok && window_ok) continue;
                        for (int k = -l; k <= l; ++k)
                            worst = std::max(worst, std::abs(sphere_triple_product(n, i, m, j, l, k)));
                    }
    c.expect(worst < 1e-8, "off-predicate triple product " + num(worst));

    // wigner3j returns exact zeros whenever conditions i-iv fail
    bool exact = true;
    for (int j1 = 0; j1 <= 6 && exact; ++j1)
        for (int j2 = 0; j2 <= 6 && exact; ++j2)
            for (int j3 = 0; j3 <= 6 && exact; ++j3)
                for (int m1 = -j1; m1 <= j1 && exact; ++m1)
                    for (int m2 = -j2; m2 <= j2 && exact; ++m2)
                        for (int m3 = -j3; m3 <= j3 && exact; ++m3) {
                            const bool cond = m1 + m2 + m3 == 0 && j3 >= std::abs(j1 - j2) &&
                                              j3 <= j1 + j2 &&
                                              !(m1 == 0 && m2 == 0 && m3 == 0 &&
                                                (j1 + j2 + j3) % 2 != 0);
                            if (!cond && wigner3j({j1, j2, j3, m1, m2, m3}) != 0.0) exact = false;
                        }
    c.expect(exact, "a condition-violating wigner query returned nonzero");

    // triad inequality within the K = 2 offset of the appendix lemma
    TriadTable table = build_triad_table(GeometryDescriptor::sphere(), 42.5, {});
    const double beta = verify_triad_inequality(table, 0.5).beta_required;
    c.expect(beta <= 2.0 + 1e-10, "beta_required=" + num(beta));
}

void criterion_5_hemisphere_basis() {
    Criterion c(5);
    auto modes = hemisphere_modes(42.5);  // degrees n <= 6
    std::size_t expected = 0;
    for (int n = 1; n <= 6; ++n)
        for (int m = -n; m <= n; ++m)
            if ((std::abs(m) + n) % 2 == 1) ++expected;
    c.expect(modes.size() == expected, "parity filter count " + num(modes.size()));
    double worst = 0.0;
    for (const auto& m : modes) {
        c.expect((std::abs(m.key[1]) + m.key[0]) % 2 == 1, "even-parity mode leaked in");
        worst = std::max(worst, std::abs(hemisphere_mode_norm(m) - 1.0));
    }
    c.expect(worst <= 1e-8, "worst |norm - 1| = " + num(worst));
}

void criterion_6_growth_bounds() {
    Criterion c(6);
    {
        const GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
        auto modes = enumerate_modes(g, 13500.0);  // > 1e4 repeated eigenvalues
        c.expect(modes.size() >= 10000, "rectangle enumeration too small");
        std::vector<double> eig;
        for (std::size_t i = 0; i < 10000; ++i) eig.push_back(modes[i].eigenvalue);
        auto rep = growth_check(eig, 1.0, 2.0 * kPi / (g.a * g.b));
        c.expect(rep.violations.empty(),
                 "rect Li-Yau violations: " + num(rep.violations.size()));
    }
    {
        const GeometryDescriptor g = GeometryDescriptor::cylinder(2.0 * kPi, kPi);
        auto modes = enumerate_modes(g, 6700.0);
        c.expect(modes.size() >= 10000, "cylinder enumeration too small");
        const double rho1 = cylinder_growth_rho1(g, modes);
        std::vector<double> eig;
        for (std::size_t i = 0; i < 10000; ++i) eig.push_back(modes[i].eigenvalue);
        auto rep = growth_check(eig, 1.0, rho1);
        c.expect(rep.violations.empty(),
                 "cylinder rho1 violations: " + num(rep.violations.size()));
    }
}

void criterion_7_appendix_lemmas() {
    Criterion c(7);
    // two-sided power inequality: fuzz plus the documented sharp cases
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ab(0.0, 10.0), sv(0.01, 4.0);
    double worst_slack = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double a = ab(rng), b = ab(rng), s = sv(rng);
        if (a + b <= 0.0) continue;
        auto [lo, hi] = power_inequality_margin(a, b, s);
        const double scale = std::pow(a + b, s);
        worst_slack = std::min(worst_slack, std::min(lo, hi) / std::max(scale, 1e-300));
    }
    c.expect(worst_slack >= -1e-12, "power inequality slack " + num(worst_slack));
    for (double s : {0.25, 0.5, 2.0, 3.0}) {
        auto [lo, hi] = power_inequality_margin(1.0, 1.0, s);
        const double tight = s <= 1.0 ? lo : hi;  // a=b saturates the 2^{s-1} side
        c.expect(std::abs(tight) <= 1e-14, "sharp a=b case at s=" + num(s));
        auto [lo0, hi0] = power_inequality_margin(0.0, 3.0, s);
        const double tight0 = s <= 1.0 ? hi0 : lo0;  // a=0 saturates the sum side
        c.expect(std::abs(tight0) <= 1e-14 * std::pow(3.0, s), "sharp a=0 case at s=" + num(s));
    }

    // K = 2 for p(x) = x(x+1), exactly
    c.expect(std::abs(triangle_k({{2.0}}, {1.0}, 0.0) - 2.0) < 1e-15, "triangle K != 2");

    // the square-root triangle bound on random positive-definite quadratics
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    bool poly_ok = true;
    for (int rep = 0; rep < 10 && poly_ok; ++rep) {
        const double m00 = entry(rng), m01 = entry(rng), m10 = entry(rng), m11 = entry(rng);
        const std::vector<std::vector<double>> h{
            {m00 * m00 + m10 * m10 + 0.5, m00 * m01 + m10 * m11},
            {m00 * m01 + m10 * m11, m01 * m01 + m11 * m11 + 0.5}};
        const std::vector<double> lin{entry(rng), entry(rng)};
        const double cst = entry(rng);
        const double k = triangle_k(h, lin, cst);
        auto p = [&](double x0, double x1) {
            return 0.5 * (h[0][0] * x0 * x0 + 2.0 * h[0][1] * x0 * x1 + h[1][1] * x1 * x1) +
                   lin[0] * x0 + lin[1] * x1 + cst;
        };
        for (int trial = 0; trial < 10000; ++trial) {
            const double x0 = entry(rng), x1 = entry(rng), y0 = entry(rng), y1 = entry(rng);
            if (std::sqrt(std::abs(p(x0 + y0, x1 + y1))) >
                std::sqrt(std::abs(p(x0, x1))) + std::sqrt(std::abs(p(y0, y1))) + k + 1e-10)
                poly_ok = false;
        }
    }
    c.expect(poly_ok, "square-root triangle bound violated");
}

void criterion_8_curl_equivalence() {
    Criterion c(8);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(-0.49, 0.49);
    std::vector<std::array<double, 2>> samples;
    while (samples.size() < 100) {
        const double w1 = dist(rng), w2 = dist(rng);
        if (w1 * w1 + w2 * w2 < 0.5) samples.push_back({w1, w2});
    }
    const std::vector<ChartScalar> fns{
        {[](double, double) { return 1.0; },
         [](double, double) { return std::array<double, 2>{0.0, 0.0}; }},
        {[](double w1, double) { return w1; },
         [](double, double) { return std::array<double, 2>{1.0, 0.0}; }},
        {[](double w1, double w2) { return w1 * w2; },
         [](double w1, double w2) { return std::array<double, 2>{w2, w1}; }},
        {[](double w1, double w2) { return w1 * w1 - w2 * w2 + 0.3 * w2; },
         [](double w1, double w2) {
             return std::array<double, 2>{2.0 * w1, -2.0 * w2 + 0.3};
         }},
        {[](double w1, double w2) { return w1 * w1 * w2 + 0.5 * w2 * w2; },
         [](double w1, double w2) {
             return std::array<double, 2>{2.0 * w1 * w2, w1 * w1 + w2};
         }},
    };
    double worst = 0.0;
    for (const auto& f : fns) worst = std::max(worst, curl_equivalence_residual(f, samples));
    c.expect(worst < 1e-8, "worst residual " + num(worst));
}

void criterion_9_conservation_and_convergence() {
    Criterion c(9);
    const GeometryDescriptor g = GeometryDescriptor::torus2();
    const double cutoff = 9.0;  // 28 modes
    TriadTable table = build_triad_table(g, cutoff, {});
    {
        SimConfig cfg;
        cfg.g = g;
        cfg.cutoff = cutoff;
        cfg.nu = 0.0;
        cfg.u0 = make_preset("lowmode", g, table.modes, 1.0);
        cfg.forcing = SpectralField(g);
        cfg.dt = 1e-3;
        cfg.t_max = 1.0;
        cfg.gevrey = {0.0, 0.0, 0.5};
        cfg.monitor_stride = 250;
        auto res = run(cfg, table);
        const double drift =
            std::abs(res.records.back().energy - res.records.front().energy) /
            res.records.front().energy;
        c.expect(!res.blew_up, "inviscid run blew up");
        c.expect(drift < 1e-8, "energy drift " + num(drift));
    }
    {
        auto terminal = [&](double dt) {
            SimConfig cfg;
            cfg.g = g;
            cfg.cutoff = cutoff;
            cfg.nu = 0.0;
            cfg.u0 = make_preset("lowmode", g, table.modes, 1.0);
            cfg.forcing = SpectralField(g);
            cfg.dt = dt;
            cfg.t_max = 1.0;
            cfg.gevrey = {0.0, 0.0, 0.5};
            cfg.monitor_stride = 1u << 30;
            GalerkinSystem sys(table, 0.0, SpectralField(g));
            return sys.to_dense(run(cfg, table).final_state);
        };
        const auto u4 = terminal(4e-3), u2 = terminal(2e-3), u1 = terminal(1e-3);
        double e12 = 0.0, e23 = 0.0;
        for (std::size_t i = 0; i < u4.size(); ++i) {
            e12 += (u4[i] - u2[i]) * (u4[i] - u2[i]);
            e23 += (u2[i] - u1[i]) * (u2[i] - u1[i]);
        }
        const double order = std::log2(std::sqrt(e12 / e23));
        c.expect(order >= 1.9, "self-convergence order " + num(order));
    }
}

void criterion_10_gevrey_smoothing() {
    Criterion c(10);
    const GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
    const double cutoff = 145.0;  // about a hundred modes
    TriadTable table = build_triad_table(g, cutoff, {});
    SimConfig cfg;
    cfg.g = g;
    cfg.cutoff = cutoff;
    cfg.nu = 1.0;
    cfg.u0 = make_preset("lowmode", g, table.modes, 1.0);
    cfg.forcing = SpectralField(g);
    cfg.dt = 1e-3;
    cfg.t_max = 1.0;
    cfg.gevrey = {1.0, 0.5, 0.5};
    cfg.monitor_stride = 50;
    auto res = run(cfg, table);
    c.expect(!res.blew_up, "run blew up");

    // radius ramp on [0, 0.25]: nondecreasing within 10 percent fit noise
    double prev = -1e300;
    bool monotone = true;
    for (const auto& r : res.records) {
        if (r.t > 0.25 + 1e-12) break;
        if (std::isnan(r.fitted_radius)) continue;
        if (r.fitted_radius < prev - 0.1 * std::max(std::abs(prev), 0.1)) monotone = false;
        prev = std::max(prev, r.fitted_radius);
    }
    c.expect(monotone, "fitted radius not nondecreasing within tolerance");

    // the ramped gevrey norm stays bounded through t = 1
    const double g0 = res.records.front().gevrey_norm;
    double gmax = 0.0;
    for (const auto& r : res.records) gmax = std::max(gmax, r.gevrey_norm);
    c.expect(gmax < 10.0 * g0, "gevrey norm grew to " + num(gmax / g0) + "x its initial value");
    c.expect(res.records.back().t >= 1.0 - 1e-9, "run ended early");
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion_1_torus2_constants();
    criterion_2_rectangle_constants();
    criterion_3_cylinder_oracle_equivalence();
    criterion_4_sphere_selection();
    criterion_5_hemisphere_basis();
    criterion_6_growth_bounds();
    criterion_7_appendix_lemmas();
    criterion_8_curl_equivalence();
    criterion_9_conservation_and_convergence();
    criterion_10_gevrey_smoothing();
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s (%d failure%s, %.1fs total)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures, g_failures == 1 ? "" : "s", dt);
    return g_failures == 0 ? 0 : 1;
}
