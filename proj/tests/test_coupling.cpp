#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "speclab/coupling.hpp"
#include "speclab/flat_bases.hpp"
#include "speclab/format.hpp"
#include "speclab/sphere_bases.hpp"

using namespace speclab;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectralMode find_mode(const std::vector<SpectralMode>& modes, std::array<int, 3> key,
                       Variant v = Variant::None, int pol = 0) {
    for (const auto& m : modes)
        if (m.key == key && m.variant == v && (pol == 0 || m.pol == pol)) return m;
    REQUIRE(false);
    return {};
}

}  // namespace

TEST_CASE("self-interaction of any single eigenfunction vanishes") {
    for (auto g : {GeometryDescriptor::rectangle(kPi, kPi), GeometryDescriptor::cylinder(2.0 * kPi, kPi),
                   GeometryDescriptor::torus2()}) {
        auto modes = enumerate_modes(g, 10.0);
        for (const auto& k : modes)
            for (const auto& l : modes)
                CHECK(std::abs(coupling_quadrature(g, k, k, l)) < 1e-12);
    }
}

TEST_CASE("torus coupling is confined to the m+n and [m-n] keys") {
    GeometryDescriptor g = GeometryDescriptor::torus2();
    auto modes = enumerate_modes(g, 8.0);
    const SpectralMode n = find_mode(modes, {1, 0, 0}, Variant::Cos);
    const SpectralMode m = find_mode(modes, {1, 1, 0}, Variant::Cos);
    for (const auto& l : modes) {
        const double c = coupling_quadrature(g, n, m, l);
        if (!selection_allows(g, n, m, l))
            CHECK(std::abs(c) < 1e-12);
    }
    // the sin target on key (2,1) is genuinely hit
    const SpectralMode sum = find_mode(modes, {2, 1, 0}, Variant::Sin);
    CHECK(std::abs(coupling_quadrature(g, n, m, sum)) > 1e-3);
}

TEST_CASE("rectangle golden coupling value") {
    GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
    auto modes = enumerate_modes(g, 16.0);
    const SpectralMode n = find_mode(modes, {1, 1, 0});
    const SpectralMode m = find_mode(modes, {1, 2, 0});
    const SpectralMode l = find_mode(modes, {2, 3, 0});
    const double c1 = coupling_quadrature(g, n, m, l, 1);
    const double c2 = coupling_quadrature(g, n, m, l, 2);
    CHECK(std::abs(c1 - c2) < 1e-14);  // two resolutions agree
    // frozen after the two-resolution cross-check; analytically
    // 3 sqrt(13/10) / (26 pi)
    const double golden = 0.041876435745330287;
    CHECK(c1 == doctest::Approx(golden).epsilon(1e-13));
    CHECK(3.0 * std::sqrt(1.3) / (26.0 * kPi) == doctest::Approx(golden).epsilon(1e-13));
}

TEST_CASE("grid-backed projection agrees with the standalone quadrature") {
    GeometryDescriptor g = GeometryDescriptor::rectangle(1.3, 2.1);
    auto modes = enumerate_modes(g, 40.0);
    FlatModeGrid grid = build_mode_grid(g, modes, false);
    std::mt19937_64 rng(7);
    std::vector<double> field;
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t a = rng() % modes.size(), b = rng() % modes.size(), c = rng() % modes.size();
        interaction_field(grid, a, b, field);
        const double via_grid = project_onto_mode(grid, field, c);
        const double direct = coupling_quadrature(g, modes[a], modes[b], modes[c]);
        CHECK(via_grid == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("cylinder closed form matches the quadrature oracle on every target") {
    GeometryDescriptor g = GeometryDescriptor::cylinder(2.0 * kPi, kPi);
    auto modes = enumerate_modes(g, 9.5);  // indices (k1,k2) <= 3
    for (std::size_t a = 0; a < modes.size(); ++a)
        for (std::size_t b = a; b < modes.size(); ++b) {
            for (const auto& [lm, c] : coupling_closed_form_cylinder(g, modes[a], modes[b])) {
                const double q = coupling_quadrature(g, modes[a], modes[b], lm);
                CHECK(c == doctest::Approx(q).epsilon(1e-12).scale(1.0));
            }
        }
}

TEST_CASE("cylinder hand-derived coefficient on target (2,3) sigma") {
    GeometryDescriptor g = GeometryDescriptor::cylinder(2.0 * kPi, kPi);
    auto modes = enumerate_modes(g, 16.0);
    const SpectralMode n = find_mode(modes, {1, 1, 0}, Variant::Sigma);
    const SpectralMode m = find_mode(modes, {1, 2, 0}, Variant::Sigma);
    double c_y = 0.0;
    for (const auto& [lm, c] : coupling_closed_form_cylinder_raw(g, n, m))
        if (lm.key == std::array<int, 3>{2, 3, 0} && lm.variant == Variant::Sigma) c_y = c;
    // |(lambda_n - lambda_m)| / lambda_(2,3) * pi^2 |n^m| / (2ab) = 3/52;
    // the orientation that matches the convection integral makes it positive.
    CHECK(std::abs(c_y) == doctest::Approx(3.0 / 52.0).epsilon(1e-14));
    CHECK(c_y == doctest::Approx(3.0 / 52.0).epsilon(1e-14));
    // and the oracle agrees after rescaling to the unit basis
    const SpectralMode l = find_mode(modes, {2, 3, 0}, Variant::Sigma);
    const double q = coupling_quadrature(g, n, m, l);
    CHECK(c_y * n.normalization * m.normalization / l.normalization ==
          doctest::Approx(q).epsilon(1e-13));
}

TEST_CASE("cylinder closed form degenerate cases") {
    GeometryDescriptor g = GeometryDescriptor::cylinder(2.0 * kPi, kPi);
    auto modes = enumerate_modes(g, 16.0);
    SUBCASE("equal eigenvalues kill the whole expansion") {
        const SpectralMode n = find_mode(modes, {1, 2, 0}, Variant::Sigma);
        CHECK(coupling_closed_form_cylinder(g, n, n).empty());
        // distinct modes in one eigenspace as well
        const SpectralMode nk = find_mode(modes, {1, 2, 0}, Variant::Kappa);
        CHECK(coupling_closed_form_cylinder(g, n, nk).empty());
    }
    SUBCASE("parallel index vectors with zero wedge and vee") {
        const SpectralMode n = find_mode(modes, {0, 1, 0}, Variant::Kappa);
        const SpectralMode m = find_mode(modes, {0, 2, 0}, Variant::Kappa);
        CHECK(coupling_closed_form_cylinder(g, n, m).empty());
    }
    SUBCASE("kappa-sigma order is normalized by symmetry") {
        const SpectralMode n = find_mode(modes, {1, 1, 0}, Variant::Sigma);
        const SpectralMode m = find_mode(modes, {1, 2, 0}, Variant::Kappa);
        auto ab = coupling_closed_form_cylinder(g, n, m);
        auto ba = coupling_closed_form_cylinder(g, m, n);
        REQUIRE(ab.size() == ba.size());
        for (std::size_t i = 0; i < ab.size(); ++i) {
            CHECK(ab[i].first.key == ba[i].first.key);
            CHECK(ab[i].second == ba[i].second);
        }
    }
}

TEST_CASE("skew symmetry of the trilinear form") {
    std::mt19937_64 rng(11);
    for (auto g : {GeometryDescriptor::rectangle(kPi, kPi), GeometryDescriptor::cylinder(2.0 * kPi, kPi),
                   GeometryDescriptor::torus2()}) {
        auto modes = enumerate_modes(g, 12.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto& n = modes[rng() % modes.size()];
            const auto& m = modes[rng() % modes.size()];
            const auto& l = modes[rng() % modes.size()];
            const double nml = trilinear_quadrature(g, n, m, l);
            const double nlm = trilinear_quadrature(g, n, l, m);
            CHECK(nml == doctest::Approx(-nlm).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("triad tables") {
    GeometryDescriptor g = GeometryDescriptor::rectangle(kPi, kPi);
    TriadTable table = build_triad_table(g, 30.0, {});

    SUBCASE("stored triads satisfy the selection predicate and the drop tolerance") {
        for (const auto& e : table.entries) {
            CHECK(std::abs(e.c) > table.drop_tol);
            CHECK(selection_allows(g, table.modes[e.n], table.modes[e.m], table.modes[e.l]));
            CHECK(e.n <= e.m);
        }
    }
    SUBCASE("pair_range recovers exactly the pair's entries") {
        std::size_t total = 0;
        for (std::uint32_t n = 0; n < table.modes.size(); ++n)
            for (std::uint32_t m = n; m < table.modes.size(); ++m) {
                auto [lo, hi] = table.pair_range(n, m);
                for (auto* p = lo; p != hi; ++p) {
                    CHECK(p->n == n);
                    CHECK(p->m == m);
                }
                total += static_cast<std::size_t>(hi - lo);
            }
        CHECK(total == table.entries.size());
    }
    SUBCASE("parallel and serial builds are bit-identical") {
        TableBuildOptions serial;
        serial.parallel = false;
        TriadTable ref = build_triad_table(g, 30.0, serial);
        REQUIRE(ref.entries.size() == table.entries.size());
        for (std::size_t i = 0; i < ref.entries.size(); ++i) {
            CHECK(ref.entries[i].n == table.entries[i].n);
            CHECK(ref.entries[i].m == table.entries[i].m);
            CHECK(ref.entries[i].l == table.entries[i].l);
            CHECK(ref.entries[i].c == table.entries[i].c);
        }
    }
    SUBCASE("disk cache round-trips bit-exactly") {
        auto dir = std::filesystem::temp_directory_path() / "speclab-cache-test";
        std::filesystem::remove_all(dir);
        TableBuildOptions opts;
        opts.cache_dir = dir.string();
        TriadTable first = build_triad_table(g, 30.0, opts);
        const std::string path =
            opts.cache_dir + "/triads-" + triad_cache_key(g, 30.0, opts.drop_tol) + ".csv";
        CHECK(std::filesystem::exists(path));
        TriadTable second = build_triad_table(g, 30.0, opts);  // served from disk
        REQUIRE(second.entries.size() == first.entries.size());
        for (std::size_t i = 0; i < first.entries.size(); ++i)
            CHECK(second.entries[i].c == first.entries[i].c);
        std::filesystem::remove_all(dir);
    }
}

TEST_CASE("interaction set cardinalities") {
    SUBCASE("torus2 stays within C_F = 4") {
        TriadTable table = build_triad_table(GeometryDescriptor::torus2(), 20.0, {});
        TriadSets sets = triad_sets(table);
        CHECK(sets.card_max_forward <= 4);
        CHECK(sets.card_max_inverse <= 4);
    }
    SUBCASE("rectangle stays within 4") {
        TriadTable table = build_triad_table(GeometryDescriptor::rectangle(kPi, kPi), 40.0, {});
        TriadSets sets = triad_sets(table);
        CHECK(sets.card_max_forward <= 4);
        CHECK(sets.card_max_inverse <= 4);
    }
    SUBCASE("cylinder stays within 4 forward and 8 inverse") {
        TriadTable table = build_triad_table(GeometryDescriptor::cylinder(2.0 * kPi, kPi), 40.0, {});
        TriadSets sets = triad_sets(table);
        CHECK(sets.card_max_forward <= 4);
        CHECK(sets.card_max_inverse <= 8);
    }
    SUBCASE("witnesses reproduce the maxima") {
        TriadTable table = build_triad_table(GeometryDescriptor::rectangle(kPi, kPi), 40.0, {});
        TriadSets sets = triad_sets(table);
        CHECK(sets.forward.at(sets.witness_forward).size() == sets.card_max_forward);
        CHECK(sets.inverse.at(sets.witness_inverse).size() == sets.card_max_inverse);
    }
}

TEST_CASE("selection soundness scans") {
    SUBCASE("rectangle") {
        auto rep = selection_soundness(GeometryDescriptor::rectangle(kPi, kPi), 30.0, 1e-10);
        CHECK(rep.counterexamples.empty());
        CHECK(rep.worst_off_predicate < 1e-12);
        CHECK(rep.checked > 0);
    }
    SUBCASE("torus2") {
        auto rep = selection_soundness(GeometryDescriptor::torus2(), 12.0, 1e-10);
        CHECK(rep.counterexamples.empty());
    }
    SUBCASE("cylinder") {
        auto rep = selection_soundness(GeometryDescriptor::cylinder(2.0 * kPi, kPi), 15.0, 1e-10);
        CHECK(rep.counterexamples.empty());
    }
    SUBCASE("sphere parity rule") {
        auto rep = selection_soundness(GeometryDescriptor::sphere(), 20.5, 1e-10);
        CHECK(rep.counterexamples.empty());
    }
}

TEST_CASE("triad inequality feed with the geometry offsets") {
    auto check = [](const TriadTable& table, double beta) {
        for (const auto& e : table.entries) {
            const double lhs = std::sqrt(table.modes[e.l].eigenvalue);
            const double rhs = std::sqrt(table.modes[e.n].eigenvalue) +
                               std::sqrt(table.modes[e.m].eigenvalue) + beta;
            CHECK(lhs <= rhs + 1e-12);
        }
    };
    check(build_triad_table(GeometryDescriptor::torus2(), 20.0, {}), 0.0);
    check(build_triad_table(GeometryDescriptor::rectangle(kPi, kPi), 40.0, {}), 0.0);
    check(build_triad_table(GeometryDescriptor::cylinder(2.0 * kPi, kPi), 30.0, {}), 0.0);
    check(build_triad_table(GeometryDescriptor::sphere(), 30.5, {}), 2.0);
    check(build_triad_table(GeometryDescriptor::hemisphere(), 30.5, {}), 2.0);
}

TEST_CASE("torus3 table at smoke scale") {
    GeometryDescriptor g = GeometryDescriptor::torus3();
    TriadTable table = build_triad_table(g, 3.0, {});
    CHECK(!table.entries.empty());
    for (const auto& e : table.entries) {
        CHECK(selection_allows(g, table.modes[e.n], table.modes[e.m], table.modes[e.l]));
        const double lhs = std::sqrt(table.modes[e.l].eigenvalue);
        const double rhs =
            std::sqrt(table.modes[e.n].eigenvalue) + std::sqrt(table.modes[e.m].eigenvalue);
        CHECK(lhs <= rhs + 1e-12);  // alpha = 1/2, beta = 0 in 3D as well
    }
    TriadSets sets = triad_sets(table);
    CHECK(sets.card_max_forward <= 4);
    CHECK(sets.card_max_inverse <= 4);
    // spot-check one entry against the standalone oracle
    const auto& e = table.entries[table.entries.size() / 2];
    const double q =
        coupling_quadrature(g, table.modes[e.n], table.modes[e.m], table.modes[e.l]);
    CHECK(e.c == doctest::Approx(q).epsilon(1e-12).scale(1.0));
}

TEST_CASE("sphere coupling routing for the standalone quadrature") {
    auto modes = sphere_modes(6.5);
    CHECK_THROWS_AS(
        (void)coupling_quadrature(GeometryDescriptor::sphere(), modes[0], modes[1], modes[2]),
        std::invalid_argument);
}

TEST_CASE("sphere and hemisphere tables") {
    TriadTable sph = build_triad_table(GeometryDescriptor::sphere(), 20.5, {});
    CHECK(!sph.entries.empty());
    for (const auto& e : sph.entries)
        CHECK(selection_allows(sph.g, sph.modes[e.n], sph.modes[e.m], sph.modes[e.l]));

    // hemisphere couplings are half the sphere ones on the shared triads
    TriadTable hemi = build_triad_table(GeometryDescriptor::hemisphere(), 20.5, {});
    for (const auto& he : hemi.entries) {
        const auto& hn = hemi.modes[he.n];
        const auto& hm = hemi.modes[he.m];
        const auto& hl = hemi.modes[he.l];
        // same degree/order triple in the sphere table, if present there
        for (const auto& se : sph.entries) {
            if (sph.modes[se.n].key == hn.key && sph.modes[se.m].key == hm.key &&
                sph.modes[se.l].key == hl.key) {
                // W_hemi = sqrt(2) W_sph restricted, so c_hemi = sqrt(2) c_sph
                CHECK(he.c == doctest::Approx(std::sqrt(2.0) * se.c).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("couplings CSV shape") {
    GeometryDescriptor g = GeometryDescriptor::cylinder(2.0 * kPi, kPi);
    TriadTable table = build_triad_table(g, 10.0, {});
    std::ostringstream os;
    write_couplings_csv(os, table, "# header");
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# header");
    std::getline(is, line);
    CHECK(line == "n_key,n_var,m_key,m_var,l_key,l_var,coeff_closed,coeff_quad,abs_diff");
    std::size_t rows = 0;
    double worst = 0.0;
    while (std::getline(is, line)) {
        auto cols = split(line, ',');
        REQUIRE(cols.size() == 9);
        CHECK(!cols[6].empty());  // closed form exists on the cylinder
        worst = std::max(worst, parse_double(cols[8]));
        ++rows;
    }
    CHECK(rows == table.entries.size());
    CHECK(worst < 1e-10);

    // rectangle rows leave the closed column empty
    TriadTable rt = build_triad_table(GeometryDescriptor::rectangle(kPi, kPi), 10.0, {});
    std::ostringstream ros;
    write_couplings_csv(ros, rt, "");
    std::istringstream ris(ros.str());
    std::getline(ris, line);
    while (std::getline(ris, line)) CHECK(split(line, ',')[6].empty());
}
