#include "speclab/coupling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "speclab/format.hpp"
#include "speclab/quadrature.hpp"
#include "speclab/sphere_bases.hpp"

namespace speclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

int axis_frequency(const GeometryDescriptor& g, const SpectralMode& m, int axis) {
    (void)g;
    return std::abs(m.key[axis]);
}

std::vector<Quad1D> triad_axes(const GeometryDescriptor& g, const SpectralMode& n,
                               const SpectralMode& m, const SpectralMode& l, int factor) {
    std::vector<Quad1D> axes;
    for (int axis = 0; axis < g.dim(); ++axis) {
        const int fsum = axis_frequency(g, n, axis) + axis_frequency(g, m, axis) +
                         axis_frequency(g, l, axis);
        const std::size_t pts = static_cast<std::size_t>(factor * (2 * fsum + 1));
        switch (g.kind) {
            case GeometryKind::Torus2:
            case GeometryKind::Torus3:
                axes.push_back(periodic_rectangle(pts, 2.0 * kPi));
                break;
            case GeometryKind::Rectangle:
                axes.push_back(trapezoid(pts, axis == 0 ? g.a : g.b));
                break;
            case GeometryKind::Cylinder:
                axes.push_back(axis == 0 ? periodic_rectangle(pts, g.a) : trapezoid(pts, g.b));
                break;
            default:
                throw std::invalid_argument(
                    "coupling quadrature covers flat geometries; sphere and hemisphere triads "
                    "go through sphere_coupling");
        }
    }
    return axes;
}

template <typename Integrand>
double tensor_quadrature(const GeometryDescriptor& g, const std::vector<Quad1D>& axes,
                         Integrand&& f) {
    const int dim = g.dim();
    double acc = 0.0;
    if (dim == 2) {
        for (std::size_t i = 0; i < axes[0].size(); ++i)
            for (std::size_t j = 0; j < axes[1].size(); ++j)
                acc += axes[0].w[i] * axes[1].w[j] * f(Vec3{axes[0].x[i], axes[1].x[j], 0.0});
    } else {
        for (std::size_t i = 0; i < axes[0].size(); ++i)
            for (std::size_t j = 0; j < axes[1].size(); ++j)
                for (std::size_t k = 0; k < axes[2].size(); ++k)
                    acc += axes[0].w[i] * axes[1].w[j] * axes[2].w[k] *
                           f(Vec3{axes[0].x[i], axes[1].x[j], axes[2].x[k]});
    }
    return acc;
}

double convection_dot(const GeometryDescriptor& g, const SpectralMode& n, const SpectralMode& m,
                      const SpectralMode& l, const Vec3& x, bool symmetrized) {
    const int dim = g.dim();
    const Vec3 un = evaluate_mode(g, n, x);
    const Vec3 um = evaluate_mode(g, m, x);
    const Vec3 ul = evaluate_mode(g, l, x);
    const auto dn = evaluate_mode_gradient(g, n, x);
    const auto dm = evaluate_mode_gradient(g, m, x);
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
        double ci = 0.0;
        for (int j = 0; j < dim; ++j) {
            ci += un[j] * dm[j][i];
            if (symmetrized) ci += um[j] * dn[j][i];
        }
        acc += ci * ul[i];
    }
    return acc;
}

}  // namespace

double coupling_quadrature(const GeometryDescriptor& g, const SpectralMode& n,
                           const SpectralMode& m, const SpectralMode& l, int resolution_factor) {
    const auto axes = triad_axes(g, n, m, l, resolution_factor);
    return tensor_quadrature(g, axes,
                             [&](const Vec3& x) { return convection_dot(g, n, m, l, x, true); });
}

double trilinear_quadrature(const GeometryDescriptor& g, const SpectralMode& n,
                            const SpectralMode& m, const SpectralMode& l, int resolution_factor) {
    const auto axes = triad_axes(g, n, m, l, resolution_factor);
    return tensor_quadrature(g, axes,
                             [&](const Vec3& x) { return convection_dot(g, n, m, l, x, false); });
}

namespace {

std::array<int, 3> key_sum(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

std::array<int, 3> key_diff_lexpos(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    std::array<int, 3> d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    for (int i = 0; i < 3; ++i) {
        if (d[i] > 0) return d;
        if (d[i] < 0) return {-d[0], -d[1], -d[2]};
    }
    return d;  // zero
}

Variant torus_target_variant(Variant a, Variant b) {
    return a == b ? Variant::Sin : Variant::Cos;
}

Variant cylinder_target_variant(Variant a, Variant b) {
    return a == b ? Variant::Sigma : Variant::Kappa;
}

bool in_pm_set(int l, int n, int m) { return l == n + m || l == std::abs(n - m); }

}  // namespace

bool selection_allows(const GeometryDescriptor& g, const SpectralMode& n, const SpectralMode& m,
                      const SpectralMode& l) {
    switch (g.kind) {
        case GeometryKind::Torus2:
        case GeometryKind::Torus3: {
            if (l.variant != torus_target_variant(n.variant, m.variant)) return false;
            return l.key == key_sum(n.key, m.key) || l.key == key_diff_lexpos(n.key, m.key);
        }
        case GeometryKind::Rectangle:
            return in_pm_set(l.key[0], n.key[0], m.key[0]) && in_pm_set(l.key[1], n.key[1], m.key[1]);
        case GeometryKind::Cylinder: {
            if (l.variant != cylinder_target_variant(n.variant, m.variant)) return false;
            return in_pm_set(l.key[0], n.key[0], m.key[0]) && in_pm_set(l.key[1], n.key[1], m.key[1]);
        }
        case GeometryKind::Sphere:
        case GeometryKind::Hemisphere: {
            const int dn = n.key[0], dm = m.key[0], dl = l.key[0];
            if ((dn + dm + dl) % 2 == 0) return false;
            return dl >= std::abs(dn - dm) && dl <= dn + dm;
        }
    }
    return true;
}

namespace {

SpectralMode make_cylinder_mode(const GeometryDescriptor& g, int k1, int k2, Variant v) {
    const double lam = kPi * kPi * (4.0 * k1 * k1 / (g.a * g.a) +
                                    static_cast<double>(k2) * k2 / (g.b * g.b));
    double norm = 2.0 / std::sqrt(g.a * g.b * lam);
    if (v == Variant::Kappa && k1 == 0) norm /= std::sqrt(2.0);
    return {{k1, k2, 0}, v, 0, lam, norm};
}

}  // namespace

std::vector<std::pair<SpectralMode, double>> coupling_closed_form_cylinder_raw(
    const GeometryDescriptor& g, const SpectralMode& n_in, const SpectralMode& m_in) {
    if (g.kind != GeometryKind::Cylinder)
        throw std::invalid_argument("coupling_closed_form_cylinder: cylinder geometry required");
    SpectralMode n = n_in, m = m_in;
    if (n.variant == Variant::Kappa && m.variant == Variant::Sigma) std::swap(n, m);

    const double lam_n = n.eigenvalue, lam_m = m.eigenvalue;
    std::map<std::pair<std::array<int, 3>, Variant>, double> acc;
    const int n1 = n.key[0], n2 = n.key[1], m1 = m.key[0], m2 = m.key[1];
    const double wedge = static_cast<double>(n1) * m2 - static_cast<double>(n2) * m1;
    const double vee = static_cast<double>(n1) * m2 + static_cast<double>(n2) * m1;
    const double s1 = (n1 > m1) ? 1.0 : (n1 < m1 ? -1.0 : 0.0);
    const double s2 = (n2 > m2) ? 1.0 : (n2 < m2 ? -1.0 : 0.0);
    const double pref = kPi * kPi / (2.0 * g.a * g.b);

    // vorticity-expansion coefficients of the four +/- index targets; the
    // sigma*sigma and kappa*kappa pairings land on sigma targets, the mixed
    // pairing on kappa targets (cos is even in the first index, so no s1).
    struct Term {
        int sign1;  // +1 -> n1+m1, -1 -> |n1-m1|
        int sign2;
        double base;
    };
    std::array<Term, 4> terms{};
    Variant target;
    if (n.variant == Variant::Sigma && m.variant == Variant::Sigma) {
        target = Variant::Sigma;
        terms = {Term{+1, +1, wedge}, Term{+1, -1, vee * s2}, Term{-1, +1, -vee * s1},
                 Term{-1, -1, -wedge * s1 * s2}};
    } else if (n.variant == Variant::Kappa && m.variant == Variant::Kappa) {
        target = Variant::Sigma;
        terms = {Term{+1, +1, -wedge}, Term{+1, -1, -vee * s2}, Term{-1, +1, -vee * s1},
                 Term{-1, -1, -wedge * s1 * s2}};
    } else {
        target = Variant::Kappa;
        terms = {Term{+1, +1, wedge}, Term{+1, -1, vee * s2}, Term{-1, +1, vee},
                 Term{-1, -1, wedge * s2}};
    }

    for (const auto& t : terms) {
        const int l1 = t.sign1 > 0 ? n1 + m1 : std::abs(n1 - m1);
        const int l2 = t.sign2 > 0 ? n2 + m2 : std::abs(n2 - m2);
        if (l2 == 0) continue;
        if (target == Variant::Sigma && l1 == 0) continue;
        if (t.base == 0.0) continue;
        const SpectralMode lm = make_cylinder_mode(g, l1, l2, target);
        // omega(Y_l) = -lambda_l psi_l in this orientation, hence the minus
        acc[{lm.key, target}] += -(lam_n - lam_m) * pref * t.base / lm.eigenvalue;
    }

    std::vector<std::pair<SpectralMode, double>> out;
    for (const auto& [key, c] : acc) {
        if (c == 0.0) continue;
        out.emplace_back(make_cylinder_mode(g, key.first[0], key.first[1], key.second), c);
    }
    return out;
}

std::vector<std::pair<SpectralMode, double>> coupling_closed_form_cylinder(
    const GeometryDescriptor& g, const SpectralMode& n, const SpectralMode& m) {
    auto raw = coupling_closed_form_cylinder_raw(g, n, m);
    for (auto& [lm, c] : raw) c *= n.normalization * m.normalization / lm.normalization;
    return raw;
}

// --- table construction ------------------------------------------------

namespace {

struct ModeIndex {
    std::map<std::array<int, 5>, std::vector<std::uint32_t>> by_key;  // key + variant -> indices (pols)

    static std::array<int, 5> slot(const SpectralMode& m) {
        return {m.key[0], m.key[1], m.key[2], static_cast<int>(m.variant), 0};
    }

    explicit ModeIndex(const std::vector<SpectralMode>& modes) {
        for (std::uint32_t i = 0; i < modes.size(); ++i) by_key[slot(modes[i])].push_back(i);
    }

    const std::vector<std::uint32_t>* find(const std::array<int, 3>& key, Variant v) const {
        auto it = by_key.find({key[0], key[1], key[2], static_cast<int>(v), 0});
        return it == by_key.end() ? nullptr : &it->second;
    }
};

// Candidate third legs allowed by the selection predicate.
std::vector<std::uint32_t> flat_candidates(const GeometryDescriptor& g,
                                          const std::vector<SpectralMode>& modes,
                                          const ModeIndex& index, std::uint32_t ni,
                                          std::uint32_t mi) {
    const auto& n = modes[ni];
    const auto& m = modes[mi];
    std::vector<std::uint32_t> out;
    auto add = [&](const std::array<int, 3>& key, Variant v) {
        if (const auto* ids = index.find(key, v))
            for (auto id : *ids) out.push_back(id);
    };
    if (g.kind == GeometryKind::Torus2 || g.kind == GeometryKind::Torus3) {
        const Variant tv = torus_target_variant(n.variant, m.variant);
        add(key_sum(n.key, m.key), tv);
        const auto d = key_diff_lexpos(n.key, m.key);
        if (d != std::array<int, 3>{0, 0, 0}) add(d, tv);
    } else {
        const Variant tv = g.kind == GeometryKind::Cylinder
                               ? cylinder_target_variant(n.variant, m.variant)
                               : Variant::None;
        const std::array<int, 2> l1s{n.key[0] + m.key[0], std::abs(n.key[0] - m.key[0])};
        const std::array<int, 2> l2s{n.key[1] + m.key[1], std::abs(n.key[1] - m.key[1])};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (i == 1 && l1s[1] == l1s[0]) continue;
                if (j == 1 && l2s[1] == l2s[0]) continue;
                add({l1s[i], l2s[j], 0}, tv);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Real-harmonic values and derivatives on a shared Gauss-Legendre x uniform
// phi grid sized for the largest triple product under the cutoff.
struct SphereGrid {
    std::vector<SpectralMode> modes;
    Quad1D qx, qp;
    std::vector<std::vector<double>> y, yx, yp;  // [mode][a * nphi + b]

    SphereGrid(const std::vector<SpectralMode>& ms, int max_degree) : modes(ms) {
        qx = gauss_legendre(static_cast<std::size_t>(3 * max_degree + 2));
        qp = periodic_rectangle(static_cast<std::size_t>(6 * max_degree + 1), 2.0 * kPi);
        y.resize(ms.size());
        yx.resize(ms.size());
        yp.resize(ms.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const int n = ms[k].key[0], m = ms[k].key[1];
            y[k].resize(qx.size() * qp.size());
            yx[k].resize(qx.size() * qp.size());
            yp[k].resize(qx.size() * qp.size());
            for (std::size_t a = 0; a < qx.size(); ++a)
                for (std::size_t b = 0; b < qp.size(); ++b) {
                    const std::size_t idx = a * qp.size() + b;
                    y[k][idx] = real_sph_harmonic(n, m, qx.x[a], qp.x[b]);
                    yx[k][idx] = real_sph_harmonic_dx(n, m, qx.x[a], qp.x[b]);
                    yp[k][idx] = real_sph_harmonic_dphi(n, m, qx.x[a], qp.x[b]);
                }
        }
    }

    // (Delta Y_m grad Y_n, curl Y_l) with the fixed orientation
    double triple(std::uint32_t n, std::uint32_t m, std::uint32_t l) const {
        const double lam_m = static_cast<double>(modes[m].key[0]) * (modes[m].key[0] + 1);
        double acc = 0.0;
        for (std::size_t a = 0; a < qx.size(); ++a) {
            double inner = 0.0;
            const std::size_t off = a * qp.size();
            for (std::size_t b = 0; b < qp.size(); ++b) {
                const std::size_t i = off + b;
                inner += qp.w[b] * y[m][i] * (yp[n][i] * yx[l][i] - yx[n][i] * yp[l][i]);
            }
            acc += qx.w[a] * inner;
        }
        return lam_m * acc;
    }

};

}  // namespace

std::pair<const TriadEntry*, const TriadEntry*> TriadTable::pair_range(std::uint32_t n,
                                                                       std::uint32_t m) const {
    TriadEntry lo{n, m, 0, 0.0};
    TriadEntry hi{n, m, std::numeric_limits<std::uint32_t>::max(), 0.0};
    auto cmp = [](const TriadEntry& a, const TriadEntry& b) {
        return std::tie(a.n, a.m, a.l) < std::tie(b.n, b.m, b.l);
    };
    auto first = std::lower_bound(entries.begin(), entries.end(), lo, cmp);
    auto last = std::upper_bound(entries.begin(), entries.end(), hi, cmp);
    return {entries.data() + (first - entries.begin()), entries.data() + (last - entries.begin())};
}

std::string triad_cache_key(const GeometryDescriptor& g, double cutoff, double drop_tol) {
    std::string s = std::string(kind_name(g.kind)) + "|" + format_double(g.a) + "|" +
                    format_double(g.b) + "|" + format_double(cutoff) + "|" +
                    format_double(drop_tol) + "|" + kToolVersion;
    return to_hex(fnv1a(s));
}

namespace {

bool load_table_cache(const std::string& path, TriadTable& table) {
    std::ifstream is(path);
    if (!is) return false;
    std::map<std::array<int, 5>, std::uint32_t> lookup;
    for (std::uint32_t i = 0; i < table.modes.size(); ++i) {
        const auto& m = table.modes[i];
        lookup[{m.key[0], m.key[1], m.key[2], static_cast<int>(m.variant), m.pol}] = i;
    }
    std::string line;
    std::vector<TriadEntry> entries;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, ',');
        if (cols.size() != 10) return false;
        std::array<std::uint32_t, 3> idx{};
        for (int s = 0; s < 3; ++s) {
            auto keys = split(cols[s * 3], '/');
            std::array<int, 5> k{0, 0, 0, 0, 0};
            for (std::size_t i = 0; i < keys.size() && i < 3; ++i) k[i] = std::stoi(keys[i]);
            k[3] = static_cast<int>(variant_from_name(cols[s * 3 + 1]));
            k[4] = std::stoi(cols[s * 3 + 2]);
            auto it = lookup.find(k);
            if (it == lookup.end()) return false;
            idx[s] = it->second;
        }
        entries.push_back({idx[0], idx[1], idx[2], parse_double(cols[9])});
    }
    table.entries = std::move(entries);
    return true;
}

void store_table_cache(const std::string& path, const TriadTable& table) {
    std::ofstream os(path);
    if (!os) return;
    os << "# " << kToolName << " " << kToolVersion << " triad-cache "
       << triad_cache_key(table.g, table.cutoff, table.drop_tol) << "\n";
    auto emit_mode = [&](const SpectralMode& m) {
        os << m.key[0] << "/" << m.key[1] << "/" << m.key[2] << "," << variant_name(m.variant)
           << "," << m.pol;
    };
    for (const auto& e : table.entries) {
        emit_mode(table.modes[e.n]);
        os << ",";
        emit_mode(table.modes[e.m]);
        os << ",";
        emit_mode(table.modes[e.l]);
        os << "," << format_double(e.c) << "\n";
    }
}

}  // namespace

TriadTable build_triad_table(const GeometryDescriptor& g, double cutoff,
                             const TableBuildOptions& opts) {
    TriadTable table;
    table.g = g;
    table.cutoff = cutoff;
    table.drop_tol = opts.drop_tol;
    if (g.is_flat())
        table.modes = enumerate_modes(g, cutoff);
    else if (g.kind == GeometryKind::Sphere)
        table.modes = sphere_modes(cutoff);
    else
        table.modes = hemisphere_modes(cutoff);

    std::string cache_path;
    if (!opts.cache_dir.empty()) {
        std::filesystem::create_directories(opts.cache_dir);
        cache_path = opts.cache_dir + "/triads-" + triad_cache_key(g, cutoff, opts.drop_tol) + ".csv";
        if (load_table_cache(cache_path, table)) return table;
    }

    const std::uint32_t nmodes = static_cast<std::uint32_t>(table.modes.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t n = 0; n < nmodes; ++n)
        for (std::uint32_t m = n; m < nmodes; ++m) pairs.emplace_back(n, m);
    std::vector<std::vector<TriadEntry>> per_pair(pairs.size());

    if (g.is_flat()) {
        const FlatModeGrid grid = build_mode_grid(g, table.modes, opts.parallel);
        const ModeIndex index(table.modes);
#pragma omp parallel if (opts.parallel)
        {
            std::vector<double> field;
#pragma omp for schedule(dynamic, 8)
            for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                const auto [n, m] = pairs[pi];
                auto cands = flat_candidates(g, table.modes, index, n, m);
                if (cands.empty()) continue;
                interaction_field(grid, n, m, field);
                for (auto l : cands) {
                    const double c = project_onto_mode(grid, field, l);
                    if (std::abs(c) > opts.drop_tol) per_pair[pi].push_back({n, m, l, c});
                }
            }
        }
    } else {
        int max_degree = 1;
        for (const auto& m : table.modes) max_degree = std::max(max_degree, m.key[0]);
        const SphereGrid grid(table.modes, max_degree);
        // hemisphere couplings integrate over half the sphere; the parity-odd
        // integrand is reflection-even, so the full-sphere quadrature counts
        // the restriction twice
        const double restrict_factor = g.kind == GeometryKind::Hemisphere ? 0.5 : 1.0;
#pragma omp parallel for schedule(dynamic, 8) if (opts.parallel)
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const auto [n, m] = pairs[pi];
            for (std::uint32_t l = 0; l < nmodes; ++l) {
                if (!selection_allows(g, table.modes[n], table.modes[m], table.modes[l])) continue;
                const double norm = restrict_factor * table.modes[n].normalization *
                                    table.modes[m].normalization * table.modes[l].normalization;
                const double c = norm * (grid.triple(m, n, l) + grid.triple(n, m, l));
                if (std::abs(c) > opts.drop_tol) per_pair[pi].push_back({n, m, l, c});
            }
        }
    }

    for (auto& v : per_pair)
        for (auto& e : v) table.entries.push_back(e);

    if (!cache_path.empty()) store_table_cache(cache_path, table);
    return table;
}

TriadSets triad_sets(const TriadTable& table, bool grouped) {
    std::vector<std::size_t> group;
    if (grouped) eigenvalue_groups(table.modes, group);
    auto id = [&](std::uint32_t i) {
        return grouped ? static_cast<std::uint32_t>(group[i]) : i;
    };
    TriadSets sets;
    for (const auto& e : table.entries) {
        const std::uint32_t n = id(e.n), m = id(e.m), l = id(e.l);
        if (n == m) continue;  // the definitions require n < m strictly
        const std::uint32_t lo = std::min(n, m), hi = std::max(n, m);
        sets.forward[{lo, hi}].insert(l);
        sets.inverse[{lo, l}].insert(hi);
    }
    for (const auto& [key, s] : sets.forward)
        if (s.size() > sets.card_max_forward) {
            sets.card_max_forward = s.size();
            sets.witness_forward = key;
        }
    for (const auto& [key, s] : sets.inverse)
        if (s.size() > sets.card_max_inverse) {
            sets.card_max_inverse = s.size();
            sets.witness_inverse = key;
        }
    return sets;
}

SoundnessReport selection_soundness(const GeometryDescriptor& g, double cutoff, double tol,
                                    bool parallel) {
    SoundnessReport rep;
    rep.tol = tol;
    std::vector<SpectralMode> modes;
    if (g.is_flat())
        modes = enumerate_modes(g, cutoff);
    else if (g.kind == GeometryKind::Sphere)
        modes = sphere_modes(cutoff);
    else
        modes = hemisphere_modes(cutoff);
    const std::uint32_t nmodes = static_cast<std::uint32_t>(modes.size());

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t n = 0; n < nmodes; ++n)
        for (std::uint32_t m = n; m < nmodes; ++m) pairs.emplace_back(n, m);

    std::vector<std::vector<std::array<std::uint32_t, 3>>> bad(pairs.size());
    std::vector<double> worst(pairs.size(), 0.0);
    std::vector<std::size_t> counts(pairs.size(), 0);

    if (g.is_flat()) {
        const FlatModeGrid grid = build_mode_grid(g, modes, parallel);
#pragma omp parallel if (parallel)
        {
            std::vector<double> field;
#pragma omp for schedule(dynamic, 4)
            for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                const auto [n, m] = pairs[pi];
                interaction_field(grid, n, m, field);
                for (std::uint32_t l = 0; l < nmodes; ++l) {
                    if (selection_allows(g, modes[n], modes[m], modes[l])) continue;
                    ++counts[pi];
                    const double c = project_onto_mode(grid, field, l);
                    worst[pi] = std::max(worst[pi], std::abs(c));
                    if (std::abs(c) >= tol) bad[pi].push_back({n, m, l});
                }
            }
        }
    } else {
        int max_degree = 1;
        for (const auto& m : modes) max_degree = std::max(max_degree, m.key[0]);
        const SphereGrid grid(modes, max_degree);
        const double restrict_factor = g.kind == GeometryKind::Hemisphere ? 0.5 : 1.0;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const auto [n, m] = pairs[pi];
            for (std::uint32_t l = 0; l < nmodes; ++l) {
                if (selection_allows(g, modes[n], modes[m], modes[l])) continue;
                ++counts[pi];
                const double norm = restrict_factor * modes[n].normalization *
                                    modes[m].normalization * modes[l].normalization;
                const double c = norm * (grid.triple(m, n, l) + grid.triple(n, m, l));
                worst[pi] = std::max(worst[pi], std::abs(c));
                if (std::abs(c) >= tol) bad[pi].push_back({n, m, l});
            }
        }
    }

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        rep.checked += counts[pi];
        rep.worst_off_predicate = std::max(rep.worst_off_predicate, worst[pi]);
        for (const auto& t : bad[pi]) rep.counterexamples.push_back(t);
    }
    return rep;
}

void write_couplings_csv(std::ostream& os, const TriadTable& table, const std::string& header) {
    if (!header.empty()) os << header << "\n";
    os << "n_key,n_var,m_key,m_var,l_key,l_var,coeff_closed,coeff_quad,abs_diff\n";
    for (const auto& e : table.entries) {
        const auto& n = table.modes[e.n];
        const auto& m = table.modes[e.m];
        const auto& l = table.modes[e.l];
        std::string closed, diff;
        if (table.g.kind == GeometryKind::Cylinder) {
            double cc = 0.0;
            for (const auto& [lm, c] : coupling_closed_form_cylinder(table.g, n, m))
                if (lm.key == l.key && lm.variant == l.variant) cc += c;
            closed = format_double(cc);
            diff = format_double(std::abs(cc - e.c));
        }
        os << key_string(n, table.g) << "," << variant_name(n.variant) << ","
           << key_string(m, table.g) << "," << variant_name(m.variant) << ","
           << key_string(l, table.g) << "," << variant_name(l.variant) << "," << closed << ","
           << format_double(e.c) << "," << diff << "\n";
    }
}

}  // namespace speclab
