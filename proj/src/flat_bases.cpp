#include "speclab/flat_bases.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// cutoff comparisons carry a relative slack so boundary eigenvalues are not
// dropped by the last bits of pi^2/a^2 arithmetic
bool below_cutoff(double lam, double lambda_max) {
    return lam <= lambda_max * (1.0 + 1e-12);
}

bool lex_positive(const std::array<int, 3>& k) {
    if (k[0] != 0) return k[0] > 0;
    if (k[1] != 0) return k[1] > 0;
    return k[2] > 0;
}

double norm2i(const std::array<int, 3>& k) {
    return static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
           static_cast<double>(k[2]) * k[2];
}

void enumerate_torus(int dim, double lambda_max, std::vector<SpectralMode>& out) {
    const int kmax = 1 + static_cast<int>(std::floor(std::sqrt(std::max(lambda_max, 0.0))));
    const double normalization = std::pow(2.0, 0.5 * (1 - dim)) * std::pow(kPi, -0.5 * dim);
    const int npol = dim - 1;
    std::array<int, 3> k{0, 0, 0};
    const int lo2 = -kmax, hi2 = kmax;
    for (k[0] = 0; k[0] <= kmax; ++k[0]) {
        for (k[1] = (k[0] == 0 ? 0 : lo2); k[1] <= hi2; ++k[1]) {
            if (dim == 2) {
                k[2] = 0;
                if (!lex_positive(k)) continue;
                double lam = norm2i(k);
                if (!below_cutoff(lam, lambda_max) || lam == 0.0) continue;
                for (Variant v : {Variant::Cos, Variant::Sin})
                    out.push_back({k, v, 1, lam, normalization});
            } else {
                for (k[2] = (k[0] == 0 && k[1] == 0 ? 1 : lo2); k[2] <= hi2; ++k[2]) {
                    if (!lex_positive(k)) continue;
                    double lam = norm2i(k);
                    if (!below_cutoff(lam, lambda_max) || lam == 0.0) continue;
                    for (int j = 1; j <= npol; ++j)
                        for (Variant v : {Variant::Cos, Variant::Sin})
                            out.push_back({k, v, j, lam, normalization});
                }
            }
        }
    }
}

void enumerate_rectangle(const GeometryDescriptor& g, double lambda_max,
                         std::vector<SpectralMode>& out) {
    const int k1max = 1 + static_cast<int>(std::floor(g.a * std::sqrt(std::max(lambda_max, 0.0)) / kPi));
    const int k2max = 1 + static_cast<int>(std::floor(g.b * std::sqrt(std::max(lambda_max, 0.0)) / kPi));
    for (int k1 = 1; k1 <= k1max; ++k1)
        for (int k2 = 1; k2 <= k2max; ++k2) {
            double lam = kPi * kPi * (static_cast<double>(k1) * k1 / (g.a * g.a) +
                                      static_cast<double>(k2) * k2 / (g.b * g.b));
            if (!below_cutoff(lam, lambda_max)) continue;
            out.push_back({{k1, k2, 0}, Variant::None, 0, lam, 2.0 / std::sqrt(g.a * g.b * lam)});
        }
}

void enumerate_cylinder(const GeometryDescriptor& g, double lambda_max,
                        std::vector<SpectralMode>& out) {
    const int k1max = 1 + static_cast<int>(std::floor(g.a * std::sqrt(std::max(lambda_max, 0.0)) / (2.0 * kPi)));
    const int k2max = 1 + static_cast<int>(std::floor(g.b * std::sqrt(std::max(lambda_max, 0.0)) / kPi));
    for (int k1 = 0; k1 <= k1max; ++k1)
        for (int k2 = 1; k2 <= k2max; ++k2) {
            double lam = kPi * kPi * (4.0 * k1 * k1 / (g.a * g.a) +
                                      static_cast<double>(k2) * k2 / (g.b * g.b));
            if (!below_cutoff(lam, lambda_max)) continue;
            // Y_(0,k2)^kappa has only one active component, hence the sqrt(2).
            double norm_full = 2.0 / std::sqrt(g.a * g.b * lam);
            if (k1 >= 1)
                out.push_back({{k1, k2, 0}, Variant::Sigma, 0, lam, norm_full});
            out.push_back({{k1, k2, 0}, Variant::Kappa, 0, lam,
                           k1 == 0 ? norm_full / std::sqrt(2.0) : norm_full});
        }
}

}  // namespace

std::vector<SpectralMode> enumerate_modes(const GeometryDescriptor& g, double lambda_max) {
    g.validate();
    std::vector<SpectralMode> out;
    switch (g.kind) {
        case GeometryKind::Torus2: enumerate_torus(2, lambda_max, out); break;
        case GeometryKind::Torus3: enumerate_torus(3, lambda_max, out); break;
        case GeometryKind::Rectangle: enumerate_rectangle(g, lambda_max, out); break;
        case GeometryKind::Cylinder: enumerate_cylinder(g, lambda_max, out); break;
        default: throw std::invalid_argument("enumerate_modes: unsupported geometry kind");
    }
    std::sort(out.begin(), out.end(), mode_less);
    return out;
}

std::vector<Vec3> torus_polarization_vectors(const std::array<int, 3>& k, int dim) {
    if (dim == 2) {
        double n = std::sqrt(norm2i(k));
        return {Vec3{-k[1] / n, k[0] / n, 0.0}};
    }
    double n = std::sqrt(norm2i(k));
    Vec3 khat{k[0] / n, k[1] / n, k[2] / n};
    // seed axis: the one least aligned with k, smallest index on ties
    int seed = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(k[i]) < std::abs(k[seed])) seed = i;
    Vec3 e{0.0, 0.0, 0.0};
    e[seed] = 1.0;
    double proj = e[0] * khat[0] + e[1] * khat[1] + e[2] * khat[2];
    Vec3 w1{e[0] - proj * khat[0], e[1] - proj * khat[1], e[2] - proj * khat[2]};
    double w1n = std::sqrt(w1[0] * w1[0] + w1[1] * w1[1] + w1[2] * w1[2]);
    for (auto& c : w1) c /= w1n;
    Vec3 w2{khat[1] * w1[2] - khat[2] * w1[1], khat[2] * w1[0] - khat[0] * w1[2],
            khat[0] * w1[1] - khat[1] * w1[0]};
    return {w1, w2};
}

namespace {

void check_point(const GeometryDescriptor& g, const Vec3& p) {
    constexpr double eps = 1e-12;
    switch (g.kind) {
        case GeometryKind::Rectangle:
            if (p[0] < -eps || p[0] > g.a + eps || p[1] < -eps || p[1] > g.b + eps)
                throw std::invalid_argument("point outside rectangle");
            break;
        case GeometryKind::Cylinder:
            if (p[1] < -eps || p[1] > g.b + eps)
                throw std::invalid_argument("point outside cylinder");
            break;
        default: break;  // torus is periodic in every direction
    }
}

}  // namespace

Vec3 evaluate_mode(const GeometryDescriptor& g, const SpectralMode& m, const Vec3& point) {
    check_point(g, point);
    Vec3 out{0.0, 0.0, 0.0};
    switch (g.kind) {
        case GeometryKind::Torus2:
        case GeometryKind::Torus3: {
            const int dim = g.dim();
            double phase = 0.0;
            for (int i = 0; i < dim; ++i) phase += m.key[i] * point[i];
            double f = (m.variant == Variant::Cos) ? std::cos(phase) : std::sin(phase);
            Vec3 w = torus_polarization_vectors(m.key, dim)[m.pol - 1];
            for (int i = 0; i < dim; ++i) out[i] = m.normalization * w[i] * f;
            break;
        }
        case GeometryKind::Rectangle: {
            const double al = m.key[0] * kPi / g.a, be = m.key[1] * kPi / g.b;
            out[0] = -m.normalization * be * std::sin(al * point[0]) * std::cos(be * point[1]);
            out[1] = m.normalization * al * std::cos(al * point[0]) * std::sin(be * point[1]);
            break;
        }
        case GeometryKind::Cylinder: {
            const double al = 2.0 * m.key[0] * kPi / g.a, be = m.key[1] * kPi / g.b;
            if (m.variant == Variant::Sigma) {
                out[0] = -m.normalization * be * std::sin(al * point[0]) * std::cos(be * point[1]);
                out[1] = m.normalization * al * std::cos(al * point[0]) * std::sin(be * point[1]);
            } else {
                out[0] = -m.normalization * be * std::cos(al * point[0]) * std::cos(be * point[1]);
                out[1] = -m.normalization * al * std::sin(al * point[0]) * std::sin(be * point[1]);
            }
            break;
        }
        default: throw std::invalid_argument("evaluate_mode: unsupported geometry kind");
    }
    return out;
}

std::array<Vec3, 3> evaluate_mode_gradient(const GeometryDescriptor& g, const SpectralMode& m,
                                           const Vec3& point) {
    check_point(g, point);
    std::array<Vec3, 3> grad{Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}};
    switch (g.kind) {
        case GeometryKind::Torus2:
        case GeometryKind::Torus3: {
            const int dim = g.dim();
            double phase = 0.0;
            for (int i = 0; i < dim; ++i) phase += m.key[i] * point[i];
            // d/dx_j cos(k.x) = -k_j sin(k.x), d/dx_j sin(k.x) = k_j cos(k.x)
            double df = (m.variant == Variant::Cos) ? -std::sin(phase) : std::cos(phase);
            Vec3 w = torus_polarization_vectors(m.key, dim)[m.pol - 1];
            for (int j = 0; j < dim; ++j)
                for (int i = 0; i < dim; ++i)
                    grad[j][i] = m.normalization * w[i] * m.key[j] * df;
            break;
        }
        case GeometryKind::Rectangle: {
            const double al = m.key[0] * kPi / g.a, be = m.key[1] * kPi / g.b;
            const double sa = std::sin(al * point[0]), ca = std::cos(al * point[0]);
            const double sb = std::sin(be * point[1]), cb = std::cos(be * point[1]);
            grad[0][0] = -m.normalization * be * al * ca * cb;
            grad[1][0] = m.normalization * be * be * sa * sb;
            grad[0][1] = -m.normalization * al * al * sa * sb;
            grad[1][1] = m.normalization * al * be * ca * cb;
            break;
        }
        case GeometryKind::Cylinder: {
            const double al = 2.0 * m.key[0] * kPi / g.a, be = m.key[1] * kPi / g.b;
            const double sa = std::sin(al * point[0]), ca = std::cos(al * point[0]);
            const double sb = std::sin(be * point[1]), cb = std::cos(be * point[1]);
            if (m.variant == Variant::Sigma) {
                grad[0][0] = -m.normalization * be * al * ca * cb;
                grad[1][0] = m.normalization * be * be * sa * sb;
                grad[0][1] = -m.normalization * al * al * sa * sb;
                grad[1][1] = m.normalization * al * be * ca * cb;
            } else {
                grad[0][0] = m.normalization * be * al * sa * cb;
                grad[1][0] = m.normalization * be * be * ca * sb;
                grad[0][1] = -m.normalization * al * al * ca * sb;
                grad[1][1] = -m.normalization * al * be * sa * cb;
            }
            break;
        }
        default: throw std::invalid_argument("evaluate_mode_gradient: unsupported geometry kind");
    }
    return grad;
}

LinfBoundReport linf_bound_check(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes,
                                 std::size_t samples_per_axis) {
    LinfBoundReport rep;
    rep.theta = 0.0;
    const int dim = g.dim();
    if (g.kind == GeometryKind::Torus2 || g.kind == GeometryKind::Torus3)
        rep.c = std::pow(kPi, -0.5 * dim);
    else if (g.uses_sides())
        rep.c = 2.0 / std::sqrt(g.a * g.b);
    else
        throw std::invalid_argument("linf_bound_check: flat geometry required");

    const double lx = g.uses_sides() ? g.a : 2.0 * kPi;
    const double ly = g.uses_sides() ? g.b : 2.0 * kPi;
    const double lz = 2.0 * kPi;
    for (const auto& m : modes) {
        const double denom = rep.c * std::pow(m.eigenvalue, rep.theta);
        double amp = 0.0;
        if (g.is_flat() && !g.uses_sides()) {
            amp = m.normalization;  // |w| = 1, |trig| <= 1
        } else {
            // component amplitude product bound, as in the pointwise estimate
            const double al = (g.kind == GeometryKind::Cylinder ? 2.0 : 1.0) * m.key[0] * kPi / g.a;
            const double be = m.key[1] * kPi / g.b;
            amp = m.normalization * std::sqrt(al * al + be * be);
        }
        rep.worst_ratio = std::max(rep.worst_ratio, amp / denom);

        double smax = 0.0;
        const std::size_t n = samples_per_axis;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec3 p{lx * (i + 0.5) / n, ly * (j + 0.5) / n, 0.0};
                if (dim == 3) p[2] = lz * ((i * 7 + j * 3) % n + 0.5) / n;
                Vec3 v = evaluate_mode(g, m, p);
                smax = std::max(smax, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
            }
        rep.worst_sampled_ratio = std::max(rep.worst_sampled_ratio, smax / denom);
    }
    rep.pass = rep.worst_ratio <= 1.0 + 1e-12;
    return rep;
}

GrowthReport growth_check(const std::vector<double>& eigens, double xi, std::optional<double> rho) {
    if (eigens.empty()) throw std::invalid_argument("growth_check: empty spectrum");
    GrowthReport rep;
    rep.xi = xi;
    rep.rho_hat = std::numeric_limits<double>::infinity();
    rep.margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= eigens.size(); ++k) {
        const double pw = std::pow(static_cast<double>(k), xi);
        const double ratio = eigens[k - 1] / pw;
        if (ratio < rep.rho_hat) {
            rep.rho_hat = ratio;
            rep.argmin = k;
        }
        if (rho) {
            rep.margin = std::min(rep.margin, eigens[k - 1] - *rho * pw);
            if (eigens[k - 1] < *rho * pw) rep.violations.push_back(k);
        }
    }
    return rep;
}

GrowthReport growth_check(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes,
                          double xi, std::optional<double> rho) {
    (void)g;
    std::vector<double> eig;
    eig.reserve(modes.size());
    for (const auto& m : modes) eig.push_back(m.eigenvalue);
    return growth_check(eig, xi, rho);
}

double cylinder_growth_rho1(const GeometryDescriptor& g, const std::vector<SpectralMode>& modes) {
    if (g.kind != GeometryKind::Cylinder) throw std::invalid_argument("cylinder_growth_rho1");
    if (modes.size() < 3) throw std::invalid_argument("cylinder_growth_rho1: need >= 3 modes");
    const double varrho = std::min(2.0 * kPi / (g.a * g.b), kPi * kPi / (g.b * g.b));
    double varrho0 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= 3; ++k)
        varrho0 = std::min(varrho0, modes[k - 1].eigenvalue / static_cast<double>(k));
    return std::min(varrho / 4.0, varrho0);
}

std::size_t eigenvalue_groups(const std::vector<SpectralMode>& modes, std::vector<std::size_t>& group) {
    group.assign(modes.size(), 0);
    std::size_t g = 0;
    for (std::size_t i = 1; i < modes.size(); ++i) {
        const double prev = modes[i - 1].eigenvalue, cur = modes[i].eigenvalue;
        if (cur - prev > 1e-9 * std::max(1.0, std::abs(cur))) ++g;
        group[i] = g;
    }
    return modes.empty() ? 0 : g + 1;
}

}  // namespace speclab
