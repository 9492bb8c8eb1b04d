#include "normcyc/nc/normal_bundle.hpp"

#include "normcyc/measures/face_decomposition.hpp"

#include <cmath>
#include <numbers>

namespace normcyc {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

/// Gauss-Legendre order 8 on [0, 1].
constexpr std::array<double, 8> gl_nodes = {
    0.019855071751231884, 0.10166676129318664, 0.2372337950418355, 0.4082826787521751,
    0.5917173212478249,   0.7627662049581645,  0.8983332387068134, 0.9801449282487681,
};
constexpr std::array<double, 8> gl_weights = {
    0.05061426814518813, 0.11119051722668724, 0.15685332293894364, 0.18134189168918100,
    0.18134189168918100, 0.15685332293894364, 0.11119051722668724, 0.05061426814518813,
};

/// Clockwise quarter turn.
Vec cw(const Vec& v) { return vec2(v[1], -v[0]); }

Vec cross(const Vec& a, const Vec& b)
{
    return vec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

double angle_between(const Vec& a, const Vec& b)
{
    const double c = a.dot(b);
    const double s = a.size() == 2 ? std::abs(a[0] * b[1] - a[1] * b[0]) : cross(a, b).norm();
    return std::atan2(s, c);
}

VecZ<double> lift(const Vec& dx, const Vec& du)
{
    const auto n = dx.size();
    VecZ<double> z(2 * n);
    z.head(n) = dx;
    z.tail(n) = du;
    return z;
}

void polytope_patches(const Body& P, double eps, std::vector<NormalBundlePatch>& out)
{
    const int n = P.dim();
    for (const auto& c : face_decomposition(P)) {
        NormalBundlePatch p;
        p.dim = n;
        p.face_dim = c.face_dim;
        p.epsilon = eps;
        p.base = c.face;
        p.fiber = c.normal_cell;
        if (n == 2) {
            if (c.face_dim == 0) {
                p.fiber = {c.normal_cell[1]};
                p.angle = planar_angle(c.normal_cell[0], c.normal_cell[1]);
            }
            else {
                const Vec d = c.face[1] - c.face[0];
                const Vec& u = c.normal_cell[0];
                if (d[0] * u[1] - d[1] * u[0] < 0) std::swap(p.base[0], p.base[1]);
            }
        }
        else if (c.face_dim == 1) {
            const Vec e = (c.face[1] - c.face[0]).normalized();
            const Vec& a = c.normal_cell[0];
            const Vec& b = c.normal_cell[1];
            if (cross(-e, a).dot(b) < 0) std::swap(p.fiber[0], p.fiber[1]);
            p.angle = angle_between(a, b);
        }
        out.push_back(std::move(p));
    }
}

void ball_patches(const Vec& center, double radius, std::vector<NormalBundlePatch>& out)
{
    const int n = static_cast<int>(center.size());
    if (n == 2) {
        out.push_back({2, 0, radius, {center}, {vec2(1, 0)}, two_pi});
        return;
    }
    // Octants of the sphere, each counter-clockwise seen from outside.
    for (int k = 0; k < 8; ++k) {
        const double sx = k & 1 ? -1 : 1;
        const double sy = k & 2 ? -1 : 1;
        const double sz = k & 4 ? -1 : 1;
        std::vector<Vec> tri = {vec3(sx, 0, 0), vec3(0, sy, 0), vec3(0, 0, sz)};
        if (sx * sy * sz < 0) std::swap(tri[1], tri[2]);
        out.push_back({3, 0, radius, {center}, tri, 0});
    }
}

} // namespace

std::vector<NormalBundlePatch> normal_bundle(const Body& K)
{
    require(K.dim() == 2 || K.dim() == 3, Errc::invalid_argument, "normal_bundle: n must be 2 or 3");
    double eps = 0;
    const Body* core = &K;
    while (core->is_parallel()) {
        eps += core->rho();
        core = &core->inner();
    }
    std::vector<NormalBundlePatch> out;
    if (core->is_ball())
        ball_patches(core->center(), core->radius() + eps, out);
    else
        polytope_patches(*core, eps, out);
    return out;
}

std::vector<PatchChart> charts(const NormalBundlePatch& patch)
{
    std::vector<PatchChart> out;
    PatchChart c;
    c.dim = patch.dim;
    c.epsilon = patch.epsilon;
    c.angle = patch.angle;
    if (patch.dim == 2) {
        if (patch.face_dim == 0) {
            c.kind = PatchChart::Kind::arc;
            c.p[0] = patch.base[0];
            c.n[0] = patch.fiber[0];
        }
        else {
            c.kind = PatchChart::Kind::segment;
            c.p[0] = patch.base[0];
            c.p[1] = patch.base[1];
            c.n[0] = patch.fiber[0];
        }
        out.push_back(c);
        return out;
    }
    switch (patch.face_dim) {
    case 0:
        c.kind = PatchChart::Kind::spherical_triangle;
        c.p[0] = patch.base[0];
        for (std::size_t k = 1; k + 1 < patch.fiber.size(); ++k) {
            c.n = {patch.fiber[0], patch.fiber[k], patch.fiber[k + 1]};
            out.push_back(c);
        }
        break;
    case 1: {
        c.kind = PatchChart::Kind::edge_arc;
        c.p[0] = patch.base[0];
        c.p[1] = patch.base[1];
        const Vec e = (patch.base[1] - patch.base[0]).normalized();
        c.n[0] = patch.fiber[0];
        c.n[1] = cross(-e, patch.fiber[0]);
        out.push_back(c);
        break;
    }
    default:
        c.kind = PatchChart::Kind::triangle;
        c.n[0] = patch.fiber[0];
        for (std::size_t k = 1; k + 1 < patch.base.size(); ++k) {
            c.p = {patch.base[0], patch.base[k], patch.base[k + 1]};
            out.push_back(c);
        }
        break;
    }
    return out;
}

ChartPoint chart_point(const PatchChart& c, const double* t)
{
    ChartPoint cp;
    const double eps = c.epsilon;
    switch (c.kind) {
    case PatchChart::Kind::segment: {
        const Vec d = c.p[1] - c.p[0];
        cp.s = {Vec(c.p[0] + t[0] * d + eps * c.n[0]), c.n[0]};
        cp.frame.resize(4, 1);
        cp.frame.col(0) = lift(d, Vec::Zero(2));
        break;
    }
    case PatchChart::Kind::arc: {
        const double th = c.angle * t[0];
        const Vec u = std::cos(th) * c.n[0] + std::sin(th) * cw(c.n[0]);
        const Vec du = c.angle * cw(u);
        cp.s = {Vec(c.p[0] + eps * u), u};
        cp.frame.resize(4, 1);
        cp.frame.col(0) = lift(eps * du, du);
        break;
    }
    case PatchChart::Kind::triangle: {
        const double a = t[0];
        const double b = t[1];
        const Vec d1 = c.p[1] - c.p[0];
        const Vec d2 = c.p[2] - c.p[0];
        const Vec x = c.p[0] + a * (1 - b) * d1 + a * b * d2 + eps * c.n[0];
        cp.s = {x, c.n[0]};
        cp.frame.resize(6, 2);
        cp.frame.col(0) = lift(Vec((1 - b) * d1 + b * d2), Vec::Zero(3));
        cp.frame.col(1) = lift(Vec(a * (c.p[2] - c.p[1])), Vec::Zero(3));
        break;
    }
    case PatchChart::Kind::edge_arc: {
        const Vec d = c.p[1] - c.p[0];
        const double th = c.angle * t[1];
        const Vec u = std::cos(th) * c.n[0] + std::sin(th) * c.n[1];
        const Vec du = c.angle * (-std::sin(th) * c.n[0] + std::cos(th) * c.n[1]);
        cp.s = {Vec(c.p[0] + t[0] * d + eps * u), u};
        cp.frame.resize(6, 2);
        cp.frame.col(0) = lift(d, Vec::Zero(3));
        cp.frame.col(1) = lift(eps * du, du);
        break;
    }
    case PatchChart::Kind::spherical_triangle: {
        const double a = t[0];
        const double b = t[1];
        const Vec d1 = c.n[1] - c.n[0];
        const Vec d2 = c.n[2] - c.n[0];
        const Vec q = c.n[0] + a * (1 - b) * d1 + a * b * d2;
        const double r = q.norm();
        const Vec u = q / r;
        auto tangent = [&](const Vec& dq) { return Vec((dq - u * u.dot(dq)) / r); };
        const Vec da = tangent(Vec((1 - b) * d1 + b * d2));
        const Vec db = tangent(Vec(a * (c.n[2] - c.n[1])));
        cp.s = {Vec(c.p[0] + eps * u), u};
        cp.frame.resize(6, 2);
        cp.frame.col(0) = lift(eps * da, da);
        cp.frame.col(1) = lift(eps * db, db);
        break;
    }
    }
    return cp;
}

double orientation_value(const ChartPoint& cp, double rho)
{
    const auto n = cp.s.u.size();
    MatN<double> M(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) M.col(k) = cp.frame.col(k).head(n) + rho * cp.frame.col(k).tail(n);
    M.col(n - 1) = cp.s.u;
    return M.determinant();
}

std::vector<QuadratureNode> quadrature_nodes(const NormalBundlePatch& patch, int level)
{
    require(level >= 0 && level <= 12, Errc::invalid_argument, "quadrature level must be in [0, 12]");
    const int cells = 1 << level;
    const double h = 1.0 / cells;
    std::vector<QuadratureNode> out;
    for (const auto& c : charts(patch)) {
        if (patch.dim == 2) {
            for (int i = 0; i < cells; ++i)
                for (int k = 0; k < 8; ++k) {
                    const double t = (i + gl_nodes[k]) * h;
                    out.push_back({chart_point(c, &t), gl_weights[k] * h});
                }
            continue;
        }
        for (int i = 0; i < cells; ++i)
            for (int j = 0; j < cells; ++j)
                for (int k = 0; k < 8; ++k)
                    for (int l = 0; l < 8; ++l) {
                        const double t[2] = {(i + gl_nodes[k]) * h, (j + gl_nodes[l]) * h};
                        out.push_back({chart_point(c, t), gl_weights[k] * gl_weights[l] * h * h});
                    }
    }
    return out;
}

double patch_measure(const NormalBundlePatch& patch, int level)
{
    double s = 0;
    for (const auto& q : quadrature_nodes(patch, level)) s += q.weight * wedge_columns(q.point.frame).norm();
    return s;
}

} // namespace normcyc
