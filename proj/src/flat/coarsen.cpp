#include "normcyc/flat/dbl.hpp"

#include <cmath>

namespace normcyc {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

double snap(double v, double h) { return std::round(v / h) * h; }

Vec snap_u2(const Vec& u, double h)
{
    const long m = std::max(4L, static_cast<long>(std::ceil(two_pi / h)));
    const double step = two_pi / double(m);
    long j = std::lround(std::atan2(u[1], u[0]) / step);
    j = ((j % m) + m) % m;
    const double a = double(j) * step;
    return vec2(std::cos(a), std::sin(a));
}

Vec snap_u3(const Vec& u, double h)
{
    const long rings = std::max(2L, static_cast<long>(std::ceil(std::numbers::pi / h)));
    const double dtheta = std::numbers::pi / double(rings);
    const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
    const long i = std::clamp(std::lround(theta / dtheta), 0L, rings);
    const double t = double(i) * dtheta;
    const double st = (i == 0 || i == rings) ? 0.0 : std::sin(t);
    if (st == 0) return vec3(0, 0, i == 0 ? 1.0 : -1.0);
    const long m = std::max(3L, static_cast<long>(std::ceil(two_pi * st / h)));
    const double step = two_pi / double(m);
    long j = std::lround(std::atan2(u[1], u[0]) / step);
    j = ((j % m) + m) % m;
    const double p = double(j) * step;
    return vec3(st * std::cos(p), st * std::sin(p), std::cos(t));
}

} // namespace

Coarsened coarsen(const DiscreteMeasure& mu, double h)
{
    require(h > 0 && std::isfinite(h), Errc::invalid_argument, "coarsen: cell size must be positive");
    DiscreteMeasure out;
    out.dim = mu.dim;
    out.is_signed = mu.is_signed;
    out.atoms.reserve(mu.atoms.size());
    double bound = 0;
    for (const auto& a : mu.atoms) {
        SupportElement s;
        s.x = a.s.x.unaryExpr([h](double v) { return snap(v, h); });
        s.u = mu.dim == 2 ? snap_u2(a.s.u, h) : snap_u3(a.s.u, h);
        bound += std::abs(a.w) * s.distance(a.s);
        out.atoms.push_back({s, a.w});
    }
    return {merged(out), bound};
}

} // namespace normcyc
