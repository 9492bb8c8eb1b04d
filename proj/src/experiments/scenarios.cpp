#include "normcyc/experiments/scenarios.hpp"

#include "normcyc/measures/sampling.hpp"

#include <cmath>
#include <numbers>

namespace normcyc {

namespace {

HausdorffResult<double> measure(const Body& K, const Body& L, double delta)
{
    return hausdorff_distance(K, L, 1e-3 * delta);
}

Mat plane_rotation(int dim, double angle)
{
    return dim == 2 ? rotation2(angle) : rotation3(vec3(0, 0, 1), angle);
}

/// Bisection on t with make(t) at distance delta from K; t in (0, t_max].
template <typename Make>
GeneratedPair bisect(const Body& K, double delta, double t0, double t_max, Make make)
{
    double lo = 0;
    double hi = t0;
    Body L = make(hi);
    HausdorffResult<double> h = measure(K, L, delta);
    while (h.value < delta) {
        lo = hi;
        require(hi < t_max, Errc::non_convergence,
                "generate_pair: no bracket, d_H stays below the target up to parameter " + std::to_string(t_max));
        hi = std::min(1.25 * hi, t_max);
        L = make(hi);
        h = measure(K, L, delta);
    }
    double t = hi;
    for (int it = 0; it < 80 && std::abs(h.value - delta) > 1e-3 * delta; ++it) {
        t = 0.5 * (lo + hi);
        L = make(t);
        h = measure(K, L, delta);
        (h.value < delta ? lo : hi) = t;
    }
    require(h.value >= delta / 2 && h.value <= 2 * delta, Errc::non_convergence,
            "generate_pair: bisection ended outside [delta/2, 2 delta] with bracket [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]");
    return {K, L, h.value, h.error_bound, t};
}

} // namespace

Scenario parse_scenario(const std::string& name)
{
    if (name == "translate") return Scenario::translate;
    if (name == "rotate") return Scenario::rotate;
    if (name == "vertex-perturb") return Scenario::vertex_perturb;
    if (name == "ball-vs-polygon") return Scenario::ball_vs_polygon;
    throw Error(Errc::parse, "unknown scenario '" + name + "'");
}

std::string to_string(Scenario s)
{
    switch (s) {
    case Scenario::translate: return "translate";
    case Scenario::rotate: return "rotate";
    case Scenario::vertex_perturb: return "vertex-perturb";
    case Scenario::ball_vs_polygon: return "ball-vs-polygon";
    }
    return "unknown";
}

GeneratedPair generate_pair(Scenario scenario, const Body& base, double delta, std::uint64_t seed)
{
    require(delta > 0 && std::isfinite(delta), Errc::invalid_argument, "generate_pair: delta must be positive");
    const int n = base.dim();
    switch (scenario) {
    case Scenario::translate: {
        Vec t = Vec::Zero(n);
        t[0] = delta;
        const Body L = translated(base, t);
        const auto h = measure(base, L, delta);
        return {base, L, h.value, h.error_bound, delta};
    }
    case Scenario::rotate: {
        const Vec pivot = base.reference_point();
        const double R = base.radius_about(pivot);
        require(R > 0, Errc::degenerate_body, "rotate: body has zero radius");
        return bisect(base, delta, delta / R, std::numbers::pi,
                      [&](double a) { return rotated(base, plane_rotation(n, a), pivot); });
    }
    case Scenario::vertex_perturb: {
        const Body* core = &base;
        double rho = 0;
        if (base.is_parallel()) {
            rho = base.rho();
            core = &base.inner();
        }
        require(core->is_polytope(), Errc::precondition, "vertex-perturb needs a polytope or its parallel body");
        const auto verts = core->vertices();
        const Vec c = core->reference_point();
        const std::size_t k = std::size_t(CounterRng::bits(seed, 0) % verts.size());
        const Vec dir = (verts[k] - c).normalized();
        auto make = [&](double t) {
            auto moved = verts;
            moved[k] += t * dir;
            const Body P = Body::polytope(moved);
            return rho > 0 ? Body::parallel(P, rho) : P;
        };
        return bisect(base, delta, delta, 100 * (1 + core->radius_about(c)), make);
    }
    case Scenario::ball_vs_polygon: {
        require(base.is_ball() && n == 2, Errc::precondition, "ball-vs-polygon needs a planar ball");
        const double r = base.radius();
        require(delta < r, Errc::invalid_argument, "ball-vs-polygon: delta must be below the radius");
        const int m = std::max(3, int(std::lround(std::numbers::pi / std::acos(1 - delta / r))));
        std::vector<Vec> vs;
        for (int j = 0; j < m; ++j) {
            const double a = 2 * std::numbers::pi * j / m;
            vs.push_back(base.center() + r * vec2(std::cos(a), std::sin(a)));
        }
        const Body L = Body::polytope(vs);
        const auto h = measure(base, L, delta);
        require(h.value >= delta / 2 && h.value <= 2 * delta, Errc::non_convergence,
                "ball-vs-polygon: no m-gon within [delta/2, 2 delta]");
        return {base, L, h.value, h.error_bound, double(m)};
    }
    }
    throw Error(Errc::invalid_argument, "unknown scenario");
}

} // namespace normcyc
