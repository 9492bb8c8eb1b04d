#include "normcyc/nc/probes.hpp"

#include "normcyc/measures/sampling.hpp"

#include <cmath>

namespace normcyc {

namespace {

constexpr double fd_step = 1e-5;
constexpr double stratum_margin = 1e-4;

} // namespace

std::vector<RateRow> parallel_rate_probe(const Body& K, const DifferentialForm& phi, const std::vector<double>& eps_grid,
                                         int level)
{
    require(K.is_polytope(), Errc::precondition, "parallel_rate_probe needs a polytope");
    const auto base = evaluate_normal_cycle(K, phi, level);
    std::vector<RateRow> rows;
    for (double eps : eps_grid) {
        require(eps > 0 && eps <= 1, Errc::invalid_argument, "parallel_rate_probe: eps must lie in (0, 1]");
        const auto v = evaluate_normal_cycle(Body::parallel(K, eps), phi, level);
        rows.push_back({eps, std::abs(v.value - base.value), v.err_est + base.err_est});
    }
    return rows;
}

double closedness_probe(const Body& K, const Polynomial& f, int level)
{
    require(K.dim() == 2, Errc::precondition, "closedness_probe is planar");
    require(f.degree() <= 4, Errc::precondition, "closedness_probe: f must have degree <= 4");
    return evaluate_normal_cycle(K, exact_form(f), level).value;
}

NorSampler::NorSampler(const Body& K) : dim_(K.dim())
{
    double acc = 0;
    for (const auto& p : normal_bundle(K)) {
        for (const auto& c : charts(p)) {
            charts_.push_back(c);
            // Measure of this chart alone.
            double m = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < (dim_ == 2 ? 1 : 4); ++j) {
                    const double t[2] = {(i + 0.5) / 4, (j + 0.5) / 4};
                    m += wedge_columns(chart_point(c, t).frame).norm() / (dim_ == 2 ? 4 : 16);
                }
            acc += m;
            cumulative_.push_back(acc);
        }
    }
    require(acc > 0, Errc::degenerate_body, "NorSampler: normal bundle has zero measure");
}

NorSampler::Sample NorSampler::draw(std::uint64_t seed, std::uint64_t k, double margin) const
{
    const std::uint64_t base = 3 * k;
    const double pick = CounterRng::uniform(seed, base) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), pick);
    Sample s;
    s.chart = std::min<std::size_t>(std::size_t(it - cumulative_.begin()), charts_.size() - 1);
    for (int i = 0; i < dim_ - 1; ++i)
        s.t[i] = margin + (1 - 2 * margin) * CounterRng::uniform(seed, base + 1 + std::uint64_t(i));
    s.point = chart_point(charts_[s.chart], s.t.data());
    return s;
}

OrientationProbe orientation_preservation_probe(const BodyPairContext& ctx, long samples, std::uint64_t seed)
{
    require(ctx.dim() == 2, Errc::precondition, "orientation probe is planar");
    require(ctx.orientation_regime(), Errc::precondition, "orientation probe needs delta < eps/(4n)");
    const NorSampler nor(ctx.K);
    OrientationProbe r;
    for (std::uint64_t k = 0; r.samples < samples; ++k) {
        const auto s = nor.draw(seed, k);
        const double t = s.t[0];
        if (t < stratum_margin || t > 1 - stratum_margin) {
            ++r.resampled;
            continue;
        }
        const double tp = t + fd_step;
        const double tm = t - fd_step;
        const auto gp = map_G(ctx, nor.at(s.chart, &tp).s);
        const auto gm = map_G(ctx, nor.at(s.chart, &tm).s);
        const auto g = map_G(ctx, s.point.s);
        ChartPoint pushed;
        pushed.s = g;
        pushed.frame = (stacked(gp) - stacked(gm)) / (2 * fd_step);
        ++r.samples;
        if (orientation_value(pushed, 1.0) > 0) ++r.matched;
    }
    return r;
}

LipschitzReport lipschitz_probes(const BodyPairContext& ctx, long pairs, std::uint64_t seed, double slack)
{
    require(ctx.orientation_regime(), Errc::precondition, "lipschitz probes need delta < eps/(4n)");
    const double eps = ctx.epsilon;
    const double delta = ctx.delta;
    const NorSampler nor(ctx.K);
    LipschitzReport r;
    r.pairs = pairs;
    r.projection.bound = eps / (eps - delta);
    r.spherical_image.bound = 1 / eps;
    r.map_G.bound = 2 / (eps - delta);
    r.displacement.bound = delta + 2 * std::sqrt(delta / eps);
    r.angle.bound = 1 - 2 * delta / eps;
    r.angle.observed = 1;

    auto ratio = [&](LipschitzReport::Entry& e, double num, double den) {
        if (den <= 0) return;
        const double q = num / den;
        e.observed = std::max(e.observed, q);
        if (q > e.bound + slack) ++e.violations;
    };
    auto pointwise = [&](const SupportElement& s, const Vec& p, const SupportElement& g) {
        const double disp = (stacked(g) - stacked(s)).norm();
        r.displacement.observed = std::max(r.displacement.observed, disp);
        if (disp > r.displacement.bound + slack) ++r.displacement.violations;
        const double dot = spherical_image(ctx.L, p).dot(s.u);
        r.angle.observed = std::min(r.angle.observed, dot);
        if (dot < r.angle.bound - slack) ++r.angle.violations;
    };

    for (long k = 0; k < pairs; ++k) {
        const auto a = nor.draw(seed, std::uint64_t(2 * k));
        ChartPoint b;
        if (k % 2 == 0) {
            b = nor.draw(seed, std::uint64_t(2 * k + 1)).point;
        }
        else {
            // Nearby point of the same chart.
            double t[2];
            for (int i = 0; i < nor.dim() - 1; ++i) {
                const double step = 1e-3 * (2 * CounterRng::uniform(seed ^ 0x9e3779b97f4a7c15ull, std::uint64_t(2 * k + i)) - 1);
                t[i] = std::clamp(a.t[i] + step, 0.0, 1.0);
            }
            b = nor.at(a.chart, t);
        }
        const SupportElement& sa = a.point.s;
        const SupportElement& sb = b.s;
        const Vec ua = spherical_image(ctx.K, sa.x);
        const Vec ub = spherical_image(ctx.K, sb.x);
        const Vec pa = boundary_projection_map(ctx, sa.x);
        const Vec pb = boundary_projection_map(ctx, sb.x);
        const SupportElement na{sa.x, ua};
        const SupportElement nb{sb.x, ub};
        const auto ga = map_G(ctx, na);
        const auto gb = map_G(ctx, nb);
        const double dx = (sa.x - sb.x).norm();
        ratio(r.projection, (pa - pb).norm(), dx);
        ratio(r.spherical_image, (ua - ub).norm(), dx);
        ratio(r.map_G, ga.distance(gb), na.distance(nb));
        pointwise(na, pa, ga);
        if (k == 0) pointwise(nb, pb, gb);
    }
    return r;
}

double f_map_lipschitz(const Body& K, long pairs, std::uint64_t seed)
{
    const Body K1 = Body::parallel(K, 1.0);
    const NorSampler nor(K1);
    auto F = [&](const Vec& x) {
        const Vec p = metric_projection(K, x);
        return SupportElement{p, Vec((x - p).normalized())};
    };
    double lip = 0;
    for (long k = 0; k < pairs; ++k) {
        const Vec x = nor.draw(seed, std::uint64_t(2 * k)).point.s.x;
        const Vec y = nor.draw(seed, std::uint64_t(2 * k + 1)).point.s.x;
        const double d = (x - y).norm();
        if (d > 0) lip = std::max(lip, F(x).distance(F(y)) / d);
    }
    return lip;
}

} // namespace normcyc
