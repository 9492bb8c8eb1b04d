#pragma once

#include "normcyc/geometry/smooth_pair.hpp"
#include "normcyc/nc/evaluate.hpp"

#include <cstdint>

namespace normcyc {

struct RateRow {
    double epsilon = 0;
    /// |T_{K_eps}(phi) - T_K(phi)|.
    double difference = 0;
    double err_est = 0;
};

/// Differences of the normal cycles of K and K_eps = K + eps B along a grid in (0, 1].
std::vector<RateRow> parallel_rate_probe(const Body& K, const DifferentialForm& phi, const std::vector<double>& eps_grid,
                                         int level = 3);

/// T_K(df) for a polynomial f of degree <= 4 on R^4 (n = 2).
double closedness_probe(const Body& K, const Polynomial& f, int level = 3);

/// Random points of Nor K drawn chart by chart, charts weighted by their H^{n-1} measure.
class NorSampler {
public:
    explicit NorSampler(const Body& K);

    struct Sample {
        std::size_t chart = 0;
        std::array<double, 2> t{};
        ChartPoint point;
    };

    /// The k-th sample of the counter stream `seed`; parameters avoid a margin of
    /// `margin` around the chart edges.
    Sample draw(std::uint64_t seed, std::uint64_t k, double margin = 0) const;
    /// Point of the same chart at other parameters.
    ChartPoint at(std::size_t chart, const double* t) const { return chart_point(charts_[chart], t); }
    int dim() const { return dim_; }

private:
    int dim_ = 2;
    std::vector<PatchChart> charts_;
    std::vector<double> cumulative_;
};

struct OrientationProbe {
    long samples = 0;
    long matched = 0;
    /// Draws rejected for lying within 1e-4 of a stratum boundary.
    long resampled = 0;

    double fraction() const { return samples > 0 ? double(matched) / double(samples) : 0.0; }
};

/// Pushes the oriented tangent of Nor K through a central difference (step 1e-5 in chart
/// coordinates) of G and counts the samples where the image satisfies the orientation
/// rule of Nor L at G(x, u). Requires n = 2 and delta < eps/(4n).
OrientationProbe orientation_preservation_probe(const BodyPairContext& ctx, long samples, std::uint64_t seed);

/// Empirical constants of the maps between eps-smooth bodies against their bounds.
struct LipschitzReport {
    struct Entry {
        double observed = 0;
        double bound = 0;
        long violations = 0;
    };
    long pairs = 0;
    /// Lip(p) <= eps/(eps - delta).
    Entry projection;
    /// Lip(u_K) <= 1/eps.
    Entry spherical_image;
    /// Lip(G) <= 2/(eps - delta).
    Entry map_G;
    /// |G - id| <= delta + 2 sqrt(delta/eps).
    Entry displacement;
    /// min of u_L(p(x)) . u_K(x) against the lower bound 1 - 2 delta/eps.
    Entry angle;

    bool ok() const
    {
        return projection.violations + spherical_image.violations + map_G.violations + displacement.violations +
                   angle.violations ==
               0;
    }
};

/// Half of the pairs are independent boundary points, half are nearby points of one chart.
/// A violation is an observed value beyond its bound by more than `slack`.
LipschitzReport lipschitz_probes(const BodyPairContext& ctx, long pairs, std::uint64_t seed, double slack = 1e-6);

/// Empirical Lipschitz constant of F : bd(K + B) -> Nor K, x -> (p(K, x), u(K, x)).
double f_map_lipschitz(const Body& K, long pairs, std::uint64_t seed);

} // namespace normcyc
