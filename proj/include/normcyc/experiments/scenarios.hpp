#pragma once

#include "normcyc/geometry/hausdorff.hpp"

#include <cstdint>
#include <string>

namespace normcyc {

enum class Scenario { translate, rotate, vertex_perturb, ball_vs_polygon };

Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario s);

struct GeneratedPair {
    Body K;
    Body L;
    /// Measured Hausdorff distance and its certified error.
    double d_H = 0;
    double d_H_error = 0;
    /// Shift, angle, vertex displacement or polygon size m.
    double parameter = 0;
};

/// Builds (K, L) with measured d_H(K, L) in [delta/2, 2 delta].
///  - translate: L = K + delta e_1.
///  - rotate: L is K turned about its reference point, in the x1-x2 plane; the angle is
///    found by bisection on the measured distance.
///  - vertex-perturb: one vertex (chosen by `seed`) is pushed away from the reference
///    point, again by bisection; K must be a polytope or a parallel body of one.
///  - ball-vs-polygon: K = B(c, r), L the inscribed regular m-gon with
///    r (1 - cos(pi/m)) closest to delta; planar only.
/// Throws `non_convergence` naming the bracket when the bisection fails.
GeneratedPair generate_pair(Scenario scenario, const Body& base, double delta, std::uint64_t seed);

} // namespace normcyc
