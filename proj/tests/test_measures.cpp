#include "doctest.h"

#include "normcyc/measures/exact_measure.hpp"
#include "normcyc/measures/shell_bound.hpp"
#include "normcyc/measures/vandermonde.hpp"

#include <numbers>
#include <random>

using namespace normcyc;
using std::numbers::pi;

namespace {

Body unit_square() { return Body::polytope({vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)}); }

Body unit_cube()
{
    std::vector<Vec> vs;
    for (int i = 0; i < 8; ++i) vs.push_back(vec3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
    return Body::polytope(vs);
}

Body random_polygon(std::mt19937_64& rng, int m = 7)
{
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<Vec> pts;
    for (int i = 0; i < m; ++i) pts.push_back(vec2(U(rng), U(rng)));
    return Body::polytope(pts);
}

} // namespace

TEST_CASE("face decomposition of the unit square")
{
    const auto cells = face_decomposition(unit_square());
    int vertices = 0;
    int edges = 0;
    double arcs = 0;
    for (const auto& c : cells) {
        if (c.face_dim == 0) {
            ++vertices;
            CHECK(c.normal_measure == doctest::Approx(pi / 2));
            arcs += c.normal_measure;
        }
        else {
            ++edges;
            CHECK(c.face_measure == doctest::Approx(1));
            CHECK(c.normal_cell.size() == 1);
        }
    }
    CHECK(vertices == 4);
    CHECK(edges == 4);
    CHECK(arcs == doctest::Approx(2 * pi));
}

TEST_CASE("face decomposition of a triangle and the cube")
{
    double arcs = 0;
    for (const auto& c : face_decomposition(Body::polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)})))
        if (c.face_dim == 0) arcs += c.normal_measure;
    CHECK(arcs == doctest::Approx(2 * pi).epsilon(1e-14));

    int counts[3] = {0, 0, 0};
    double sphere = 0;
    double area = 0;
    for (const auto& c : face_decomposition(unit_cube())) {
        ++counts[c.face_dim];
        if (c.face_dim == 0) {
            CHECK(c.normal_measure == doctest::Approx(4 * pi / 8));
            sphere += c.normal_measure;
        }
        if (c.face_dim == 2) area += c.face_measure;
    }
    CHECK(counts[0] == 8);
    CHECK(counts[1] == 12);
    CHECK(counts[2] == 6);
    CHECK(sphere == doctest::Approx(4 * pi));
    CHECK(area == doctest::Approx(surface_area(unit_cube())));
    CHECK_THROWS_AS(face_decomposition(Body::polytope({vec2(0, 0), vec2(1, 0)})), Error);
}

TEST_CASE("vertex cells of random polytopes partition the sphere")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 10; ++t) {
        std::vector<Vec> pts;
        for (int i = 0; i < 12; ++i) pts.push_back(vec3(U(rng), U(rng), U(rng)));
        double sphere = 0;
        for (const auto& c : face_decomposition(Body::polytope(pts)))
            if (c.face_dim == 0) sphere += c.normal_measure;
        CHECK(sphere == doctest::Approx(4 * pi).epsilon(1e-12));
    }
}

TEST_CASE("intrinsic volume examples")
{
    CHECK(intrinsic_volume(unit_square(), 0) == doctest::Approx(1));
    CHECK(intrinsic_volume(unit_square(), 1) == doctest::Approx(2));
    CHECK(intrinsic_volume(unit_cube(), 0) == doctest::Approx(1));
    CHECK(intrinsic_volume(unit_cube(), 1) == doctest::Approx(3));
    CHECK(intrinsic_volume(unit_cube(), 2) == doctest::Approx(3));
    auto tiny = Body::polytope({vec2(0, 0), vec2(1e-6, 0), vec2(1e-6, 1e-6), vec2(0, 1e-6)});
    CHECK(std::abs(intrinsic_volume(tiny, 0) - 1) <= 1e-9);
    CHECK_THROWS_AS(intrinsic_volume(unit_square(), 2), Error);
    CHECK_THROWS_AS(intrinsic_volume(unit_square(), -1), Error);
}

TEST_CASE("intrinsic volumes match a Steiner polynomial fit")
{
    // Least-squares fit of vol(P + rho B) - vol(P) on rho in {0.1, ..., 1.0}.
    for (const Body& P : {unit_square(), unit_cube()}) {
        const int n = P.dim();
        Eigen::MatrixXd A(10, n);
        Eigen::VectorXd b(10);
        for (int r = 0; r < 10; ++r) {
            const double rho = 0.1 * (r + 1);
            for (int i = 0; i < n; ++i) A(r, i) = std::pow(rho, n - i) * unit_ball_volume(n - i);
            b[r] = parallel_volume(P, rho) - polytope_volume(P);
        }
        const Eigen::VectorXd lam = A.colPivHouseholderQr().solve(b);
        for (int i = 0; i < n; ++i) CHECK(lam[i] == doctest::Approx(intrinsic_volume(P, i)).epsilon(1e-9));
    }
}

TEST_CASE("Steiner consistency on random polytopes")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 10; ++t) {
        std::vector<Vec> pts;
        for (int i = 0; i < 10; ++i) pts.push_back(vec3(U(rng), U(rng), U(rng)));
        std::vector<Body> bodies = {random_polygon(rng), Body::polytope(pts)};
        for (const auto& P : bodies)
            for (double rho : {0.1, 0.25, 0.5, 1.0}) {
                const double lhs = parallel_volume(P, rho) - polytope_volume(P);
                CHECK(std::abs(lhs - local_parallel_volume(P, rho)) <= 1e-9 * lhs);
            }
    }
}

TEST_CASE("exact support measure examples")
{
    auto l1 = exact_support_measure(unit_square(), 1, 0.05);
    CHECK(l1.measure.total_mass() == doctest::Approx(2).epsilon(1e-12));
    CHECK(l1.bound == doctest::Approx(0.05 * 2));

    auto l0 = exact_support_measure(unit_square(), 0, 10.0);
    REQUIRE(l0.measure.atoms.size() == 4);
    for (const auto& a : l0.measure.atoms) CHECK(a.w == doctest::Approx(0.25));
    CHECK(l0.measure.total_mass() == doctest::Approx(1));

    auto near_e1 = restricted(l1.measure, [](const SupportElement& s) { return (s.u - vec2(1, 0)).norm() < 0.1; });
    CHECK(near_e1.total_mass() == doctest::Approx(0.5));
    auto s1 = u_marginal(near_e1, 2.0);
    REQUIRE(s1.atoms.size() == 1);
    CHECK(s1.atoms[0].w == doctest::Approx(1));

    auto c2 = exact_support_measure(unit_cube(), 2, 0.3);
    CHECK(c2.measure.total_mass() == doctest::Approx(3).epsilon(1e-12));
    auto c1 = exact_support_measure(unit_cube(), 1, 0.3);
    CHECK(c1.measure.total_mass() == doctest::Approx(3).epsilon(1e-12));
    auto c0 = exact_support_measure(unit_cube(), 0, 0.3);
    CHECK(c0.measure.total_mass() == doctest::Approx(1).epsilon(1e-12));
    for (const auto& a : c0.measure.atoms) CHECK(in_normal_bundle(unit_cube(), a.s, 1e-12));

    CHECK_THROWS_AS(exact_support_measure(unit_square(), 2, 0.1), Error);
    CHECK_THROWS_AS(exact_support_measure(unit_square(), 0, 0.0), Error);
}

TEST_CASE("surface area marginal identity")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<Vec> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(vec3(U(rng), U(rng), U(rng)));
    for (const Body& P : {random_polygon(rng), Body::polytope(pts)}) {
        const int n = P.dim();
        const auto lam = exact_support_measure(P, n - 1, 0.1).measure;
        for (const auto& f : P.polytope_data().facets) {
            auto near_f = [&](const SupportElement& s) { return (s.u - f.normal).norm() < 1e-9; };
            const double area = n == 2 ? (P.vertices()[f.loop[1]] - P.vertices()[f.loop[0]]).norm()
                                       : [&] {
                                             double a = 0;
                                             for (const auto& c : face_decomposition(P))
                                                 if (c.face_dim == 2 && (c.normal_cell[0] - f.normal).norm() < 1e-12)
                                                     a = c.face_measure;
                                             return a;
                                         }();
            CHECK(2 * restricted(lam, near_f).total_mass() == doctest::Approx(area).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact support measures are rigid-motion equivariant")
{
    const Mat R = rotation3<double>(vec3(1, 2, 3), 0.7);
    const Vec t = vec3(0.3, -1, 2);
    auto cube = unit_cube();
    auto moved = transformed(cube, R, t);
    for (int i = 0; i < 3; ++i) {
        const auto a = exact_support_measure(cube, i, 0.4).measure;
        const auto b = exact_support_measure(moved, i, 0.4).measure;
        CHECK(std::abs(a.total_mass() - b.total_mass()) <= 1e-12);
        for (const auto& atom : a.atoms) {
            const Vec x = R * atom.s.x + t;
            const Vec u = R * atom.s.u;
            bool found = false;
            for (const auto& other : b.atoms)
                if ((other.s.x - x).norm() < 1e-9 && (other.s.u - u).norm() < 1e-9) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("theta conversion")
{
    // n kappa_{n-i} Lambda_i = binom(n, i) Theta_i.
    CHECK(theta_factor(2, 0) == doctest::Approx(2 * pi));
    CHECK(theta_factor(2, 1) == doctest::Approx(2));
    CHECK(theta_factor(3, 2) == doctest::Approx(2));
    auto th = theta_from_lambda(exact_support_measure(unit_square(), 0, 1.0).measure, 0);
    CHECK(th.total_mass() == doctest::Approx(2 * pi));
}

TEST_CASE("counter rng is deterministic and roughly uniform")
{
    CHECK(CounterRng::bits(1, 2) == CounterRng::bits(1, 2));
    CHECK(CounterRng::bits(1, 2) != CounterRng::bits(2, 2));
    double s = 0;
    for (int k = 0; k < 100000; ++k) {
        const double v = CounterRng::uniform(42, k);
        CHECK((v >= 0 && v < 1));
        s += v;
    }
    CHECK(s / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("mc local parallel measure examples")
{
    const long N = 200000;
    auto sq = mc_local_parallel_measure(ShellSampler::make(unit_square(), 1.0, N, 1));
    CHECK(std::abs(sq.measure.total_mass() - (4 + pi)) <= sq.stat_error);
    for (const auto& a : sq.measure.atoms) {
        REQUIRE(std::abs(support_function(unit_square(), a.s.u) - a.s.x.dot(a.s.u)) <= 1e-8);
    }

    auto disk = mc_local_parallel_measure(ShellSampler::make(Body::ball(vec2(0, 0), 1), 0.5, N, 2));
    CHECK(std::abs(disk.measure.total_mass() - 1.25 * pi) <= disk.stat_error);

    int bad = 0;
    for (const auto& a : sq.measure.atoms)
        if (!in_normal_bundle(unit_square(), a.s, 1e-8)) ++bad;
    CHECK(bad == 0);

    CHECK_THROWS_AS(ShellSampler::make(unit_square(), 1.0, 10, 1), Error);
    CHECK_THROWS_AS(ShellSampler::make(unit_square(), 0.0, N, 1), Error);
}

TEST_CASE("mc sampling is deterministic and independent of the thread count")
{
    auto s = ShellSampler::make(unit_square(), 0.5, 20000, 99);
    auto a = mc_local_parallel_measure(s, 1);
    auto b = mc_local_parallel_measure(s, 3);
    REQUIRE(a.measure.atoms.size() == b.measure.atoms.size());
    for (std::size_t k = 0; k < a.measure.atoms.size(); ++k) {
        CHECK(a.measure.atoms[k].s.x == b.measure.atoms[k].s.x);
        CHECK(a.measure.atoms[k].s.u == b.measure.atoms[k].s.u);
        CHECK(a.measure.atoms[k].w == b.measure.atoms[k].w);
    }
}

TEST_CASE("vandermonde coefficient examples")
{
    auto v2 = vandermonde_coefficients(2);
    CHECK(v2.radii[0] == 0.5);
    CHECK(v2.radii[1] == 1.0);
    CHECK(v2.coeffs(0, 0) == doctest::Approx(-4 / pi).epsilon(1e-14));
    CHECK(v2.coeffs(0, 1) == doctest::Approx(2 / pi).epsilon(1e-14));
    CHECK(v2.coeffs(1, 0) == doctest::Approx(2).epsilon(1e-14));
    CHECK(v2.coeffs(1, 1) == doctest::Approx(-0.5).epsilon(1e-14));
    // Point-like body: mu_{1/2} = pi/4, mu_1 = pi.
    const double l0 = v2.coeffs(0, 0) * pi / 4 + v2.coeffs(0, 1) * pi;
    const double l1 = v2.coeffs(1, 0) * pi / 4 + v2.coeffs(1, 1) * pi;
    CHECK(l0 == doctest::Approx(1));
    CHECK(std::abs(l1) <= 1e-12);
    for (int n : {2, 3}) {
        auto v = vandermonde_coefficients(n);
        const Mat I = v.coeffs * v.system;
        CHECK((I - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((v.system * v.coeffs - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(vandermonde_coefficients(4), Error);
}

TEST_CASE("extraction recovers intrinsic volumes")
{
    const auto sys = vandermonde_coefficients(2);
    auto mus = sample_at_radii(unit_square(), sys, 1000000, 2024);
    auto lam = extract_support_measures(mus, sys);
    CHECK(lam[0].is_signed);
    CHECK(std::abs(lam[0].total_mass() - 1) <= 0.02);
    CHECK(std::abs(lam[1].total_mass() - 2) <= 0.02);
    const auto totals = extract_totals(mus, sys);
    CHECK(totals.value[0] == doctest::Approx(lam[0].total_mass()));

    auto disk = extract_totals(sample_at_radii(Body::ball(vec2(0, 0), 1), sys, 1000000, 2024), sys);
    CHECK(std::abs(disk.value[0] - 1) <= 0.02);
    CHECK(std::abs(disk.value[1] - pi) <= 0.02);

    // Closure at a held-out radius.
    auto held = mc_local_parallel_measure(ShellSampler::make(unit_square(), 0.75, 1000000, 77));
    const double predicted = 0.75 * 0.75 * pi * totals.value[0] + 0.75 * 2 * totals.value[1];
    const double err = 0.75 * 0.75 * pi * totals.stat_error[0] + 1.5 * totals.stat_error[1] + held.stat_error;
    CHECK(std::abs(predicted - held.measure.total_mass()) <= err);

    std::vector<McMeasure> wrong = {mus[1], mus[0]};
    CHECK_THROWS_AS(extract_support_measures(wrong, sys), Error);
    CHECK_THROWS_AS(extract_support_measures({mus[0]}, sys), Error);
}

TEST_CASE("shell bound terms examples")
{
    auto same = shell_bound_terms(unit_square(), unit_square(), 1.0, 20000, 3);
    CHECK(same.term_p == 0);
    CHECK(same.term_u == 0);
    CHECK(same.term_sym == 0);

    const double t = 0.05;
    auto balls = shell_bound_terms(Body::ball(vec2(0, 0), 1), Body::ball(vec2(0, 0), 1 + t), 1.0, 400000, 5);
    // Shells are annuli [1, 2] and [1.05, 2.05]: the symmetric difference is two thin annuli.
    const double sym = pi * (1.05 * 1.05 - 1) + pi * (2.05 * 2.05 - 4);
    CHECK(std::abs(balls.term_sym - sym) <= balls.err_sym);

    const double delta = 0.01;
    auto K = unit_square();
    auto L = translated(K, vec2(delta, 0));
    auto sq = shell_bound_terms(K, L, 1.0, 400000, 6);
    // Intersection volume is at most the shell volume 4 + pi; D is the diameter of K_1.
    const double D = std::sqrt(2.0) + 2;
    CHECK(sq.term_p <= std::sqrt(5 * D) * (4 + pi) * std::sqrt(delta) + sq.err_p);

    CHECK_THROWS_AS(shell_bound_terms(K, L, 1.0, 100, 1), Error);
}
