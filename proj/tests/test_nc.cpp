#include "doctest.h"

#include "normcyc/measures/sampling.hpp"
#include "normcyc/nc/probes.hpp"

#include <cmath>
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

Body random_pentagon(std::uint64_t seed)
{
    std::vector<Vec> vs;
    for (int k = 0; k < 5; ++k) {
        const double a = 2 * pi * (k + 0.6 * CounterRng::uniform(seed, std::uint64_t(k))) / 5;
        const double r = 0.6 + 0.4 * CounterRng::uniform(seed, std::uint64_t(10 + k));
        vs.push_back(vec2(r * std::cos(a), r * std::sin(a)));
    }
    return Body::polytope(vs);
}

Body random_polytope3(std::mt19937_64& rng, int m = 12)
{
    std::normal_distribution<double> G;
    std::vector<Vec> vs;
    for (int k = 0; k < m; ++k) vs.push_back(vec3(G(rng), G(rng), G(rng)));
    return Body::polytope(vs);
}

VecZ<double> random_z(std::mt19937_64& rng, int N)
{
    std::normal_distribution<double> G;
    VecZ<double> v(N);
    for (int i = 0; i < N; ++i) v[i] = G(rng);
    return v;
}

Polynomial random_poly4(std::uint64_t seed, int degree = 4)
{
    Polynomial p = Polynomial::random(4, degree, seed);
    return p;
}

} // namespace

TEST_CASE("pairing examples and bounds")
{
    const auto e1 = MultiVector<double>::basis(4, {0});
    CoeffZ<double> d1 = CoeffZ<double>::Zero(4);
    d1[0] = 1;
    CoeffZ<double> d2 = CoeffZ<double>::Zero(4);
    d2[1] = 1;
    CHECK(pair(e1, d1) == 1);
    CHECK(pair(e1, d2) == 0);
    CHECK_THROWS_AS(pair(e1, CoeffZ<double>(CoeffZ<double>::Zero(6))), Error);

    std::mt19937_64 rng(4);
    for (int N : {4, 6})
        for (int m : {1, 2, 3}) {
            for (int trial = 0; trial < 200; ++trial) {
                auto xi = MultiVector<double>::zero(N, m);
                CoeffZ<double> phi(xi.coeffs.size());
                for (Eigen::Index k = 0; k < phi.size(); ++k) {
                    xi.coeffs[k] = std::normal_distribution<double>()(rng);
                    phi[k] = std::normal_distribution<double>()(rng);
                }
                CHECK(std::abs(pair(xi, phi)) <= xi.norm() * phi.norm() + 1e-12);
            }
        }
}

TEST_CASE("wedge of simple multivectors is bounded by the norms")
{
    std::mt19937_64 rng(5);
    for (int N : {4, 6})
        for (int p = 1; p + 1 <= N && p <= 2; ++p)
            for (int q = 1; p + q <= N && q <= 2; ++q)
                for (int trial = 0; trial < 100; ++trial) {
                    FrameZ<double> a(N, p), b(N, q);
                    for (int k = 0; k < p; ++k) a.col(k) = random_z(rng, N);
                    for (int k = 0; k < q; ++k) b.col(k) = random_z(rng, N);
                    const auto xa = wedge_columns(a);
                    const auto xb = wedge_columns(b);
                    CHECK(wedge(xa, xb).norm() <= xa.norm() * xb.norm() * (1 + 1e-12));
                }
    // e1 ^ e2 = -(e2 ^ e1), and e1 ^ e1 = 0.
    const auto e1 = MultiVector<double>::basis(4, {0});
    const auto e2 = MultiVector<double>::basis(4, {1});
    CHECK((wedge(e1, e2).coeffs + wedge(e2, e1).coeffs).norm() == 0);
    CHECK(wedge(e1, e1).norm() == 0);
    CHECK(wedge(e1, e2).coeffs[0] == 1);
}

TEST_CASE("compound matrix pushes wedges forward")
{
    std::mt19937_64 rng(6);
    for (int N : {4, 6}) {
        MatX<double> A(N, N);
        for (int i = 0; i < N; ++i) A.col(i) = random_z(rng, N);
        FrameZ<double> F(N, 2);
        F.col(0) = random_z(rng, N);
        F.col(1) = random_z(rng, N);
        const FrameZ<double> AF = A * F;
        const auto lhs = wedge_columns(AF).coeffs;
        const auto rhs = (compound_matrix(A, 2) * wedge_columns(F).coeffs).eval();
        CHECK((lhs - rhs).norm() <= 1e-10 * (1 + rhs.norm()));
    }
}

TEST_CASE("normal bundle patches of the square, its parallel body and the cube")
{
    const auto sq = normal_bundle(unit_square());
    int vertices = 0;
    int edges = 0;
    double fiber = 0;
    for (const auto& p : sq) {
        if (p.face_dim == 0) {
            ++vertices;
            fiber += p.angle;
        }
        else
            ++edges;
    }
    CHECK(vertices == 4);
    CHECK(edges == 4);
    CHECK(fiber == doctest::Approx(2 * pi));

    double total = 0;
    for (const auto& p : sq) total += patch_measure(p);
    CHECK(total == doctest::Approx(4 + 2 * pi).epsilon(1e-12));

    const auto par = normal_bundle(Body::parallel(unit_square(), 0.5));
    REQUIRE(par.size() == sq.size());
    for (const auto& p : par) {
        CHECK(p.epsilon == 0.5);
        for (const auto& q : quadrature_nodes(p, 1)) {
            CHECK(on_boundary(Body::parallel(unit_square(), 0.5), q.point.s.x));
            if (p.face_dim == 0) CHECK(((q.point.s.x - p.base[0]).norm()) == doctest::Approx(0.5));
        }
    }

    const auto cube = normal_bundle(unit_cube());
    int counts[3] = {0, 0, 0};
    double measure = 0;
    for (const auto& p : cube) {
        ++counts[p.face_dim];
        measure += patch_measure(p, 3);
    }
    CHECK(counts[0] == 8);
    CHECK(counts[1] == 12);
    CHECK(counts[2] == 6);
    CHECK(measure == doctest::Approx(6 + 10 * pi).epsilon(1e-9));
}

TEST_CASE("normal cycle examples on the unit square")
{
    const auto per = evaluate_normal_cycle(unit_square(), perimeter2d());
    CHECK(per.value == doctest::Approx(4).epsilon(1e-13));
    CHECK(std::abs(per.value - 4) <= 1e-9);
    CHECK(per.err_est <= 1e-10);

    const auto turn = evaluate_normal_cycle(unit_square(), turning2d());
    CHECK(std::abs(turn.value - 2 * pi) <= 1e-9);
    CHECK(turn.err_est <= 1e-10);

    CHECK(evaluate_normal_cycle(unit_square(), zero_form(2)).value == 0);
    CHECK(evaluate_normal_cycle(unit_cube(), zero_form(3)).value == 0);
}

TEST_CASE("orientation rule holds at every quadrature node")
{
    std::mt19937_64 rng(9);
    std::vector<Body> bodies = {unit_square(),
                                random_pentagon(3),
                                Body::parallel(unit_square(), 0.3),
                                Body::ball(vec2(0.2, -0.1), 1.5),
                                unit_cube(),
                                Body::parallel(unit_cube(), 0.7),
                                random_polytope3(rng),
                                Body::parallel(random_polytope3(rng), 0.2),
                                Body::ball(vec3(0, 1, 0), 0.5)};
    for (const auto& K : bodies) {
        const auto rep = check_orientation(normal_bundle(K), 1);
        CHECK(rep.all_positive());
        CHECK(rep.min_value > 0);
    }
}

TEST_CASE("normal cycle is linear in the form")
{
    const auto phi = random_polynomial_form(2, 17);
    const auto psi = random_polynomial_form(2, 18);
    for (const Body& K : {unit_square(), random_pentagon(5), Body::parallel(random_pentagon(6), 0.4)}) {
        const double a = evaluate_normal_cycle(K, phi).value;
        const double b = evaluate_normal_cycle(K, psi).value;
        const double c = evaluate_normal_cycle(K, combination(-1.7, phi, 1.0, psi)).value;
        CHECK(std::abs(c - (-1.7 * a + b)) <= 1e-12 * (1 + std::abs(a) + std::abs(b)));
    }
    const auto phi3 = random_polynomial_form(3, 19);
    const auto psi3 = random_polynomial_form(3, 20);
    const double a = evaluate_normal_cycle(unit_cube(), phi3, 1).value;
    const double b = evaluate_normal_cycle(unit_cube(), psi3, 1).value;
    const double c = evaluate_normal_cycle(unit_cube(), combination(0.5, phi3, 2.0, psi3), 1).value;
    CHECK(std::abs(c - (0.5 * a + 2 * b)) <= 1e-12 * (1 + std::abs(a) + std::abs(b)));
}

TEST_CASE("normal cycle is closed: T_K(df) = 0")
{
    Polynomial x1;
    x1.terms.push_back({1.0, {1, 0, 0, 0}});
    CHECK(std::abs(closedness_probe(unit_square(), x1)) <= 1e-9);

    Polynomial f;
    f.terms.push_back({1.0, {2, 0, 0, 1}});
    CHECK(std::abs(closedness_probe(unit_square(), f)) <= 1e-8);

    Polynomial c;
    c.terms.push_back({3.5, {0, 0, 0, 0}});
    CHECK(closedness_probe(unit_square(), c) == 0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_poly4(1000 + seed);
        CHECK(std::abs(closedness_probe(unit_square(), g)) <= 1e-8);
        CHECK(std::abs(closedness_probe(random_pentagon(7), g)) <= 1e-8);
        CHECK(std::abs(closedness_probe(Body::parallel(random_pentagon(8), 0.25), g)) <= 1e-8);
    }
    CHECK_THROWS_AS(closedness_probe(unit_square(), Polynomial::random(4, 5, 1)), Error);
}

TEST_CASE("normal cycle is equivariant under rigid motions")
{
    const Mat R2 = rotation2(0.7);
    const Vec t2 = vec2(0.3, -1.1);
    for (const auto& phi : {perimeter2d(), turning2d(), random_polynomial_form(2, 3)}) {
        const Body K = random_pentagon(11);
        const Body gK = translated(rotated(K, R2, Vec(Vec::Zero(2))), t2);
        const double lhs = evaluate_normal_cycle(gK, phi).value;
        const double rhs = evaluate_normal_cycle(K, pullback(phi, R2, t2)).value;
        CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
    const Mat R3 = rotation3(vec3(1, 2, -0.5), 1.1);
    const Vec t3 = vec3(0.1, 0.2, 0.3);
    const auto phi3 = random_polynomial_form(3, 4);
    const Body P = Body::parallel(unit_cube(), 0.2);
    const Body gP = Body::parallel(translated(rotated(unit_cube(), R3, Vec(Vec::Zero(3))), t3), 0.2);
    const double lhs = evaluate_normal_cycle(gP, phi3, 2).value;
    const double rhs = evaluate_normal_cycle(P, pullback(phi3, R3, t3), 2).value;
    CHECK(std::abs(lhs - rhs) <= 1e-9);
}

TEST_CASE("parallel rate probe")
{
    const std::vector<double> grid = {1.0, 0.5, 0.25, 0.1, 0.05, 0.01};
    for (const auto& row : parallel_rate_probe(unit_square(), perimeter2d(), grid))
        CHECK(std::abs(row.difference - 2 * pi * row.epsilon) <= 1e-8);
    for (const auto& row : parallel_rate_probe(unit_square(), turning2d(), grid)) CHECK(row.difference <= 1e-12);

    const auto phi = random_polynomial_form(2, 21);
    const auto rows = parallel_rate_probe(random_pentagon(9), phi, grid);
    double C = 0;
    for (const auto& row : rows) C = std::max(C, row.difference / row.epsilon);
    for (const auto& row : rows) {
        CHECK(row.difference <= C * row.epsilon + 1e-12);
        CHECK(row.difference / row.epsilon >= C / 4);
    }
    CHECK_THROWS_AS(parallel_rate_probe(unit_square(), perimeter2d(), {1.5}), Error);
}

TEST_CASE("orientation preservation probe")
{
    const Body K = Body::parallel(unit_square(), 1.0);
    const auto same = orientation_preservation_probe(BodyPairContext::make(K, K, 1.0, 0.0), 1000, 1);
    CHECK(same.fraction() == 1.0);

    const auto balls = BodyPairContext::make(Body::ball(vec2(0, 0), 1), Body::ball(vec2(0, 0), 1.01), 1.0, 0.01);
    const auto b = orientation_preservation_probe(balls, 1000, 2);
    CHECK(b.samples == 1000);
    CHECK(b.fraction() == 1.0);

    const Body L = Body::parallel(rotated(unit_square(), rotation2(0.2 * pi / 180), vec2(0.5, 0.5)), 1.0);
    const auto ctx = BodyPairContext::measured(K, L, 1.0);
    REQUIRE(ctx.delta < 1.0 / 16);
    CHECK(orientation_preservation_probe(ctx, 2000, 3).fraction() == 1.0);
}

TEST_CASE("Lipschitz bounds for the maps between smooth bodies")
{
    const Body K = Body::parallel(unit_square(), 1.0);
    const Body L = Body::parallel(rotated(unit_square(), rotation2(0.5 * pi / 180), vec2(0.5, 0.5)), 1.0);
    const auto rep = lipschitz_probes(BodyPairContext::measured(K, L, 1.0), 4000, 7);
    CHECK(rep.ok());
    CHECK(rep.spherical_image.observed <= 1.0 + 1e-6);
    CHECK(rep.projection.observed > 0.5);

    const auto balls = BodyPairContext::make(Body::ball(vec2(0, 0), 1), Body::ball(vec2(0.01, 0), 1), 1.0, 0.01);
    CHECK(lipschitz_probes(balls, 2000, 8).ok());

    const Body K3 = Body::parallel(unit_cube(), 0.5);
    const Body L3 = Body::parallel(translated(unit_cube(), vec3(0.01, 0, 0.005)), 0.5);
    CHECK(lipschitz_probes(BodyPairContext::measured(K3, L3, 0.5), 1000, 9).ok());

    CHECK(f_map_lipschitz(random_pentagon(3), 2000, 1) <= 3.0);
}
