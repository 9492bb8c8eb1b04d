#include "doctest.h"

#include "normcyc/flat/dbl.hpp"
#include "normcyc/measures/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace normcyc;

namespace {

SupportElement random_element(std::mt19937_64& rng, int dim = 2, double spread = 1.0)
{
    std::uniform_real_distribution<double> U(0, spread);
    std::normal_distribution<double> G;
    SupportElement s;
    s.x = Vec::Zero(dim);
    s.u = Vec::Zero(dim);
    for (int i = 0; i < dim; ++i) {
        s.x[i] = U(rng);
        s.u[i] = G(rng);
    }
    s.u.normalize();
    return s;
}

DblInstance random_signed(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> W(-1, 1);
    DblInstance inst;
    for (int k = 0; k < n; ++k) {
        inst.atoms.push_back(random_element(rng, 2, 1.5));
        inst.weights.push_back(W(rng));
    }
    return inst;
}

DiscreteMeasure random_unsigned(std::mt19937_64& rng, const std::vector<SupportElement>& pool, int n)
{
    std::uniform_real_distribution<double> W(0, 1);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    DiscreteMeasure m;
    for (int k = 0; k < n; ++k) m.add(pool[pick(rng)], W(rng));
    return m;
}

DblInstance pair_instance(double d, double w_s = 1, double w_t = -1)
{
    DblInstance inst;
    inst.atoms.push_back({vec2(0, 0), vec2(1, 0)});
    inst.atoms.push_back({vec2(d, 0), vec2(1, 0)});
    inst.weights = {w_s, w_t};
    return inst;
}

void check_certificate(const DblInstance& inst, const DblCertificate& c)
{
    double obj = 0;
    for (long k = 0; k < inst.size(); ++k) {
        CHECK(std::abs(c.witness[k]) <= 1 + 1e-9);
        obj += inst.weights[k] * c.witness[k];
        for (long l = 0; l < inst.size(); ++l)
            CHECK(std::abs(c.witness[k] - c.witness[l]) <= inst.distance(k, l) + 1e-9);
    }
    CHECK(std::abs(obj - c.value) <= 1e-9);
}

} // namespace

TEST_CASE("dbl_lp examples")
{
    CHECK(dbl_lp(pair_instance(0.5)).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dbl_lp(pair_instance(5)).value == doctest::Approx(2).epsilon(1e-12));

    DiscreteMeasure mu;
    mu.add({vec2(0.3, 0.1), vec2(0, 1)}, 0.7);
    mu.add({vec2(0.9, 0.2), vec2(1, 0)}, 0.4);
    CHECK(dbl_lp(DblInstance::from_measures(mu, mu)).value == 0);

    DiscreteMeasure two, one;
    two.add({vec2(0, 0), vec2(1, 0)}, 2);
    one.add({vec2(0, 0), vec2(1, 0)}, 1);
    const auto inst = DblInstance::from_measures(two, one);
    CHECK(inst.size() == 1);
    CHECK(dbl_lp(inst).value == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("dbl_flow reproduces the oracle examples")
{
    for (const auto& inst : {pair_instance(0.5), pair_instance(5), pair_instance(1.2, 2, 0.5), pair_instance(0, 1, 1)}) {
        const auto lp = dbl_lp(inst);
        const auto fl = dbl_flow(inst);
        CHECK(std::abs(lp.value - fl.value) <= 1e-9);
        CHECK(std::abs(fl.duality_gap) <= 1e-9);
        check_certificate(inst, fl);
        check_certificate(inst, lp);
    }
}

TEST_CASE("dbl_lp refuses instances above the cap")
{
    std::mt19937_64 rng(3);
    const auto inst = random_signed(rng, 12);
    CHECK_THROWS_AS(dbl_lp(inst, 10), Error);
    try {
        dbl_lp(inst, 10);
    }
    catch (const Error& e) {
        CHECK(e.code() == Errc::cap_exceeded);
    }
}

TEST_CASE("flow solver agrees with the LP oracle on random signed instances")
{
    std::mt19937_64 rng(2024);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random_signed(rng, 30);
        const auto lp = dbl_lp(inst);
        const auto fl = dbl_flow(inst);
        worst = std::max(worst, std::abs(lp.value - fl.value));
        CHECK(fl.max_violation <= 1e-9);
        CHECK(std::abs(fl.duality_gap) <= 1e-9);
        CHECK(fl.flow_residual <= 1e-9);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("metric axioms, bounds and scaling on unsigned measures")
{
    std::mt19937_64 rng(11);
    std::vector<SupportElement> pool;
    for (int k = 0; k < 25; ++k) pool.push_back(random_element(rng, 2, 0.8));
    for (int trial = 0; trial < 100; ++trial) {
        const auto mu = random_unsigned(rng, pool, 10);
        const auto nu = random_unsigned(rng, pool, 10);
        const auto zeta = random_unsigned(rng, pool, 10);
        const double mn = dbl(mu, nu);
        CHECK(mn == dbl(nu, mu));
        CHECK(dbl(mu, mu) == 0);
        CHECK(dbl(mu, zeta) <= mn + dbl(nu, zeta) + 1e-8);
        CHECK(std::abs(mu.total_mass() - nu.total_mass()) <= mn + 1e-12);
        CHECK(mn <= mu.total_mass() + nu.total_mass() + 1e-12);
        const double c = 0.25 + trial * 0.05;
        CHECK(std::abs(dbl(scaled(mu, c), scaled(nu, c)) - c * mn) <= 1e-10);
    }
}

TEST_CASE("shifted copies of a 2000-atom measure")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> W(0, 1e-3);
    DiscreteMeasure mu;
    for (int k = 0; k < 2000; ++k) mu.add(random_element(rng, 2, 1.0), W(rng));
    for (double t : {0.003, 0.05}) {
        DiscreteMeasure nu = mu;
        for (auto& a : nu.atoms) a.s.x[0] += t;
        const auto inst = DblInstance::from_measures(mu, nu);
        const auto c = dbl_flow(inst);
        CHECK(c.value <= t * mu.total_mass() + 1e-9);
        CHECK(c.value > 0);
        CHECK(c.max_violation <= 1e-9);
    }
}

TEST_CASE("coarsen examples")
{
    std::mt19937_64 rng(8);
    DiscreteMeasure mu;
    for (int k = 0; k < 50; ++k) mu.add(random_element(rng, 2), 0.1 + 0.01 * k);
    const auto fine = coarsen(mu, 1e-12);
    CHECK(fine.measure.atoms.size() == mu.atoms.size());
    CHECK(fine.bound <= 1e-10);
    CHECK(dbl(mu, fine.measure) <= 1e-9);

    for (int dim : {2, 3})
        for (double h : {0.5, 0.1, 0.013}) {
            for (int trial = 0; trial < 200; ++trial) {
                DiscreteMeasure one;
                one.dim = dim;
                one.add(random_element(rng, dim, 3.0), -2.5);
                one.is_signed = true;
                const auto c = coarsen(one, h);
                CHECK(c.measure.atoms.size() == 1);
                CHECK(c.bound <= h * std::sqrt(2.0) * 2.5);
                CHECK(is_unit(c.measure.atoms[0].s.u));
            }
        }
}

TEST_CASE("coarsening bound holds against the flow solver")
{
    const Body square = Body::polytope({vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)});
    const auto sampler = ShellSampler::make(square, 1.0, 100000, 77);
    const auto raw = mc_local_parallel_measure(sampler).measure;
    REQUIRE(raw.atoms.size() > 1000);
    const auto whole = coarsen(raw, 0.02);
    CHECK(whole.measure.atoms.size() < raw.atoms.size());
    const std::size_t chunk = 1500;
    for (std::size_t start = 0; start + chunk <= raw.atoms.size() && start < 10 * chunk; start += chunk) {
        DiscreteMeasure sub;
        sub.atoms.assign(raw.atoms.begin() + long(start), raw.atoms.begin() + long(start + chunk));
        const auto c = coarsen(sub, 0.02);
        const double d = dbl(sub, c.measure);
        CHECK(d <= c.bound + 1e-9);
    }
}
