#include "normcyc/nc/forms.hpp"

#include "normcyc/measures/sampling.hpp"

#include <cmath>

namespace normcyc {

namespace {

double power(double v, int e)
{
    double r = 1;
    for (int i = 0; i < e; ++i) r *= v;
    return r;
}

std::vector<double> region(int dim, double R)
{
    std::vector<double> r(2 * dim, 1.0);
    for (int i = 0; i < dim; ++i) r[i] = R;
    return r;
}

DifferentialForm polynomial_form(std::string name, int dim, std::vector<Polynomial> comps, double R)
{
    DifferentialForm f;
    f.name = std::move(name);
    f.dim = dim;
    f.region_radius = R;
    const auto r = region(dim, R);
    double sup2 = 0;
    double lip2 = 0;
    for (const auto& p : comps) {
        sup2 += power(p.sup_bound(r), 2);
        lip2 += power(p.gradient_bound(r), 2);
    }
    f.sup_bound = std::sqrt(sup2);
    f.lipschitz_bound = std::sqrt(lip2);
    f.coeffs = [comps = std::move(comps)](const SupportElement& s) {
        const VecZ<double> z = stacked(s);
        CoeffZ<double> c(static_cast<Eigen::Index>(comps.size()));
        for (std::size_t k = 0; k < comps.size(); ++k) c[k] = comps[k](z);
        return c;
    };
    return f;
}

} // namespace

double Polynomial::operator()(const VecZ<double>& z) const
{
    double s = 0;
    for (const auto& t : terms) {
        double m = t.c;
        for (int j = 0; j < vars; ++j) m *= power(z[j], t.e[j]);
        s += m;
    }
    return s;
}

Polynomial Polynomial::derivative(int j) const
{
    Polynomial d;
    d.vars = vars;
    for (const auto& t : terms) {
        if (t.e[j] == 0) continue;
        Term n = t;
        n.c *= t.e[j];
        --n.e[j];
        d.terms.push_back(n);
    }
    return d;
}

int Polynomial::degree() const
{
    int d = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (int j = 0; j < vars; ++j) s += t.e[j];
        d = std::max(d, s);
    }
    return d;
}

double Polynomial::sup_bound(const std::vector<double>& r) const
{
    double s = 0;
    for (const auto& t : terms) {
        double m = std::abs(t.c);
        for (int j = 0; j < vars; ++j) m *= power(r[j], t.e[j]);
        s += m;
    }
    return s;
}

double Polynomial::gradient_bound(const std::vector<double>& r) const
{
    double s = 0;
    for (int j = 0; j < vars; ++j) s += power(derivative(j).sup_bound(r), 2);
    return std::sqrt(s);
}

Polynomial Polynomial::random(int vars, int degree, std::uint64_t seed)
{
    require(vars >= 1 && vars <= 6 && degree >= 0, Errc::invalid_argument, "random polynomial: bad shape");
    Polynomial p;
    p.vars = vars;
    std::array<int, 6> e{};
    std::uint64_t counter = 0;
    // Odometer over exponent vectors, keeping those of total degree <= degree.
    for (;;) {
        int total = 0;
        for (int j = 0; j < vars; ++j) total += e[j];
        if (total <= degree) p.terms.push_back({2 * CounterRng::uniform(seed, counter++) - 1, e});
        int j = 0;
        while (j < vars && e[j] == degree) e[j++] = 0;
        if (j == vars) break;
        ++e[j];
    }
    return p;
}

VecZ<double> stacked(const SupportElement& s)
{
    const auto n = s.x.size();
    VecZ<double> z(2 * n);
    z.head(n) = s.x;
    z.tail(n) = s.u;
    return z;
}

DifferentialForm zero_form(int dim)
{
    require(dim == 2 || dim == 3, Errc::invalid_argument, "forms are defined for n = 2, 3");
    DifferentialForm f;
    f.name = "zero";
    f.dim = dim;
    const auto size = static_cast<Eigen::Index>(binomial(2 * dim, dim - 1));
    f.coeffs = [size](const SupportElement&) { return CoeffZ<double>(CoeffZ<double>::Zero(size)); };
    return f;
}

DifferentialForm perimeter2d()
{
    DifferentialForm f;
    f.name = "perimeter2d";
    f.dim = 2;
    f.sup_bound = std::sqrt(2.0);
    f.lipschitz_bound = 1;
    f.coeffs = [](const SupportElement& s) {
        CoeffZ<double> c(4);
        c << s.u[1], -s.u[0], 0, 0;
        return c;
    };
    return f;
}

DifferentialForm turning2d()
{
    DifferentialForm f = perimeter2d();
    f.name = "turning2d";
    f.coeffs = [](const SupportElement& s) {
        CoeffZ<double> c(4);
        c << 0, 0, s.u[1], -s.u[0];
        return c;
    };
    return f;
}

DifferentialForm random_polynomial_form(int dim, std::uint64_t seed, double region_radius)
{
    require(dim == 2 || dim == 3, Errc::invalid_argument, "forms are defined for n = 2, 3");
    const long size = binomial(2 * dim, dim - 1);
    std::vector<Polynomial> comps;
    for (long k = 0; k < size; ++k) comps.push_back(Polynomial::random(2 * dim, 3, CounterRng::bits(seed, std::uint64_t(k))));
    return polynomial_form("poly:" + std::to_string(seed), dim, std::move(comps), region_radius);
}

DifferentialForm form_by_name(const std::string& name, int dim)
{
    if (name == "perimeter2d" || name == "turning2d") {
        require(dim == 2, Errc::dimension_mismatch, name + " is a planar form");
        return name == "perimeter2d" ? perimeter2d() : turning2d();
    }
    if (name == "zero") return zero_form(dim);
    if (name.rfind("poly:", 0) == 0) {
        std::size_t used = 0;
        unsigned long long seed = 0;
        try {
            seed = std::stoull(name.substr(5), &used);
        }
        catch (const std::exception&) {
            used = 0;
        }
        require(used > 0 && used == name.size() - 5, Errc::parse, "bad form seed in '" + name + "'");
        return random_polynomial_form(dim, seed);
    }
    throw Error(Errc::invalid_argument, "unknown form '" + name + "'");
}

DifferentialForm exact_form(const Polynomial& f)
{
    require(f.vars == 4, Errc::invalid_argument, "exact_form: f must live on R^4");
    std::vector<Polynomial> grad;
    for (int j = 0; j < 4; ++j) grad.push_back(f.derivative(j));
    return polynomial_form("d(f)", 2, std::move(grad), 2);
}

DifferentialForm combination(double a, const DifferentialForm& phi, double b, const DifferentialForm& psi)
{
    require(phi.dim == psi.dim, Errc::dimension_mismatch, "combination: forms differ in dimension");
    DifferentialForm f;
    f.name = "combination";
    f.dim = phi.dim;
    f.region_radius = std::min(phi.region_radius, psi.region_radius);
    f.sup_bound = std::abs(a) * phi.sup_bound + std::abs(b) * psi.sup_bound;
    f.lipschitz_bound = std::abs(a) * phi.lipschitz_bound + std::abs(b) * psi.lipschitz_bound;
    f.coeffs = [a, b, p = phi.coeffs, q = psi.coeffs](const SupportElement& s) {
        return CoeffZ<double>(a * p(s) + b * q(s));
    };
    return f;
}

DifferentialForm pullback(const DifferentialForm& phi, const Mat& R, const Vec& t)
{
    const int n = phi.dim;
    require(R.rows() == n && R.cols() == n && t.size() == n, Errc::dimension_mismatch, "pullback: motion has wrong size");
    MatX<double> G = MatX<double>::Zero(2 * n, 2 * n);
    G.topLeftCorner(n, n) = R;
    G.bottomRightCorner(n, n) = R;
    const MatX<double> Ct = compound_matrix(G, n - 1).transpose();
    DifferentialForm f = phi;
    f.name = "pullback(" + phi.name + ")";
    f.coeffs = [Ct, R, t, p = phi.coeffs](const SupportElement& s) {
        const SupportElement gs{Vec(R * s.x + t), Vec(R * s.u)};
        return CoeffZ<double>(Ct * p(gs));
    };
    return f;
}

} // namespace normcyc
