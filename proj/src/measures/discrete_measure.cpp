#include "normcyc/measures/discrete_measure.hpp"

#include <cmath>
#include <map>

namespace normcyc {

double DiscreteMeasure::total_mass() const
{
    double s = 0;
    for (const auto& a : atoms) s += a.w;
    return s;
}

double DiscreteMeasure::variation() const
{
    double s = 0;
    for (const auto& a : atoms) s += std::abs(a.w);
    return s;
}

void DiscreteMeasure::validate() const
{
    require(dim == 2 || dim == 3, Errc::dimension_mismatch, "measure dimension must be 2 or 3");
    for (const auto& a : atoms) {
        require(a.s.x.size() == dim && a.s.u.size() == dim, Errc::dimension_mismatch, "atom dimension mismatch");
        require(std::isfinite(a.w), Errc::invalid_argument, "atom weight is not finite");
        require(is_signed || a.w >= 0, Errc::invalid_argument, "unsigned measure has a negative weight");
        require(a.s.x.allFinite(), Errc::invalid_argument, "atom position is not finite");
        require(is_unit(a.s.u), Errc::invalid_argument, "atom direction is not a unit vector");
    }
}

DiscreteMeasure scaled(const DiscreteMeasure& mu, double c)
{
    DiscreteMeasure out = mu;
    for (auto& a : out.atoms) a.w *= c;
    out.is_signed = mu.is_signed || c < 0;
    return out;
}

DiscreteMeasure linear_combination(const std::vector<const DiscreteMeasure*>& mus, const std::vector<double>& coeffs)
{
    require(!mus.empty() && mus.size() == coeffs.size(), Errc::invalid_argument,
            "linear_combination: need one coefficient per measure");
    DiscreteMeasure out;
    out.dim = mus.front()->dim;
    std::size_t total = 0;
    for (const auto* m : mus) total += m->atoms.size();
    out.atoms.reserve(total);
    for (std::size_t k = 0; k < mus.size(); ++k) {
        require(mus[k]->dim == out.dim, Errc::dimension_mismatch, "linear_combination: mixed dimensions");
        out.is_signed = out.is_signed || mus[k]->is_signed || coeffs[k] < 0;
        for (const auto& a : mus[k]->atoms) out.atoms.push_back({a.s, coeffs[k] * a.w});
    }
    return out;
}

DiscreteMeasure restricted(const DiscreteMeasure& mu, const std::function<bool(const SupportElement&)>& keep)
{
    DiscreteMeasure out;
    out.dim = mu.dim;
    out.is_signed = mu.is_signed;
    for (const auto& a : mu.atoms)
        if (keep(a.s)) out.atoms.push_back(a);
    return out;
}

DiscreteMeasure u_marginal(const DiscreteMeasure& mu, double factor)
{
    DiscreteMeasure out;
    out.dim = mu.dim;
    out.is_signed = mu.is_signed || factor < 0;
    out.atoms.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) out.atoms.push_back({{Vec::Zero(mu.dim), a.s.u}, factor * a.w});
    return merged(out);
}

namespace {

std::vector<double> key_of(const SupportElement& s)
{
    std::vector<double> k(s.x.data(), s.x.data() + s.x.size());
    k.insert(k.end(), s.u.data(), s.u.data() + s.u.size());
    return k;
}

} // namespace

DiscreteMeasure merged(const DiscreteMeasure& mu)
{
    std::map<std::vector<double>, std::size_t> index;
    DiscreteMeasure out;
    out.dim = mu.dim;
    out.is_signed = mu.is_signed;
    std::vector<Atom> acc;
    for (const auto& a : mu.atoms) {
        auto [it, fresh] = index.emplace(key_of(a.s), acc.size());
        if (fresh)
            acc.push_back(a);
        else
            acc[it->second].w += a.w;
    }
    out.atoms.reserve(acc.size());
    for (const auto& [key, pos] : index) out.atoms.push_back(acc[pos]);
    return out;
}

} // namespace normcyc
