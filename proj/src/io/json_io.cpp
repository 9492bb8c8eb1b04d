#include "normcyc/io/json_io.hpp"

#include <fstream>

namespace normcyc {

namespace {

Vec vec_from_json(const Json& j, const char* what)
{
    require(j.is_array() && (j.size() == 2 || j.size() == 3), Errc::parse,
            std::string(what) + " must be an array of 2 or 3 numbers");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t d = 0; d < j.size(); ++d) {
        require(j[d].is_number(), Errc::parse, std::string(what) + " has a non-numeric entry");
        v[static_cast<Eigen::Index>(d)] = j[d].get<double>();
    }
    return v;
}

Json vec_to_json(const Vec& v)
{
    Json a = Json::array();
    for (Eigen::Index d = 0; d < v.size(); ++d) a.push_back(v[d]);
    return a;
}

double number(const Json& j, const char* key)
{
    require(j.contains(key) && j[key].is_number(), Errc::parse, std::string("missing number '") + key + "'");
    return j[key].get<double>();
}

} // namespace

Body body_from_json(const Json& j)
{
    require(j.is_object() && j.contains("type") && j["type"].is_string(), Errc::parse, "body needs a 'type'");
    const std::string type = j["type"].get<std::string>();
    Body K = [&] {
        if (type == "polytope") {
            require(j.contains("vertices") && j["vertices"].is_array() && !j["vertices"].empty(), Errc::parse,
                    "polytope needs a nonempty 'vertices' array");
            std::vector<Vec> vs;
            for (const auto& v : j["vertices"]) vs.push_back(vec_from_json(v, "vertex"));
            for (const auto& v : vs)
                require(v.size() == vs.front().size(), Errc::dimension_mismatch, "vertices differ in dimension");
            return Body::polytope(vs);
        }
        if (type == "ball") {
            require(j.contains("center"), Errc::parse, "ball needs a 'center'");
            return Body::ball(vec_from_json(j["center"], "center"), number(j, "radius"));
        }
        if (type == "parallel") {
            require(j.contains("inner"), Errc::parse, "parallel body needs an 'inner' body");
            return Body::parallel(body_from_json(j["inner"]), number(j, "rho"));
        }
        throw Error(Errc::parse, "unknown body type '" + type + "'");
    }();
    if (j.contains("dim"))
        require(j["dim"].is_number_integer() && j["dim"].get<int>() == K.dim(), Errc::dimension_mismatch,
                "'dim' does not match the coordinates");
    return K;
}

Json to_json(const Body& K)
{
    Json j;
    j["dim"] = K.dim();
    if (K.is_polytope()) {
        j["type"] = "polytope";
        j["vertices"] = Json::array();
        for (const auto& v : K.vertices()) j["vertices"].push_back(vec_to_json(v));
    }
    else if (K.is_ball()) {
        j["type"] = "ball";
        j["center"] = vec_to_json(K.center());
        j["radius"] = K.radius();
    }
    else {
        j["type"] = "parallel";
        j["inner"] = to_json(K.inner());
        j["rho"] = K.rho();
    }
    return j;
}

DiscreteMeasure measure_from_json(const Json& j)
{
    require(j.is_object() && j.contains("atoms") && j["atoms"].is_array(), Errc::parse, "measure needs an 'atoms' array");
    DiscreteMeasure mu;
    mu.dim = j.value("dim", 0);
    mu.is_signed = j.value("signed", false);
    for (const auto& a : j["atoms"]) {
        require(a.is_object() && a.contains("x") && a.contains("u"), Errc::parse, "atom needs 'x' and 'u'");
        SupportElement s{vec_from_json(a["x"], "x"), vec_from_json(a["u"], "u")};
        if (mu.dim == 0) mu.dim = static_cast<int>(s.x.size());
        mu.add(s, number(a, "w"));
    }
    require(mu.dim == 2 || mu.dim == 3, Errc::parse, "measure dimension must be 2 or 3");
    mu.validate();
    return mu;
}

Json to_json(const DiscreteMeasure& mu)
{
    Json j;
    j["dim"] = mu.dim;
    j["signed"] = mu.is_signed;
    j["atoms"] = Json::array();
    for (const auto& a : mu.atoms) j["atoms"].push_back({{"x", vec_to_json(a.s.x)}, {"u", vec_to_json(a.s.u)}, {"w", a.w}});
    return j;
}

Json to_json(const DblCertificate& c)
{
    Json j;
    j["value"] = c.value;
    j["max_violation"] = c.max_violation;
    j["objective_residual"] = c.objective_residual;
    j["duality_gap"] = c.duality_gap;
    j["primal_cost"] = c.primal_cost;
    j["flow_residual"] = c.flow_residual;
    j["iterations"] = c.iterations;
    j["witness"] = c.witness;
    j["flow"] = Json::array();
    for (const auto& f : c.flow) j["flow"].push_back({f.from, f.to, f.amount});
    return j;
}

Json load_json(const std::string& path)
{
    std::ifstream in(path);
    require(bool(in), Errc::parse, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    }
    catch (const Json::exception& e) {
        throw Error(Errc::parse, path + ": " + e.what());
    }
}

void save_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    require(bool(out), Errc::parse, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

Body load_body(const std::string& path) { return body_from_json(load_json(path)); }

DiscreteMeasure load_measure(const std::string& path) { return measure_from_json(load_json(path)); }

} // namespace normcyc
