#include "normcyc/measures/face_decomposition.hpp"

#include <cmath>
#include <numbers>

namespace normcyc {

namespace {

const PolytopeData<double>& full_polytope(const Body& P)
{
    require(P.is_polytope(), Errc::invalid_argument, "face decomposition needs a polytope");
    const auto& data = P.polytope_data();
    require(data.full_dimensional(), Errc::degenerate_body, "polytope is not full-dimensional");
    return data;
}

double facet_area(const PolytopeData<double>& P, const Facet<double>& f)
{
    Vec acc = Vec::Zero(3);
    const auto& loop = f.loop;
    for (std::size_t k = 0; k < loop.size(); ++k)
        acc += detail::cross3<double>(P.vertices[loop[k]], P.vertices[loop[(k + 1) % loop.size()]]);
    return 0.5 * std::abs(acc.dot(f.normal));
}

double arc_angle(const Vec& a, const Vec& b)
{
    return std::atan2(detail::cross3<double>(a, b).norm(), a.dot(b));
}

} // namespace

double planar_angle(const Vec& a, const Vec& b) { return std::atan2(a[0] * b[1] - a[1] * b[0], a.dot(b)); }

double spherical_polygon_area(const std::vector<Vec>& corners)
{
    const std::size_t k = corners.size();
    require(k >= 3, Errc::invalid_argument, "spherical polygon needs at least three corners");
    double angles = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const Vec& prev = corners[(j + k - 1) % k];
        const Vec& cur = corners[j];
        const Vec& next = corners[(j + 1) % k];
        const Vec ta = prev - prev.dot(cur) * cur;
        const Vec tc = next - next.dot(cur) * cur;
        angles += arc_angle(ta, tc);
    }
    return angles - double(k - 2) * std::numbers::pi;
}

std::vector<FaceCell> face_decomposition(const Body& P)
{
    const auto& data = full_polytope(P);
    std::vector<FaceCell> cells;
    if (data.dim == 2) {
        for (std::size_t j = 0; j < data.vertices.size(); ++j) {
            const auto& inc = data.vertex_facets[j];
            FaceCell c;
            c.face_dim = 0;
            c.face = {data.vertices[j]};
            c.normal_cell = {data.facets[inc[0]].normal, data.facets[inc[1]].normal};
            c.face_measure = 1;
            c.normal_measure = planar_angle(c.normal_cell[0], c.normal_cell[1]);
            cells.push_back(std::move(c));
        }
        for (const auto& f : data.facets) {
            FaceCell c;
            c.face_dim = 1;
            c.face = {data.vertices[f.loop[0]], data.vertices[f.loop[1]]};
            c.normal_cell = {f.normal};
            c.face_measure = (c.face[1] - c.face[0]).norm();
            c.normal_measure = 1;
            cells.push_back(std::move(c));
        }
        return cells;
    }

    for (std::size_t j = 0; j < data.vertices.size(); ++j) {
        FaceCell c;
        c.face_dim = 0;
        c.face = {data.vertices[j]};
        for (int fi : data.vertex_facets[j]) c.normal_cell.push_back(data.facets[fi].normal);
        c.face_measure = 1;
        c.normal_measure = spherical_polygon_area(c.normal_cell);
        cells.push_back(std::move(c));
    }
    for (const auto& e : data.edges) {
        FaceCell c;
        c.face_dim = 1;
        c.face = {data.vertices[e.a], data.vertices[e.b]};
        c.normal_cell = {data.facets[e.left].normal, data.facets[e.right].normal};
        c.face_measure = (c.face[1] - c.face[0]).norm();
        c.normal_measure = arc_angle(c.normal_cell[0], c.normal_cell[1]);
        cells.push_back(std::move(c));
    }
    for (const auto& f : data.facets) {
        FaceCell c;
        c.face_dim = 2;
        for (int v : f.loop) c.face.push_back(data.vertices[v]);
        c.normal_cell = {f.normal};
        c.face_measure = facet_area(data, f);
        c.normal_measure = 1;
        cells.push_back(std::move(c));
    }
    return cells;
}

double polytope_volume(const Body& P)
{
    const auto& data = full_polytope(P);
    double v = 0;
    if (data.dim == 2) {
        const std::size_t m = data.vertices.size();
        for (std::size_t k = 0; k < m; ++k) {
            const Vec& a = data.vertices[k];
            const Vec& b = data.vertices[(k + 1) % m];
            v += a[0] * b[1] - a[1] * b[0];
        }
        return 0.5 * v;
    }
    for (const auto& f : data.facets) v += f.offset * facet_area(data, f);
    return v / 3;
}

double surface_area(const Body& P)
{
    const auto& data = full_polytope(P);
    double s = 0;
    for (const auto& f : data.facets)
        s += data.dim == 2 ? (data.vertices[f.loop[1]] - data.vertices[f.loop[0]]).norm() : facet_area(data, f);
    return s;
}

double parallel_volume(const Body& P, double rho)
{
    const auto& data = full_polytope(P);
    if (data.dim == 2) return polytope_volume(P) + surface_area(P) * rho + std::numbers::pi * rho * rho;
    double wedges = 0;
    for (const auto& e : data.edges) {
        const double len = (data.vertices[e.b] - data.vertices[e.a]).norm();
        wedges += len * arc_angle(data.facets[e.left].normal, data.facets[e.right].normal) / 2;
    }
    return polytope_volume(P) + surface_area(P) * rho + wedges * rho * rho +
           4.0 / 3.0 * std::numbers::pi * rho * rho * rho;
}

} // namespace normcyc
