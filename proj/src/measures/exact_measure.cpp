#include "normcyc/measures/exact_measure.hpp"

#include <cmath>
#include <numbers>

namespace normcyc {

namespace {

struct Piece {
    Vec centre;
    double measure;
};

std::vector<Piece> split_segment(const Vec& a, const Vec& b, double h)
{
    const double len = (b - a).norm();
    const int k = std::max(1, static_cast<int>(std::ceil(len / h)));
    std::vector<Piece> out;
    for (int j = 0; j < k; ++j) out.push_back({a + (b - a) * ((j + 0.5) / k), len / k});
    return out;
}

void split_triangle(const Vec& A, const Vec& B, const Vec& C, double h, std::vector<Piece>& out)
{
    const double longest = std::max({(B - A).norm(), (C - B).norm(), (A - C).norm()});
    const int m = std::max(1, static_cast<int>(std::ceil(longest / h)));
    const double area = 0.5 * detail::cross3<double>(B - A, C - A).norm() / (double(m) * m);
    auto P = [&](int i, int j) -> Vec { return A + (B - A) * (double(i) / m) + (C - A) * (double(j) / m); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; i + j < m; ++j) {
            out.push_back({(P(i, j) + P(i + 1, j) + P(i, j + 1)) / 3, area});
            if (i + j + 2 <= m) out.push_back({(P(i + 1, j) + P(i, j + 1) + P(i + 1, j + 1)) / 3, area});
        }
}

std::vector<Piece> split_face(const FaceCell& c, double h)
{
    if (c.face_dim == 0) return {{c.face[0], 1.0}};
    if (c.face_dim == 1) return split_segment(c.face[0], c.face[1], h);
    std::vector<Piece> out;
    for (std::size_t k = 1; k + 1 < c.face.size(); ++k) split_triangle(c.face[0], c.face[k], c.face[k + 1], h, out);
    return out;
}

std::vector<Piece> split_arc(const Vec& a, const Vec& b, double angle, double h)
{
    const int k = std::max(1, static_cast<int>(std::ceil(angle / h)));
    Vec e = b - a.dot(b) * a;
    e.normalize();
    std::vector<Piece> out;
    for (int j = 0; j < k; ++j) {
        const double t = angle * (j + 0.5) / k;
        out.push_back({std::cos(t) * a + std::sin(t) * e, angle / k});
    }
    return out;
}

double solid_angle(const Vec& a, const Vec& b, const Vec& c)
{
    const double num = std::abs(a.dot(detail::cross3<double>(b, c)));
    const double den = 1 + a.dot(b) + b.dot(c) + c.dot(a);
    return 2 * std::atan2(num, den);
}

double geodesic(const Vec& a, const Vec& b)
{
    return std::atan2(detail::cross3<double>(a, b).norm(), a.dot(b));
}

void split_spherical_triangle(const Vec& a, const Vec& b, const Vec& c, double h, std::vector<Piece>& out)
{
    if (std::max({geodesic(a, b), geodesic(b, c), geodesic(c, a)}) <= h) {
        out.push_back({(a + b + c).normalized(), solid_angle(a, b, c)});
        return;
    }
    const Vec ab = (a + b).normalized();
    const Vec bc = (b + c).normalized();
    const Vec ca = (c + a).normalized();
    split_spherical_triangle(a, ab, ca, h, out);
    split_spherical_triangle(ab, b, bc, h, out);
    split_spherical_triangle(ca, bc, c, h, out);
    split_spherical_triangle(ab, bc, ca, h, out);
}

std::vector<Piece> split_normal_cell(const FaceCell& c, int n, double h)
{
    const int fiber_dim = n - 1 - c.face_dim;
    if (fiber_dim == 0) return {{c.normal_cell[0], 1.0}};
    if (fiber_dim == 1) return split_arc(c.normal_cell[0], c.normal_cell[1], c.normal_measure, h);
    std::vector<Piece> out;
    for (std::size_t k = 1; k + 1 < c.normal_cell.size(); ++k)
        split_spherical_triangle(c.normal_cell[0], c.normal_cell[k], c.normal_cell[k + 1], h, out);
    return out;
}

void check_index(const Body& P, int i)
{
    require(i >= 0 && i < P.dim(), Errc::index_out_of_range, "support measure index must be in [0, n-1]");
}

} // namespace

ExactMeasure exact_support_measure(const Body& P, int i, double h)
{
    check_index(P, i);
    require(h > 0, Errc::invalid_argument, "mesh size must be positive");
    const int n = P.dim();
    const double norm = (n - i) * unit_ball_volume(n - i);
    const double piece = h / std::numbers::sqrt2;
    ExactMeasure out;
    out.measure.dim = n;
    for (const auto& c : face_decomposition(P)) {
        if (c.face_dim != i) continue;
        const auto xs = split_face(c, piece);
        const auto us = split_normal_cell(c, n, piece);
        for (const auto& x : xs)
            for (const auto& u : us) out.measure.add({x.centre, u.centre}, x.measure * u.measure / norm);
    }
    out.bound = h * out.measure.total_mass();
    return out;
}

double intrinsic_volume(const Body& P, int i)
{
    check_index(P, i);
    const int n = P.dim();
    double s = 0;
    for (const auto& c : face_decomposition(P))
        if (c.face_dim == i) s += c.face_measure * c.normal_measure;
    return s / ((n - i) * unit_ball_volume(n - i));
}

double local_parallel_volume(const Body& P, double rho)
{
    const int n = P.dim();
    double s = 0;
    for (int i = 0; i < n; ++i) s += std::pow(rho, n - i) * unit_ball_volume(n - i) * intrinsic_volume(P, i);
    return s;
}

double theta_factor(int n, int i)
{
    require(i >= 0 && i < n, Errc::index_out_of_range, "support measure index must be in [0, n-1]");
    return n * unit_ball_volume(n - i) / double(binomial(n, i));
}

DiscreteMeasure theta_from_lambda(const DiscreteMeasure& lambda, int i)
{
    return scaled(lambda, theta_factor(lambda.dim, i));
}

} // namespace normcyc
