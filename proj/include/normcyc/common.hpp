#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace normcyc {

/// Column vector with at most three entries. The storage is inline, so points in
/// R^2 and R^3 never touch the heap.
template <typename Scalar>
using VecN = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

/// Square matrix of size at most 3x3, inline storage.
template <typename Scalar>
using MatN = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VecN<double>;
using Mat = MatN<double>;

enum class Errc {
    invalid_argument,
    dimension_mismatch,
    degenerate_body,
    precondition,
    tolerance_unachievable,
    index_out_of_range,
    radii_mismatch,
    cap_exceeded,
    non_convergence,
    parse,
};

inline const char* to_string(Errc code)
{
    switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::degenerate_body: return "degenerate_body";
    case Errc::precondition: return "precondition";
    case Errc::tolerance_unachievable: return "tolerance_unachievable";
    case Errc::index_out_of_range: return "index_out_of_range";
    case Errc::radii_mismatch: return "radii_mismatch";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::non_convergence: return "non_convergence";
    case Errc::parse: return "parse";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline void require(bool condition, Errc code, const std::string& what)
{
    if (!condition) throw Error(code, what);
}

/// Volume of the m-dimensional unit ball for m <= 4.
template <typename Scalar = double>
constexpr Scalar unit_ball_volume(int m)
{
    // 50-digit literals; the type truncates.
    constexpr long double pi = 3.1415926535897932384626433832795028841971693993751L;
    switch (m) {
    case 0: return Scalar(1);
    case 1: return Scalar(2);
    case 2: return Scalar(pi);
    case 3: return Scalar(4.1887902047863905616062446004267410588066183334434L);
    case 4: return Scalar(4.9348022005446793094172454999380755676568497036204L);
    default: break;
    }
    throw Error(Errc::index_out_of_range, "unit_ball_volume: m must be in [0, 4]");
}

constexpr long long binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

template <typename Scalar>
VecN<Scalar> make_vec(std::initializer_list<Scalar> values)
{
    VecN<Scalar> v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (Scalar s : values) v[i++] = s;
    return v;
}

inline Vec vec2(double a, double b) { return make_vec<double>({a, b}); }
inline Vec vec3(double a, double b, double c) { return make_vec<double>({a, b, c}); }

/// Rotation of the plane by angle `theta`.
template <typename Scalar>
MatN<Scalar> rotation2(Scalar theta)
{
    using std::cos;
    using std::sin;
    MatN<Scalar> r(2, 2);
    r << cos(theta), -sin(theta), sin(theta), cos(theta);
    return r;
}

/// Rotation of R^3 by angle `theta` about the unit axis `axis`.
template <typename Scalar>
MatN<Scalar> rotation3(const VecN<Scalar>& axis, Scalar theta)
{
    Eigen::Matrix<Scalar, 3, 1> a = axis.normalized();
    Eigen::Matrix<Scalar, 3, 3> r = Eigen::AngleAxis<Scalar>(theta, a).toRotationMatrix();
    return MatN<Scalar>(r);
}

} // namespace normcyc
