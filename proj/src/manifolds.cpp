#include "gpembed/manifolds.hpp"

#include "gpembed/error.hpp"
#include "gpembed/rng.hpp"

#include <cmath>
#include <sstream>

namespace gpembed {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

}

const char* manifold_kind_name(ManifoldKind k) {
    switch (k) {
        case ManifoldKind::circle: return "circle";
        case ManifoldKind::flat_torus: return "flat_torus";
        case ManifoldKind::klein: return "klein";
        case ManifoldKind::circle_with_outliers: return "circle_with_outliers";
    }
    return "?";
}

void ManifoldSpec::validate() const {
    if (n == 0)
        throw ValidationError("manifold spec: sample size must be >= 1");
    switch (kind) {
        case ManifoldKind::circle:
            break;
        case ManifoldKind::flat_torus:
            if (!(r > 1.0))
                throw ValidationError("flat_torus: radius r must exceed 1");
            break;
        case ManifoldKind::klein:
            if (!(a > b) || !(b > 0.0))
                throw ValidationError("klein: need a > b > 0");
            break;
        case ManifoldKind::circle_with_outliers:
            if (outliers.empty())
                throw ValidationError("circle_with_outliers: outlier list is empty");
            if (outliers.size() > n)
                throw ValidationError("circle_with_outliers: more outliers than sample size");
            for (const auto& o : outliers)
                if (!std::isfinite(o[0]) || !std::isfinite(o[1]))
                    throw ValidationError("circle_with_outliers: non-finite outlier");
            break;
    }
}

std::string ManifoldSpec::label() const {
    std::ostringstream out;
    out << manifold_kind_name(kind);
    if (kind == ManifoldKind::flat_torus) out << " r=" << r;
    if (kind == ManifoldKind::klein) out << " a=" << a << " b=" << b;
    if (kind == ManifoldKind::circle_with_outliers) out << " outliers=" << outliers.size();
    out << " n=" << n << " seed=" << seed;
    return out.str();
}

std::array<double, 2> circle_point(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

std::array<double, 4> flat_torus_point(double r, double u, double v) {
    return {std::cos(u), std::sin(u), r * std::cos(v), r * std::sin(v)};
}

std::array<double, 4> klein_point(double a, double b, double u, double v) {
    const double w = a + b * std::cos(v);
    return {w * std::cos(u), w * std::sin(u),
            b * std::sin(v) * std::cos(u / 2.0), b * std::sin(v) * std::sin(u / 2.0)};
}

PointCloud sample(const ManifoldSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    switch (spec.kind) {
        case ManifoldKind::circle: {
            Matrix pts(spec.n, 2);
            for (std::size_t i = 0; i < spec.n; ++i) {
                const auto p = circle_point(kTwoPi * rng.next_uniform());
                pts(i, 0) = p[0];
                pts(i, 1) = p[1];
            }
            return PointCloud(std::move(pts), spec.label());
        }
        case ManifoldKind::flat_torus: {
            Matrix pts(spec.n, 4);
            for (std::size_t i = 0; i < spec.n; ++i) {
                const double u = kTwoPi * rng.next_uniform();
                const double v = kTwoPi * rng.next_uniform();
                const auto p = flat_torus_point(spec.r, u, v);
                for (std::size_t d = 0; d < 4; ++d) pts(i, d) = p[d];
            }
            return PointCloud(std::move(pts), spec.label());
        }
        case ManifoldKind::klein: {
            Matrix pts(spec.n, 4);
            for (std::size_t i = 0; i < spec.n; ++i) {
                const double u = kTwoPi * rng.next_uniform();
                const double v = kTwoPi * rng.next_uniform();
                const auto p = klein_point(spec.a, spec.b, u, v);
                for (std::size_t d = 0; d < 4; ++d) pts(i, d) = p[d];
            }
            return PointCloud(std::move(pts), spec.label());
        }
        case ManifoldKind::circle_with_outliers: {
            const std::size_t on_circle = spec.n - spec.outliers.size();
            Matrix pts(spec.n, 2);
            for (std::size_t i = 0; i < on_circle; ++i) {
                const auto p = circle_point(kTwoPi * rng.next_uniform());
                pts(i, 0) = p[0];
                pts(i, 1) = p[1];
            }
            for (std::size_t i = 0; i < spec.outliers.size(); ++i) {
                pts(on_circle + i, 0) = spec.outliers[i][0];
                pts(on_circle + i, 1) = spec.outliers[i][1];
            }
            return PointCloud(std::move(pts), spec.label());
        }
    }
    throw ValidationError("manifold spec: unknown kind");
}

} // namespace gpembed
