#pragma once

#include "gpembed/cloud.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

// =============================================================================
// Synthetic manifold samplers.
//
//   circle                unit circle in R^2, uniform angle
//   flat_torus(r)         S^1 x rS^1 in R^4, r > 1, uniform in (u, v)
//   klein(a, b)           Klein bottle in R^4, a > b > 0, uniform in (u, v)
//                         (uniform in parameter space, not surface area)
//   circle_with_outliers  uniform circle points with fixed outliers appended
//                         last, so their indices are known to reporting code
// =============================================================================

namespace gpembed {

enum class ManifoldKind { circle, flat_torus, klein, circle_with_outliers };

struct ManifoldSpec {
    ManifoldKind kind = ManifoldKind::circle;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double r = 0.0;  // flat_torus
    double a = 0.0;  // klein
    double b = 0.0;  // klein
    std::vector<std::array<double, 2>> outliers;  // circle_with_outliers

    void validate() const;
    std::string label() const;
};

const char* manifold_kind_name(ManifoldKind k);

// Parameterizations, exposed for direct point checks.
std::array<double, 2> circle_point(double theta);
std::array<double, 4> flat_torus_point(double r, double u, double v);
std::array<double, 4> klein_point(double a, double b, double u, double v);

PointCloud sample(const ManifoldSpec& spec);

} // namespace gpembed
