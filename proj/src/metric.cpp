#include "gpembed/metric.hpp"

#include "gpembed/error.hpp"
#include "gpembed/simd.hpp"

#include <cmath>

namespace gpembed {

DistanceMatrix pairwise_euclidean(const Matrix& coords, DistanceKind kind) {
    if (coords.rows() == 0 || coords.cols() == 0)
        throw ValidationError("pairwise_euclidean: empty coordinate matrix");
    const std::size_t n = coords.rows();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = std::sqrt(simd::sqdist(coords.row(i), coords.row(j), coords.cols()));
            d(i, j) = value;
            d(j, i) = value;
        }
    return DistanceMatrix{std::move(d), kind, 0};
}

DistanceMatrix diffusion_distance(const KernelMatrix& a, unsigned t) {
    if (t == 0)
        throw ValidationError("diffusion_distance: t must be a positive integer");
    Matrix powered = a.entries();
    for (unsigned step = 1; step < t; ++step)
        powered = matmul(powered, a.entries());
    DistanceMatrix out = pairwise_euclidean(powered, DistanceKind::diffusion);
    out.time = t;
    return out;
}

double bilipschitz_distortion(const DistanceMatrix& embedded, const DistanceMatrix& reference,
                              double zero_tol) {
    const Matrix& e = embedded.entries;
    const Matrix& r = reference.entries;
    if (!e.same_shape(r) || e.rows() != e.cols())
        throw ValidationError("bilipschitz_distortion: distance matrices must be square and same size");
    if (zero_tol < 0.0)
        throw ValidationError("bilipschitz_distortion: zero_tol must be nonnegative");

    const std::size_t n = e.rows();
    double max_dil = -1.0;
    double min_dil = kInfiniteDistortion;
    bool collapsed = false;
    bool admitted = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(r(i, j) > zero_tol)) continue;
            admitted = true;
            if (e(i, j) == 0.0) {
                collapsed = true;
                continue;
            }
            const double dil = e(i, j) / r(i, j);
            max_dil = std::max(max_dil, dil);
            min_dil = std::min(min_dil, dil);
        }
    if (!admitted)
        throw ValidationError("bilipschitz_distortion: reference has no distances above zero_tol");
    // Any collapse, including a fully collapsed embedding, is infinite
    // distortion rather than 0/0.
    if (collapsed || max_dil <= 0.0) return kInfiniteDistortion;
    return max_dil / min_dil;
}

} // namespace gpembed
